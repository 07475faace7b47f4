"""Exact integer and rational linear algebra.

Determinants and ranks use fraction-free (Bareiss) elimination, rational
kernels come from sympy, and integer kernel lattices are built by unimodular
column reduction so that lattice points can be enumerated exhaustively.
"""

import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Iterator, List, Optional, Sequence, Tuple, Union

import sympy

from .errors import MatrixShapeError, ResourceCapExceeded, ZeroVectorError

logger = logging.getLogger(__name__)

IntegerVector = Tuple[int, ...]
RationalVector = Tuple[Fraction, ...]
Number = Union[int, Fraction]


@dataclass(frozen=True)
class IntegerMatrix:
    """Immutable integer matrix with optional row and column labels."""

    entries: Tuple[Tuple[int, ...], ...]
    ncols: int
    row_labels: Tuple[str, ...] = ()
    col_labels: Tuple[str, ...] = ()

    def __post_init__(self) -> None:
        for row in self.entries:
            if len(row) != self.ncols:
                raise MatrixShapeError(
                    f"Row of length {len(row)} in a matrix with {self.ncols} columns"
                )
        if self.row_labels and len(self.row_labels) != len(self.entries):
            raise MatrixShapeError("Row label count does not match row count")
        if self.col_labels and len(self.col_labels) != self.ncols:
            raise MatrixShapeError("Column label count does not match column count")

    @classmethod
    def from_rows(
        cls,
        rows: Iterable[Iterable[int]],
        ncols: Optional[int] = None,
        row_labels: Iterable[str] = (),
        col_labels: Iterable[str] = (),
    ) -> "IntegerMatrix":
        entries = tuple(tuple(int(x) for x in row) for row in rows)
        if ncols is None:
            if not entries:
                raise MatrixShapeError("ncols is required for a matrix without rows")
            ncols = len(entries[0])
        return cls(entries, ncols, tuple(row_labels), tuple(col_labels))

    @property
    def nrows(self) -> int:
        return len(self.entries)

    def column(self, j: int) -> IntegerVector:
        return tuple(row[j] for row in self.entries)

    def columns(self) -> List[IntegerVector]:
        return [self.column(j) for j in range(self.ncols)]

    def column_label(self, j: int) -> str:
        return self.col_labels[j] if self.col_labels else f"e{j + 1}"

    def labels(self) -> Tuple[str, ...]:
        return tuple(self.column_label(j) for j in range(self.ncols))

    def select_columns(self, cols: Sequence[int]) -> "IntegerMatrix":
        return IntegerMatrix(
            tuple(tuple(row[j] for j in cols) for row in self.entries),
            len(cols),
            self.row_labels,
            tuple(self.col_labels[j] for j in cols) if self.col_labels else (),
        )

    def delete(
        self, rows: Iterable[int] = (), cols: Iterable[int] = ()
    ) -> "IntegerMatrix":
        """Matrix with the given row and column indices removed."""
        drop_rows = _checked_indices(rows, self.nrows, "row")
        drop_cols = _checked_indices(cols, self.ncols, "column")
        keep_rows = [i for i in range(self.nrows) if i not in drop_rows]
        keep_cols = [j for j in range(self.ncols) if j not in drop_cols]
        return IntegerMatrix(
            tuple(tuple(self.entries[i][j] for j in keep_cols) for i in keep_rows),
            len(keep_cols),
            tuple(self.row_labels[i] for i in keep_rows) if self.row_labels else (),
            tuple(self.col_labels[j] for j in keep_cols) if self.col_labels else (),
        )

    def dot(self, v: Sequence[Number]) -> Tuple[Number, ...]:
        """Exact product A·v."""
        if len(v) != self.ncols:
            raise MatrixShapeError(
                f"Vector of length {len(v)} does not fit {self.ncols} columns"
            )
        return tuple(sum(a * x for a, x in zip(row, v)) for row in self.entries)

    def annihilates(self, v: Sequence[Number]) -> bool:
        return all(x == 0 for x in self.dot(v))

    def to_sympy(self) -> sympy.Matrix:
        flat = [x for row in self.entries for x in row]
        return sympy.Matrix(self.nrows, self.ncols, flat)


def _checked_indices(indices: Iterable[int], bound: int, kind: str) -> frozenset:
    seen = list(indices)
    for i in seen:
        if not 0 <= i < bound:
            raise MatrixShapeError(f"{kind} index {i} out of range 0..{bound - 1}")
    if len(set(seen)) != len(seen):
        raise MatrixShapeError(f"Duplicate {kind} index in {seen}")
    return frozenset(seen)


def bareiss_determinant(rows: Sequence[Sequence[int]]) -> int:
    """Determinant of a square integer matrix by Bareiss elimination."""
    n = len(rows)
    if n == 0:
        return 1
    m = [list(row) for row in rows]
    if any(len(row) != n for row in m):
        raise MatrixShapeError("Determinant of a non-square matrix")
    if n == 1:
        return m[0][0]

    sign = 1
    previous = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k] != 0:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        pivot = m[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (pivot * m[i][j] - m[i][k] * m[k][j]) // previous
        previous = pivot
    return sign * m[n - 1][n - 1]


def determinant(matrix: IntegerMatrix) -> int:
    if matrix.nrows != matrix.ncols:
        raise MatrixShapeError(
            f"Determinant of a {matrix.nrows}x{matrix.ncols} matrix"
        )
    return bareiss_determinant(matrix.entries)


def minor(
    matrix: IntegerMatrix, rows_removed: Iterable[int], cols_removed: Iterable[int]
) -> int:
    """Determinant of the square submatrix left after removing rows and columns."""
    sub = matrix.delete(rows_removed, cols_removed)
    if sub.nrows != sub.ncols:
        raise MatrixShapeError(
            f"Removing rows/columns leaves a {sub.nrows}x{sub.ncols} matrix"
        )
    return bareiss_determinant(sub.entries)


def rank(matrix: IntegerMatrix) -> int:
    """Rank by fraction-free row echelon reduction."""
    m = [list(row) for row in matrix.entries]
    nrows, ncols = matrix.nrows, matrix.ncols
    r = 0
    previous = 1
    for c in range(ncols):
        if r == nrows:
            break
        pivot_row = next((i for i in range(r, nrows) if m[i][c] != 0), None)
        if pivot_row is None:
            continue
        m[r], m[pivot_row] = m[pivot_row], m[r]
        pivot = m[r][c]
        for i in range(r + 1, nrows):
            for j in range(c + 1, ncols):
                m[i][j] = (pivot * m[i][j] - m[i][c] * m[r][j]) // previous
            m[i][c] = 0
        previous = pivot
        r += 1
    return r


def kernel_basis(matrix: IntegerMatrix) -> List[RationalVector]:
    """Basis of the rational null space."""
    if matrix.ncols == 0:
        return []
    if matrix.nrows == 0:
        return [
            tuple(Fraction(int(i == j)) for j in range(matrix.ncols))
            for i in range(matrix.ncols)
        ]
    basis = []
    for column in matrix.to_sympy().nullspace():
        entries = (sympy.Rational(e) for e in column)
        basis.append(tuple(Fraction(int(x.p), int(x.q)) for x in entries))
    return basis


def kernel_dimension(matrix: IntegerMatrix) -> int:
    return matrix.ncols - rank(matrix)


def primitive_integer_vector(v: Sequence[Number]) -> IntegerVector:
    """Integer multiple of ``v`` with content 1 and lowest-index entry positive."""
    fractions = [Fraction(x) for x in v]
    if all(x == 0 for x in fractions):
        raise ZeroVectorError("Cannot normalize the zero vector")
    denominator = 1
    for x in fractions:
        denominator = math.lcm(denominator, x.denominator)
    integers = [int(x * denominator) for x in fractions]
    content = 0
    for x in integers:
        content = math.gcd(content, x)
    integers = [x // content for x in integers]
    leading = next(x for x in integers if x != 0)
    if leading < 0:
        integers = [-x for x in integers]
    return tuple(integers)


def extended_gcd(a: int, b: int) -> Tuple[int, int, int]:
    """Return (g, x, y) with a*x + b*y = g = gcd(a, b) >= 0."""
    old_r, r = a, b
    old_x, x = 1, 0
    old_y, y = 0, 1
    while r != 0:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_x, x = x, old_x - q * x
        old_y, y = y, old_y - q * y
    if old_r < 0:
        return -old_r, -old_x, -old_y
    return old_r, old_x, old_y


def _column_echelon(
    columns: List[List[int]], length: int, others: Optional[List[List[int]]] = None
) -> List[int]:
    """Unimodular column reduction in place.

    Brings ``columns`` (each of ``length`` entries) to column echelon form,
    applying the same operations to ``others``. Returns the pivot row of each
    leading column; columns past the last pivot are zero.
    """
    groups = [columns] if others is None else [columns, others]
    pivots: List[int] = []
    t = 0
    for row in range(length):
        if t == len(columns):
            break
        for j in range(t + 1, len(columns)):
            b = columns[j][row]
            if b == 0:
                continue
            a = columns[t][row]
            g, x, y = extended_gcd(a, b)
            p, q = a // g, b // g
            for cols in groups:
                ct, cj = cols[t], cols[j]
                for i in range(len(ct)):
                    ct[i], cj[i] = x * ct[i] + y * cj[i], -q * ct[i] + p * cj[i]
        if columns[t][row] != 0:
            if columns[t][row] < 0:
                for cols in groups:
                    cols[t][:] = [-e for e in cols[t]]
            pivots.append(row)
            t += 1
    return pivots


@lru_cache(maxsize=256)
def integer_kernel_basis(matrix: IntegerMatrix) -> Tuple[IntegerVector, ...]:
    """Z-basis of ker(A) ∩ Z^n in column echelon form."""
    n = matrix.ncols
    columns = [list(matrix.column(j)) for j in range(n)]
    unimodular = [[int(i == j) for i in range(n)] for j in range(n)]
    pivots = _column_echelon(columns, matrix.nrows, unimodular)
    kernel = [unimodular[j] for j in range(len(pivots), n)]
    lattice_pivots = _column_echelon(kernel, n)
    if len(lattice_pivots) != len(kernel):
        raise MatrixShapeError("Kernel lattice basis is not independent")
    return tuple(tuple(v) for v in kernel)


def lattice_pivots(basis: Sequence[IntegerVector]) -> List[int]:
    """Pivot rows of a basis already in column echelon form."""
    pivots = []
    for v in basis:
        pivots.append(next(i for i, x in enumerate(v) if x != 0))
    return pivots


def enumerate_lattice_box(
    offset: Sequence[int],
    basis: Sequence[IntegerVector],
    lower: Sequence[int],
    upper: Sequence[int],
    cap: Optional[int] = None,
) -> Iterator[IntegerVector]:
    """All points offset + Σ λ_t·basis_t with lower <= x <= upper coordinatewise.

    ``basis`` must be in column echelon form with positive pivots, as returned
    by :func:`integer_kernel_basis`. Each coefficient is bounded by its pivot
    row, and the rows up to the next pivot are checked as soon as they are
    determined, so the search is exhaustive without scanning the full box.
    """
    n = len(offset)
    d = len(basis)
    if d == 0:
        point = tuple(offset)
        if all(lo <= x <= hi for lo, x, hi in zip(lower, point, upper)):
            yield point
        return

    pivots = lattice_pivots(basis)
    if any(basis[t][pivots[t]] <= 0 for t in range(d)):
        raise MatrixShapeError("Lattice basis pivots must be positive")
    if any(pivots[t] >= pivots[t + 1] for t in range(d - 1)):
        raise MatrixShapeError("Lattice basis is not in column echelon form")

    # rows fully determined once λ_0..λ_t are fixed
    blocks = [range(pivots[t], pivots[t + 1] if t + 1 < d else n) for t in range(d)]
    for i in range(pivots[0]):
        if not lower[i] <= offset[i] <= upper[i]:
            return

    candidates = 0

    def descend(t: int, point: List[int]) -> Iterator[IntegerVector]:
        nonlocal candidates
        if t == d:
            yield tuple(point)
            return
        v = basis[t]
        row = pivots[t]
        pivot = v[row]
        low = -((point[row] - lower[row]) // pivot)
        high = (upper[row] - point[row]) // pivot
        for lam in range(low, high + 1):
            candidates += 1
            if cap is not None and candidates > cap:
                raise ResourceCapExceeded(
                    "fiber_candidates", cap, "lattice enumeration candidates"
                )
            child = [x + lam * e for x, e in zip(point, v)]
            if all(lower[i] <= child[i] <= upper[i] for i in blocks[t]):
                yield from descend(t + 1, child)

    yield from descend(0, list(offset))
