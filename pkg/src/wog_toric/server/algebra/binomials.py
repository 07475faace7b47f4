"""Pure binomials as signed exponent vectors, fibers and monomial reduction."""

import hashlib
import json
import logging
import re
from dataclasses import dataclass
from typing import (
    Dict,
    FrozenSet,
    Iterable,
    Iterator,
    List,
    Literal,
    Optional,
    Sequence,
    Tuple,
    Union,
)

from .errors import MatrixShapeError, ResourceCapExceeded, ZeroVectorError
from .linalg import (
    IntegerMatrix,
    IntegerVector,
    enumerate_lattice_box,
    integer_kernel_basis,
)
from .settings import ResourceCaps, get_caps

logger = logging.getLogger(__name__)

Monomial = Tuple[int, ...]
BasisKind = Literal[
    "graver", "circuits", "groebner", "markov", "indispensable", "universal", "input"
]


@dataclass(frozen=True)
class Binomial:
    """f_m = e^{m+} - e^{m-} for a signed exponent vector m.

    Stored sign-normalized: the entry at the lowest-index support edge is
    positive, so a binomial and its negation compare equal.
    """

    exponents: IntegerVector

    def __post_init__(self) -> None:
        leading = next((x for x in self.exponents if x != 0), 0)
        if leading == 0:
            raise ZeroVectorError("The zero vector does not define a binomial")
        if leading < 0:
            object.__setattr__(self, "exponents", tuple(-x for x in self.exponents))

    @property
    def positive(self) -> Monomial:
        return tuple(max(x, 0) for x in self.exponents)

    @property
    def negative(self) -> Monomial:
        return tuple(max(-x, 0) for x in self.exponents)

    @property
    def support(self) -> FrozenSet[int]:
        return frozenset(i for i, x in enumerate(self.exponents) if x != 0)

    @property
    def norm(self) -> int:
        return sum(abs(x) for x in self.exponents)

    def __len__(self) -> int:
        return len(self.exponents)

    def to_string(self, labels: Optional[Sequence[str]] = None) -> str:
        """Canonical text: ``e1^2*e5 - e2^4*e4``."""
        names = labels or [f"e{i + 1}" for i in range(len(self.exponents))]
        return f"{format_monomial(self.positive, names)} - " + format_monomial(
            self.negative, names
        )

    def sort_key(self) -> Tuple[int, IntegerVector]:
        return self.norm, self.exponents


def binomial_from_vector(m: Sequence[int]) -> Binomial:
    return Binomial(tuple(int(x) for x in m))


def format_monomial(u: Sequence[int], labels: Sequence[str]) -> str:
    factors = []
    for i, x in enumerate(u):
        if x == 1:
            factors.append(labels[i])
        elif x > 1:
            factors.append(f"{labels[i]}^{x}")
    return "*".join(factors) if factors else "1"


_FACTOR = re.compile(r"^([A-Za-z_][A-Za-z0-9_]*)(?:\^(\d+))?$")


def parse_monomial(text: str, labels: Sequence[str]) -> Monomial:
    """Parse ``e1^2*e5 e7^4`` into an exponent vector over ``labels``."""
    index = {label: i for i, label in enumerate(labels)}
    u = [0] * len(labels)
    tokens = [t for t in re.split(r"[\s*·]+", text.strip()) if t]
    if tokens == ["1"]:
        return tuple(u)
    for token in tokens:
        match = _FACTOR.match(token)
        if not match or match.group(1) not in index:
            raise ValueError(f"Cannot parse factor {token!r} in {text!r}")
        u[index[match.group(1)]] += int(match.group(2) or 1)
    return tuple(u)


def parse_binomial(text: str, labels: Sequence[str]) -> Binomial:
    """Parse ``lhs - rhs``; the Unicode minus sign is accepted."""
    parts = re.split(r"\s[-−]\s", text.replace("−", "-").strip())
    if len(parts) != 2:
        parts = text.replace("−", "-").split("-")
    if len(parts) != 2:
        raise ValueError(f"Expected exactly one ' - ' in {text!r}")
    positive = parse_monomial(parts[0], labels)
    negative = parse_monomial(parts[1], labels)
    return binomial_from_vector([p - q for p, q in zip(positive, negative)])


def matrix_hash(A: IntegerMatrix) -> str:
    payload = json.dumps([list(row) for row in A.entries], separators=(",", ":"))
    return hashlib.sha256(payload.encode("utf-8")).hexdigest()


@dataclass(frozen=True)
class BasisSet:
    """Canonically sorted, duplicate-free set of binomials of one matrix."""

    kind: BasisKind
    elements: Tuple[Binomial, ...]
    matrix: IntegerMatrix

    @classmethod
    def build(
        cls,
        kind: BasisKind,
        elements: Iterable[Union[Binomial, Sequence[int]]],
        matrix: IntegerMatrix,
    ) -> "BasisSet":
        unique: Dict[IntegerVector, Binomial] = {}
        for item in elements:
            b = item if isinstance(item, Binomial) else binomial_from_vector(item)
            if len(b) != matrix.ncols:
                raise MatrixShapeError(
                    f"Binomial over {len(b)} variables in a {matrix.ncols}-column set"
                )
            unique[b.exponents] = b
        ordered = tuple(sorted(unique.values(), key=Binomial.sort_key))
        return cls(kind, ordered, matrix)

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self) -> Iterator[Binomial]:
        return iter(self.elements)

    def __contains__(self, item: object) -> bool:
        if isinstance(item, Binomial):
            return item.exponents in self.vectors()
        return False

    def vectors(self) -> FrozenSet[IntegerVector]:
        return frozenset(b.exponents for b in self.elements)

    def same_elements(self, other: "BasisSet") -> bool:
        return self.vectors() == other.vectors()

    def issubset(self, other: "BasisSet") -> bool:
        return self.vectors() <= other.vectors()

    def strings(self) -> List[str]:
        labels = self.matrix.labels()
        return [b.to_string(labels) for b in self.elements]

    def export(self) -> Dict[str, object]:
        return {
            "matrix_hash": matrix_hash(self.matrix),
            "kind": self.kind,
            "elements": self.strings(),
        }


def a_degree(u: Sequence[int], A: IntegerMatrix) -> IntegerVector:
    """deg_A(e^u) = A·u."""
    if len(u) != A.ncols:
        raise MatrixShapeError(
            f"Exponent vector of length {len(u)} for {A.ncols} variables"
        )
    if any(x < 0 for x in u):
        raise ValueError(f"Exponent vector {tuple(u)} has a negative entry")
    return tuple(int(x) for x in A.dot(u))


def conformal_leq(
    u: Union[Binomial, Sequence[int]], v: Union[Binomial, Sequence[int]]
) -> bool:
    """u ⊑ v: u+ <= v+ and u- <= v- componentwise."""
    a = u.exponents if isinstance(u, Binomial) else u
    b = v.exponents if isinstance(v, Binomial) else v
    if len(a) != len(b):
        raise MatrixShapeError("Conformal comparison of vectors of different length")
    for x, y in zip(a, b):
        if x == 0:
            continue
        if x > 0:
            if y < x:
                return False
        elif y > x:
            return False
    return True


@dataclass(frozen=True)
class Fiber:
    degree: IntegerVector
    members: Tuple[Monomial, ...]

    def __len__(self) -> int:
        return len(self.members)


def coordinate_bounds(A: IntegerMatrix, degree: Sequence[int]) -> List[int]:
    """Upper bound on each exponent of a monomial of the given A-degree.

    For a nonnegative A, row i of A·u = b gives A_ij·u_j <= b_i.
    """
    bounds = []
    for j in range(A.ncols):
        column = A.column(j)
        if any(x < 0 for x in column) or not any(column):
            raise MatrixShapeError(
                f"Column {A.column_label(j)} is not positively graded"
            )
        bounds.append(min(b // x for b, x in zip(degree, column) if x > 0))
    return bounds


def fiber(
    A: IntegerMatrix, witness: Sequence[int], caps: Optional[ResourceCaps] = None
) -> Fiber:
    """F_b = (u + ker_Z(A)) ∩ N^m for b = A·u."""
    limits = get_caps(caps)
    degree = a_degree(witness, A)
    basis = integer_kernel_basis(A)
    upper = coordinate_bounds(A, degree)
    members = []
    for point in enumerate_lattice_box(
        tuple(witness), basis, [0] * A.ncols, upper, cap=limits.fiber_candidates
    ):
        members.append(point)
        if len(members) > limits.fiber_size:
            raise ResourceCapExceeded(
                "fiber_size", limits.fiber_size, f"fiber of degree {degree}"
            )
    members.sort()
    logger.debug("Fiber of degree %s has %d members", degree, len(members))
    return Fiber(degree, tuple(members))


@dataclass(frozen=True)
class TermOrder:
    """Degree-lexicographic order with a variable priority list.

    ``priority[0]`` is the largest variable.
    """

    priority: Tuple[int, ...]

    def __post_init__(self) -> None:
        if sorted(self.priority) != list(range(len(self.priority))):
            raise ValueError(f"Priority {self.priority} is not a permutation")

    @classmethod
    def default(cls, nvars: int) -> "TermOrder":
        return cls(tuple(range(nvars)))

    @classmethod
    def from_labels(cls, priority: Sequence[str], labels: Sequence[str]) -> "TermOrder":
        """Listed variables first, the rest in declaration order."""
        index = {label: i for i, label in enumerate(labels)}
        chosen = []
        for label in priority:
            if label not in index:
                raise ValueError(f"Unknown variable {label!r} in term order")
            if index[label] in chosen:
                raise ValueError(f"Variable {label!r} listed twice in term order")
            chosen.append(index[label])
        rest = [i for i in range(len(labels)) if i not in chosen]
        return cls(tuple(chosen + rest))

    def key(self, u: Sequence[int]) -> Tuple[int, Tuple[int, ...]]:
        return sum(u), tuple(u[i] for i in self.priority)

    def orient(self, b: Binomial) -> Tuple[Monomial, Monomial]:
        """(leading, trailing) monomials of ``b``."""
        p, n = b.positive, b.negative
        if self.key(p) > self.key(n):
            return p, n
        return n, p


def divides(u: Sequence[int], v: Sequence[int]) -> bool:
    return all(x <= y for x, y in zip(u, v))


OrientedBinomial = Tuple[Monomial, Monomial]


def reduce_monomial(u: Sequence[int], basis: Sequence[OrientedBinomial]) -> Monomial:
    """Normal form of e^u: replace leading terms by trailing terms until stuck.

    The lowest-index element whose leading term divides is used at each step.
    """
    current = list(u)
    while True:
        for lead, trail in basis:
            if divides(lead, current):
                current = [c + t - x for c, t, x in zip(current, trail, lead)]
                break
        else:
            return tuple(current)


def oriented(
    basis: Union[BasisSet, Iterable[Binomial]], order: TermOrder
) -> List[OrientedBinomial]:
    return [order.orient(b) for b in basis]


def normal_form(
    target: Union[Binomial, Sequence[int]],
    basis: Union[BasisSet, Iterable[Binomial]],
    order: TermOrder,
) -> Union[Monomial, Optional[Binomial]]:
    """Remainder of a monomial (exponent tuple) or a binomial on division.

    A binomial remainder of zero is returned as None.
    """
    reducers = oriented(basis, order)
    if isinstance(target, Binomial):
        p = reduce_monomial(target.positive, reducers)
        n = reduce_monomial(target.negative, reducers)
        if p == n:
            return None
        return binomial_from_vector([x - y for x, y in zip(p, n)])
    return reduce_monomial(target, reducers)
