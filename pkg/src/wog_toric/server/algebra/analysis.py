"""Per-graph analysis facade caching the expensive toric invariants."""

import logging
import threading
from typing import Any, Dict, List, Optional

from .binomials import BasisSet, TermOrder
from .errors import PreconditionError
from .graph import (
    OrientedCycle,
    SharedPathDecomposition,
    WeightedOrientedGraph,
    enumerate_cycles,
    incidence_matrix,
    is_balanced,
    shared_path_decomposition,
)
from .graver import circuits, graver_basis
from .groebner import UniversalGBReport, buchberger, universal_gb
from .linalg import IntegerMatrix, kernel_dimension
from .markov import FiberGraph, indispensables, markov_fibers, universal_markov
from .settings import ResourceCaps, get_caps

logger = logging.getLogger(__name__)


class ToricAnalysis:
    """Toric invariants of one incidence matrix, each computed at most once.

    A graph is optional; without it the graph-only answers (cycles, the
    shared-path decomposition) are unavailable and the universal Gröbner basis
    is always bounded rather than certified.
    """

    def __init__(
        self,
        A: IntegerMatrix,
        graph: Optional[WeightedOrientedGraph] = None,
        caps: Optional[ResourceCaps] = None,
    ) -> None:
        self.A = A
        self.graph = graph
        self.caps = get_caps(caps)
        self._cache: Dict[str, Any] = {}
        self._lock = threading.RLock()

    @classmethod
    def from_graph(
        cls, graph: WeightedOrientedGraph, caps: Optional[ResourceCaps] = None
    ) -> "ToricAnalysis":
        return cls(incidence_matrix(graph), graph, caps)

    def _cached(self, key: str, compute: Any) -> Any:
        with self._lock:
            if key not in self._cache:
                logger.debug("Computing %s", key)
                self._cache[key] = compute()
            return self._cache[key]

    def require_graph(self) -> WeightedOrientedGraph:
        if self.graph is None:
            raise PreconditionError(
                "This analysis was built from a matrix without a graph"
            )
        return self.graph

    def cycles(self) -> List[OrientedCycle]:
        graph = self.require_graph()
        return self._cached("cycles", lambda: enumerate_cycles(graph, self.caps))

    def balanced_cycles(self) -> List[OrientedCycle]:
        return [c for c in self.cycles() if is_balanced(c)]

    def decomposition(self) -> Optional[SharedPathDecomposition]:
        graph = self.require_graph()
        return self._cached(
            "decomposition", lambda: shared_path_decomposition(graph)
        )

    def graver(self) -> BasisSet:
        return self._cached("graver", lambda: graver_basis(self.A, self.caps))

    def circuits(self) -> BasisSet:
        return self._cached("circuits", lambda: circuits(self.A, self.caps))

    def fibers(self) -> List[FiberGraph]:
        return self._cached(
            "fibers", lambda: markov_fibers(self.A, self.graver(), self.caps)
        )

    def markov(self) -> BasisSet:
        return self._cached(
            "markov", lambda: universal_markov(self.A, self.fibers(), self.caps)
        )

    def indispensables(self) -> BasisSet:
        return self._cached(
            "indispensables", lambda: indispensables(self.A, self.fibers(), self.caps)
        )

    def groebner(self, order: TermOrder) -> BasisSet:
        return self._cached(
            f"groebner:{order.priority}",
            lambda: buchberger(self.graver(), order, caps=self.caps),
        )

    def universal(self, samples: Optional[int] = None) -> UniversalGBReport:
        count = samples if samples is not None else self.caps.order_samples
        return self._cached(
            f"universal:{count}",
            lambda: universal_gb(
                self.A, self.graph, count, caps=self.caps, graver=self.graver()
            ),
        )

    def get_stats(self) -> Dict[str, Any]:
        """Sizes of whatever has been computed so far."""
        stats: Dict[str, Any] = {
            "rows": self.A.nrows,
            "columns": self.A.ncols,
            "kernel_dimension": kernel_dimension(self.A),
        }
        for key, value in self._cache.items():
            if isinstance(value, (BasisSet, list)):
                stats[key] = len(value)
        return stats
