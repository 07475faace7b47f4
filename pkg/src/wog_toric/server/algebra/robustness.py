"""Strong, ordinary, generalized and weak robustness of toric ideals."""

import logging
from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

import networkx as nx

from .analysis import ToricAnalysis
from .binomials import BasisSet, Binomial, a_degree
from .errors import StructuralCriteriaError
from .graph import (
    WeightedOrientedGraph,
    detect_D1,
    detect_D2,
    enumerate_cycles,
    shared_path_decomposition,
)
from .linalg import IntegerMatrix
from .markov import is_minimal_generating_set
from .models import RobustnessReport
from .settings import ResourceCaps

logger = logging.getLogger(__name__)

PROPERTIES = ("strongly_robust", "robust", "generalized_robust", "weakly_robust")


@dataclass(frozen=True)
class PropertyVerdict:
    """Answer for one property; ``holds`` is None when it stays undetermined."""

    holds: Optional[bool]
    witnesses: Tuple[Binomial, ...] = ()
    certified: bool = True


def _analysis(
    A: IntegerMatrix, analysis: Optional[ToricAnalysis], caps: Optional[ResourceCaps]
) -> ToricAnalysis:
    return analysis if analysis is not None else ToricAnalysis(A, caps=caps)


def _difference(first: BasisSet, second: BasisSet) -> Tuple[Binomial, ...]:
    return tuple(b for b in first if b not in second)


def is_strongly_robust(
    A: IntegerMatrix,
    analysis: Optional[ToricAnalysis] = None,
    caps: Optional[ResourceCaps] = None,
) -> PropertyVerdict:
    """Gr_A is a minimal generating set, i.e. every Graver element is indispensable."""
    toric = _analysis(A, analysis, caps)
    missing = _difference(toric.graver(), toric.indispensables())
    return PropertyVerdict(not missing, missing)


def is_weakly_robust(
    A: IntegerMatrix,
    analysis: Optional[ToricAnalysis] = None,
    caps: Optional[ResourceCaps] = None,
) -> PropertyVerdict:
    """Gr_A equals the universal Markov basis."""
    toric = _analysis(A, analysis, caps)
    missing = _difference(toric.graver(), toric.markov())
    return PropertyVerdict(not missing, missing)


def is_generalized_robust(
    A: IntegerMatrix,
    analysis: Optional[ToricAnalysis] = None,
    caps: Optional[ResourceCaps] = None,
    samples: Optional[int] = None,
) -> PropertyVerdict:
    """U_A equals the universal Markov basis, decided from the U_A bounds."""
    toric = _analysis(A, analysis, caps)
    report = toric.universal(samples)
    markov = toric.markov()
    if report.certified is not None:
        extra = _difference(report.certified, markov)
        missing = _difference(markov, report.certified)
        return PropertyVerdict(not (extra or missing), extra + missing)
    extra = _difference(report.lower, markov)
    if extra:
        return PropertyVerdict(False, extra, certified=False)
    return PropertyVerdict(None, certified=False)


def _spanning_forest_violation(
    toric: ToricAnalysis, elements: BasisSet
) -> Tuple[Binomial, ...]:
    """Elements that cannot belong to one minimal generating set with the rest."""
    fibers = {graph.degree: graph for graph in toric.fibers()}
    forests: Dict[Tuple[int, ...], nx.Graph] = {}
    bad: List[Binomial] = []
    for b in elements:
        degree = a_degree(b.positive, toric.A)
        graph = fibers.get(degree)
        if graph is None:
            bad.append(b)
            continue
        i = graph.component_of(b.positive)
        j = graph.component_of(b.negative)
        forest = forests.setdefault(degree, nx.Graph())
        joined = forest.has_node(i) and forest.has_node(j) and nx.has_path(forest, i, j)
        if i == j or joined:
            bad.append(b)
            continue
        forest.add_edge(i, j)
    return tuple(bad)


def is_robust(
    A: IntegerMatrix,
    analysis: Optional[ToricAnalysis] = None,
    caps: Optional[ResourceCaps] = None,
    samples: Optional[int] = None,
) -> PropertyVerdict:
    """U_A is a minimal generating set of I_A."""
    toric = _analysis(A, analysis, caps)
    report = toric.universal(samples)
    if report.certified is not None:
        holds = is_minimal_generating_set(report.certified, A, toric.caps)
        witnesses = (
            () if holds else _difference(report.certified, toric.indispensables())
        )
        return PropertyVerdict(holds, witnesses)
    bad = _spanning_forest_violation(toric, report.lower)
    if bad:
        return PropertyVerdict(False, bad, certified=False)
    return PropertyVerdict(None, certified=False)


def structural_classification(
    g: WeightedOrientedGraph, caps: Optional[ResourceCaps] = None
) -> RobustnessReport:
    """Robustness of a shared-path graph from its cycles alone.

    With at most two unbalanced cycles all four properties hold exactly when
    the graph has no subgraph of type D1 or D2. A shared path and arcs all of
    length at least two make the ideal strongly robust outright.
    """
    decomposition = shared_path_decomposition(g)
    if decomposition is None:
        raise StructuralCriteriaError(
            "Graph is not a union of cycles sharing a path"
        )
    if decomposition.unbalanced_count > 2:
        raise StructuralCriteriaError(
            f"{decomposition.unbalanced_count} unbalanced cycles share the path; "
            "structural criteria need at most two"
        )
    methods = {name: "structural" for name in PROPERTIES}
    if decomposition.path_length >= 2 and not any(decomposition.unit_arcs):
        return RobustnessReport(
            strongly_robust=True,
            robust=True,
            generalized_robust=True,
            weakly_robust=True,
            methods=methods,
            witnesses=[],
        )

    cycles = enumerate_cycles(g, caps)
    witnesses = []
    for occurrence in detect_D1(g, cycles):
        witnesses.append(
            "D1: "
            f"{'-'.join(occurrence.first.edge_labels())} and "
            f"{'-'.join(occurrence.second.edge_labels())} "
            f"share {g.edges[occurrence.shared_edge].id}"
        )
    for found in detect_D2(g, cycles):
        witnesses.append(
            "D2: "
            f"{'-'.join(found.balanced.edge_labels())} with "
            f"{'-'.join(found.first_unbalanced.edge_labels())} and "
            f"{'-'.join(found.second_unbalanced.edge_labels())} "
            f"share {g.edges[found.shared_edge].id}"
        )
    verdict = not witnesses
    return RobustnessReport(
        strongly_robust=verdict,
        robust=verdict,
        generalized_robust=verdict,
        weakly_robust=verdict,
        methods=methods,
        witnesses=witnesses,
    )


def computational_classification(
    analysis: ToricAnalysis, samples: Optional[int] = None
) -> RobustnessReport:
    A = analysis.A
    verdicts = {
        "strongly_robust": is_strongly_robust(A, analysis),
        "robust": is_robust(A, analysis, samples=samples),
        "generalized_robust": is_generalized_robust(A, analysis, samples=samples),
        "weakly_robust": is_weakly_robust(A, analysis),
    }
    labels = A.labels()
    witnesses = sorted(
        {w.to_string(labels) for v in verdicts.values() for w in v.witnesses}
    )
    return RobustnessReport(
        strongly_robust=verdicts["strongly_robust"].holds,
        robust=verdicts["robust"].holds,
        generalized_robust=verdicts["generalized_robust"].holds,
        weakly_robust=verdicts["weakly_robust"].holds,
        methods={name: "computational" for name in PROPERTIES},
        witnesses=witnesses,
        certified=all(v.certified for v in verdicts.values()),
    )


def classify(
    g: WeightedOrientedGraph,
    caps: Optional[ResourceCaps] = None,
    samples: Optional[int] = None,
    analysis: Optional[ToricAnalysis] = None,
) -> RobustnessReport:
    """Computed verdicts, cross-checked against the structural ones when they apply."""
    toric = analysis if analysis is not None else ToricAnalysis.from_graph(g, caps)
    report = computational_classification(toric, samples)
    try:
        structural = structural_classification(g, toric.caps)
    except StructuralCriteriaError as e:
        logger.info("Structural criteria do not apply: %s", e)
        return report

    agreement = all(
        getattr(report, name) is None
        or getattr(report, name) == getattr(structural, name)
        for name in PROPERTIES
    )
    if not agreement:
        logger.warning("Structural and computed robustness verdicts disagree")
    return report.model_copy(update={"structural_agreement": agreement})
