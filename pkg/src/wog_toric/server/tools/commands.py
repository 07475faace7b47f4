"""Run one analysis command on a graph and render its result."""

import json
import logging
from dataclasses import dataclass
from typing import Any, Callable, Dict, Optional, Sequence

from pydantic import BaseModel

from ..algebra.analysis import ToricAnalysis
from ..algebra.binomials import TermOrder
from ..algebra.errors import PreconditionError
from ..algebra.graph import WeightedOrientedGraph, load_graph
from ..algebra.graver import shared_path_two_balanced_graver
from ..algebra.models import AnalysisRequest, Command
from ..algebra.robustness import classify
from ..algebra.settings import ResourceCaps, get_caps, override_caps
from ..utils.response_formatter import ResponseFormatter

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class CommandResult:
    """A response model together with its text rendering."""

    command: Command
    response: BaseModel
    text: str

    def payload(self) -> Dict[str, Any]:
        return self.response.model_dump(mode="json")

    def render(self, output_format: str = "text") -> str:
        if output_format == "json":
            return json.dumps(self.payload(), indent=2, sort_keys=True)
        return self.text


def request_caps(request: AnalysisRequest) -> ResourceCaps:
    """Process caps with the request's overrides applied."""
    return override_caps(
        get_caps(),
        fiber_size=request.cap_fiber,
        graver_size=request.cap_graver,
        max_cycles=request.max_cycles,
    )


def term_order(graph: WeightedOrientedGraph, priority: Sequence[str]) -> TermOrder:
    try:
        return TermOrder.from_labels(priority, graph.edge_labels)
    except ValueError as e:
        raise PreconditionError(str(e)) from e


def _cycles(toric: ToricAnalysis, request: AnalysisRequest) -> CommandResult:
    response = ResponseFormatter.format_cycles(toric.cycles())
    return CommandResult(
        request.command,
        response,
        ResponseFormatter.cycles_text(
            response, balance_only=request.command == "balance"
        ),
    )


def _basis(name: str) -> Callable[[ToricAnalysis, AnalysisRequest], CommandResult]:
    def handler(toric: ToricAnalysis, request: AnalysisRequest) -> CommandResult:
        basis = getattr(toric, name)()
        return CommandResult(
            request.command,
            ResponseFormatter.format_basis(basis),
            ResponseFormatter.basis_text(basis),
        )

    return handler


def _groebner(toric: ToricAnalysis, request: AnalysisRequest) -> CommandResult:
    basis = toric.groebner(term_order(toric.require_graph(), request.priority))
    return CommandResult(
        request.command,
        ResponseFormatter.format_basis(basis),
        ResponseFormatter.basis_text(basis),
    )


def _universal(toric: ToricAnalysis, request: AnalysisRequest) -> CommandResult:
    response = ResponseFormatter.format_universal(toric.universal(request.samples))
    return CommandResult(
        request.command, response, ResponseFormatter.universal_text(response)
    )


def _markov(toric: ToricAnalysis, request: AnalysisRequest) -> CommandResult:
    response = ResponseFormatter.format_markov(toric.fibers(), toric.markov())
    return CommandResult(
        request.command, response, ResponseFormatter.markov_text(response)
    )


def _robustness(toric: ToricAnalysis, request: AnalysisRequest) -> CommandResult:
    report = classify(
        toric.require_graph(), toric.caps, request.samples, analysis=toric
    )
    return CommandResult(
        request.command, report, ResponseFormatter.robustness_text(report)
    )


def _shared_path_report(
    toric: ToricAnalysis, request: AnalysisRequest
) -> CommandResult:
    decomposition = toric.decomposition()
    if decomposition is None:
        raise PreconditionError("Graph is not a union of cycles sharing a path")
    response = ResponseFormatter.format_shared_path_report(
        shared_path_two_balanced_graver(decomposition)
    )
    return CommandResult(
        request.command, response, ResponseFormatter.shared_path_text(response)
    )


HANDLERS: Dict[str, Callable[[ToricAnalysis, AnalysisRequest], CommandResult]] = {
    "cycles": _cycles,
    "balance": _cycles,
    "graver": _basis("graver"),
    "circuits": _basis("circuits"),
    "groebner": _groebner,
    "universal": _universal,
    "markov": _markov,
    "indispensable": _basis("indispensables"),
    "robustness": _robustness,
    "shared-path-report": _shared_path_report,
}


def execute(
    graph: WeightedOrientedGraph,
    request: AnalysisRequest,
    caps: Optional[ResourceCaps] = None,
) -> CommandResult:
    """Run ``request.command`` on an already loaded graph."""
    toric = ToricAnalysis.from_graph(
        graph, caps if caps is not None else request_caps(request)
    )
    logger.info("Running %s on %d edges", request.command, len(graph.edges))
    result = HANDLERS[request.command](toric, request)
    logger.debug("Analysis stats: %s", toric.get_stats())
    return result


def run(request: AnalysisRequest) -> CommandResult:
    """Load the request's graph file and run its command."""
    return execute(load_graph(request.input_path), request)
