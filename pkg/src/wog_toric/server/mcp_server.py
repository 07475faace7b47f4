"""MCP server exposing the toric engine through FastMCP."""

import logging
from typing import Any, Dict, List, Optional

from mcp.server.fastmcp import FastMCP

from .algebra.errors import WogToricError
from .algebra.graph import graph_from_json
from .algebra.models import AnalysisRequest, Command
from .tools.commands import execute

logger = logging.getLogger(__name__)

mcp = FastMCP("wog-toric")


def _run(
    command: Command,
    graph_json: str,
    order: Optional[List[str]] = None,
    samples: Optional[int] = None,
) -> Dict[str, Any]:
    request = AnalysisRequest(
        input_path="<mcp>",
        command=command,
        priority=order or [],
        samples=samples,
        output_format="json",
    )
    return execute(graph_from_json(graph_json), request).payload()


@mcp.tool()
def analyze_cycles(graph_json: str) -> Dict[str, Any]:
    """List the cycles of a weighted oriented graph with their balance"""
    try:
        return _run("cycles", graph_json)
    except WogToricError as e:
        return {"error": str(e), "totalCycles": 0, "cycles": []}


@mcp.tool()
def graver_basis(graph_json: str) -> Dict[str, Any]:
    """Graver basis of the graph's toric ideal"""
    try:
        return _run("graver", graph_json)
    except WogToricError as e:
        return {"error": str(e), "matrix_hash": "", "kind": "graver", "elements": []}


@mcp.tool()
def markov_basis(graph_json: str) -> Dict[str, Any]:
    """Universal Markov basis and the Markov degrees"""
    try:
        return _run("markov", graph_json)
    except WogToricError as e:
        return {
            "error": str(e),
            "degrees": [],
            "markov": {"matrix_hash": "", "kind": "markov", "elements": []},
        }


@mcp.tool()
def robustness_report(
    graph_json: str, samples: Optional[int] = None
) -> Dict[str, Any]:
    """Strong, ordinary, generalized and weak robustness verdicts"""
    try:
        return _run("robustness", graph_json, samples=samples)
    except WogToricError as e:
        return {
            "error": str(e),
            "strongly_robust": None,
            "robust": None,
            "generalized_robust": None,
            "weakly_robust": None,
            "methods": {},
            "witnesses": [],
            "certified": False,
            "structural_agreement": None,
        }


@mcp.tool()
def shared_path_report(graph_json: str) -> Dict[str, Any]:
    """Closed-form Graver basis of two balanced cycles sharing a path"""
    try:
        return _run("shared-path-report", graph_json)
    except WogToricError as e:
        return {"error": str(e), "basis": None}


def main() -> None:
    """Main entry point for the MCP server."""
    logging.basicConfig(level=logging.INFO)
    logger.info("Starting wog-toric MCP server...")
    mcp.run()


if __name__ == "__main__":
    main()
