"""Command-line interface for toric invariants of weighted oriented graphs."""

import argparse
import logging
import sys
from typing import List, Optional, Sequence

from pydantic import ValidationError

from ..server.algebra.errors import (
    InternalConsistencyError,
    ResourceCapExceeded,
    WogToricError,
)
from ..server.algebra.models import AnalysisRequest
from ..server.tools.commands import run as run_command

logger = logging.getLogger(__name__)

COMMANDS = {
    "cycles": "List cycles with balance, sources and sinks",
    "balance": "Balance of every cycle",
    "graver": "Graver basis",
    "circuits": "Circuits",
    "groebner": "Reduced Gröbner basis for a degree-lex order",
    "universal": "Universal Gröbner basis or its bounds",
    "markov": "Universal Markov basis and Markov degrees",
    "indispensable": "Indispensable binomials",
    "robustness": "Four robustness verdicts",
    "shared-path-report": "Closed-form Graver basis of two balanced cycles",
}

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_RESOURCE = 2


def _order(text: str) -> List[str]:
    return [label.strip() for label in text.split(",") if label.strip()]


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="wog-toric",
        description="Toric ideals of vertex-weighted oriented graphs",
    )
    subparsers = parser.add_subparsers(dest="command", help="Available commands")
    for name, summary in COMMANDS.items():
        sub = subparsers.add_parser(name, help=summary)
        sub.add_argument("graph", help="Graph JSON file")
        sub.add_argument(
            "--order",
            type=_order,
            default=[],
            help="Variable priority, largest first, e.g. e1,e7",
        )
        sub.add_argument("--cap-fiber", type=int, help="Maximum fiber size")
        sub.add_argument("--cap-graver", type=int, help="Maximum Graver completion set")
        sub.add_argument("--max-cycles", type=int, help="Maximum number of cycles")
        sub.add_argument(
            "--samples", type=int, help="Term orders sampled for universal bounds"
        )
        sub.add_argument("--json", action="store_true", help="JSON output")
        sub.add_argument("--verbose", "-v", action="count", default=0, help="Log more")
    return parser


def _configure_logging(verbosity: int) -> None:
    level = logging.WARNING
    if verbosity == 1:
        level = logging.INFO
    elif verbosity > 1:
        level = logging.DEBUG
    logging.basicConfig(level=level, stream=sys.stderr)


def run(argv: Optional[Sequence[str]] = None) -> int:
    """Parse ``argv``, run the command and return the exit code."""
    parser = build_parser()
    args = parser.parse_args(argv)
    if not args.command:
        parser.print_help()
        return EXIT_INVALID
    _configure_logging(args.verbose)

    try:
        request = AnalysisRequest(
            input_path=args.graph,
            command=args.command,
            priority=args.order,
            cap_fiber=args.cap_fiber,
            cap_graver=args.cap_graver,
            max_cycles=args.max_cycles,
            samples=args.samples,
            output_format="json" if args.json else "text",
        )
    except ValidationError as e:
        print(f"Error: invalid arguments: {e}", file=sys.stderr)
        return EXIT_INVALID

    try:
        result = run_command(request)
    except (ResourceCapExceeded, InternalConsistencyError) as e:
        print(f"Error: {e}", file=sys.stderr)
        return EXIT_RESOURCE
    except WogToricError as e:
        print(f"Error: {e}", file=sys.stderr)
        return EXIT_INVALID

    print(result.render(request.output_format))
    return EXIT_OK


def main() -> None:
    """CLI entry point."""
    sys.exit(run())


if __name__ == "__main__":
    main()
