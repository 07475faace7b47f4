"""Response formatting for CLI text output and JSON payloads."""

from typing import Any, Dict, List, Sequence

from ..algebra.binomials import BasisSet
from ..algebra.graph import OrientedCycle, cycle_sources_sinks, is_balanced
from ..algebra.graver import SharedPathGraverReport
from ..algebra.groebner import UniversalGBReport
from ..algebra.linalg import IntegerVector
from ..algebra.markov import FiberGraph
from ..algebra.models import (
    BasisSetResponse,
    CycleRecord,
    CyclesResponse,
    MarkovResponse,
    RobustnessReport,
    SharedPathReportResponse,
    UniversalGBResponse,
)


class ResponseFormatter:
    """Turn engine results into response models and canonical text."""

    @staticmethod
    def format_basis(basis: BasisSet) -> BasisSetResponse:
        return BasisSetResponse(**basis.export())

    @staticmethod
    def format_cycles(cycles: Sequence[OrientedCycle]) -> CyclesResponse:
        records = []
        for c in cycles:
            sources, sinks = cycle_sources_sinks(c)
            records.append(
                CycleRecord(
                    vertices=list(c.vertices),
                    edges=list(c.edge_labels()),
                    balanced=is_balanced(c),
                    sources=sources,
                    sinks=sinks,
                )
            )
        return CyclesResponse(totalCycles=len(records), cycles=records)

    @staticmethod
    def format_universal(report: UniversalGBReport) -> UniversalGBResponse:
        return UniversalGBResponse(
            certified=(
                ResponseFormatter.format_basis(report.certified)
                if report.certified is not None
                else None
            ),
            lower=ResponseFormatter.format_basis(report.lower),
            upper=ResponseFormatter.format_basis(report.upper),
        )

    @staticmethod
    def format_markov(
        fibers: Sequence[FiberGraph], markov: BasisSet
    ) -> MarkovResponse:
        return MarkovResponse(
            degrees=[list(f.degree) for f in fibers],
            markov=ResponseFormatter.format_basis(markov),
        )

    @staticmethod
    def format_shared_path_report(
        report: SharedPathGraverReport,
    ) -> SharedPathReportResponse:
        def vectors(items: Sequence[IntegerVector]) -> List[List[int]]:
            return [list(v) for v in items]

        return SharedPathReportResponse(
            k=report.k,
            m=report.m,
            n=report.n,
            minors_C_m=list(report.minors_C_m),
            minors_C_n=list(report.minors_C_n),
            minors_C=list(report.minors_C),
            d_a=report.d_a,
            d_b=report.d_b,
            d_c=report.d_c,
            a=list(report.a),
            b=list(report.b),
            c=list(report.c),
            d=list(report.d),
            E_1=list(report.E[0]),
            E_2=list(report.E[1]),
            E_3=list(report.E[2]),
            minimal_E_1=list(report.minimal_E[0]),
            minimal_E_2=list(report.minimal_E[1]),
            minimal_E_3=list(report.minimal_E[2]),
            S_1=vectors(report.S[0]),
            S_2=vectors(report.S[1]),
            S_3=vectors(report.S[2]),
            basis=ResponseFormatter.format_basis(report.basis),
        )

    @staticmethod
    def basis_text(basis: BasisSet) -> str:
        return "\n".join(basis.strings())

    @staticmethod
    def cycles_text(response: CyclesResponse, balance_only: bool = False) -> str:
        lines = []
        for record in response.cycles:
            status = "balanced" if record.balanced else "unbalanced"
            if balance_only:
                lines.append(f"{'-'.join(record.edges)}: {status}")
                continue
            lines.append(
                f"{'-'.join(record.vertices)} [{','.join(record.edges)}] {status} "
                f"sources={','.join(record.sources) or '-'} "
                f"sinks={','.join(record.sinks) or '-'}"
            )
        return "\n".join(lines)

    @staticmethod
    def robustness_text(report: RobustnessReport) -> str:
        def show(value: Any) -> str:
            return "undetermined" if value is None else str(value).lower()

        lines = [
            f"strongly_robust: {show(report.strongly_robust)}",
            f"robust: {show(report.robust)}",
            f"generalized_robust: {show(report.generalized_robust)}",
            f"weakly_robust: {show(report.weakly_robust)}",
            f"certified: {show(report.certified)}",
        ]
        if report.structural_agreement is not None:
            lines.append(f"structural_agreement: {show(report.structural_agreement)}")
        lines.extend(f"witness: {w}" for w in report.witnesses)
        return "\n".join(lines)

    @staticmethod
    def markov_text(response: MarkovResponse) -> str:
        lines = [f"degree: {tuple(d)}" for d in response.degrees]
        lines.extend(response.markov.elements)
        return "\n".join(lines)

    @staticmethod
    def universal_text(response: UniversalGBResponse) -> str:
        if response.certified is not None:
            return "certified:\n" + "\n".join(response.certified.elements)
        lines = ["lower:"] + response.lower.elements
        lines += ["upper:"] + response.upper.elements
        return "\n".join(lines)

    @staticmethod
    def shared_path_text(response: SharedPathReportResponse) -> str:
        def pairs(items: Sequence[Any]) -> str:
            return "{" + ", ".join(f"({p}, {q})" for p, q in items) + "}"

        def vector(v: Sequence[int]) -> str:
            return "(" + ", ".join(str(x) for x in v) + ")"

        payload: Dict[str, Any] = response.model_dump()
        lines = [f"k = {response.k}, m = {response.m}, n = {response.n}"]
        for key in ("minors_C_m", "minors_C_n", "minors_C"):
            lines.append(f"{key} = {vector(payload[key])}")
        lines.append(
            f"d_a = {response.d_a}, d_b = {response.d_b}, d_c = {response.d_c}"
        )
        for key in ("a", "b", "c"):
            lines.append(f"{key} = {vector(payload[key])}")
        lines.append(
            ", ".join(f"d_{i} = {x}" for i, x in enumerate(response.d, start=1))
        )
        for i in (1, 2, 3):
            lines.append(f"E_{i} = {pairs(payload[f'E_{i}'])}")
            lines.append(f"minimal E_{i} = {pairs(payload[f'minimal_E_{i}'])}")
        for i in (1, 2, 3):
            body = ", ".join(vector(v) for v in payload[f"S_{i}"])
            lines.append(f"S_{i} = {{{body}}}")
        lines.append("basis:")
        lines.extend(response.basis.elements)
        return "\n".join(lines)
