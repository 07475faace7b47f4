"""Data models and validation schemas for toric analyses."""

from typing import Dict, List, Literal, Optional, Tuple

from pydantic import BaseModel, Field, model_validator


class VertexSpec(BaseModel):
    """Vertex record of the graph JSON format."""
    id: str = Field(..., min_length=1)
    w: int = Field(..., ge=1)


class EdgeSpec(BaseModel):
    """Directed edge record of the graph JSON format."""
    id: str = Field(..., min_length=1)
    tail: str = Field(..., min_length=1)
    head: str = Field(..., min_length=1)


class GraphSpec(BaseModel):
    """Graph JSON document; edge order defines e_1..e_m."""
    vertices: List[VertexSpec] = Field(..., min_length=1)
    edges: List[EdgeSpec] = Field(default_factory=list)

    @model_validator(mode="after")
    def check_simple_graph(self) -> "GraphSpec":
        vertex_ids = set()
        for v in self.vertices:
            if v.id in vertex_ids:
                raise ValueError(f"duplicate vertex id {v.id!r}")
            vertex_ids.add(v.id)

        edge_ids = set()
        endpoints: Dict[frozenset, str] = {}
        for e in self.edges:
            if e.id in edge_ids:
                raise ValueError(f"duplicate edge id {e.id!r}")
            edge_ids.add(e.id)
            for end in (e.tail, e.head):
                if end not in vertex_ids:
                    raise ValueError(f"edge {e.id!r} uses unknown vertex {end!r}")
            if e.tail == e.head:
                raise ValueError(f"edge {e.id!r} is a self-loop on {e.tail!r}")
            pair = frozenset((e.tail, e.head))
            if pair in endpoints:
                raise ValueError(
                    f"edge {e.id!r} is parallel to edge {endpoints[pair]!r}"
                )
            endpoints[pair] = e.id
        return self


class TermOrderSpec(BaseModel):
    """Term order JSON: degree-lex with a variable priority list."""
    kind: Literal["deglex"] = "deglex"
    priority: List[str] = Field(default_factory=list)


Command = Literal[
    "cycles",
    "balance",
    "graver",
    "circuits",
    "groebner",
    "universal",
    "markov",
    "indispensable",
    "robustness",
    "shared-path-report",
]


class AnalysisRequest(BaseModel):
    """One CLI invocation."""
    input_path: str
    command: Command
    priority: List[str] = Field(default_factory=list)
    cap_fiber: Optional[int] = Field(default=None, ge=1)
    cap_graver: Optional[int] = Field(default=None, ge=1)
    max_cycles: Optional[int] = Field(default=None, ge=1)
    samples: Optional[int] = Field(default=None, ge=1)
    output_format: Literal["text", "json"] = "text"


class BasisSetResponse(BaseModel):
    """BasisSet export format."""
    matrix_hash: str
    kind: str
    elements: List[str]


class CycleRecord(BaseModel):
    vertices: List[str]
    edges: List[str]
    balanced: bool
    sources: List[str]
    sinks: List[str]


class CyclesResponse(BaseModel):
    totalCycles: int
    cycles: List[CycleRecord]


class UniversalGBResponse(BaseModel):
    certified: Optional[BasisSetResponse] = None
    lower: BasisSetResponse
    upper: BasisSetResponse


class MarkovResponse(BaseModel):
    degrees: List[List[int]]
    markov: BasisSetResponse


Verdict = Optional[bool]
Method = Literal["computational", "structural"]


class RobustnessReport(BaseModel):
    """Verdicts for the four robustness properties.

    None marks a verdict that the universal Gröbner basis bounds leave open.
    """
    strongly_robust: Verdict
    robust: Verdict
    generalized_robust: Verdict
    weakly_robust: Verdict
    methods: Dict[str, Method] = Field(default_factory=dict)
    witnesses: List[str] = Field(default_factory=list)
    certified: bool = True
    structural_agreement: Optional[bool] = None

    @model_validator(mode="after")
    def check_implications(self) -> "RobustnessReport":
        chain: List[Tuple[str, str]] = [
            ("strongly_robust", "robust"),
            ("robust", "generalized_robust"),
        ]
        for stronger, weaker in chain:
            if getattr(self, stronger) is True and getattr(self, weaker) is False:
                raise ValueError(f"{stronger} holds but {weaker} does not")
        return self


class SharedPathReportResponse(BaseModel):
    """Closed-form Graver basis of two balanced cycles sharing a path."""
    k: int
    m: int
    n: int
    minors_C_m: List[int]
    minors_C_n: List[int]
    minors_C: List[int]
    d_a: int
    d_b: int
    d_c: int
    a: List[int]
    b: List[int]
    c: List[int]
    d: List[int]
    E_1: List[Tuple[int, int]]
    E_2: List[Tuple[int, int]]
    E_3: List[Tuple[int, int]]
    minimal_E_1: List[Tuple[int, int]]
    minimal_E_2: List[Tuple[int, int]]
    minimal_E_3: List[Tuple[int, int]]
    S_1: List[List[int]]
    S_2: List[List[int]]
    S_3: List[List[int]]
    basis: BasisSetResponse
