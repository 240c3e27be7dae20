"""Pydantic models for command input and every JSON document the toolkit emits."""
from typing import List, Literal, Optional, Tuple

from pydantic import BaseModel, Field, field_validator

from app.kr.tensor_spec import TensorSpec


class JobSpec(BaseModel):
    """One command invocation: what to compute and how to print it."""

    command: Literal["m", "x", "tree", "vtree", "crystal", "verify"]
    type: str
    tensor: List[Tuple[int, int]] = Field(default_factory=list)
    weight: Optional[List[int]] = None
    format: Literal["json", "dot", "text"] = "text"
    graph_cap: int = 1_000_000

    @field_validator("tensor")
    @classmethod
    def _positive_factors(cls, value):
        for r, s in value:
            if r < 1 or s < 1:
                raise ValueError(f"tensor factor ({r},{s}) needs r, s >= 1")
        return value

    def tensor_spec(self) -> TensorSpec:
        return TensorSpec(tuple(self.tensor))


class PolynomialOut(BaseModel):
    text: str
    terms: List[Tuple[str, int]]


class MResult(BaseModel):
    type: str
    tensor: List[Tuple[int, int]]
    weight: List[int]
    polynomial: PolynomialOut
    configurations: List[str]


class XResult(BaseModel):
    type: str
    tensor: List[Tuple[int, int]]
    weight: List[int]
    polynomial: PolynomialOut
    paths: List[str]


class KleberNodeOut(BaseModel):
    id: int
    depth: int
    parent: Optional[int]
    weight: List[int]
    edge: Optional[List[int]]
    config: List[List[int]]
    selected: bool = True
    superlattice: bool = False


class KleberTreeOut(BaseModel):
    type: str
    tensor: List[Tuple[int, int]]
    virtual: bool
    ambient_type: str
    nodes: List[KleberNodeOut]


class CrystalVertexOut(BaseModel):
    key: str
    label: str
    weight: List[int]


class CrystalArcOut(BaseModel):
    source: str
    target: str
    index: int


class CrystalGraphOut(BaseModel):
    type: str
    tensor: List[Tuple[int, int]]
    highest: str
    vertices: List[CrystalVertexOut]
    arcs: List[CrystalArcOut]


class CaseResult(BaseModel):
    key: str
    check: str
    passed: bool
    failure_class: Optional[str] = None
    detail: dict = Field(default_factory=dict)


class VerifyReport(BaseModel):
    budget: str
    total: int
    failures: int
    cases: List[CaseResult]


class RunSummary(BaseModel):
    id: str
    name: str
    status: Optional[str]
    duration_ms: Optional[int]
    metadata: dict = Field(default_factory=dict)


SCHEMAS = {
    "job": JobSpec,
    "m": MResult,
    "x": XResult,
    "tree": KleberTreeOut,
    "crystal": CrystalGraphOut,
    "verify": VerifyReport,
}
