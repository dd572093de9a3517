"""Pydantic request/response models for the HTTP service and the CLI.

Exact rationals are rendered as "p/q" strings; every response carries a
``schema`` version field.
"""

from __future__ import annotations

from typing import Literal, Optional

from pydantic import BaseModel, Field

SCHEMA_VERSION = 1


class GraphInput(BaseModel):
    data: str
    format: Literal["rot", "graph6"] = "rot"


class FaceReport(BaseModel):
    face: int
    length: int
    degree_walk: list[int]
    representations: list[str]
    face_class: Optional[Literal["poor", "rich"]] = None


class FacesResponse(BaseModel):
    schema_version: int = Field(default=SCHEMA_VERSION, alias="schema")
    faces: list[FaceReport]

    model_config = {"populate_by_name": True}


class VertexFlexReport(BaseModel):
    vertex: int
    types: dict[int, str]
    scores: dict[int, int]
    forb: int
    flex: int


class AnalyzeResponse(BaseModel):
    schema_version: int = Field(default=SCHEMA_VERSION, alias="schema")
    vertices: list[VertexFlexReport]
    untypeable: list[int]

    model_config = {"populate_by_name": True}


class DetectRequest(BaseModel):
    graph: GraphInput
    theorem: Literal["odd10", "pcf11"] = "odd10"


class HitModel(BaseModel):
    kind: str
    witness: dict
    theorem: str


class DetectResponse(BaseModel):
    schema_version: int = Field(default=SCHEMA_VERSION, alias="schema")
    theorem: str
    hits: list[HitModel]

    model_config = {"populate_by_name": True}


class DischargeRequest(BaseModel):
    graph: GraphInput
    theorem: Literal["odd10", "pcf11"] = "odd10"


class DischargeResponse(BaseModel):
    schema_version: int = Field(default=SCHEMA_VERSION, alias="schema")
    theorem: str
    applicable: bool
    reason: str = ""
    totals: dict[str, str]
    negatives: list[dict]
    critical: list[list]
    checklist: dict[str, bool]
    hits: int

    model_config = {"populate_by_name": True}


class SolveRequest(BaseModel):
    graph: GraphInput
    mode: Literal["odd", "pcf"] = "odd"
    max_k: int = 8


class SolveResponse(BaseModel):
    schema_version: int = Field(default=SCHEMA_VERSION, alias="schema")
    mode: str
    chromatic: int
    witness: dict[int, int]
    nodes: int
    wall_time: float

    model_config = {"populate_by_name": True}


class ColorRequest(BaseModel):
    graph: GraphInput
    theorem: Literal["odd10", "pcf11"] = "odd10"
    allow_fallback: bool = True


class ColorResponse(BaseModel):
    schema_version: int = Field(default=SCHEMA_VERSION, alias="schema")
    theorem: str
    coloring: dict[int, int]
    trace: list[dict]
    used_fallback: bool

    model_config = {"populate_by_name": True}


class GenRequest(BaseModel):
    skeleton: int
    girth: int
    policy: Literal["mixed", "uniform", "long", "even"] = "mixed"
    seed: int = 0


class GenResponse(BaseModel):
    schema_version: int = Field(default=SCHEMA_VERSION, alias="schema")
    rotation: str
    vertices: int
    edges: int
    girth: Optional[int]

    model_config = {"populate_by_name": True}


class ErrorResponse(BaseModel):
    schema_version: int = Field(default=SCHEMA_VERSION, alias="schema")
    error: str
    detail: str

    model_config = {"populate_by_name": True}
