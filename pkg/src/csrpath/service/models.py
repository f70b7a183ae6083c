"""Pydantic request/response models for the HTTP service.

Costs cross the wire as JSON integers with the unreached sentinel encoded
as null, so clients never have to special-case the 64-bit sentinel value.
Large results are better written server-side via the ``out`` field of a
request; the response then carries stats and a checksum instead of the
array payload.
"""

from __future__ import annotations

from typing import Literal, Optional

from pydantic import BaseModel, Field


class GraphInfo(BaseModel):
    graph_id: str
    vertices: int
    edges: int
    origin: str


class GenerateRequest(BaseModel):
    vertices: int = Field(ge=1)
    degree: int = Field(ge=0)
    max_weight: int = Field(default=100, ge=1)
    seed: int = 0


class LoadRequest(BaseModel):
    path: str
    format: Literal["auto", "text", "bin"] = "auto"


class UploadRequest(BaseModel):
    vertex_array: list[int]
    edge_array: list[int]
    weight_array: list[int]
    vertex_count: Optional[int] = None
    edge_count: Optional[int] = None


class SaveRequest(BaseModel):
    path: str
    format: Literal["text", "bin"] = "text"


class SaveResponse(BaseModel):
    path: str
    bytes_written: int


class RunStatsModel(BaseModel):
    iterations: int
    relaxations: int
    wall_ms: float
    peak_rss_kb: Optional[int] = None


class SsspRequest(BaseModel):
    source: int = Field(default=0, ge=0)
    workers: int = Field(default=1, ge=1, le=64)
    check: bool = False
    out: Optional[str] = None  # server-side costs file; omits inline costs


class SsspResponse(BaseModel):
    source: int
    costs: Optional[list[Optional[int]]] = None  # null entry = unreached
    stats: RunStatsModel
    checksum: str
    out: Optional[str] = None


class ApspRequest(BaseModel):
    sources: Optional[list[int]] = None
    source_count: Optional[int] = Field(default=None, ge=1)
    workers: int = Field(default=1, ge=1, le=64)
    check: bool = False
    out: Optional[str] = None
    memory_budget: Optional[int] = Field(default=None, ge=1)


class ApspResponse(BaseModel):
    sources: list[int]
    costs: Optional[list[list[Optional[int]]]] = None
    stats: RunStatsModel
    checksum: str
    out: Optional[str] = None


class PathRequest(BaseModel):
    source: int = Field(ge=0)
    dest: int = Field(ge=0)


class PathResponse(BaseModel):
    source: int
    dest: int
    vertices: list[int]
    cost: int


class VerifyRequest(BaseModel):
    sources: Optional[list[int]] = None
    source_count: Optional[int] = Field(default=None, ge=1)
    workers: int = Field(default=1, ge=1, le=64)


class Mismatch(BaseModel):
    source: int
    vertex: int
    engine_cost: Optional[int]
    oracle_cost: Optional[int]


class VerifyResponse(BaseModel):
    ok: bool
    sources_checked: int
    mismatches: list[Mismatch]


class BenchRequest(BaseModel):
    source_counts: list[int] = Field(min_length=1)
    repetitions: int = Field(default=1, ge=1)
    workers: int = Field(default=1, ge=1, le=64)


class BenchRecordModel(BaseModel):
    command: str
    vertices: int
    edges: int
    sources: int
    workers: int
    iterations: int
    relaxations: int
    wall_ms: float
    checksum: str


class BenchResponse(BaseModel):
    records: list[BenchRecordModel]
