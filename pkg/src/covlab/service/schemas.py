"""Request and response models for the covlab service.

Group and chain specs travel as plain JSON objects and are validated
by the core constructors, so the models here pin the envelope shape
while the mathematical validation stays in one place.
"""

from __future__ import annotations

from typing import Any, Literal

from pydantic import BaseModel, Field

__all__ = [
    "ValidateRequest",
    "ValidateResponse",
    "CovRequest",
    "CovResponse",
    "FactorizeRequest",
    "FactorizeResponse",
    "CellsRequest",
    "CellsResponse",
    "ChainWitnessRequest",
    "ChainWitnessResponse",
    "SupportCellsRequest",
    "SupportCellsResponse",
    "SupportWitnessRequest",
    "SupportWitnessResponse",
    "PhiRequest",
    "PhiResponse",
    "TowerRequest",
    "ReportRequest",
    "ReportResponse",
    "HealthResponse",
    "ErrorResponse",
]


class ValidateRequest(BaseModel):
    group: dict


class ValidateResponse(BaseModel):
    ok: bool
    kind: str
    order: int | None
    label: str


class CovRequest(BaseModel):
    group: dict
    set: list[Any]
    mode: Literal["exact", "greedy", "bounds"] = "exact"
    budget: int | None = None
    canonical: bool = False


class CovResponse(BaseModel):
    value: int | None = None
    method: str
    witness: list[Any] | None = None
    nodes_explored: int | None = None
    proven_optimal: bool | None = None
    lower: int | None = None
    upper: int | None = None


class FactorizeRequest(BaseModel):
    group: dict
    chain: dict | None = None
    element: Any


class FactorizeResponse(BaseModel):
    element: Any
    factors: list[dict]
    label: list[int]


class CellsRequest(BaseModel):
    group: dict
    chain: dict | None = None
    offset_bound: int = 10
    max_support: int | None = None
    include_members: bool = False


class CellsResponse(BaseModel):
    region_size: int
    cells: list[dict]


class ChainWitnessRequest(BaseModel):
    group: dict
    chain: dict | None = None
    k: list[Any] = Field(default_factory=list)
    s: list[int]
    offset_bound: int = 10
    max_support: int | None = None
    threads: int = 1


class ChainWitnessResponse(BaseModel):
    h: Any
    report: dict


class SupportCellsRequest(BaseModel):
    group: dict
    max_n: int | None = None
    cov_per_cell: bool = False
    budget: int | None = None


class SupportCellsResponse(BaseModel):
    rows: list[dict]


class SupportWitnessRequest(BaseModel):
    group: dict
    k: list[Any] = Field(default_factory=list)
    n: int = 1
    offset_bound: int = 10
    max_support: int | None = None
    threads: int = 1


class SupportWitnessResponse(BaseModel):
    h: Any
    report: dict


class PhiRequest(BaseModel):
    group: dict
    n: int
    mode: Literal["exhaustive", "random"] = "exhaustive"
    iterations: int = 100
    seed: int | None = None
    budget: int | None = None


class PhiResponse(BaseModel):
    group: str
    n: int
    phi_value: int
    partition: list[list[Any]]
    mode: str
    partitions_examined: int
    seed: int | None
    complete: bool
    exceeds_n: bool


class TowerRequest(BaseModel):
    family: dict
    n_values: list[int] = Field(default_factory=lambda: [1])
    budget: int | None = None
    timing: bool = False


class ReportRequest(BaseModel):
    config: dict
    format: Literal["json", "csv"] = "json"


class ReportResponse(BaseModel):
    rows: list[dict]
    text: str


class HealthResponse(BaseModel):
    status: str
    version: str


class ErrorResponse(BaseModel):
    error: str
    message: str
    exit_code: int
