"""Pydantic request/response models for the polycond service.

The JSON report schema mirrors ScenarioReport 1:1 and is versioned through
the ``polycond_schema`` field; emitters and the service share it.
"""

from __future__ import annotations

from typing import Any, Literal, Optional, Union

from pydantic import BaseModel, ConfigDict, Field

from .scenarios import (
    C20_FIELD_LEVELS,
    C20_FIELD_REGION,
    RUNGE_DEGREES,
    S20_FIELD_LEVELS,
    S20_FIELD_REGION,
    WILKINSON_FIELD_LEVELS,
    WILKINSON_FIELD_REGION,
)

ExactStr = Union[str, int, float]


class _Request(BaseModel):
    model_config = ConfigDict(extra="forbid")


class RungeEquiRequest(_Request):
    degrees: list[int] = Field(default=list(RUNGE_DEGREES), min_length=1)
    samples: int = Field(default=2001, ge=2, le=200_001)


class RungeChebRequest(_Request):
    degrees: list[int] = Field(default=list(RUNGE_DEGREES), min_length=1)
    samples: int = Field(default=2001, ge=2, le=200_001)
    precision: Optional[int] = Field(default=None, ge=5, le=10_000)


class WilkinsonRequest(_Request):
    n: int = Field(default=20, ge=2, le=300)
    samples: int = Field(default=2001, ge=2, le=200_001)


class WilkinsonScaledRequest(_Request):
    n: int = Field(default=20, ge=2, le=300)
    target: Literal["symmetric", "zero-two", "zero-one"] = "symmetric"
    samples: int = Field(default=2001, ge=2, le=200_001)


class SecondRequest(_Request):
    n: int = Field(default=20, ge=2, le=100)
    samples: int = Field(default=2001, ge=2, le=200_001)
    include_fields: bool = True
    grid: tuple[int, int] = (128, 128)
    c_region: tuple[float, float, float, float] = C20_FIELD_REGION
    c_levels: list[float] = Field(default=list(C20_FIELD_LEVELS))
    s_region: tuple[float, float, float, float] = S20_FIELD_REGION
    s_levels: list[float] = Field(default=list(S20_FIELD_LEVELS))
    precision: Optional[int] = Field(default=None, ge=5, le=10_000)


class PseudozeroRequest(_Request):
    poly: str = "wilkinson20"
    region: tuple[float, float, float, float] = WILKINSON_FIELD_REGION
    grid: tuple[int, int] = (512, 512)
    levels: list[float] = Field(default=list(WILKINSON_FIELD_LEVELS), min_length=1)
    precision: Optional[int] = Field(default=None, ge=5, le=10_000)
    weights: Optional[list[ExactStr]] = None


class ConditionRequest(_Request):
    poly: str = "wilkinson20"
    interval: tuple[ExactStr, ExactStr] = (0, 20)
    samples: int = Field(default=2001, ge=2, le=200_001)
    basis: Literal["monomial", "lagrange"] = "monomial"
    relative: bool = False
    precision: Optional[int] = Field(default=None, ge=5, le=10_000)


class WitnessRequest(_Request):
    poly: str = "wilkinson20"
    z_re: ExactStr = 0
    z_im: ExactStr = 0
    precision: Optional[int] = Field(default=None, ge=5, le=10_000)
    weights: Optional[list[ExactStr]] = None


class CurveModel(BaseModel):
    label: str
    x: list[float]
    values_log10: list[Optional[float]]
    nonfinite: dict[str, str]


class FieldModel(BaseModel):
    label: str
    region: list[float]
    resolution: list[int]
    levels: list[float]
    digits: int
    values_log10: list[list[float]]
    contours: dict[str, list[list[list[float]]]]
    interior_mask_count: int


class ReportResponse(BaseModel):
    polycond_schema: int
    name: str
    curves: list[CurveModel]
    fields: list[FieldModel]
    summary: dict[str, Any]


class WitnessResponse(BaseModel):
    polycond_schema: int
    name: Literal["witness"]
    poly: str
    z: list[float]
    digits: int
    indicator: float
    indicator_log10: Optional[float]
    deltas: list[list[float]]
    max_rel_delta: float
    residual_abs: float


class ErrorDetail(BaseModel):
    kind: str
    message: str
