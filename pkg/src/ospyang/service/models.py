"""Request/response schemas for the verification service."""

from __future__ import annotations

from typing import Optional

from pydantic import BaseModel, Field, field_validator

CHECK_NAMES = (
    "ybe",
    "unitarity",
    "crossing",
    "serre",
    "graded",
    "pairing",
    "dual-basis",
    "eval-factors",
    "eval-rh",
    "assemble",
    "rep",
    "gauss",
)

SCHEMA_VERSION = 1


class SuiteConfig(BaseModel):
    """One batch-verification run."""

    checks: list[str] = Field(default_factory=lambda: list(CHECK_NAMES))
    seed: int = 7
    samples: int = 25
    trunc_d: int = 6
    mode_cutoff: int = 60
    product_cutoff: int = 200
    window_mode: Optional[int] = None
    window_degree: Optional[int] = None
    tolerance: float = 1e-8
    output: str = "json"
    dump: Optional[str] = None
    jobs: int = 1

    @field_validator("checks")
    @classmethod
    def _known_checks(cls, v):
        for name in v:
            if name not in CHECK_NAMES:
                raise ValueError(f"unknown check name: {name}")
        if not v:
            raise ValueError("at least one check required")
        return v

    @field_validator("samples")
    @classmethod
    def _samples_pos(cls, v):
        if v < 1:
            raise ValueError("samples must be >= 1")
        return v

    @field_validator("trunc_d", "mode_cutoff", "product_cutoff")
    @classmethod
    def _cutoffs_nonneg(cls, v):
        if v < 0:
            raise ValueError("cutoffs must be >= 0")
        return v

    @field_validator("tolerance")
    @classmethod
    def _tol_pos(cls, v):
        if v <= 0:
            raise ValueError("tolerance must be > 0")
        return v

    @field_validator("output")
    @classmethod
    def _output_kind(cls, v):
        if v not in ("json", "text"):
            raise ValueError("output must be 'json' or 'text'")
        return v

    @field_validator("jobs")
    @classmethod
    def _jobs_pos(cls, v):
        if v < 1:
            raise ValueError("jobs must be >= 1")
        return v


class CheckRecord(BaseModel):
    name: str
    params: dict = Field(default_factory=dict)
    status: str  # pass | fail | skip
    residual_max: Optional[str] = None
    max_abs_error: Optional[float] = None
    detail: dict = Field(default_factory=dict)
    elapsed_ms: float = 0.0


class Report(BaseModel):
    schema_version: int = SCHEMA_VERSION
    config: SuiteConfig
    records: list[CheckRecord]
    verdict: str  # pass | fail

    def to_text(self) -> str:
        lines = []
        for r in self.records:
            extra = ""
            if r.residual_max is not None:
                extra = f" residual={r.residual_max}"
            elif r.max_abs_error is not None:
                extra = f" err={r.max_abs_error:.3g}"
            lines.append(f"[{r.status.upper():4s}] {r.name}{extra}")
        lines.append(f"suite: {self.verdict.upper()}")
        return "\n".join(lines) + "\n"
