"""Pydantic models for input files and emitted reports."""

from datetime import datetime
from typing import Literal, Optional

from pydantic import BaseModel, ConfigDict, Field, model_validator


# ---------------------------------------------------------------------------
# Inputs
# ---------------------------------------------------------------------------


class SymbolCoefficient(BaseModel):
    """One Fourier coefficient a_k = re + i*im."""

    model_config = ConfigDict(extra="forbid")

    k: int
    re: float = 0.0
    im: float = 0.0


class SymbolFile(BaseModel):
    """Symbol file: explicit coefficients or samples on a uniform grid."""

    model_config = ConfigDict(extra="forbid")

    coeffs: Optional[list[SymbolCoefficient]] = None
    samples: Optional[list[tuple[float, float]]] = None

    @model_validator(mode="after")
    def exactly_one_source(self) -> "SymbolFile":
        """Reject files with both or neither of coeffs/samples."""
        if (self.coeffs is None) == (self.samples is None):
            raise ValueError("symbol file needs exactly one of 'coeffs' or 'samples'")
        if self.samples is not None and not self.samples:
            raise ValueError("'samples' must not be empty")
        return self


class EtaFile(BaseModel):
    """Restriction file written by the extractor: {"eta": [...]} or a bare array."""

    model_config = ConfigDict(extra="forbid")

    eta: list[int] = Field(..., min_length=1)


# ---------------------------------------------------------------------------
# Reports
# ---------------------------------------------------------------------------


class ReportBase(BaseModel):
    """Common header of every JSON report."""

    model_config = ConfigDict(extra="forbid")

    command: str = ""
    sequence: str = ""
    horizon: int = 0
    generated_at: Optional[datetime] = None


class CompactnessReport(ReportBase):
    verdict: Literal["compact", "not_compact", "undecided"]
    ess_rank: Optional[int] = None
    witness_k: Optional[int] = None
    floor: Optional[float] = None
    tol: float
    tail_suprema: list[float] = Field(description="s_k for k = 1..k_max")


class EssentialRankReport(ReportBase):
    ess_rank: Optional[int] = Field(description="None means infinite within k_max")
    tol: float
    k_max: int


class FredholmReport(ReportBase):
    verdict: Literal["fredholm", "not_normally_solvable", "undecided"]
    k: Optional[int] = None
    floor: Optional[float] = None
    tau: float
    tail_infima: list[Optional[float]] = Field(description="liminf estimate of sigma_k")
    zero_rows: list[bool] = Field(description="sigma_k row passes the zero-sequence test")


class CountSummary(BaseModel):
    eps: float
    first_quarter_max: int
    full_max: int
    count_half: int
    count_final: int
    tail_min: int


class ClassificationRecord(BaseModel):
    """Per-lambda verdict with its evidence."""

    model_config = ConfigDict(extra="forbid", populate_by_name=True)

    lam: float = Field(alias="lambda")
    verdict: Literal["essential", "transient", "undecided"]
    eps: Optional[float] = None
    bound: Optional[int] = None
    growth: Optional[float] = None
    counts_summary: list[CountSummary]


class SpectrumReport(ReportBase):
    essential: list[float]
    undecided: list[float]
    non_transient: list[float]
    bound_check: bool = Field(description="non-transient points lie within sup_norm + max eps")
    points: list[ClassificationRecord]


class DichotomyReport(ReportBase):
    dichotomy: bool
    essential: list[float]
    transient: list[float]
    undecided: list[float]
    points: list[ClassificationRecord]


class CrossCheckReport(ReportBase):
    model_config = ConfigDict(extra="forbid", populate_by_name=True)

    lam: float = Field(alias="lambda")
    agreement: Literal["agree-transient", "agree-essentialish", "conflict", "undecided"]
    classification: ClassificationRecord
    fredholm: FredholmReport


class CrossCheckSuite(ReportBase):
    """Cross-checks at every configured lambda."""

    conflicts: int
    undecided: int
    checks: list[CrossCheckReport]


class OscillationRecord(BaseModel):
    sequence: int
    k: int = Field(description="0 is the norm, k >= 1 is Sigma_k")
    oscillation: float


class ExtractionReport(ReportBase):
    success: bool
    epsilon: float
    eta: list[int]
    verified: bool
    oscillations: list[OscillationRecord]


class StabilityReport(ReportBase):
    verdict: Literal["stable", "unstable", "undecided"]
    direct: Literal["stable", "unstable"]
    cross_check: Literal["stable", "unstable"]
    sigma_floor: float
    mid_quarter_min: float
    last_quarter_min: float
    w_sigma: dict[int, float]
    wtilde_sigma: dict[int, float]
    winding_number: Optional[int] = None
    tol: float


class FractalityReport(ReportBase):
    norm_oscillation: float
    hausdorff_drift: float
    sample_indices: list[int]
