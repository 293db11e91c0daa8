"""Configuration loader for seqspec analyses.

Loads an analysis description from a YAML or JSON file with environment
variable substitution and validates it using Pydantic models.
"""

import math
import os
import re
from functools import lru_cache
from pathlib import Path
from typing import Annotated, Any, Literal, Optional, Union

import yaml
from dotenv import load_dotenv
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

# Load .env file at module import time
load_dotenv()


def substitute_env_vars(obj: Any) -> Any:
    """Recursively substitute ${VAR_NAME} with environment variable values.

    Args:
        obj: Any object (dict, list, str, etc.) to process

    Returns:
        Object with environment variables substituted
    """
    if isinstance(obj, dict):
        return {k: substitute_env_vars(v) for k, v in obj.items()}
    elif isinstance(obj, list):
        return [substitute_env_vars(item) for item in obj]
    elif isinstance(obj, str):
        pattern = r"\$\{([^}]+)\}"

        def replace_var(match: re.Match) -> str:
            env_value = os.getenv(match.group(1))
            if env_value is None:
                # Keep the placeholder so validation names the field
                return match.group(0)
            return env_value

        return re.sub(pattern, replace_var, obj)
    else:
        return obj


# ---------------------------------------------------------------------------
# Building blocks
# ---------------------------------------------------------------------------

Entry = Union[float, tuple[float, float]]
MatrixLiteral = list[list[Entry]]


def check_square(matrix: MatrixLiteral) -> MatrixLiteral:
    size = len(matrix)
    if size == 0 or any(len(row) != size for row in matrix):
        raise ValueError("matrix literal must be a non-empty square list of rows")
    return matrix


class StrictModel(BaseModel):
    model_config = ConfigDict(extra="forbid")


class DimsSpec(StrictModel):
    """Dimension function delta(n)."""

    kind: Literal["linear", "explicit"] = "linear"
    slope: int = Field(default=1, ge=0)
    offset: int = 0
    values: list[int] = Field(default_factory=list)
    filtration: Optional[bool] = None

    @model_validator(mode="after")
    def explicit_needs_values(self) -> "DimsSpec":
        if self.kind == "explicit" and not self.values:
            raise ValueError("explicit dimension function needs 'values'")
        return self


class CoeffSpec(StrictModel):
    k: int
    re: float = 0.0
    im: float = 0.0


# ---------------------------------------------------------------------------
# Sequence composition tree
# ---------------------------------------------------------------------------


class IdentityNode(StrictModel):
    type: Literal["identity"]
    dims: DimsSpec = Field(default_factory=DimsSpec)


class ZeroNode(StrictModel):
    type: Literal["zero"]
    dims: DimsSpec = Field(default_factory=DimsSpec)


class DecayNode(StrictModel):
    """(scale / n^power) * I_delta(n), a zero sequence."""

    type: Literal["decay"]
    scale: float = 1.0
    power: float = Field(default=1.0, gt=0)
    dims: DimsSpec = Field(default_factory=DimsSpec)


class ExplicitNode(StrictModel):
    type: Literal["explicit"]
    matrices: list[MatrixLiteral] = Field(..., min_length=1)
    mode: Literal["cycle", "hold", "strict"] = "cycle"

    @field_validator("matrices")
    @classmethod
    def matrices_are_square(cls, v: list[MatrixLiteral]) -> list[MatrixLiteral]:
        """Reject ragged or non-square matrix literals."""
        return [check_square(m) for m in v]


class ToeplitzNode(StrictModel):
    """Structured sequence P_n T(a) P_n + P_n K P_n + R_n L R_n + G_n."""

    type: Literal["toeplitz"]
    coeffs: Optional[list[CoeffSpec]] = None
    symbol_file: Optional[str] = None
    K: Optional[MatrixLiteral] = None
    L: Optional[MatrixLiteral] = None
    k_rank: Optional[int] = Field(default=None, ge=0)
    l_rank: Optional[int] = Field(default=None, ge=0)
    noise: Optional["SequenceNode"] = None
    strict: bool = True

    @field_validator("K", "L")
    @classmethod
    def blocks_are_square(cls, v: Optional[MatrixLiteral]) -> Optional[MatrixLiteral]:
        """Reject ragged or non-square perturbation blocks."""
        return None if v is None else check_square(v)

    @model_validator(mode="after")
    def one_symbol_source(self) -> "ToeplitzNode":
        if (self.coeffs is None) == (self.symbol_file is None):
            raise ValueError("toeplitz node needs exactly one of 'coeffs' or 'symbol_file'")
        return self


class UnaryNode(StrictModel):
    type: Literal["adjoint"]
    arg: "SequenceNode"


class ScaleNode(StrictModel):
    type: Literal["scale"]
    factor: Entry
    arg: "SequenceNode"


class RestrictNode(StrictModel):
    """Subsequence by an explicit index list, a file, or eta(n) = scale*n + offset."""

    type: Literal["restrict"]
    arg: "SequenceNode"
    eta: Optional[list[int]] = None
    eta_file: Optional[str] = None
    scale: Optional[int] = Field(default=None, ge=1)
    offset: int = 0
    tail_step: Optional[int] = Field(default=None, ge=1)

    @model_validator(mode="after")
    def one_index_source(self) -> "RestrictNode":
        sources = [self.eta is not None, self.eta_file is not None, self.scale is not None]
        if sum(sources) != 1:
            raise ValueError("restrict node needs exactly one of 'eta', 'eta_file' or 'scale'")
        return self


class BinaryNode(StrictModel):
    type: Literal["add", "mul", "alternate", "direct_sum"]
    args: list["SequenceNode"] = Field(..., min_length=2, max_length=2)


SequenceNode = Annotated[
    Union[
        IdentityNode,
        ZeroNode,
        DecayNode,
        ExplicitNode,
        ToeplitzNode,
        UnaryNode,
        ScaleNode,
        RestrictNode,
        BinaryNode,
    ],
    Field(discriminator="type"),
]

for _node in (ToeplitzNode, UnaryNode, ScaleNode, RestrictNode, BinaryNode):
    _node.model_rebuild()


# ---------------------------------------------------------------------------
# Tolerances and rules
# ---------------------------------------------------------------------------


class CountingRules(StrictModel):
    """Thresholds separating growing from bounded eigenvalue counts."""

    c_min: int = Field(default=4, ge=1, description="Essential: count(h) must reach c_min")
    growth: float = Field(
        default=1.5, gt=1.0, description="Essential: count(h) >= growth * count(h/2)"
    )
    c_max: int = Field(
        default=32, ge=0, description="Transient: plateau bound must not exceed c_max"
    )
    collapse_ratio: float = Field(
        default=0.5,
        ge=0.0,
        le=1.0,
        description="Essential: tail counts never drop below collapse_ratio * count(h/2)",
    )
    endpoint_tol: float = Field(
        default=1e-9, ge=0.0, description="Eigenvalues this close to an endpoint are outside"
    )


class Tolerances(StrictModel):
    tol: float = Field(default=1e-6, gt=0, description="Compactness tolerance")
    zero_tol: float = Field(
        default=0.05, gt=0, description="Zero-sequence / essential rank tolerance"
    )
    tau: float = Field(default=1e-3, gt=0, description="Fredholm floor")
    stability_tol: float = Field(default=1e-4, gt=0)
    trend_factor: float = Field(default=0.9, gt=0, le=1)
    eps_ladder: list[float] = Field(default_factory=lambda: [0.4, 0.2, 0.1, 0.05], min_length=1)
    rules: CountingRules = Field(default_factory=CountingRules)

    @field_validator("eps_ladder")
    @classmethod
    def ladder_descending_positive(cls, v: list[float]) -> list[float]:
        """Ladder must be strictly descending and positive."""
        if any(e <= 0 for e in v):
            raise ValueError("eps_ladder entries must be positive")
        if any(a <= b for a, b in zip(v, v[1:])):
            raise ValueError("eps_ladder must be strictly descending")
        return v


class GridSpec(StrictModel):
    min: float
    max: float
    step: float = Field(..., gt=0)

    @model_validator(mode="after")
    def ordered(self) -> "GridSpec":
        if self.max < self.min:
            raise ValueError("grid max must be >= min")
        return self

    def points(self) -> list[float]:
        """min, min + step, ..., up to max (inclusive within rounding)."""
        count = int(math.floor((self.max - self.min) / self.step + 1e-9)) + 1
        return [round(self.min + i * self.step, 12) for i in range(count)]


class ExtractionSpec(StrictModel):
    epsilon: float = Field(default=0.01, gt=0)
    k_max: int = Field(default=3, ge=0, description="0 tracks norms only")
    min_length: Optional[int] = Field(default=None, ge=1)
    max_family: int = Field(default=16, ge=1, description="Largest family size accepted")


class OutputConfig(StrictModel):
    dir: str = "reports"
    timestamp: bool = True
    plot_data: bool = False
    log_file: Optional[str] = None


class AnalysisConfig(StrictModel):
    """Root analysis configuration."""

    sequence: SequenceNode
    family: list[SequenceNode] = Field(
        default_factory=list, description="Sequences for extraction; defaults to [sequence]"
    )
    horizon: int = Field(default=128, ge=16)
    k_max: int = Field(default=16, ge=1)
    tolerances: Tolerances = Field(default_factory=Tolerances)
    grid: Optional[GridSpec] = None
    cross_check: list[float] = Field(default_factory=lambda: [0.0])
    extraction: ExtractionSpec = Field(default_factory=ExtractionSpec)
    output: OutputConfig = Field(default_factory=OutputConfig)
    base_dir: Optional[Path] = Field(default=None, exclude=True)

    def resolve(self, path: str) -> Path:
        """Resolve a referenced file relative to the config file."""
        candidate = Path(path)
        if candidate.is_absolute() or self.base_dir is None:
            return candidate
        return self.base_dir / candidate


@lru_cache(maxsize=8)
def get_config(config_path: str | Path = "config.yaml") -> AnalysisConfig:
    """Load and validate an analysis configuration from YAML or JSON.

    This function is cached - subsequent calls with the same path return the
    same AnalysisConfig instance.

    Args:
        config_path: Path to the configuration file

    Returns:
        Validated AnalysisConfig instance

    Raises:
        FileNotFoundError: If config file not found
        ValueError: If the file is empty (pydantic ValidationError, a
            ValueError subclass, for invalid content)
    """
    config_path = Path(config_path)
    if not config_path.exists():
        raise FileNotFoundError(f"Config file not found: {config_path}")

    with open(config_path, "r", encoding="utf-8") as f:
        raw_config = yaml.safe_load(f)

    if raw_config is None:
        raise ValueError(f"Config file {config_path} is empty or invalid YAML")

    config = AnalysisConfig.model_validate(substitute_env_vars(raw_config))
    config.base_dir = config_path.resolve().parent
    return config


def reload_config(config_path: str | Path = "config.yaml") -> AnalysisConfig:
    """Reload configuration from file (bypasses cache)."""
    get_config.cache_clear()
    return get_config(config_path)
