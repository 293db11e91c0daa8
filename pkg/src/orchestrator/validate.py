"""Validate mode: build the configured sequences and evaluate them without writing reports."""

from dataclasses import dataclass, field
from datetime import datetime
from typing import Optional

from loguru import logger

from src.config.loader import AnalysisConfig
from src.errors import SeqSpecError
from src.orchestrator.builder import build_family, build_sequence


@dataclass
class ValidationResult:
    """Result of a validate run."""

    label: str
    horizon: int
    dims: dict[int, int] = field(default_factory=dict)
    selfadjoint: bool = False
    structured: bool = False
    limit: Optional[int] = None
    family_size: int = 0
    errors: list[str] = field(default_factory=list)
    warnings: list[str] = field(default_factory=list)
    run_timestamp: Optional[str] = None

    def __post_init__(self):
        if self.run_timestamp is None:
            self.run_timestamp = datetime.now().isoformat()

    @property
    def ok(self) -> bool:
        return not self.errors

    def summary_lines(self) -> list[str]:
        lines = [
            f"Sequence: {self.label}",
            f"Horizon: {self.horizon}",
            "Dimensions: " + ", ".join(f"delta({n})={d}" for n, d in self.dims.items()),
            f"Self-adjoint: {self.selfadjoint}",
            f"Structured Toeplitz: {self.structured}",
            f"Extraction family: {self.family_size} sequence(s)",
        ]
        if self.limit is not None:
            lines.append(f"Defined for n <= {self.limit}")
        lines += [f"Warning: {w}" for w in self.warnings]
        lines += [f"Error: {e}" for e in self.errors]
        return lines


def run_validate(config: AnalysisConfig, horizon: Optional[int] = None) -> ValidationResult:
    """Build the composition tree and evaluate n = 1 and n = horizon.

    Dimension mismatches, unreadable files and evaluation failures are
    collected as errors; nothing is written.
    """
    horizon = horizon or config.horizon
    logger.info(f"Validating configuration at horizon {horizon}")

    try:
        built = build_sequence(config, horizon=horizon)
    except SeqSpecError as exc:
        logger.error(f"Cannot build the sequence: {exc}")
        return ValidationResult(label="?", horizon=horizon, errors=[str(exc)])

    seq = built.sequence
    result = ValidationResult(
        label=seq.label,
        horizon=horizon,
        selfadjoint=seq.selfadjoint_hint,
        structured=built.structured is not None,
        limit=built.limit,
    )
    last = horizon
    if built.limit is not None and built.limit < horizon:
        result.warnings.append(
            f"sequence is only defined for n <= {built.limit}; commands use that horizon"
        )
        last = built.limit

    for n in sorted({1, last}):
        try:
            result.dims[n] = seq.eval(n).shape[0]
        except SeqSpecError as exc:
            result.errors.append(f"evaluation at n={n}: {exc}")
            logger.error(f"Evaluation failed at n={n}: {exc}")

    try:
        result.family_size = len(build_family(config, horizon))
    except SeqSpecError as exc:
        result.errors.append(f"extraction family: {exc}")

    if config.grid is None:
        result.warnings.append("no grid configured; spectrum and dichotomy cannot run")
    elif not seq.selfadjoint_hint:
        result.warnings.append(
            "sequence is not flagged self-adjoint; spectrum and dichotomy check every matrix"
        )

    logger.info(
        f"Validation complete: {len(result.errors)} errors, {len(result.warnings)} warnings"
    )
    return result
