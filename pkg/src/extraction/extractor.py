"""Diagonal extraction of subsequences along which tracked statistics converge.

For a finite family of sequences the statistics are the norms (k_max = 0)
or the singular values Sigma_1..Sigma_kmax. Each statistic in turn, in
family order and then by k, narrows the current index set to the most
populous bin of width epsilon/2, a finite-scale stand-in for choosing a
convergent subsequence. Later statistics only refine earlier choices, so
the result is nested exactly like the diagonal argument, and it depends
on the order of the family.
"""

import math
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np
import numpy.typing as npt
from loguru import logger

from src.asymptotics import singular_profile
from src.errors import ConfigurationError
from src.linalg import extreme_singular_values
from src.models import ExtractionReport, OscillationRecord
from src.sequences import MatrixSequence, Restriction, map_indices, restrict

MAX_FAMILY = 16

StatKey = tuple[int, int]


def default_min_length(horizon: int) -> int:
    return max(8, horizon // 16)


def tail(values: npt.NDArray) -> npt.NDArray:
    """The last two thirds of ``values`` (at least one entry)."""
    size = len(values)
    keep = max(1, math.ceil(2 * size / 3))
    return values[size - keep :]


def oscillation(values) -> float:
    """max - min over the tail."""
    picked = tail(np.asarray(values, dtype=np.float64))
    return float(picked.max() - picked.min()) if picked.size else 0.0


def tracked_ks(k_max: int) -> list[int]:
    """k = 0 stands for the norm, tracked alone when k_max = 0."""
    return [0] if k_max == 0 else list(range(1, k_max + 1))


@dataclass
class ExtractionRequest:
    sequences: Sequence[MatrixSequence]
    horizon: int
    epsilon: float
    k_max: int = 0
    min_length: Optional[int] = None
    max_family: int = MAX_FAMILY

    def __post_init__(self):
        if not self.sequences:
            raise ConfigurationError("extraction request has no sequences")
        if len(self.sequences) > self.max_family:
            raise ConfigurationError(
                f"family of {len(self.sequences)} sequences exceeds the cap of {self.max_family}"
            )
        if self.epsilon <= 0:
            raise ConfigurationError(f"epsilon must be positive, got {self.epsilon}")
        if self.k_max < 0:
            raise ConfigurationError(f"k_max must be >= 0, got {self.k_max}")
        if self.horizon < 4:
            raise ConfigurationError(f"extraction horizon must be >= 4, got {self.horizon}")
        if self.min_length is None:
            self.min_length = default_min_length(self.horizon)
        if not 1 <= self.min_length <= self.horizon:
            raise ConfigurationError(
                f"min_length {self.min_length} must lie in 1..horizon ({self.horizon})"
            )


@dataclass
class ExtractionResult:
    eta: Restriction
    oscillations: dict[StatKey, float]
    success: bool
    epsilon: float
    horizon: int
    refined: list[StatKey] = field(default_factory=list)

    @property
    def indices(self) -> list[int]:
        return self.eta.to_list()

    def to_report(self, verified: bool, label: str = "") -> ExtractionReport:
        return ExtractionReport(
            command="restrict",
            sequence=label,
            horizon=self.horizon,
            success=self.success,
            epsilon=self.epsilon,
            eta=self.indices,
            verified=verified,
            oscillations=[
                OscillationRecord(sequence=i, k=k, oscillation=v)
                for (i, k), v in sorted(self.oscillations.items())
            ],
        )


def statistic_tables(
    sequences: Sequence[MatrixSequence], horizon: int, k_max: int
) -> dict[StatKey, npt.NDArray[np.float64]]:
    """Tracked statistics over n = 1..horizon, keyed by (family index, k)."""
    tables: dict[StatKey, npt.NDArray[np.float64]] = {}
    for i, seq in enumerate(sequences):
        profile = singular_profile(seq, horizon, max(k_max, 1), start=1)
        for k in tracked_ks(k_max):
            tables[(i, k)] = profile.largest(max(k, 1)).copy()
    return tables


def most_populous_bin(values: npt.NDArray[np.float64], width: float) -> npt.NDArray[np.bool_]:
    """Mask of the fullest bin floor((v - min) / width); ties go to the lowest bin."""
    bins = np.floor((values - values.min()) / width).astype(np.int64)
    labels, counts = np.unique(bins, return_counts=True)
    best = labels[np.argmax(counts)]  # first maximum = lowest label
    return bins == best


def extract_convergent(req: ExtractionRequest) -> ExtractionResult:
    """Nested most-populous-bin refinement over every tracked statistic."""
    tables = statistic_tables(req.sequences, req.horizon, req.k_max)
    indices = np.arange(1, req.horizon + 1)
    refined: list[StatKey] = []
    success = True

    for key, table in tables.items():
        values = table[indices - 1]
        if oscillation(values) <= req.epsilon:
            continue
        keep = most_populous_bin(values, req.epsilon / 2)
        if int(keep.sum()) < req.min_length:
            logger.info(
                f"Extraction stops at statistic {key}: {int(keep.sum())} indices "
                f"left, minimum is {req.min_length}"
            )
            success = False
            break
        indices = indices[keep]
        refined.append(key)
        logger.debug(f"Statistic {key} refined the index set to {indices.size} indices")

    oscillations = {key: oscillation(table[indices - 1]) for key, table in tables.items()}
    success = success and all(v <= req.epsilon for v in oscillations.values())
    logger.info(
        f"Extraction {'succeeded' if success else 'failed'}: {indices.size} of "
        f"{req.horizon} indices, worst tail oscillation {max(oscillations.values()):.3g}"
    )
    return ExtractionResult(
        eta=Restriction.from_indices(indices.tolist()),
        oscillations=oscillations,
        success=success,
        epsilon=req.epsilon,
        horizon=req.horizon,
        refined=refined,
    )


def verify_convergence(
    seqs: Sequence[MatrixSequence],
    eta: Restriction,
    epsilon: float,
    k_max: int,
    horizon: int,
) -> tuple[bool, dict[StatKey, float]]:
    """Recompute every tracked statistic along eta and check its tail oscillation.

    The statistics are evaluated afresh through the restricted sequences,
    independent of how eta was produced.
    """
    length = len(eta.within(horizon))
    if length == 0:
        raise ConfigurationError("restriction has no index within the horizon")
    depth = max(k_max, 1)
    report: dict[StatKey, float] = {}
    for i, seq in enumerate(seqs):
        sub = restrict(seq, eta)
        hermitian = sub.selfadjoint_hint
        tops = map_indices(
            lambda m: extreme_singular_values(sub.eval(m), depth, hermitian=hermitian)[0],
            list(range(1, length + 1)),
        )
        for k in tracked_ks(k_max):
            row = max(k, 1) - 1
            column = [top[row] if row < top.size else 0.0 for top in tops]
            report[(i, k)] = oscillation(column)
    ok = all(v <= epsilon for v in report.values())
    return ok, report
