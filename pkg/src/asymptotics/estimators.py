"""Finite-horizon tests for zero, compact and Fredholm sequences."""

import math
from dataclasses import dataclass, field
from enum import StrEnum
from typing import Optional

import numpy as np
from loguru import logger

from src.asymptotics.profile import SingularProfile
from src.asymptotics.windows import Windows, half, no_decay, window_max, window_min
from src.errors import ConfigurationError
from src.models import CompactnessReport, EssentialRankReport, FredholmReport

ZERO_TOL = 0.05
EXACT_TOL = 1e-6
FREDHOLM_TAU = 1e-3
TREND_FACTOR = 0.9
# last-quarter max must drop below this fraction of the mid-quarter max
DECAY_RATIO = 0.5
# final suprema within this relative spread count as stabilized
PLATEAU_SPREAD = 0.1

INFINITE = math.inf


def row_tends_to_zero(values, windows: Windows, tol: float) -> bool:
    """Eventually below ``tol`` and trending down."""
    last = window_max(values, windows.last_quarter)
    mid = window_max(values, windows.mid_quarter)
    if math.isnan(last) or not last < tol:
        return False
    if math.isnan(mid):
        return True
    return last <= DECAY_RATIO * mid or mid < tol


def zero_sequence_test(profile: SingularProfile, tol: float = ZERO_TOL) -> bool:
    """Whether ||A_n|| = Sigma_1(A_n) tends to 0."""
    windows = Windows.over(profile.ns, profile.horizon)
    return row_tends_to_zero(profile.norms, windows, tol)


# ---------------------------------------------------------------------------
# Compactness and essential rank
# ---------------------------------------------------------------------------


class CompactnessKind(StrEnum):
    COMPACT = "compact"
    NOT_COMPACT = "not_compact"
    UNDECIDED = "undecided"


@dataclass
class CompactnessVerdict:
    kind: CompactnessKind
    tail_suprema: list[float]
    tol: float
    ess_rank: Optional[int] = None
    witness_k: Optional[int] = None
    floor: Optional[float] = None
    horizon: int = 0
    label: str = ""

    @property
    def decided(self) -> bool:
        return self.kind != CompactnessKind.UNDECIDED

    def to_report(self) -> CompactnessReport:
        return CompactnessReport(
            command="compact",
            sequence=self.label,
            horizon=self.horizon,
            verdict=self.kind.value,
            ess_rank=self.ess_rank,
            witness_k=self.witness_k,
            floor=self.floor,
            tol=self.tol,
            tail_suprema=[0.0 if math.isnan(s) else s for s in self.tail_suprema],
        )


def tail_suprema(profile: SingularProfile) -> list[float]:
    """s_k = sup of Sigma_k(A_n) over max(k, h/2) <= n <= h, for k = 1..k_max."""
    start = half(profile.horizon)
    suprema = []
    for k in range(1, profile.k_max + 1):
        mask = profile.ns >= max(k, start)
        suprema.append(window_max(profile.largest(k), mask))
    return suprema


def compactness_test(profile: SingularProfile, tol: float = EXACT_TOL) -> CompactnessVerdict:
    """Decide whether sup_{n >= k} Sigma_k(A_n) tends to 0 as k grows."""
    if profile.k_max < 2:
        raise ConfigurationError("compactness test needs k_max >= 2")
    s = tail_suprema(profile)
    common = dict(tail_suprema=s, tol=tol, horizon=profile.horizon, label=profile.label)

    defined = [v for v in s if not math.isnan(v)]
    nonincreasing = all(a >= b for a, b in zip(defined, defined[1:]))
    if nonincreasing:
        for r in range(profile.k_max):
            if not math.isnan(s[r]) and s[r] < tol:
                logger.debug(f"compactness({profile.label}): Compact({r}), s={s[: r + 1]}")
                return CompactnessVerdict(CompactnessKind.COMPACT, ess_rank=r, **common)

    final = s[-min(3, len(s)) :]
    if not any(math.isnan(v) for v in final):
        top, bottom = max(final), min(final)
        if bottom > tol and top - bottom <= PLATEAU_SPREAD * top:
            logger.debug(f"compactness({profile.label}): NotCompact, floor={bottom:.3g}")
            return CompactnessVerdict(
                CompactnessKind.NOT_COMPACT, witness_k=profile.k_max, floor=bottom, **common
            )

    logger.debug(f"compactness({profile.label}): Undecided, s={s}")
    return CompactnessVerdict(CompactnessKind.UNDECIDED, **common)


def essential_rank(profile: SingularProfile, tol: float = ZERO_TOL) -> int | float:
    """Smallest r whose Sigma_{r+1} row tends to zero; ``INFINITE`` when none <= k_max - 1."""
    if profile.k_max < 2:
        raise ConfigurationError("essential rank needs k_max >= 2")
    windows = Windows.over(profile.ns, profile.horizon)
    for r in range(profile.k_max):
        if row_tends_to_zero(profile.largest(r + 1), windows, tol):
            return r
    return INFINITE


def essential_rank_report(profile: SingularProfile, tol: float = ZERO_TOL) -> EssentialRankReport:
    rank = essential_rank(profile, tol)
    return EssentialRankReport(
        command="analyze",
        sequence=profile.label,
        horizon=profile.horizon,
        ess_rank=None if rank == INFINITE else int(rank),
        tol=tol,
        k_max=profile.k_max,
    )


# ---------------------------------------------------------------------------
# Fredholm property
# ---------------------------------------------------------------------------


class FredholmKind(StrEnum):
    FREDHOLM = "fredholm"
    NOT_NORMALLY_SOLVABLE = "not_normally_solvable"
    UNDECIDED = "undecided"


@dataclass
class FredholmVerdict:
    kind: FredholmKind
    tau: float
    tail_infima: list[float] = field(default_factory=list)
    zero_rows: list[bool] = field(default_factory=list)
    k: Optional[int] = None
    floor: Optional[float] = None
    horizon: int = 0
    label: str = ""

    @property
    def decided(self) -> bool:
        return self.kind != FredholmKind.UNDECIDED

    @property
    def is_fredholm(self) -> bool:
        return self.kind == FredholmKind.FREDHOLM

    def to_report(self) -> FredholmReport:
        return FredholmReport(
            command="fredholm",
            sequence=self.label,
            horizon=self.horizon,
            verdict=self.kind.value,
            k=self.k,
            floor=self.floor,
            tau=self.tau,
            tail_infima=[None if math.isnan(v) else v for v in self.tail_infima],
            zero_rows=self.zero_rows,
        )


def fredholm_test(
    profile: SingularProfile,
    tau: float = FREDHOLM_TAU,
    zero_tol: float = ZERO_TOL,
    trend_factor: float = TREND_FACTOR,
) -> FredholmVerdict:
    """Look for the smallest k with liminf sigma_{k+1}(A_n) > 0.

    The liminf is estimated by the minimum over the tail. A floor only
    counts when the row shows no decay and, for k >= 1, the sigma_k row
    tends to zero. When every sigma_k row tends to zero the sequence is
    reported as not normally solvable.
    """
    windows = Windows.over(profile.ns, profile.horizon)
    rows = [profile.smallest(k) for k in range(1, profile.k_max + 1)]
    infima = [window_min(row, windows.tail) for row in rows]
    zero_rows = [row_tends_to_zero(row, windows, zero_tol) for row in rows]
    common = dict(
        tau=tau,
        tail_infima=infima,
        zero_rows=zero_rows,
        horizon=profile.horizon,
        label=profile.label,
    )

    for k in range(profile.k_max):
        floor = infima[k]
        if math.isnan(floor) or floor <= tau:
            continue
        if not no_decay(rows[k], windows, trend_factor):
            continue
        if k >= 1 and not zero_rows[k - 1]:
            continue
        logger.debug(f"fredholm({profile.label}): Fredholm(k={k}, floor={floor:.4g})")
        return FredholmVerdict(FredholmKind.FREDHOLM, k=k, floor=floor, **common)

    if all(zero_rows):
        logger.debug(f"fredholm({profile.label}): not normally solvable")
        return FredholmVerdict(FredholmKind.NOT_NORMALLY_SOLVABLE, **common)

    logger.debug(f"fredholm({profile.label}): Undecided, infima={np.round(infima, 6)}")
    return FredholmVerdict(FredholmKind.UNDECIDED, **common)
