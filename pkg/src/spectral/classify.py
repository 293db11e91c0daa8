"""Essential / transient classification of real points for self-adjoint sequences.

A point lambda is essential when N(A_n, U) grows without bound for every
open interval U around it, and transient when N(A_n, U) stays bounded for
some U. At a finite horizon both notions are read off the count tables;
anything that fits neither rule is reported as undecided.
"""

import math
from dataclasses import dataclass
from enum import StrEnum
from typing import Optional, Sequence

from loguru import logger

from src.asymptotics import FredholmKind, FredholmVerdict, fredholm_test, singular_profile
from src.asymptotics.estimators import FREDHOLM_TAU, TREND_FACTOR, ZERO_TOL
from src.asymptotics.windows import Windows, half, window_max, window_min
from src.config.loader import CountingRules
from src.models import ClassificationRecord, CrossCheckReport, DichotomyReport, SpectrumReport
from src.sequences import MatrixSequence, add, identity_sequence, scale
from src.spectral.counting import CountTable, count_tables

DEFAULT_LADDER = (0.4, 0.2, 0.1, 0.05)
CROSS_CHECK_K_MAX = 4


class Verdict(StrEnum):
    ESSENTIAL = "essential"
    TRANSIENT = "transient"
    UNDECIDED = "undecided"


@dataclass
class SpectralClassification:
    lam: float
    verdict: Verdict
    table: CountTable
    eps: Optional[float] = None
    bound: Optional[int] = None
    growth: Optional[float] = None

    def to_record(self) -> ClassificationRecord:
        return ClassificationRecord(
            lam=self.lam,
            verdict=self.verdict.value,
            eps=self.eps,
            bound=self.bound,
            growth=self.growth,
            counts_summary=self.table.summaries(),
        )


def classify_table(table: CountTable, rules: CountingRules | None = None) -> SpectralClassification:
    """Apply the plateau and growth rules to a finished count table.

    Transient: for some width (largest first) the maximum over the whole
    horizon is already reached in the first quarter and is at most c_max.
    Essential: at the smallest width, count(h) >= growth * count(h/2),
    count(h) >= c_min, and the tail never collapses below
    collapse_ratio * count(h/2).
    """
    rules = rules or CountingRules()
    windows = Windows.over(table.ns, table.horizon)

    for eps, row in zip(table.half_widths, table.counts):
        full = int(row.max())
        early = window_max(row, windows.first_quarter)
        if not math.isnan(early) and full == int(early) and full <= rules.c_max:
            return SpectralClassification(
                table.lam, Verdict.TRANSIENT, table, eps=eps, bound=full
            )

    eps = table.half_widths[-1]
    row = table.row(eps)
    final = int(row[-1])
    at_half = table.at(half(table.horizon), eps)
    tail_min = window_min(row, windows.tail)
    if (
        final >= rules.growth * at_half
        and final >= rules.c_min
        and tail_min >= rules.collapse_ratio * at_half
    ):
        growth = final / at_half if at_half else None
        return SpectralClassification(
            table.lam, Verdict.ESSENTIAL, table, eps=eps, growth=growth
        )

    return SpectralClassification(table.lam, Verdict.UNDECIDED, table)


def classify_point(
    seq: MatrixSequence,
    lam: float,
    ladder: Sequence[float] = DEFAULT_LADDER,
    horizon: int = 256,
    rules: CountingRules | None = None,
) -> SpectralClassification:
    """Essential / Transient / Undecided verdict for one real point."""
    (table,) = count_tables(seq, [lam], ladder, horizon, rules=rules, with_norms=False)
    result = classify_table(table, rules)
    logger.debug(f"classify({seq.label}, {lam:g}) -> {result.verdict} eps={result.eps}")
    return result


def classify_grid(
    seq: MatrixSequence,
    grid: Sequence[float],
    ladder: Sequence[float] = DEFAULT_LADDER,
    horizon: int = 256,
    rules: CountingRules | None = None,
) -> tuple[list[SpectralClassification], float]:
    """Classify every grid point from one counting pass; also returns sup_n ||A_n||."""
    tables = count_tables(seq, grid, ladder, horizon, rules=rules, with_norms=True)
    results = [classify_table(t, rules) for t in tables]
    norm = float(tables[0].norms.max()) if tables and tables[0].norms is not None else 0.0
    return results, norm


@dataclass
class SpectrumEstimate:
    """Non-transient grid points, the estimate of the essential spectrum."""

    points: list[SpectralClassification]
    sup_norm: float
    max_eps: float
    horizon: int
    label: str = ""

    @property
    def essential(self) -> list[float]:
        return [p.lam for p in self.points if p.verdict == Verdict.ESSENTIAL]

    @property
    def undecided(self) -> list[float]:
        return [p.lam for p in self.points if p.verdict == Verdict.UNDECIDED]

    @property
    def non_transient(self) -> list[float]:
        return [p.lam for p in self.points if p.verdict != Verdict.TRANSIENT]

    @property
    def bound_check(self) -> bool:
        """Non-transient points lie within sup_norm + max eps of the origin."""
        limit = self.sup_norm + self.max_eps
        return all(abs(lam) <= limit for lam in self.non_transient)

    @property
    def decided(self) -> bool:
        return not self.undecided

    def to_report(self) -> SpectrumReport:
        return SpectrumReport(
            command="spectrum",
            sequence=self.label,
            horizon=self.horizon,
            essential=self.essential,
            undecided=self.undecided,
            non_transient=self.non_transient,
            bound_check=self.bound_check,
            points=[p.to_record() for p in self.points],
        )


def essential_spectrum_estimate(
    seq: MatrixSequence,
    grid: Sequence[float],
    ladder: Sequence[float] = DEFAULT_LADDER,
    horizon: int = 256,
    rules: CountingRules | None = None,
) -> SpectrumEstimate:
    """Grid points that are not transient, with essential and undecided flagged."""
    points, norm = classify_grid(seq, grid, ladder, horizon, rules)
    estimate = SpectrumEstimate(
        points=points,
        sup_norm=norm,
        max_eps=max(ladder),
        horizon=horizon,
        label=seq.label,
    )
    if not estimate.bound_check:
        logger.warning(
            f"{seq.label}: non-transient points beyond sup norm {norm:.4g} + {max(ladder)}"
        )
    logger.info(
        f"{seq.label}: {len(estimate.essential)} essential, "
        f"{len(estimate.undecided)} undecided of {len(points)} grid points"
    )
    return estimate


@dataclass
class DichotomyAudit:
    points: list[SpectralClassification]
    horizon: int
    label: str = ""

    def _with(self, verdict: Verdict) -> list[float]:
        return [p.lam for p in self.points if p.verdict == verdict]

    @property
    def essential(self) -> list[float]:
        return self._with(Verdict.ESSENTIAL)

    @property
    def transient(self) -> list[float]:
        return self._with(Verdict.TRANSIENT)

    @property
    def undecided(self) -> list[float]:
        return self._with(Verdict.UNDECIDED)

    @property
    def dichotomy(self) -> bool:
        """Every grid point is either essential or transient."""
        return not self.undecided

    def to_report(self) -> DichotomyReport:
        return DichotomyReport(
            command="dichotomy",
            sequence=self.label,
            horizon=self.horizon,
            dichotomy=self.dichotomy,
            essential=self.essential,
            transient=self.transient,
            undecided=self.undecided,
            points=[p.to_record() for p in self.points],
        )


def dichotomy_audit(
    seq: MatrixSequence,
    grid: Sequence[float],
    ladder: Sequence[float] = DEFAULT_LADDER,
    horizon: int = 256,
    rules: CountingRules | None = None,
) -> DichotomyAudit:
    """Classify every grid point and flag whether any stays undecided.

    Undecided points that persist under refinement indicate that the
    enclosing algebra is not essentially fractal; passing to a suitable
    subsequence is expected to remove them.
    """
    points, _ = classify_grid(seq, grid, ladder, horizon, rules)
    audit = DichotomyAudit(points=points, horizon=horizon, label=seq.label)
    logger.info(
        f"{seq.label}: dichotomy={audit.dichotomy} "
        f"({len(audit.essential)} essential, {len(audit.transient)} transient, "
        f"{len(audit.undecided)} undecided)"
    )
    return audit


class Agreement(StrEnum):
    AGREE_TRANSIENT = "agree-transient"
    AGREE_ESSENTIALISH = "agree-essentialish"
    CONFLICT = "conflict"
    UNDECIDED = "undecided"


@dataclass
class CrossCheck:
    """Counting verdict at lambda against the Fredholm verdict of (A_n - lambda I)."""

    lam: float
    agreement: Agreement
    classification: SpectralClassification
    fredholm: FredholmVerdict
    horizon: int
    label: str = ""

    @property
    def decided(self) -> bool:
        return self.agreement not in (Agreement.UNDECIDED, Agreement.CONFLICT)

    def to_report(self) -> CrossCheckReport:
        return CrossCheckReport(
            command="crosscheck",
            sequence=self.label,
            horizon=self.horizon,
            lam=self.lam,
            agreement=self.agreement.value,
            classification=self.classification.to_record(),
            fredholm=self.fredholm.to_report(),
        )


def shifted(seq: MatrixSequence, lam: float) -> MatrixSequence:
    """The sequence (A_n - lam I_n)."""
    return add(seq, scale(identity_sequence(seq.dims), -lam))


def cross_check_fredholm(
    seq: MatrixSequence,
    lam: float,
    horizon: int = 256,
    tau: float = FREDHOLM_TAU,
    k_max: int = CROSS_CHECK_K_MAX,
    ladder: Sequence[float] = DEFAULT_LADDER,
    rules: CountingRules | None = None,
    zero_tol: float = ZERO_TOL,
    trend_factor: float = TREND_FACTOR,
) -> CrossCheck:
    """Transient points must give a Fredholm shift, essential points must not."""
    classification = classify_point(seq, lam, ladder, horizon, rules)
    profile = singular_profile(shifted(seq, lam), horizon, k_max)
    fredholm = fredholm_test(profile, tau=tau, zero_tol=zero_tol, trend_factor=trend_factor)

    if classification.verdict == Verdict.UNDECIDED:
        agreement = Agreement.UNDECIDED
    elif classification.verdict == Verdict.TRANSIENT:
        agreement = (
            Agreement.AGREE_TRANSIENT
            if fredholm.kind == FredholmKind.FREDHOLM
            else Agreement.CONFLICT
        )
    else:
        agreement = (
            Agreement.CONFLICT
            if fredholm.kind == FredholmKind.FREDHOLM
            else Agreement.AGREE_ESSENTIALISH
        )

    if agreement == Agreement.CONFLICT:
        logger.warning(
            f"{seq.label} at {lam:g}: {classification.verdict} but fredholm={fredholm.kind}"
        )
    return CrossCheck(
        lam=lam,
        agreement=agreement,
        classification=classification,
        fredholm=fredholm,
        horizon=horizon,
        label=seq.label,
    )
