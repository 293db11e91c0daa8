"""Command dispatch: one analysis per command, reports written, exit code returned."""

from dataclasses import dataclass, field
from enum import StrEnum
from pathlib import Path
from typing import Callable, Optional

from loguru import logger

from src.asymptotics import (
    compactness_test,
    essential_rank_report,
    fractality_diagnostics,
    fredholm_test,
    singular_profile,
)
from src.config.loader import AnalysisConfig
from src.errors import ConfigurationError
from src.extraction import ExtractionRequest, extract_convergent, verify_convergence
from src.models import CrossCheckSuite
from src.orchestrator.builder import BuiltSequence, build_family, build_sequence
from src.orchestrator.reports import (
    ReportWriter,
    count_frame,
    sigma_plot_frame,
    verdict_plot_frame,
)
from src.orchestrator.validate import run_validate
from src.spectral import (
    Agreement,
    cross_check_fredholm,
    dichotomy_audit,
    essential_spectrum_estimate,
)
from src.toeplitz import stability_check

MIN_HORIZON = 16

EXIT_DECIDED = 0
EXIT_ERROR = 1
EXIT_UNDECIDED = 2


class Command(StrEnum):
    ANALYZE = "analyze"
    COMPACT = "compact"
    FREDHOLM = "fredholm"
    SPECTRUM = "spectrum"
    DICHOTOMY = "dichotomy"
    RESTRICT = "restrict"
    STABILITY = "stability"
    CROSSCHECK = "crosscheck"
    VALIDATE = "validate"


@dataclass
class RunResult:
    command: Command
    exit_code: int
    files: list[Path] = field(default_factory=list)
    summary: str = ""


@dataclass
class RunContext:
    config: AnalysisConfig
    built: BuiltSequence
    horizon: int
    writer: ReportWriter
    plot_data: bool


def _exit(decided: bool) -> int:
    return EXIT_DECIDED if decided else EXIT_UNDECIDED


def effective_horizon(config: AnalysisConfig, built: BuiltSequence, horizon: Optional[int]) -> int:
    """The requested horizon, cut to where the sequence is defined."""
    value = horizon or config.horizon
    if value < MIN_HORIZON:
        raise ConfigurationError(f"horizon must be >= {MIN_HORIZON}, got {value}")
    if built.limit is not None and built.limit < value:
        logger.warning(f"{built.sequence.label} is only defined for n <= {built.limit}")
        value = built.limit
        if value < MIN_HORIZON:
            raise ConfigurationError(
                f"sequence is only defined for n <= {value}, "
                f"below the minimum horizon {MIN_HORIZON}"
            )
    return value


def _profile(ctx: RunContext):
    return singular_profile(ctx.built.sequence, ctx.horizon, ctx.config.k_max)


def _analyze(ctx: RunContext) -> tuple[int, str]:
    profile = _profile(ctx)
    tol = ctx.config.tolerances
    ctx.writer.write_csv("profile.csv", profile.to_frame())
    rank = essential_rank_report(profile, tol=tol.zero_tol)
    ctx.writer.write_json("essential_rank.json", rank)
    fractality = fractality_diagnostics(ctx.built.sequence, ctx.horizon)
    ctx.writer.write_json("fractality.json", fractality.to_report())
    if ctx.plot_data:
        ctx.writer.write_csv("plot_sigma_largest.csv", sigma_plot_frame(profile))
    shown = "inf" if rank.ess_rank is None else rank.ess_rank
    oscillation = fractality.norm_oscillation
    return EXIT_DECIDED, f"essential rank {shown}, norm oscillation {oscillation:.3g}"


def _compact(ctx: RunContext) -> tuple[int, str]:
    profile = _profile(ctx)
    verdict = compactness_test(profile, tol=ctx.config.tolerances.tol)
    ctx.writer.write_json("compact.json", verdict.to_report())
    if ctx.plot_data:
        ctx.writer.write_csv("plot_sigma_largest.csv", sigma_plot_frame(profile))
    return _exit(verdict.decided), f"compactness: {verdict.kind}"


def _fredholm(ctx: RunContext) -> tuple[int, str]:
    profile = _profile(ctx)
    tol = ctx.config.tolerances
    verdict = fredholm_test(
        profile, tau=tol.tau, zero_tol=tol.zero_tol, trend_factor=tol.trend_factor
    )
    ctx.writer.write_json("fredholm.json", verdict.to_report())
    if ctx.plot_data:
        ctx.writer.write_csv("plot_sigma_smallest.csv", sigma_plot_frame(profile, ascending=True))
    suffix = f" (k={verdict.k})" if verdict.is_fredholm else ""
    return _exit(verdict.decided), f"fredholm: {verdict.kind}{suffix}"


def _grid(ctx: RunContext) -> list[float]:
    if ctx.config.grid is None:
        raise ConfigurationError("grid: spectrum and dichotomy need a 'grid' section")
    return ctx.config.grid.points()


def _spectrum(ctx: RunContext) -> tuple[int, str]:
    tol = ctx.config.tolerances
    estimate = essential_spectrum_estimate(
        ctx.built.sequence, _grid(ctx), tol.eps_ladder, ctx.horizon, tol.rules
    )
    ctx.writer.write_json("spectrum.json", estimate.to_report())
    ctx.writer.write_csv("counts.csv", count_frame(estimate.points))
    if ctx.plot_data:
        ctx.writer.write_csv("plot_verdicts.csv", verdict_plot_frame(estimate.points))
    return _exit(estimate.decided), (
        f"{len(estimate.essential)} essential, {len(estimate.undecided)} undecided "
        f"of {len(estimate.points)} points"
    )


def _dichotomy(ctx: RunContext) -> tuple[int, str]:
    tol = ctx.config.tolerances
    audit = dichotomy_audit(ctx.built.sequence, _grid(ctx), tol.eps_ladder, ctx.horizon, tol.rules)
    ctx.writer.write_json("dichotomy.json", audit.to_report())
    ctx.writer.write_csv("counts.csv", count_frame(audit.points))
    if ctx.plot_data:
        ctx.writer.write_csv("plot_verdicts.csv", verdict_plot_frame(audit.points))
    return _exit(audit.dichotomy), f"dichotomy: {audit.dichotomy} (undecided at {audit.undecided})"


def _restrict(ctx: RunContext) -> tuple[int, str]:
    spec = ctx.config.extraction
    family = build_family(ctx.config, ctx.horizon)
    horizon = min([ctx.horizon] + [b.limit for b in family if b.limit is not None])
    sequences = [b.sequence for b in family]
    request = ExtractionRequest(
        sequences=sequences,
        horizon=horizon,
        epsilon=spec.epsilon,
        k_max=spec.k_max,
        min_length=spec.min_length,
        max_family=spec.max_family,
    )
    result = extract_convergent(request)
    verified, _ = verify_convergence(sequences, result.eta, spec.epsilon, spec.k_max, horizon)
    if result.success and not verified:
        logger.warning("Extraction reported success but the independent check failed")
    ctx.writer.write_eta("eta.json", result.indices)
    ctx.writer.write_json(
        "restrict.json", result.to_report(verified, label=ctx.built.sequence.label)
    )
    return _exit(result.success and verified), (
        f"extraction {'succeeded' if result.success else 'failed'} with "
        f"{len(result.indices)} indices, verified={verified}"
    )


def _stability(ctx: RunContext) -> tuple[int, str]:
    spec = ctx.built.structured
    if spec is None:
        raise ConfigurationError("sequence: stability needs a 'toeplitz' node at the root")
    tol = ctx.config.tolerances
    verdict = stability_check(
        spec, ctx.horizon, tol=tol.stability_tol, trend_factor=tol.trend_factor
    )
    ctx.writer.write_json("stability.json", verdict.to_report())
    return _exit(verdict.decided), (
        f"stability: {verdict.verdict} (direct {verdict.direct}, W/W~ {verdict.cross_check})"
    )


def _crosscheck(ctx: RunContext) -> tuple[int, str]:
    tol = ctx.config.tolerances
    checks = [
        cross_check_fredholm(
            ctx.built.sequence,
            lam,
            horizon=ctx.horizon,
            tau=tol.tau,
            ladder=tol.eps_ladder,
            rules=tol.rules,
            zero_tol=tol.zero_tol,
            trend_factor=tol.trend_factor,
        )
        for lam in ctx.config.cross_check
    ]
    conflicts = sum(c.agreement == Agreement.CONFLICT for c in checks)
    undecided = sum(c.agreement == Agreement.UNDECIDED for c in checks)
    suite = CrossCheckSuite(
        command="crosscheck",
        sequence=ctx.built.sequence.label,
        horizon=ctx.horizon,
        conflicts=conflicts,
        undecided=undecided,
        checks=[c.to_report() for c in checks],
    )
    ctx.writer.write_json("crosscheck.json", suite)
    return _exit(conflicts == 0 and undecided == 0), (
        f"{len(checks)} points, {conflicts} conflicts, {undecided} undecided"
    )


HANDLERS: dict[Command, Callable[[RunContext], tuple[int, str]]] = {
    Command.ANALYZE: _analyze,
    Command.COMPACT: _compact,
    Command.FREDHOLM: _fredholm,
    Command.SPECTRUM: _spectrum,
    Command.DICHOTOMY: _dichotomy,
    Command.RESTRICT: _restrict,
    Command.STABILITY: _stability,
    Command.CROSSCHECK: _crosscheck,
}


def run(
    command: Command | str,
    config: AnalysisConfig,
    horizon: Optional[int] = None,
    out_dir: Optional[str | Path] = None,
    timestamp: Optional[bool] = None,
    plot_data: Optional[bool] = None,
) -> RunResult:
    """Run one command against a validated configuration.

    Exit code 0 on a decided verdict, 2 on Undecided. Errors are raised
    (SeqSpecError subclasses) for the caller to map to exit code 1.
    """
    command = Command(command)
    logger.info(f"Running '{command}'")

    if command == Command.VALIDATE:
        result = run_validate(config, horizon)
        return RunResult(
            command,
            EXIT_DECIDED if result.ok else EXIT_ERROR,
            summary="\n".join(result.summary_lines()),
        )

    built = build_sequence(config, horizon=horizon)
    output = config.output
    writer = ReportWriter(
        out_dir if out_dir is not None else config.resolve(output.dir),
        timestamp=output.timestamp if timestamp is None else timestamp,
    )
    ctx = RunContext(
        config=config,
        built=built,
        horizon=effective_horizon(config, built, horizon),
        writer=writer,
        plot_data=output.plot_data if plot_data is None else plot_data,
    )

    exit_code, summary = HANDLERS[command](ctx)
    logger.info(f"'{command}' finished with exit code {exit_code}: {summary}")
    return RunResult(command, exit_code, files=list(writer.written), summary=summary)
