"""seqspec CLI - finite-horizon spectral analysis of matrix sequences."""

import functools
import sys
from typing import Optional

import click
import yaml
from loguru import logger
from pydantic import ValidationError

from src.config import get_config, get_settings
from src.errors import SeqSpecError
from src.monitor.logger import configure_logging
from src.orchestrator.reports import export_schemas
from src.orchestrator.runner import EXIT_ERROR, Command, run


def _setup_logging(verbosity: int, json_path: Optional[str] = None):
    """Configure loguru logging based on verbosity level.

    Args:
        verbosity: Number of -v flags (0-2+)
        json_path: Optional JSON-lines log file
    """
    if verbosity == 0:
        level = get_settings().log_level
    elif verbosity == 1:
        level = "DEBUG"
    else:
        level = "TRACE"
    configure_logging(level, json_path)


def _field_errors(exc: ValidationError) -> str:
    return "; ".join(
        f"{'.'.join(str(p) for p in err['loc']) or '<root>'}: {err['msg']}" for err in exc.errors()
    )


def analysis_command(command: Command):
    """Shared options and error mapping of every analysis subcommand."""

    def decorate(func):
        @click.option(
            "--config",
            "config_path",
            type=click.Path(dir_okay=False),
            default="config.yaml",
            show_default=True,
            help="Path to the YAML or JSON analysis configuration",
        )
        @click.option("--horizon", type=int, default=None, help="Override the configured horizon")
        @click.option("--out", "out_dir", type=click.Path(file_okay=False), default=None,
                      help="Output directory (default: output.dir from the config)")
        @click.option("--no-timestamp", is_flag=True, help="Omit generated_at from JSON reports")
        @click.option("--plot-data", is_flag=True, help="Also write gnuplot-ready CSV files")
        @click.option(
            "--verbose",
            "-v",
            count=True,
            help="Increase verbosity (can be used multiple times: -v, -vv)",
        )
        @functools.wraps(func)
        def wrapper(config_path, horizon, out_dir, no_timestamp, plot_data, verbose):
            _setup_logging(verbose)
            try:
                config = get_config(config_path)
                if config.output.log_file:
                    _setup_logging(verbose, str(config.resolve(config.output.log_file)))
                result = run(
                    command,
                    config,
                    horizon=horizon,
                    out_dir=out_dir,
                    timestamp=False if no_timestamp else None,
                    plot_data=True if plot_data else None,
                )
            except ValidationError as exc:
                logger.error(f"Invalid configuration {config_path}: {_field_errors(exc)}")
                sys.exit(EXIT_ERROR)
            except (SeqSpecError, FileNotFoundError, ValueError, yaml.YAMLError) as exc:
                logger.error(f"{command} failed: {exc}")
                sys.exit(EXIT_ERROR)

            if result.summary:
                click.echo(result.summary)
            for path in result.files:
                click.echo(f"wrote {path}")
            sys.exit(result.exit_code)

        return wrapper

    return decorate


@click.group()
def main():
    """seqspec - essential spectra, Fredholm and stability estimates for matrix sequences.

    Every command reads an analysis configuration and writes its reports to
    the output directory. Exit code 0 means a decided verdict, 2 means
    Undecided at the chosen horizon, 1 means an error.

    Examples:
        # Essential/transient classification over the configured grid
        seqspec dichotomy --config config.yaml

        # Subsequence along which norms and singular values converge
        seqspec restrict --config config.yaml --out reports/
    """


@main.command()
@analysis_command(Command.ANALYZE)
def analyze():
    """Singular value profile (CSV), essential rank and fractality diagnostics."""


@main.command()
@analysis_command(Command.COMPACT)
def compact():
    """Compactness verdict from the tail suprema of Sigma_k."""


@main.command()
@analysis_command(Command.FREDHOLM)
def fredholm():
    """Fredholm verdict from the tail infima of sigma_k."""


@main.command()
@analysis_command(Command.SPECTRUM)
def spectrum():
    """Essential spectrum estimate over the grid (self-adjoint sequences)."""


@main.command()
@analysis_command(Command.DICHOTOMY)
def dichotomy():
    """Essential / transient classification of every grid point."""


@main.command()
@analysis_command(Command.RESTRICT)
def restrict():
    """Extract a subsequence along which the tracked statistics converge."""


@main.command()
@analysis_command(Command.STABILITY)
def stability():
    """Stability of a structured Toeplitz sequence, with the W / W~ cross-check."""


@main.command()
@analysis_command(Command.CROSSCHECK)
def crosscheck():
    """Counting verdicts against Fredholm verdicts of the shifted sequence."""


@main.command()
@analysis_command(Command.VALIDATE)
def validate():
    """Build and evaluate the configured sequences without writing reports."""


@main.command()
@click.option(
    "--out",
    "out_dir",
    type=click.Path(file_okay=False),
    default="docs/schemas",
    show_default=True,
    help="Directory for the schema files",
)
def schema(out_dir):
    """Write the JSON schemas of the configuration, input files and reports."""
    _setup_logging(0)
    for path in export_schemas(out_dir):
        click.echo(f"wrote {path}")


if __name__ == "__main__":
    main()
