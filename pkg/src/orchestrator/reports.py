"""Report files: JSON verdicts, CSV evidence tables and plot data."""

import json
from datetime import datetime, timezone
from pathlib import Path
from typing import Sequence

import polars as pl
from loguru import logger
from pydantic import BaseModel, TypeAdapter

from src import models
from src.asymptotics import SingularProfile
from src.config.loader import AnalysisConfig
from src.spectral import SpectralClassification, Verdict

VERDICT_CODES = {Verdict.TRANSIENT: 0, Verdict.ESSENTIAL: 1, Verdict.UNDECIDED: 2}

_index_list = TypeAdapter(list[int])


class ReportWriter:
    """Writes report files into one output directory and remembers them."""

    def __init__(self, out_dir: str | Path, timestamp: bool = True):
        self.out_dir = Path(out_dir)
        self.timestamp = timestamp
        self.written: list[Path] = []

    def _target(self, name: str) -> Path:
        self.out_dir.mkdir(parents=True, exist_ok=True)
        path = self.out_dir / name
        self.written.append(path)
        return path

    def write_json(self, name: str, report: BaseModel) -> Path:
        """Serialize a report model; ``generated_at`` is set unless timestamps are off."""
        if self.timestamp and "generated_at" in type(report).model_fields:
            report = report.model_copy(update={"generated_at": datetime.now(timezone.utc)})
        path = self._target(name)
        path.write_text(report.model_dump_json(indent=2, by_alias=True) + "\n", encoding="utf-8")
        logger.info(f"Wrote {path}")
        return path

    def write_csv(self, name: str, frame: pl.DataFrame) -> Path:
        path = self._target(name)
        frame.write_csv(path)
        logger.info(f"Wrote {path} ({frame.height} rows)")
        return path

    def write_eta(self, name: str, indices: Sequence[int]) -> Path:
        """eta as a bare JSON integer array."""
        path = self._target(name)
        path.write_bytes(_index_list.dump_json(list(indices)) + b"\n")
        logger.info(f"Wrote {path} ({len(indices)} indices)")
        return path


def count_frame(points: Sequence[SpectralClassification]) -> pl.DataFrame:
    """All count tables stacked: lambda, eps, n, count."""
    return pl.concat([p.table.to_frame() for p in points])


def verdict_plot_frame(points: Sequence[SpectralClassification]) -> pl.DataFrame:
    """lambda against verdict code (0 transient, 1 essential, 2 undecided)."""
    return pl.DataFrame(
        {
            "lambda": [p.lam for p in points],
            "verdict": [VERDICT_CODES[p.verdict] for p in points],
        }
    )


def sigma_plot_frame(profile: SingularProfile, ascending: bool = False) -> pl.DataFrame:
    """Wide table n, sigma_1..sigma_kmax (ascending) or Sigma_1..Sigma_kmax."""
    prefix = "sigma" if ascending else "Sigma"
    table = profile.ascending if ascending else profile.descending
    columns = {"n": profile.ns.tolist()}
    for k in range(1, profile.k_max + 1):
        columns[f"{prefix}_{k}"] = table[:, k - 1].tolist()
    return pl.DataFrame(columns)


SCHEMA_MODELS: dict[str, type[BaseModel]] = {
    "config": AnalysisConfig,
    "symbol_file": models.SymbolFile,
    "eta_file": models.EtaFile,
    "compact": models.CompactnessReport,
    "essential_rank": models.EssentialRankReport,
    "fredholm": models.FredholmReport,
    "spectrum": models.SpectrumReport,
    "dichotomy": models.DichotomyReport,
    "crosscheck": models.CrossCheckSuite,
    "restrict": models.ExtractionReport,
    "stability": models.StabilityReport,
    "fractality": models.FractalityReport,
}


def export_schemas(out_dir: str | Path) -> list[Path]:
    """Write the JSON schema of the config, input files and every report as <name>.json."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    written = []
    for name, model in SCHEMA_MODELS.items():
        path = out / f"{name}.json"
        path.write_text(json.dumps(model.model_json_schema(), indent=2) + "\n", encoding="utf-8")
        written.append(path)
    logger.info(f"Wrote {len(written)} schemas to {out}")
    return written
