"""Convergence diagnostics for norms and singular value sets along the tail.

A sequence from a fractal algebra has convergent norms, and its sets of
singular values converge in the Hausdorff metric. Large oscillation of
either along the tail is evidence that a subsequence should be extracted
first.
"""

import math
from dataclasses import dataclass

import numpy as np
from loguru import logger

from src.asymptotics.windows import half
from src.errors import ConfigurationError
from src.linalg import hermitian_eigvals, svd_values
from src.models import FractalityReport
from src.sequences import MatrixSequence, map_indices


def hausdorff_distance(x, y) -> float:
    """Hausdorff distance between two finite sets of reals."""
    x = np.unique(np.asarray(x, dtype=np.float64).ravel())
    y = np.unique(np.asarray(y, dtype=np.float64).ravel())
    if x.size == 0 and y.size == 0:
        return 0.0
    if x.size == 0 or y.size == 0:
        return math.inf
    gaps = np.abs(x[:, None] - y[None, :])
    return float(max(gaps.min(axis=1).max(), gaps.min(axis=0).max()))


@dataclass
class FractalityDiagnostics:
    sample_indices: list[int]
    norms: list[float]
    norm_oscillation: float
    hausdorff_drift: float
    horizon: int
    label: str = ""

    def to_report(self) -> FractalityReport:
        return FractalityReport(
            command="fractality",
            sequence=self.label,
            horizon=self.horizon,
            norm_oscillation=self.norm_oscillation,
            hausdorff_drift=self.hausdorff_drift,
            sample_indices=self.sample_indices,
        )


def sample_tail(horizon: int, samples: int) -> list[int]:
    """Up to ``samples`` evenly spread indices in [h/2, h], always ending at h."""
    start = half(horizon)
    picked = np.unique(np.rint(np.linspace(start, horizon, samples)).astype(int))
    return [int(n) for n in picked]


def fractality_diagnostics(
    seq: MatrixSequence, horizon: int, samples: int = 8
) -> FractalityDiagnostics:
    """Tail oscillation of ||A_n|| and the largest Hausdorff distance between
    singular value sets at consecutive sampled indices."""
    if samples < 2:
        raise ConfigurationError("fractality diagnostics need at least two samples")
    ns = sample_tail(horizon, samples)

    def spectrum(n: int) -> np.ndarray:
        mat = seq.eval(n)
        if seq.selfadjoint_hint:
            return np.abs(hermitian_eigvals(mat))
        return svd_values(mat).descending

    sets = map_indices(spectrum, ns)
    norms = [float(s.max()) if s.size else 0.0 for s in sets]
    drift = max(
        (hausdorff_distance(a, b) for a, b in zip(sets, sets[1:])),
        default=0.0,
    )
    oscillation = max(norms) - min(norms)
    logger.debug(
        f"fractality({seq.label}): norm oscillation {oscillation:.3g}, drift {drift:.3g}"
    )
    return FractalityDiagnostics(
        sample_indices=ns,
        norms=norms,
        norm_oscillation=oscillation,
        hausdorff_drift=drift,
        horizon=horizon,
        label=seq.label,
    )
