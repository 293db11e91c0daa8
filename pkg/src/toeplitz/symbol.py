"""Trigonometric polynomial symbols on the unit circle."""

from dataclasses import dataclass, field
from enum import StrEnum
from pathlib import Path
from typing import Iterable, Mapping

import numpy as np
import numpy.typing as npt
from loguru import logger
from pydantic import ValidationError

from src.errors import ConfigurationError, SymbolVanishesError
from src.models import SymbolFile

DEFAULT_SAMPLE_GRID = 1024
DEFAULT_WINDING_GRID = 4096
VANISHING_TOL = 1e-8
# Fourier coefficients of sampled symbols below this fraction of the largest are dropped
COEFF_CUTOFF = 1e-13


class SymbolSource(StrEnum):
    EXPLICIT = "explicit"
    SAMPLED = "sampled"


@dataclass(frozen=True)
class Symbol:
    """a(t) = sum_k a_k t^k for |k| <= m, with t = e^{i theta}.

    Coefficients outside the stored range are zero.
    """

    coeffs: Mapping[int, complex] = field(default_factory=dict)
    source: SymbolSource = SymbolSource.EXPLICIT
    grid_size: int | None = None

    def __post_init__(self):
        cleaned = {int(k): complex(v) for k, v in self.coeffs.items() if complex(v) != 0}
        for k, v in cleaned.items():
            if not np.isfinite(v):
                raise ConfigurationError(f"symbol coefficient a_{k} is not finite")
        object.__setattr__(self, "coeffs", cleaned)

    @classmethod
    def from_coeffs(cls, coeffs: Mapping[int, complex] | Iterable[tuple[int, complex]]) -> "Symbol":
        items = coeffs.items() if isinstance(coeffs, Mapping) else coeffs
        merged: dict[int, complex] = {}
        for k, value in items:
            merged[int(k)] = merged.get(int(k), 0) + complex(value)
        return cls(coeffs=merged)

    @classmethod
    def from_samples(cls, samples, degree: int | None = None) -> "Symbol":
        """Symbol from values on the uniform grid theta_j = 2 pi j / N.

        Coefficients come from the discrete Fourier sum, so frequencies
        above N/2 alias onto lower ones.
        """
        values = np.asarray(samples, dtype=np.complex128).ravel()
        size = values.size
        if size == 0:
            raise ConfigurationError("symbol needs at least one sample")
        max_degree = (size - 1) // 2
        degree = max_degree if degree is None else min(degree, max_degree)
        spectrum = np.fft.fft(values) / size
        largest = float(np.abs(spectrum).max())
        coeffs = {}
        for k in range(-degree, degree + 1):
            value = spectrum[k % size]
            if abs(value) > COEFF_CUTOFF * largest:
                coeffs[k] = complex(value)
        return cls(coeffs=coeffs, source=SymbolSource.SAMPLED, grid_size=size)

    @classmethod
    def from_file(cls, path: str | Path) -> "Symbol":
        """Read a JSON symbol file with either ``coeffs`` or ``samples``."""
        path = Path(path)
        if not path.exists():
            raise ConfigurationError(f"Symbol file not found: {path}")
        try:
            data = SymbolFile.model_validate_json(path.read_text(encoding="utf-8"))
        except ValidationError as exc:
            raise ConfigurationError(f"invalid symbol file {path}: {exc}") from exc
        return cls.from_model(data)

    @classmethod
    def from_model(cls, data: SymbolFile) -> "Symbol":
        if data.coeffs is not None:
            return cls.from_coeffs((c.k, complex(c.re, c.im)) for c in data.coeffs)
        samples = [complex(re, im) for re, im in data.samples or []]
        logger.debug(f"Converting {len(samples)} symbol samples to Fourier coefficients")
        return cls.from_samples(samples)

    @property
    def degree(self) -> int:
        return max((abs(k) for k in self.coeffs), default=0)

    def coefficient(self, k: int) -> complex:
        return self.coeffs.get(k, 0j)

    def coefficient_array(self, start: int, stop: int) -> npt.NDArray[np.complex128]:
        """[a_start, a_{start+1}, ..., a_{stop-1}]."""
        return np.array([self.coefficient(k) for k in range(start, stop)], dtype=np.complex128)

    def evaluate(self, theta) -> npt.NDArray[np.complex128]:
        theta = np.asarray(theta, dtype=np.float64)
        total = np.zeros(theta.shape, dtype=np.complex128)
        for k, value in self.coeffs.items():
            total += value * np.exp(1j * k * theta)
        return total

    def grid_values(self, grid: int) -> npt.NDArray[np.complex128]:
        return self.evaluate(2.0 * np.pi * np.arange(grid) / grid)

    def sup_norm(self, grid: int = DEFAULT_WINDING_GRID) -> float:
        """max |a| over the grid, an estimate of ||T(a)||."""
        return float(np.abs(self.grid_values(grid)).max())

    def flipped(self) -> "Symbol":
        """The symbol with coefficients a_{-k}."""
        return Symbol(coeffs={-k: v for k, v in self.coeffs.items()}, source=self.source)

    def is_real_valued(self) -> bool:
        """a_{-k} = conj(a_k) for all k, i.e. T(a) is self-adjoint."""
        return all(self.coefficient(-k) == v.conjugate() for k, v in self.coeffs.items())

    def describe(self) -> str:
        if not self.coeffs:
            return "0"
        terms = []
        for k in sorted(self.coeffs):
            v = self.coeffs[k]
            coef = f"{v.real:g}" if v.imag == 0 else f"({v.real:g}{v.imag:+g}i)"
            terms.append(coef if k == 0 else f"{coef}t^{k}")
        return " + ".join(terms)


def winding_number(sym: Symbol, grid: int = DEFAULT_WINDING_GRID) -> int:
    """Winding number of a around 0, from the argument increments over the grid."""
    if grid < 3:
        raise ConfigurationError(f"winding grid must have at least 3 points, got {grid}")
    values = sym.grid_values(grid)
    smallest = float(np.abs(values).min())
    if smallest <= VANISHING_TOL:
        raise SymbolVanishesError(smallest)
    increments = np.angle(np.roll(values, -1) / values)
    return int(np.rint(increments.sum() / (2.0 * np.pi)))
