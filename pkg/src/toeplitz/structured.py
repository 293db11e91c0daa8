"""Structured sequences P_n T(a) P_n + P_n K P_n + R_n L R_n + G_n and their limits.

The strong limit of (A_n) is W = T(a) + K; the strong limit of
(R_n A_n R_n) is W~ = T(a~) + L with a~_k = a_{-k}. The sequence is stable
exactly when both limits are invertible.
"""

from dataclasses import dataclass, field
from enum import StrEnum
from typing import Optional

import numpy as np
import numpy.typing as npt
from loguru import logger

from src.asymptotics.estimators import ZERO_TOL, row_tends_to_zero
from src.asymptotics.windows import Windows, half, no_decay, window_min
from src.errors import ConfigurationError, EvaluationError, SymbolVanishesError
from src.linalg import extreme_singular_values, svd_values
from src.models import StabilityReport
from src.sequences import ComplexMatrix, DimensionFunction, MatrixSequence, map_indices, norms
from src.toeplitz.sections import reflect, toeplitz_section
from src.toeplitz.symbol import Symbol, winding_number

STABILITY_TOL = 1e-4
TREND_FACTOR = 0.9
# singular values from A*A carry an absolute error near sqrt(eps) * ||B||
RANK_TOL = 1e-6


def _block(matrix) -> Optional[npt.NDArray[np.complex128]]:
    if matrix is None:
        return None
    block = np.array(matrix, dtype=np.complex128)
    if block.ndim != 2 or block.shape[0] != block.shape[1]:
        raise ConfigurationError(f"perturbation must be a square matrix, got {block.shape}")
    if not np.all(np.isfinite(block)):
        raise ConfigurationError("perturbation has non-finite entries")
    block.setflags(write=False)
    return block


def numerical_rank(block: Optional[np.ndarray]) -> int:
    if block is None or block.size == 0:
        return 0
    values = svd_values(block).descending
    if values[0] == 0:
        return 0
    return int(np.count_nonzero(values > RANK_TOL * values[0]))


@dataclass(frozen=True, eq=False)
class StructuredToeplitzSequence:
    """The quadruple (a, K, L, (G_n)) with delta(n) = n.

    K and L are finite square blocks padded by zeros. ``k_rank`` and
    ``l_rank`` are the declared ranks; when omitted they are computed
    numerically. With ``strict`` unset, blocks larger than n are cut to
    their leading n x n corner instead of raising.
    """

    symbol: Symbol
    k_pert: Optional[np.ndarray] = None
    l_pert: Optional[np.ndarray] = None
    noise: Optional[MatrixSequence] = None
    k_rank: Optional[int] = None
    l_rank: Optional[int] = None
    strict: bool = True
    label: str = field(default="")

    def __post_init__(self):
        object.__setattr__(self, "k_pert", _block(self.k_pert))
        object.__setattr__(self, "l_pert", _block(self.l_pert))
        if not self.label:
            object.__setattr__(self, "label", f"S({self.symbol.describe()})")

    @property
    def perturbation_size(self) -> int:
        sizes = [b.shape[0] for b in (self.k_pert, self.l_pert) if b is not None]
        return max(sizes, default=0)

    @property
    def declared_rank(self) -> int:
        """rank K + rank L, the essential rank when T(a) and (G_n) vanish."""
        k_rank = self.k_rank if self.k_rank is not None else numerical_rank(self.k_pert)
        l_rank = self.l_rank if self.l_rank is not None else numerical_rank(self.l_pert)
        return k_rank + l_rank

    @property
    def selfadjoint(self) -> bool:
        return (
            self.symbol.is_real_valued()
            and all(
                b is None or bool(np.array_equal(b, b.conj().T))
                for b in (self.k_pert, self.l_pert)
            )
            and (self.noise is None or self.noise.selfadjoint_hint)
        )

    def corner(self, block: Optional[np.ndarray], n: int) -> Optional[np.ndarray]:
        """P_n B P_n as a block of size min(size, n)."""
        if block is None:
            return None
        if block.shape[0] > n:
            if self.strict:
                raise EvaluationError(
                    f"{self.label}: perturbation of size {block.shape[0]} exceeds section size",
                    n,
                )
            return block[:n, :n]
        return block

    def section(self, n: int) -> ComplexMatrix:
        """A_n, assembled from its four terms."""
        mat = toeplitz_section(self.symbol, n)
        k_block = self.corner(self.k_pert, n)
        if k_block is not None:
            s = k_block.shape[0]
            mat[:s, :s] += k_block
        l_block = self.corner(self.l_pert, n)
        if l_block is not None:
            s = l_block.shape[0]
            mat[n - s :, n - s :] += reflect(l_block)
        if self.noise is not None:
            noise = self.noise.eval(n)
            if noise.shape != mat.shape:
                raise EvaluationError(
                    f"{self.label}: noise has size {noise.shape[0]}, section has {n}", n
                )
            mat += noise
        return mat


def assemble(spec: StructuredToeplitzSequence) -> MatrixSequence:
    """The matrix sequence (A_n) of a structured Toeplitz description."""
    return MatrixSequence(
        dims=DimensionFunction.linear(),
        generator=spec.section,
        selfadjoint_hint=spec.selfadjoint,
        label=spec.label,
    )


def noise_vanishes(spec: StructuredToeplitzSequence, horizon: int, tol: float = ZERO_TOL) -> bool:
    """Whether ||G_n|| tends to 0, judged on the tail windows of the horizon."""
    if spec.noise is None:
        return True
    start = half(horizon)
    values = norms(spec.noise, horizon, start=start)
    return row_tends_to_zero(values, Windows.over(range(start, horizon + 1), horizon), tol)


def require_vanishing_noise(
    spec: StructuredToeplitzSequence, horizon: int, tol: float = ZERO_TOL
) -> None:
    """Raise ConfigurationError unless the noise term is a zero sequence up to horizon."""
    if not noise_vanishes(spec, horizon, tol):
        raise ConfigurationError(
            f"{spec.label}: noise {spec.noise.label} does not tend to 0 within n <= {horizon} "
            f"(tolerance {tol:g})"
        )


def _padded(block: Optional[np.ndarray], n: int, what: str) -> np.ndarray:
    out = np.zeros((n, n), dtype=np.complex128)
    if block is not None:
        s = block.shape[0]
        if s > n:
            raise ConfigurationError(f"{what} truncation size {n} is below perturbation size {s}")
        out[:s, :s] = block
    return out


def limit_W(spec: StructuredToeplitzSequence, N: int) -> ComplexMatrix:
    """N x N section of the strong limit T(a) + K."""
    return toeplitz_section(spec.symbol, N) + _padded(spec.k_pert, N, "W")


def limit_Wtilde(spec: StructuredToeplitzSequence, N: int) -> ComplexMatrix:
    """N x N section of T(a~) + L, the strong limit of R_n A_n R_n."""
    return toeplitz_section(spec.symbol.flipped(), N) + _padded(spec.l_pert, N, "W~")


class Stability(StrEnum):
    STABLE = "stable"
    UNSTABLE = "unstable"
    UNDECIDED = "undecided"


@dataclass
class StabilityVerdict:
    """Direct sigma_1 estimate, the W / W~ cross-check and their combination."""

    verdict: Stability
    direct: Stability
    cross_check: Stability
    sigma_floor: float
    mid_quarter_min: float
    last_quarter_min: float
    w_sigma: dict[int, float]
    wtilde_sigma: dict[int, float]
    winding: Optional[int]
    tol: float
    horizon: int
    label: str = ""

    @property
    def decided(self) -> bool:
        return self.verdict != Stability.UNDECIDED

    def to_report(self) -> StabilityReport:
        return StabilityReport(
            command="stability",
            sequence=self.label,
            horizon=self.horizon,
            verdict=self.verdict.value,
            direct=self.direct.value,
            cross_check=self.cross_check.value,
            sigma_floor=self.sigma_floor,
            mid_quarter_min=self.mid_quarter_min,
            last_quarter_min=self.last_quarter_min,
            w_sigma=self.w_sigma,
            wtilde_sigma=self.wtilde_sigma,
            winding_number=self.winding,
            tol=self.tol,
        )


def _smallest_singular(mat: np.ndarray, hermitian: bool) -> float:
    _, bottom = extreme_singular_values(mat, 1, hermitian=hermitian)
    return float(bottom[0])


def stability_check(
    spec: StructuredToeplitzSequence,
    horizon: int,
    tol: float = STABILITY_TOL,
    trend_factor: float = TREND_FACTOR,
) -> StabilityVerdict:
    """Decide liminf sigma_1(A_n) > 0 two ways and compare.

    Direct: sigma_1(A_n) over the tail stays above ``tol`` without a
    decreasing trend. Cross-check: sigma_1 of the W and W~ sections at
    sizes h/2 and h stays above ``tol``, again without decay. Disagreement
    gives Undecided. Raises ConfigurationError when the noise does not tend
    to 0 within the horizon.
    """
    if horizon < 16:
        raise ConfigurationError(f"stability check needs horizon >= 16, got {horizon}")
    require_vanishing_noise(spec, horizon)
    seq = assemble(spec)
    hermitian = seq.selfadjoint_hint
    ns = list(range(half(horizon), horizon + 1))
    sigma = np.array(map_indices(lambda n: _smallest_singular(seq.eval(n), hermitian), ns))

    windows = Windows.over(ns, horizon)
    floor = window_min(sigma, windows.tail)
    direct = (
        Stability.STABLE
        if floor > tol and no_decay(sigma, windows, trend_factor)
        else Stability.UNSTABLE
    )

    sizes = sorted({half(horizon), horizon})
    w_sigma = {N: _smallest_singular(limit_W(spec, N), hermitian) for N in sizes}
    wtilde_sigma = {N: _smallest_singular(limit_Wtilde(spec, N), hermitian) for N in sizes}
    cross_ok = all(
        values[sizes[-1]] > tol and values[sizes[-1]] >= trend_factor * values[sizes[0]]
        for values in (w_sigma, wtilde_sigma)
    )
    cross = Stability.STABLE if cross_ok else Stability.UNSTABLE

    try:
        winding = winding_number(spec.symbol)
    except SymbolVanishesError:
        winding = None

    verdict = direct if direct == cross else Stability.UNDECIDED
    logger.debug(
        f"stability({spec.label}, h={horizon}): direct={direct} cross={cross} "
        f"floor={floor:.3e} winding={winding}"
    )
    return StabilityVerdict(
        verdict=verdict,
        direct=direct,
        cross_check=cross,
        sigma_floor=floor,
        mid_quarter_min=window_min(sigma, windows.mid_quarter),
        last_quarter_min=window_min(sigma, windows.last_quarter),
        w_sigma=w_sigma,
        wtilde_sigma=wtilde_sigma,
        winding=winding,
        tol=tol,
        horizon=horizon,
        label=spec.label,
    )
