"""Householder tridiagonalization and Sturm-count eigenvalue search.

This is the value-only path: counting eigenvalues in intervals and locating
a few selected eigenvalues, without eigenvectors.
"""

import numpy as np
import numpy.typing as npt

from src.config.settings import get_settings
from src.linalg.hermitian import require_hermitian

EPS = np.finfo(np.float64).eps
SAFE_MIN = np.finfo(np.float64).tiny
MAX_ROUNDS = 128

RealVector = npt.NDArray[np.float64]


def tridiagonalize(a, check: bool = True) -> tuple[RealVector, RealVector]:
    """Reduce a Hermitian matrix to a real symmetric tridiagonal one.

    Returns ``(diag, offdiag)`` with the same eigenvalues as ``a``. The
    off-diagonal is returned as moduli, which a diagonal unitary similarity
    makes real. Columns whose part below the subdiagonal is already zero
    are left untouched, so banded inputs stay cheap.
    """
    work = require_hermitian(a) if check else np.array(a, dtype=np.complex128)
    n = work.shape[0]
    offdiag = np.zeros(max(n - 1, 0))

    for k in range(n - 2):
        x = work[k + 1 :, k]
        if not np.any(x[1:]):
            offdiag[k] = abs(x[0])
            continue

        norm_x = np.linalg.norm(x)
        phase = x[0] / abs(x[0]) if x[0] != 0 else 1.0
        alpha = -phase * norm_x

        v = x.copy()
        v[0] -= alpha
        v /= np.linalg.norm(v)

        trailing = work[k + 1 :, k + 1 :]
        w = trailing @ v
        kappa = np.vdot(v, w).real
        q = w - kappa * v
        trailing -= 2.0 * np.outer(v, q.conj()) + 2.0 * np.outer(q, v.conj())
        offdiag[k] = norm_x

    if n >= 2:
        offdiag[n - 2] = abs(work[n - 1, n - 2])
    return np.diagonal(work).real.copy(), offdiag


def sturm_counts(diag: RealVector, offdiag: RealVector, shifts) -> npt.NDArray[np.int64]:
    """Number of eigenvalues strictly below each shift (vectorized over shifts).

    An eigenvalue that coincides with a shift to machine precision may be
    counted on either side.
    """
    shifts = np.asarray(shifts, dtype=np.float64)
    e2 = np.asarray(offdiag, dtype=np.float64) ** 2
    pivmin = SAFE_MIN * max(1.0, float(e2.max(initial=0.0)))

    q = diag[0] - shifts
    q = np.where(np.abs(q) < pivmin, -pivmin, q)
    count = (q < 0).astype(np.int64)
    for i in range(1, len(diag)):
        q = diag[i] - shifts - e2[i - 1] / q
        q = np.where(np.abs(q) < pivmin, -pivmin, q)
        count += q < 0
    return count


def gershgorin(diag: RealVector, offdiag: RealVector) -> tuple[float, float]:
    """Interval containing every eigenvalue of the tridiagonal matrix."""
    radius = np.zeros_like(diag)
    radius[:-1] += offdiag
    radius[1:] += offdiag
    low = float(np.min(diag - radius))
    high = float(np.max(diag + radius))
    scale = max(abs(low), abs(high))
    pad = 2.0 * EPS * scale + 2.0 * SAFE_MIN
    return low - pad, high + pad


def tridiagonal_eigvals(
    diag: RealVector,
    offdiag: RealVector,
    indices=None,
    points: int | None = None,
    rtol: float | None = None,
) -> RealVector:
    """Selected eigenvalues (0-based ascending indices) by Sturm multisection.

    Every round splits each bracketing interval into ``points`` pieces and
    keeps the piece whose endpoints' counts straddle the target index.
    Brackets are refined to ``rtol`` times the spectral radius bound
    (default: a few ulps).
    """
    n = len(diag)
    targets = np.arange(n) if indices is None else np.asarray(indices, dtype=np.int64)
    if targets.size == 0:
        return np.zeros(0)
    points = points or get_settings().multisection_points

    low, high = gershgorin(diag, offdiag)
    rtol = 4.0 * EPS if rtol is None else max(rtol, 4.0 * EPS)
    atol = max(rtol * max(abs(low), abs(high)), 4.0 * SAFE_MIN)
    lo = np.full(targets.size, low)
    hi = np.full(targets.size, high)
    fractions = np.arange(1, points) / points

    for _ in range(MAX_ROUNDS):
        open_ = (hi - lo) > atol
        if not np.any(open_):
            break
        grid = lo[open_, None] + (hi - lo)[open_, None] * fractions[None, :]
        counts = sturm_counts(diag, offdiag, grid.ravel()).reshape(grid.shape)
        below = counts <= targets[open_, None]
        # counts are nondecreasing along each row, so "below" is a prefix
        n_below = below.sum(axis=1)
        rows = np.arange(grid.shape[0])
        new_lo = np.where(n_below > 0, grid[rows, np.maximum(n_below - 1, 0)], lo[open_])
        new_hi = np.where(
            n_below < grid.shape[1],
            grid[rows, np.minimum(n_below, grid.shape[1] - 1)],
            hi[open_],
        )
        lo[open_] = new_lo
        hi[open_] = new_hi

    return 0.5 * (lo + hi)


def hermitian_eigvals(a, indices=None, check: bool = True) -> RealVector:
    """Ascending eigenvalues of a Hermitian matrix (all, or the selected indices)."""
    diag, offdiag = tridiagonalize(a, check=check)
    return tridiagonal_eigvals(diag, offdiag, indices)


def count_in_intervals(
    diag: RealVector, offdiag: RealVector, lower, upper
) -> npt.NDArray[np.int64]:
    """Eigenvalues in each open interval (lower_i, upper_i)."""
    lower = np.asarray(lower, dtype=np.float64)
    upper = np.asarray(upper, dtype=np.float64)
    counts = sturm_counts(diag, offdiag, np.concatenate([upper, lower]))
    return np.maximum(counts[: upper.size] - counts[upper.size :], 0)
