"""Cyclic Jacobi eigensolver for dense Hermitian matrices.

Each sweep visits every off-diagonal pair (p, q) once. Pairs are scheduled
round-robin so that the n/2 pairs of one round are disjoint and can be
rotated simultaneously; the visiting order is fixed, so results are
bit-for-bit reproducible.
"""

from dataclasses import dataclass

import numpy as np
import numpy.typing as npt
from loguru import logger

from src.config.settings import get_settings
from src.errors import ContractViolation, NumericalError

HERMITIAN_TOL = 1e-10


@dataclass(frozen=True)
class EigenDecomposition:
    """Eigenvalues in ascending order with the unitary matrix of eigenvectors."""

    eigenvalues: npt.NDArray[np.float64]
    basis: npt.NDArray[np.complex128]
    sweeps: int = 0
    off_norm: float = 0.0

    def reconstruct(self) -> npt.NDArray[np.complex128]:
        """V diag(lambda) V*."""
        return (self.basis * self.eigenvalues) @ self.basis.conj().T

    def residuals(self, a) -> npt.NDArray[np.float64]:
        """Column norms of A V - V diag(lambda)."""
        a = np.asarray(a, dtype=np.complex128)
        return np.linalg.norm(a @ self.basis - self.basis * self.eigenvalues, axis=0)


def is_hermitian(a, tol: float = HERMITIAN_TOL) -> bool:
    """||a - a*||_F <= tol * (1 + ||a||_F)."""
    a = np.asarray(a)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        return False
    return bool(np.linalg.norm(a - a.conj().T) <= tol * (1.0 + np.linalg.norm(a)))


def require_hermitian(a, what: str = "matrix") -> npt.NDArray[np.complex128]:
    """Validate and symmetrize a Hermitian input."""
    a = np.asarray(a, dtype=np.complex128)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ContractViolation(f"{what} must be square, got shape {a.shape}")
    defect = np.linalg.norm(a - a.conj().T)
    if defect > HERMITIAN_TOL * (1.0 + np.linalg.norm(a)):
        raise ContractViolation(f"{what} is not Hermitian: ||A - A*||_F = {defect:.3e}")
    return 0.5 * (a + a.conj().T)


def round_robin(n: int) -> list[tuple[npt.NDArray[np.intp], npt.NDArray[np.intp]]]:
    """Rounds of disjoint index pairs (p < q) covering every pair exactly once."""
    m = n + (n % 2)
    players = list(range(m))
    rounds = []
    for _ in range(m - 1):
        ps, qs = [], []
        for i in range(m // 2):
            p, q = players[i], players[m - 1 - i]
            if p < n and q < n:
                ps.append(min(p, q))
                qs.append(max(p, q))
        rounds.append((np.array(ps, dtype=np.intp), np.array(qs, dtype=np.intp)))
        # Circle method: player 0 stays, the others rotate one seat.
        players = [players[0], players[-1], *players[1:-1]]
    return rounds


def _off_norm(a: npt.NDArray[np.complex128]) -> float:
    """Frobenius norm of the off-diagonal part, summed directly."""
    return float(np.linalg.norm(a - np.diag(np.diagonal(a))))


def _rotate(a, v, p, q) -> None:
    """Annihilate a[p, q] for every pair at once: a <- G* a G, v <- v G."""
    beta = a[p, q]
    modulus = np.abs(beta)
    active = modulus > 0.0
    safe = np.where(active, modulus, 1.0)

    # t = sign(theta) / (|theta| + sqrt(theta^2 + 1)) with theta = diff / (2|beta|),
    # multiplied through by 2|beta| so a tiny |beta| never overflows theta.
    diff = a[q, q].real - a[p, p].real
    sign = np.where(diff >= 0.0, 1.0, -1.0)
    denom = np.abs(diff) + np.hypot(diff, 2.0 * modulus)
    t = np.where(active, sign * 2.0 * modulus / np.where(denom > 0.0, denom, 1.0), 0.0)
    c = 1.0 / np.sqrt(t * t + 1.0)
    s = t * c
    phase = np.where(active, np.conj(beta) / safe, 1.0)  # e^{-i phi}

    g_qp = -s * phase
    g_qq = c * phase

    # Columns: a <- a G
    col_p, col_q = a[:, p], a[:, q]
    a[:, p] = col_p * c + col_q * g_qp
    a[:, q] = col_p * s + col_q * g_qq

    # Rows: a <- G* a
    row_p, row_q = a[p, :], a[q, :]
    a[p, :] = c[:, None] * row_p + np.conj(g_qp)[:, None] * row_q
    a[q, :] = s[:, None] * row_p + np.conj(g_qq)[:, None] * row_q

    a[p, q] = 0.0
    a[q, p] = 0.0
    a[p, p] = a[p, p].real
    a[q, q] = a[q, q].real

    vec_p, vec_q = v[:, p], v[:, q]
    v[:, p] = vec_p * c + vec_q * g_qp
    v[:, q] = vec_p * s + vec_q * g_qq


def hermitian_eig(
    a, tol: float | None = None, max_sweeps: int | None = None
) -> EigenDecomposition:
    """Full eigendecomposition of a Hermitian matrix by cyclic Jacobi rotations.

    Args:
        a: Hermitian matrix (checked to 1e-10 relative Frobenius defect)
        tol: Stop when the off-diagonal Frobenius norm is below tol * (1 + ||a||_F)
        max_sweeps: Sweeps allowed before raising NumericalError

    Returns:
        EigenDecomposition with ascending eigenvalues (stable order on ties)
    """
    settings = get_settings()
    tol = settings.eig_tol if tol is None else tol
    max_sweeps = settings.max_sweeps if max_sweeps is None else max_sweeps
    if tol <= 0:
        raise ContractViolation(f"tolerance must be positive, got {tol}")

    work = require_hermitian(a).copy()
    n = work.shape[0]
    basis = np.eye(n, dtype=np.complex128)
    threshold = tol * (1.0 + np.linalg.norm(work))
    schedule = round_robin(n)

    off = _off_norm(work)
    sweeps = 0
    while off >= threshold:
        if sweeps >= max_sweeps:
            raise NumericalError(f"Jacobi did not converge in {max_sweeps} sweeps", off)
        for p, q in schedule:
            if p.size:
                _rotate(work, basis, p, q)
        sweeps += 1
        off = _off_norm(work)

    eigenvalues = np.diagonal(work).real.copy()
    order = np.argsort(eigenvalues, kind="stable")
    logger.trace(f"Jacobi n={n}: {sweeps} sweeps, off-norm {off:.2e}")
    return EigenDecomposition(
        eigenvalues=eigenvalues[order],
        basis=basis[:, order],
        sweeps=sweeps,
        off_norm=off,
    )
