"""Singular values from the eigenvalues of A*A."""

from dataclasses import dataclass
from enum import StrEnum

import numpy as np
import numpy.typing as npt

from src.config.settings import get_settings
from src.errors import ContractViolation
from src.linalg.hermitian import hermitian_eig
from src.linalg.tridiagonal import sturm_counts, tridiagonal_eigvals, tridiagonalize


class SvdMethod(StrEnum):
    MULTISECTION = "multisection"
    JACOBI = "jacobi"


@dataclass(frozen=True)
class SingularValues:
    """Singular values stored once, in descending order.

    ``largest(k)`` is Sigma_k (1 = spectral norm); ``smallest(k)`` is the
    increasing-order sigma_k = Sigma_{dim-k+1}.
    """

    descending: npt.NDArray[np.float64]

    @property
    def dim(self) -> int:
        return len(self.descending)

    @property
    def ascending(self) -> npt.NDArray[np.float64]:
        return self.descending[::-1]

    def largest(self, k: int) -> float:
        if not 1 <= k <= self.dim:
            raise IndexError(f"Sigma_{k} undefined for dimension {self.dim}")
        return float(self.descending[k - 1])

    def smallest(self, k: int) -> float:
        if not 1 <= k <= self.dim:
            raise IndexError(f"sigma_{k} undefined for dimension {self.dim}")
        return float(self.descending[self.dim - k])

    @property
    def norm(self) -> float:
        return float(self.descending[0]) if self.dim else 0.0


def _square(a) -> npt.NDArray[np.complex128]:
    a = np.asarray(a, dtype=np.complex128)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ContractViolation(f"expected a square matrix, got shape {a.shape}")
    return a


def _clamp(values: npt.NDArray[np.float64], norm: float) -> npt.NDArray[np.float64]:
    cutoff = get_settings().clamp_ratio * norm
    return np.where(values < cutoff, 0.0, values)


def _roots(eigenvalues) -> npt.NDArray[np.float64]:
    return np.sqrt(np.maximum(eigenvalues, 0.0))


def svd_values(
    a, tol: float | None = None, method: SvdMethod = SvdMethod.MULTISECTION
) -> SingularValues:
    """All singular values of a square matrix.

    Computed as square roots of the eigenvalues of A*A, so small singular
    values carry an absolute error of order sqrt(machine eps) * ||A||.
    Values below ``clamp_ratio * Sigma_1`` are set to exactly 0.

    Args:
        a: Square complex matrix
        tol: Jacobi tolerance, used with ``method=jacobi``
        method: ``multisection`` (values only) or ``jacobi`` (full decomposition)
    """
    a = _square(a)
    if a.shape[0] == 0:
        return SingularValues(np.zeros(0))
    gram = a.conj().T @ a
    if SvdMethod(method) == SvdMethod.JACOBI:
        eigenvalues = hermitian_eig(gram, tol=tol).eigenvalues
    else:
        diag, offdiag = tridiagonalize(gram, check=False)
        eigenvalues = tridiagonal_eigvals(diag, offdiag)
    descending = _roots(eigenvalues)[::-1].copy()
    return SingularValues(_clamp(descending, descending[0]))


def extreme_singular_values(
    a, k: int, hermitian: bool = False
) -> tuple[npt.NDArray[np.float64], npt.NDArray[np.float64]]:
    """The k largest (descending) and k smallest (ascending) singular values.

    Only the needed eigenvalues are located. With ``hermitian=True`` the
    singular values are the moduli of the eigenvalues of ``a`` itself, which
    keeps full precision for small values. Both arrays have length
    ``min(k, dim)``.
    """
    a = _square(a)
    n = a.shape[0]
    k = min(k, n)
    if k <= 0:
        return np.zeros(0), np.zeros(0)

    if hermitian:
        diag, offdiag = tridiagonalize(0.5 * (a + a.conj().T), check=False)
        negatives = int(sturm_counts(diag, offdiag, [0.0])[0])
        candidates = np.unique(
            np.clip(
                np.concatenate(
                    [
                        np.arange(k),
                        np.arange(n - k, n),
                        np.arange(negatives - k, negatives + k),
                    ]
                ),
                0,
                n - 1,
            )
        )
        moduli = np.sort(np.abs(tridiagonal_eigvals(diag, offdiag, candidates)))
        top, bottom = moduli[::-1][:k].copy(), moduli[:k].copy()
    else:
        diag, offdiag = tridiagonalize(a.conj().T @ a, check=False)
        candidates = np.unique(np.concatenate([np.arange(k), np.arange(n - k, n)]))
        values = _roots(tridiagonal_eigvals(diag, offdiag, candidates))
        lookup = dict(zip(candidates.tolist(), values))
        top = np.array([lookup[j] for j in range(n - 1, n - k - 1, -1)])
        bottom = np.array([lookup[j] for j in range(k)])

    norm = float(top[0])
    return _clamp(top, norm), _clamp(bottom, norm)


def spectral_norm(a, hermitian: bool = False) -> float:
    """||A|| = Sigma_1(A)."""
    a = _square(a)
    if a.shape[0] == 0:
        return 0.0
    top, _ = extreme_singular_values(a, 1, hermitian=hermitian)
    return float(top[0])
