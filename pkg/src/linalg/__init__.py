"""Dense Hermitian eigensolvers and singular values."""

from src.linalg.hermitian import EigenDecomposition, hermitian_eig, is_hermitian
from src.linalg.singular import (
    SingularValues,
    extreme_singular_values,
    spectral_norm,
    svd_values,
)
from src.linalg.tridiagonal import hermitian_eigvals, sturm_counts, tridiagonalize

__all__ = [
    "EigenDecomposition",
    "SingularValues",
    "extreme_singular_values",
    "hermitian_eig",
    "hermitian_eigvals",
    "is_hermitian",
    "spectral_norm",
    "sturm_counts",
    "svd_values",
    "tridiagonalize",
]
