"""Finite sections P_n T(a) P_n and the reflection R_n."""

import numpy as np
from scipy.linalg import toeplitz

from src.errors import ConfigurationError
from src.sequences import ComplexMatrix, DimensionFunction, MatrixSequence
from src.toeplitz.symbol import Symbol


def toeplitz_section(sym: Symbol, n: int) -> ComplexMatrix:
    """The n x n matrix (a_{i-j}) for 0 <= i, j < n."""
    if n < 1:
        raise ConfigurationError(f"section size must be >= 1, got {n}")
    column = sym.coefficient_array(0, n)  # a_0, a_1, ..., a_{n-1}
    row = np.array([sym.coefficient(-j) for j in range(n)], dtype=np.complex128)
    return toeplitz(column, row).astype(np.complex128, copy=False)


def reflect(mat) -> ComplexMatrix:
    """R_n M R_n: entry (i, j) moves to (n-1-i, n-1-j)."""
    mat = np.asarray(mat, dtype=np.complex128)
    if mat.ndim != 2 or mat.shape[0] != mat.shape[1]:
        raise ConfigurationError(f"reflection needs a square matrix, got shape {mat.shape}")
    return mat[::-1, ::-1].copy()


def section_sequence(sym: Symbol, label: str | None = None) -> MatrixSequence:
    """The finite sections method sequence (P_n T(a) P_n) with delta(n) = n."""
    return MatrixSequence(
        dims=DimensionFunction.linear(),
        generator=lambda n: toeplitz_section(sym, n),
        selfadjoint_hint=sym.is_real_valued(),
        label=label or f"T({sym.describe()})",
    )
