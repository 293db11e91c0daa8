"""Pointwise *-algebra operations and leaf constructors for matrix sequences."""

from enum import StrEnum
from typing import Iterable

import numpy as np
from loguru import logger

from src.errors import AlgebraError, ConfigurationError, EvaluationError
from src.linalg.singular import spectral_norm
from src.sequences.dimension import DimensionFunction, add_dimensions
from src.sequences.index_map import Restriction
from src.sequences.sequence import ComplexMatrix, MatrixSequence, map_indices


def evaluate(seq: MatrixSequence, n: int) -> ComplexMatrix:
    """A_n for n >= 1."""
    return seq.eval(n)


def _require_same_shape(a: ComplexMatrix, b: ComplexMatrix, op: str, n: int) -> None:
    if a.shape != b.shape:
        raise AlgebraError(f"{op}: dimension mismatch {a.shape[0]} vs {b.shape[0]} at n={n}")


# Leaf sequences


def identity_sequence(dims: DimensionFunction | None = None) -> MatrixSequence:
    dims = dims or DimensionFunction.linear()
    return MatrixSequence(
        dims=dims,
        generator=lambda n: np.eye(dims(n), dtype=np.complex128),
        selfadjoint_hint=True,
        label="I",
    )


def zero_sequence(dims: DimensionFunction | None = None) -> MatrixSequence:
    dims = dims or DimensionFunction.linear()
    return MatrixSequence(
        dims=dims,
        generator=lambda n: np.zeros((dims(n), dims(n)), dtype=np.complex128),
        selfadjoint_hint=True,
        label="0",
    )


def constant_sequence(matrix, label: str = "const") -> MatrixSequence:
    """The bounded-dimension sequence A_n = matrix for every n."""
    mat = np.array(matrix, dtype=np.complex128)
    if mat.ndim != 2 or mat.shape[0] != mat.shape[1]:
        raise ConfigurationError(f"constant sequence needs a square matrix, got {mat.shape}")
    mat.setflags(write=False)
    return MatrixSequence(
        dims=DimensionFunction.constant(mat.shape[0]),
        generator=lambda n: mat,
        selfadjoint_hint=bool(np.array_equal(mat, mat.conj().T)),
        label=label,
    )


class ExplicitMode(StrEnum):
    CYCLE = "cycle"
    HOLD = "hold"
    STRICT = "strict"


def explicit_sequence(
    matrices: Iterable, mode: ExplicitMode = ExplicitMode.CYCLE, label: str = "explicit"
) -> MatrixSequence:
    """Sequence read from a finite list of matrices.

    ``cycle`` repeats the list, ``hold`` repeats the last matrix, ``strict``
    refuses indices past the end of the list.
    """
    mats = [np.array(m, dtype=np.complex128) for m in matrices]
    if not mats:
        raise ConfigurationError("explicit sequence needs at least one matrix")
    for i, mat in enumerate(mats, start=1):
        if mat.ndim != 2 or mat.shape[0] != mat.shape[1]:
            raise ConfigurationError(f"explicit matrix #{i} is not square: {mat.shape}")
        mat.setflags(write=False)
    mode = ExplicitMode(mode)
    size = len(mats)

    def position(n: int) -> int:
        if n <= size:
            return n - 1
        if mode == ExplicitMode.CYCLE:
            return (n - 1) % size
        if mode == ExplicitMode.HOLD:
            return size - 1
        raise EvaluationError(f"explicit sequence has only {size} matrices", n)

    dims = DimensionFunction.custom(
        lambda n: mats[position(n)].shape[0], name=f"explicit[{size}]"
    )
    hermitian = all(np.array_equal(m, m.conj().T) for m in mats)
    return MatrixSequence(
        dims=dims,
        generator=lambda n: mats[position(n)],
        selfadjoint_hint=hermitian,
        label=label,
    )


# Pointwise operations


def add(a: MatrixSequence, b: MatrixSequence) -> MatrixSequence:
    def generator(n: int) -> ComplexMatrix:
        left, right = a.eval(n), b.eval(n)
        _require_same_shape(left, right, "add", n)
        return left + right

    return MatrixSequence(
        dims=a.dims,
        generator=generator,
        selfadjoint_hint=a.selfadjoint_hint and b.selfadjoint_hint,
        label=f"({a.label} + {b.label})",
        memoize=True,
    )


def mul(a: MatrixSequence, b: MatrixSequence) -> MatrixSequence:
    def generator(n: int) -> ComplexMatrix:
        left, right = a.eval(n), b.eval(n)
        _require_same_shape(left, right, "mul", n)
        return left @ right

    return MatrixSequence(
        dims=a.dims,
        generator=generator,
        selfadjoint_hint=False,
        label=f"{a.label}·{b.label}",
        memoize=True,
    )


def adjoint(a: MatrixSequence) -> MatrixSequence:
    return MatrixSequence(
        dims=a.dims,
        generator=lambda n: a.eval(n).conj().T.copy(),
        selfadjoint_hint=a.selfadjoint_hint,
        label=f"{a.label}*",
        memoize=True,
    )


def scale(a: MatrixSequence, c: complex) -> MatrixSequence:
    c = complex(c)
    return MatrixSequence(
        dims=a.dims,
        generator=lambda n: c * a.eval(n),
        selfadjoint_hint=a.selfadjoint_hint and c.imag == 0,
        label=f"{_format_scalar(c)}·{a.label}",
        memoize=True,
    )


def restrict(seq: MatrixSequence, eta: Restriction) -> MatrixSequence:
    """The subsequence (A_eta(n))."""
    return MatrixSequence(
        dims=seq.dims.compose(eta),
        generator=lambda n: seq.eval(eta(n)),
        selfadjoint_hint=seq.selfadjoint_hint,
        label=f"{seq.label}|{eta.describe()}",
        memoize=True,
    )


def alternate(a: MatrixSequence, b: MatrixSequence) -> MatrixSequence:
    """A_n from ``a`` at odd n, from ``b`` at even n."""

    def generator(n: int) -> ComplexMatrix:
        if n % 2:
            return a.eval(n)
        mat = b.eval(n)
        if mat.shape[0] != a.dims(n):
            raise AlgebraError(
                f"alternate: dimension mismatch {a.dims(n)} vs {mat.shape[0]} at n={n}"
            )
        return mat

    return MatrixSequence(
        dims=a.dims,
        generator=generator,
        selfadjoint_hint=a.selfadjoint_hint and b.selfadjoint_hint,
        label=f"alt({a.label}, {b.label})",
        memoize=True,
    )


def direct_sum(a: MatrixSequence, b: MatrixSequence) -> MatrixSequence:
    """Block-diagonal sequence diag(A_n, B_n)."""

    def generator(n: int) -> ComplexMatrix:
        left, right = a.eval(n), b.eval(n)
        p, q = left.shape[0], right.shape[0]
        out = np.zeros((p + q, p + q), dtype=np.complex128)
        out[:p, :p] = left
        out[p:, p:] = right
        return out

    return MatrixSequence(
        dims=add_dimensions(a.dims, b.dims),
        generator=generator,
        selfadjoint_hint=a.selfadjoint_hint and b.selfadjoint_hint,
        label=f"({a.label} ⊕ {b.label})",
        memoize=True,
    )


# Norms


def norms(seq: MatrixSequence, horizon: int, start: int = 1) -> list[float]:
    """Spectral norms ||A_n|| for start <= n <= horizon."""
    return map_indices(
        lambda n: spectral_norm(seq.eval(n), hermitian=seq.selfadjoint_hint),
        list(range(start, horizon + 1)),
    )


def sup_norm(seq: MatrixSequence, horizon: int) -> float:
    """Finite-horizon estimate max_{n <= horizon} ||A_n|| of the sequence norm."""
    if horizon < 1:
        raise ConfigurationError(f"horizon must be >= 1, got {horizon}")
    value = max(norms(seq, horizon))
    logger.debug(f"sup_norm({seq.label}, {horizon}) = {value:.6g}")
    return value


def _format_scalar(c: complex) -> str:
    if c.imag == 0:
        return f"{c.real:g}"
    return f"({c.real:g}{c.imag:+g}i)"
