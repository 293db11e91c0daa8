"""Lazily evaluated matrix sequences (A_n) with dimension function delta."""

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import count
from typing import Callable, TypeVar

import numpy as np
import numpy.typing as npt
from loguru import logger

from src.config.settings import get_settings
from src.errors import ContractViolation, EvaluationError
from src.sequences.dimension import DimensionFunction

ComplexMatrix = npt.NDArray[np.complex128]

SELFADJOINT_TOL = 1e-12

_ids = count(1)

T = TypeVar("T")


@dataclass(eq=False)
class MatrixSequence:
    """A sequence n -> A_n of complex delta(n) x delta(n) matrices.

    ``generator`` must be pure: evaluating it twice at the same n must give
    bit-identical entries. Sequences compare and hash by identity, which is
    what the evaluation cache keys on.
    """

    dims: DimensionFunction
    generator: Callable[[int], npt.ArrayLike]
    selfadjoint_hint: bool = False
    label: str = "sequence"
    memoize: bool = False
    uid: int = field(default_factory=lambda: next(_ids))

    def eval(self, n: int) -> ComplexMatrix:
        """Evaluate A_n, checking shape, finiteness and the self-adjoint hint."""
        if self.memoize and get_settings().cache_size > 0:
            return _cached_eval(self, n)
        return _evaluate(self, n)

    def __repr__(self) -> str:
        return f"MatrixSequence({self.label!r}, dims={self.dims.describe()})"


def _evaluate(seq: MatrixSequence, n: int) -> ComplexMatrix:
    dim = seq.dims(n)
    mat = np.array(seq.generator(n), dtype=np.complex128)

    if mat.shape != (dim, dim):
        raise EvaluationError(
            f"{seq.label}: generator returned shape {mat.shape}, expected ({dim}, {dim})",
            n,
        )
    if not np.all(np.isfinite(mat)):
        raise EvaluationError(f"{seq.label}: non-finite entries", n)

    if seq.selfadjoint_hint:
        defect = np.linalg.norm(mat - mat.conj().T)
        scale = 1.0 + np.linalg.norm(mat)
        if defect > SELFADJOINT_TOL * scale:
            raise ContractViolation(
                f"{seq.label} is flagged self-adjoint but ||A_n - A_n*|| = {defect:.3e} at n={n}"
            )

    # Frozen copy: the generator keeps its own array writable.
    mat.setflags(write=False)
    return mat


@lru_cache(maxsize=1)
def _cache_for(size: int):
    logger.debug(f"Evaluation cache enabled with {size} entries")
    return lru_cache(maxsize=size)(_evaluate)


def _cached_eval(seq: MatrixSequence, n: int) -> ComplexMatrix:
    return _cache_for(get_settings().cache_size)(seq, n)


def clear_cache() -> None:
    """Drop every memoized matrix."""
    _cache_for.cache_clear()


def map_indices(func: Callable[[int], T], indices: list[int]) -> list[T]:
    """Apply ``func`` to every index, concurrently when workers are configured.

    Results come back in index order either way.
    """
    workers = get_settings().max_workers
    if workers <= 1 or len(indices) < 2:
        return [func(n) for n in indices]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(func, indices))
