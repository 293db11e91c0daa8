"""Eigenvalue counts N(A_n, (lambda - eps, lambda + eps)) over a horizon."""

from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np
import numpy.typing as npt
import polars as pl
from loguru import logger

from src.asymptotics.windows import Windows, half, window_max, window_min
from src.config.loader import CountingRules
from src.errors import ConfigurationError
from src.linalg.tridiagonal import count_in_intervals, tridiagonal_eigvals, tridiagonalize
from src.models import CountSummary
from src.sequences import MatrixSequence, map_indices

NORM_RTOL = 1e-9


@dataclass
class CountTable:
    """Counts at one lambda for every half-width of the ladder and every n.

    ``counts[i, j]`` is the number of eigenvalues of A_{ns[j]} in the open
    interval (lambda - eps_i, lambda + eps_i), with multiplicity.
    """

    lam: float
    half_widths: tuple[float, ...]
    ns: npt.NDArray[np.int64]
    counts: npt.NDArray[np.int64]
    dims: npt.NDArray[np.int64]
    horizon: int
    norms: Optional[npt.NDArray[np.float64]] = None

    def row(self, eps: float) -> npt.NDArray[np.int64]:
        return self.counts[self.half_widths.index(eps)]

    def at(self, n: int, eps: float) -> int:
        (where,) = np.nonzero(self.ns == n)
        if where.size == 0:
            raise ConfigurationError(f"index {n} is not in the count table")
        return int(self.row(eps)[where[0]])

    def summaries(self) -> list[CountSummary]:
        windows = Windows.over(self.ns, self.horizon)
        out = []
        for eps, row in zip(self.half_widths, self.counts):
            out.append(
                CountSummary(
                    eps=eps,
                    first_quarter_max=_int(window_max(row, windows.first_quarter)),
                    full_max=int(row.max()),
                    count_half=self.at(half(self.horizon), eps),
                    count_final=int(row[-1]),
                    tail_min=_int(window_min(row, windows.tail)),
                )
            )
        return out

    def to_frame(self) -> pl.DataFrame:
        """Long table lambda, eps, n, count."""
        eps_col = np.repeat(np.array(self.half_widths), len(self.ns))
        return pl.DataFrame(
            {
                "lambda": np.full(eps_col.size, self.lam),
                "eps": eps_col,
                "n": np.tile(self.ns, len(self.half_widths)),
                "count": self.counts.ravel(),
            }
        )


def _int(value: float) -> int:
    return 0 if np.isnan(value) else int(value)


def _check_ladder(ladder: Sequence[float]) -> tuple[float, ...]:
    ladder = tuple(float(e) for e in ladder)
    if not ladder or any(e <= 0 for e in ladder):
        raise ConfigurationError("eps ladder must be a nonempty list of positive half-widths")
    if any(a <= b for a, b in zip(ladder, ladder[1:])):
        raise ConfigurationError("eps ladder must be strictly descending")
    return ladder


def count_tables(
    seq: MatrixSequence,
    lambdas: Sequence[float],
    ladder: Sequence[float],
    horizon: int,
    rules: CountingRules | None = None,
    start: int = 1,
    with_norms: bool = True,
) -> list[CountTable]:
    """One CountTable per lambda, from a single pass over n = start..horizon.

    Each A_n is tridiagonalized once and all intervals are counted from the
    same Sturm sequences. Matrices of sequences without the self-adjoint
    hint are checked to be Hermitian (ContractViolation otherwise).
    """
    rules = rules or CountingRules()
    ladder = _check_ladder(ladder)
    lambdas = [float(x) for x in lambdas]
    if horizon < 1:
        raise ConfigurationError(f"horizon must be >= 1, got {horizon}")
    shrink = rules.endpoint_tol

    centers = np.repeat(np.array(lambdas), len(ladder))
    widths = np.tile(np.array(ladder), len(lambdas))
    lower = centers - widths + shrink
    upper = centers + widths - shrink
    check = not seq.selfadjoint_hint

    def count_one(n: int):
        mat = seq.eval(n)
        diag, offdiag = tridiagonalize(mat, check=check)
        counts = count_in_intervals(diag, offdiag, lower, upper)
        norm = None
        if with_norms:
            ends = tridiagonal_eigvals(diag, offdiag, [0, len(diag) - 1], rtol=NORM_RTOL)
            norm = float(np.abs(ends).max())
        return mat.shape[0], counts, norm

    ns = list(range(start, horizon + 1))
    results = map_indices(count_one, ns)
    dims = np.array([r[0] for r in results], dtype=np.int64)
    stacked = np.stack([r[1] for r in results], axis=1)  # (lambda*eps, n)
    norms = np.array([r[2] for r in results], dtype=np.float64) if with_norms else None

    tables = []
    for i, lam in enumerate(lambdas):
        block = stacked[i * len(ladder) : (i + 1) * len(ladder)]
        tables.append(
            CountTable(
                lam=lam,
                half_widths=ladder,
                ns=np.array(ns, dtype=np.int64),
                counts=block,
                dims=dims,
                horizon=horizon,
                norms=norms,
            )
        )
    logger.debug(
        f"Counted {seq.label}: {len(lambdas)} points x {len(ladder)} widths, n={start}..{horizon}"
    )
    return tables


def eig_counts(
    seq: MatrixSequence,
    lam: float,
    eps: float,
    horizon: int,
    rules: CountingRules | None = None,
) -> list[int]:
    """N(A_n, (lam - eps, lam + eps)) for n = 1..horizon."""
    (table,) = count_tables(seq, [lam], [eps], horizon, rules=rules, with_norms=False)
    return [int(c) for c in table.counts[0]]
