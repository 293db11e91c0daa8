"""Tables of extreme singular values of A_n over a horizon."""

import math
from dataclasses import dataclass

import numpy as np
import numpy.typing as npt
import polars as pl
from loguru import logger

from src.errors import ConfigurationError, NumericalError
from src.linalg import extreme_singular_values
from src.sequences import MatrixSequence, Restriction, map_indices


@dataclass
class SingularProfile:
    """Sigma_k(A_n) (descending) and sigma_k(A_n) (ascending) for k <= k_max.

    Row i belongs to index ``ns[i]``. ``descending`` is zero padded and
    ``ascending`` NaN padded where k exceeds delta(n).
    """

    horizon: int
    k_max: int
    ns: npt.NDArray[np.int64]
    dims: npt.NDArray[np.int64]
    descending: npt.NDArray[np.float64]
    ascending: npt.NDArray[np.float64]
    label: str = ""

    def __post_init__(self):
        if len(self.ns) == 0:
            raise ConfigurationError("singular profile has no rows")

    def largest(self, k: int) -> npt.NDArray[np.float64]:
        """The Sigma_k row over n."""
        return self.descending[:, k - 1]

    def smallest(self, k: int) -> npt.NDArray[np.float64]:
        """The sigma_k row over n (NaN where k > delta(n))."""
        return self.ascending[:, k - 1]

    @property
    def norms(self) -> npt.NDArray[np.float64]:
        return self.largest(1)

    def restrict(self, eta: Restriction) -> "SingularProfile":
        """Profile of the subsequence (A_eta(m)), read from this table.

        The restricted horizon is the number of eta values up to the
        original horizon; only values of eta that are rows here are kept.
        """
        values = eta.within(self.horizon)
        if not values:
            raise ConfigurationError("restriction has no index within the profile horizon")
        row_of = {int(n): i for i, n in enumerate(self.ns)}
        picked = [(m, row_of[v]) for m, v in enumerate(values, start=1) if v in row_of]
        if not picked:
            raise ConfigurationError("restriction misses every profiled index")
        ms, rows = zip(*picked)
        rows = list(rows)
        return SingularProfile(
            horizon=len(values),
            k_max=self.k_max,
            ns=np.array(ms, dtype=np.int64),
            dims=self.dims[rows],
            descending=self.descending[rows],
            ascending=self.ascending[rows],
            label=f"{self.label}|{eta.describe()}",
        )

    def to_frame(self) -> pl.DataFrame:
        """Long table with columns n, dim, k, sigma_desc."""
        records: dict[str, list] = {"n": [], "dim": [], "k": [], "sigma_desc": []}
        for n, dim, row in zip(self.ns, self.dims, self.descending):
            for k in range(1, min(self.k_max, int(dim)) + 1):
                records["n"].append(int(n))
                records["dim"].append(int(dim))
                records["k"].append(k)
                records["sigma_desc"].append(float(row[k - 1]))
        return pl.DataFrame(
            records,
            schema={"n": pl.Int64, "dim": pl.Int64, "k": pl.Int64, "sigma_desc": pl.Float64},
        )


def default_start(horizon: int) -> int:
    """First profiled index; the leading quarter enters no estimator window."""
    return horizon // 4 + 1


def singular_profile(
    seq: MatrixSequence, horizon: int, k_max: int, start: int | None = None
) -> SingularProfile:
    """Tabulate the k_max largest and smallest singular values for start <= n <= horizon."""
    if horizon < 4:
        raise ConfigurationError(f"profile horizon must be >= 4, got {horizon}")
    if k_max < 1:
        raise ConfigurationError(f"k_max must be >= 1, got {k_max}")
    start = default_start(horizon) if start is None else start
    if not 1 <= start <= horizon:
        raise ConfigurationError(f"profile start {start} outside 1..{horizon}")

    hermitian = seq.selfadjoint_hint

    def row(n: int):
        mat = seq.eval(n)
        try:
            top, bottom = extreme_singular_values(mat, k_max, hermitian=hermitian)
        except NumericalError as exc:
            raise NumericalError(f"{seq.label} at n={n}: {exc}", exc.off_norm) from exc
        return mat.shape[0], top, bottom

    ns = list(range(start, horizon + 1))
    rows = map_indices(row, ns)

    descending = np.zeros((len(ns), k_max))
    ascending = np.full((len(ns), k_max), math.nan)
    dims = np.zeros(len(ns), dtype=np.int64)
    for i, (dim, top, bottom) in enumerate(rows):
        dims[i] = dim
        descending[i, : top.size] = top
        ascending[i, : bottom.size] = bottom

    logger.debug(f"Profiled {seq.label}: n={start}..{horizon}, k_max={k_max}")
    return SingularProfile(
        horizon=horizon,
        k_max=k_max,
        ns=np.array(ns, dtype=np.int64),
        dims=dims,
        descending=descending,
        ascending=ascending,
        label=seq.label,
    )
