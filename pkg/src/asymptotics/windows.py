"""Index windows over a finite horizon h.

Asymptotic notions (liminf, limsup, sup over n >= k) are read off these
windows:

    first quarter   n <= h/4
    tail            n >= h/2
    mid quarter     h/2 <= n < 3h/4
    last quarter    n >= 3h/4

Fractional bounds are rounded up.
"""

import math
from dataclasses import dataclass

import numpy as np
import numpy.typing as npt


def half(horizon: int) -> int:
    """First index of the tail, ceil(h/2)."""
    return math.ceil(horizon / 2)


def three_quarters(horizon: int) -> int:
    return math.ceil(3 * horizon / 4)


@dataclass(frozen=True)
class Windows:
    """Boolean masks over an array of indices ``ns``."""

    first_quarter: npt.NDArray[np.bool_]
    tail: npt.NDArray[np.bool_]
    mid_quarter: npt.NDArray[np.bool_]
    last_quarter: npt.NDArray[np.bool_]

    @classmethod
    def over(cls, ns, horizon: int) -> "Windows":
        ns = np.asarray(ns)
        start_tail = half(horizon)
        start_last = three_quarters(horizon)
        return cls(
            first_quarter=ns <= horizon / 4,
            tail=ns >= start_tail,
            mid_quarter=(ns >= start_tail) & (ns < start_last),
            last_quarter=ns >= start_last,
        )


def window_max(values, mask) -> float:
    """max over the window ignoring NaN; NaN when the window holds no value."""
    picked = np.asarray(values, dtype=np.float64)[np.asarray(mask)]
    picked = picked[~np.isnan(picked)]
    return float(picked.max()) if picked.size else float("nan")


def window_min(values, mask) -> float:
    """min over the window ignoring NaN; NaN when the window holds no value."""
    picked = np.asarray(values, dtype=np.float64)[np.asarray(mask)]
    picked = picked[~np.isnan(picked)]
    return float(picked.min()) if picked.size else float("nan")


def no_decay(values, windows: Windows, factor: float) -> bool:
    """Last-quarter minimum is at least ``factor`` times the mid-quarter minimum."""
    last = window_min(values, windows.last_quarter)
    mid = window_min(values, windows.mid_quarter)
    if np.isnan(last) or np.isnan(mid):
        return False
    return last >= factor * mid
