"""Dimension functions n -> delta(n) of matrix sequences."""

from dataclasses import dataclass, field
from enum import StrEnum
from numbers import Integral
from typing import Callable

from src.errors import ConfigurationError


class DimensionKind(StrEnum):
    LINEAR = "linear"
    EXPLICIT = "explicit"
    CUSTOM = "custom"


@dataclass(frozen=True)
class DimensionFunction:
    """Map from index n >= 1 to the matrix size delta(n).

    ``linear`` gives ``slope * n + offset``; ``explicit`` reads ``values[n-1]``;
    ``custom`` calls ``rule``. When ``filtration`` is set, delta must be
    strictly increasing wherever it is checked.
    """

    kind: DimensionKind = DimensionKind.LINEAR
    slope: int = 1
    offset: int = 0
    values: tuple[int, ...] = ()
    rule: Callable[[int], int] | None = field(default=None, compare=False)
    filtration: bool = False
    name: str = ""

    @classmethod
    def linear(cls, slope: int = 1, offset: int = 0, filtration: bool | None = None):
        if filtration is None:
            filtration = slope > 0
        return cls(
            kind=DimensionKind.LINEAR, slope=slope, offset=offset, filtration=filtration
        )

    @classmethod
    def explicit(cls, values, filtration: bool = False):
        return cls(
            kind=DimensionKind.EXPLICIT,
            values=tuple(int(v) for v in values),
            filtration=filtration,
        )

    @classmethod
    def custom(cls, rule: Callable[[int], int], name: str = "custom", filtration: bool = False):
        return cls(kind=DimensionKind.CUSTOM, rule=rule, name=name, filtration=filtration)

    @classmethod
    def constant(cls, dim: int):
        return cls.linear(slope=0, offset=dim, filtration=False)

    def __call__(self, n: int) -> int:
        if n < 1:
            raise ConfigurationError(f"sequence index must be >= 1, got {n}")

        if self.kind == DimensionKind.LINEAR:
            value = self.slope * n + self.offset
        elif self.kind == DimensionKind.EXPLICIT:
            if n > len(self.values):
                raise ConfigurationError(
                    f"explicit dimension list has {len(self.values)} entries, "
                    f"index {n} requested"
                )
            value = self.values[n - 1]
        else:
            if self.rule is None:
                raise ConfigurationError("custom dimension function has no rule")
            value = self.rule(n)

        if isinstance(value, bool) or not isinstance(value, Integral) or value < 1:
            raise ConfigurationError(
                f"dimension rule returned {value!r} at n={n}; expected a positive integer"
            )
        return int(value)

    def same_on(self, other: "DimensionFunction", horizon: int) -> bool:
        """True when both functions agree for every n <= horizon."""
        if self == other and self.kind != DimensionKind.CUSTOM:
            return True
        return all(self(n) == other(n) for n in range(1, horizon + 1))

    def check(self, horizon: int) -> None:
        """Validate positivity (and monotonicity for filtrations) up to horizon."""
        previous = 0
        for n in range(1, horizon + 1):
            value = self(n)
            if self.filtration and value <= previous:
                raise ConfigurationError(
                    f"filtration dimension function is not strictly increasing at n={n}"
                )
            previous = value

    def compose(self, eta) -> "DimensionFunction":
        """Dimension function n -> delta(eta(n)) of a restricted sequence."""
        return DimensionFunction.custom(
            lambda n: self(eta(n)),
            name=f"{self.describe()}∘{eta.describe()}",
            filtration=self.filtration,
        )

    def describe(self) -> str:
        if self.kind == DimensionKind.LINEAR:
            if self.slope == 0:
                return str(self.offset)
            return f"{self.slope}n{self.offset:+d}" if self.offset else f"{self.slope}n"
        if self.kind == DimensionKind.EXPLICIT:
            return f"explicit[{len(self.values)}]"
        return self.name or "custom"


def add_dimensions(a: DimensionFunction, b: DimensionFunction) -> DimensionFunction:
    """Dimension function of a direct sum."""
    if a.kind == DimensionKind.LINEAR and b.kind == DimensionKind.LINEAR:
        return DimensionFunction.linear(
            slope=a.slope + b.slope,
            offset=a.offset + b.offset,
            filtration=a.filtration or b.filtration,
        )
    return DimensionFunction.custom(
        lambda n: a(n) + b(n),
        name=f"{a.describe()}+{b.describe()}",
        filtration=a.filtration or b.filtration,
    )
