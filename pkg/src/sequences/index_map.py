"""Strictly increasing index maps eta used to pass to subsequences."""

from dataclasses import dataclass

from src.errors import ConfigurationError


@dataclass(frozen=True)
class Restriction:
    """Strictly increasing map n -> eta(n) over the positive integers.

    The map is an explicit prefix ``eta(1..len(prefix))`` optionally followed
    by an arithmetic tail: past the prefix, ``eta(n) = eta(len) + step * (n - len)``.
    A restriction without a tail is finite and only defined on its prefix.
    The empty prefix with ``tail_scale`` / ``tail_offset`` gives the pure
    arithmetic map ``eta(n) = scale * n + offset``.
    """

    prefix: tuple[int, ...] = ()
    tail_step: int | None = None
    tail_scale: int | None = None
    tail_offset: int = 0

    def __post_init__(self):
        previous = 0
        for value in self.prefix:
            if value <= previous:
                raise ConfigurationError(
                    f"restriction must be strictly increasing and positive: {list(self.prefix)}"
                )
            previous = value
        if self.tail_step is not None and self.tail_step < 1:
            raise ConfigurationError("restriction tail step must be >= 1")
        if self.tail_scale is not None:
            if self.prefix:
                raise ConfigurationError("arithmetic restriction cannot carry a prefix")
            if self.tail_scale < 1 or self.tail_scale + self.tail_offset < 1:
                raise ConfigurationError(
                    f"arithmetic restriction {self.tail_scale}n{self.tail_offset:+d} "
                    "is not a map into the positive integers"
                )
        if not self.prefix and self.tail_step is None and self.tail_scale is None:
            raise ConfigurationError("restriction is empty")

    @classmethod
    def identity(cls) -> "Restriction":
        return cls(tail_scale=1, tail_offset=0)

    @classmethod
    def arithmetic(cls, scale: int, offset: int = 0) -> "Restriction":
        return cls(tail_scale=scale, tail_offset=offset)

    @classmethod
    def from_indices(cls, indices, tail_step: int | None = None) -> "Restriction":
        return cls(prefix=tuple(int(i) for i in indices), tail_step=tail_step)

    @property
    def is_finite(self) -> bool:
        return self.tail_step is None and self.tail_scale is None

    def __len__(self) -> int:
        if not self.is_finite:
            raise TypeError("infinite restriction has no length")
        return len(self.prefix)

    def __call__(self, n: int) -> int:
        if n < 1:
            raise ConfigurationError(f"restriction index must be >= 1, got {n}")
        if self.tail_scale is not None:
            return self.tail_scale * n + self.tail_offset
        if n <= len(self.prefix):
            return self.prefix[n - 1]
        if self.tail_step is None:
            raise ConfigurationError(
                f"finite restriction of length {len(self.prefix)} evaluated at n={n}"
            )
        return self.prefix[-1] + self.tail_step * (n - len(self.prefix))

    def indices(self, count: int) -> list[int]:
        """First ``count`` values eta(1), ..., eta(count)."""
        return [self(n) for n in range(1, count + 1)]

    def within(self, horizon: int) -> list[int]:
        """All values eta(n) that do not exceed horizon."""
        values = []
        n = 1
        while True:
            if self.is_finite and n > len(self.prefix):
                break
            value = self(n)
            if value > horizon:
                break
            values.append(value)
            n += 1
        return values

    def compose(self, mu: "Restriction") -> "Restriction":
        """The map n -> eta(mu(n))."""
        if self.tail_scale is not None and mu.tail_scale is not None:
            return Restriction.arithmetic(
                self.tail_scale * mu.tail_scale,
                self.tail_scale * mu.tail_offset + self.tail_offset,
            )
        if mu.is_finite:
            return Restriction.from_indices(self(m) for m in mu.prefix)
        if self.is_finite:
            return Restriction.from_indices(self.within_domain(mu))
        # Both infinite, at least one with a prefix: materialize until both
        # maps are in their arithmetic regime, then continue arithmetically.
        span = max(len(self.prefix), len(mu.prefix)) + 1
        while mu(span) <= len(self.prefix):
            span += 1
        values = [self(mu(n)) for n in range(1, span + 1)]
        step = self(mu(span + 1)) - values[-1]
        return Restriction.from_indices(values, tail_step=step)

    def within_domain(self, mu: "Restriction") -> list[int]:
        """Values eta(mu(n)) for every n where mu(n) lies in the finite domain of eta."""
        return [self(m) for m in mu.within(len(self.prefix))]

    def describe(self) -> str:
        if self.tail_scale is not None:
            if self.tail_offset:
                return f"{self.tail_scale}n{self.tail_offset:+d}"
            return f"{self.tail_scale}n"
        head = ",".join(str(v) for v in self.prefix[:4])
        more = ",…" if len(self.prefix) > 4 else ""
        tail = f"+{self.tail_step}k" if self.tail_step is not None else ""
        return f"[{head}{more}]{tail}"

    def to_list(self) -> list[int]:
        if not self.is_finite:
            raise ConfigurationError("only finite restrictions serialize to an index list")
        return list(self.prefix)
