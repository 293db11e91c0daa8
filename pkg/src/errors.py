"""Exception hierarchy for seqspec."""


class SeqSpecError(Exception):
    """Base class for all seqspec errors."""


class ConfigurationError(SeqSpecError, ValueError):
    """Malformed configuration, dimension rule or request."""


class AlgebraError(SeqSpecError, ValueError):
    """Pointwise operation on sequences with incompatible dimensions."""


class ContractViolation(SeqSpecError, ValueError):
    """Input violates a kernel precondition (e.g. Hermitian input required)."""


class SymbolVanishesError(SeqSpecError, ValueError):
    """Symbol comes too close to zero on the unit circle."""

    def __init__(self, min_modulus: float):
        super().__init__(
            f"symbol vanishes: min |a| on grid is {min_modulus:.3e}, "
            "T(a) is not Fredholm"
        )
        self.min_modulus = min_modulus


class EvaluationError(SeqSpecError):
    """A sequence cannot be evaluated at a given index."""

    def __init__(self, message: str, n: int):
        super().__init__(f"{message} (n={n})")
        self.n = n


class NumericalError(SeqSpecError, ArithmeticError):
    """Iterative kernel failed to converge."""

    def __init__(self, message: str, off_norm: float):
        super().__init__(f"{message}: off-diagonal norm {off_norm:.3e}")
        self.off_norm = off_norm
