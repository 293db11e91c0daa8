"""Finite-horizon estimators on singular value profiles."""

from src.asymptotics.estimators import (
    INFINITE,
    CompactnessKind,
    CompactnessVerdict,
    FredholmKind,
    FredholmVerdict,
    compactness_test,
    essential_rank,
    essential_rank_report,
    fredholm_test,
    zero_sequence_test,
)
from src.asymptotics.fractality import (
    FractalityDiagnostics,
    fractality_diagnostics,
    hausdorff_distance,
)
from src.asymptotics.profile import SingularProfile, singular_profile

__all__ = [
    "INFINITE",
    "CompactnessKind",
    "CompactnessVerdict",
    "FractalityDiagnostics",
    "FredholmKind",
    "FredholmVerdict",
    "SingularProfile",
    "compactness_test",
    "essential_rank",
    "essential_rank_report",
    "fractality_diagnostics",
    "fredholm_test",
    "hausdorff_distance",
    "singular_profile",
    "zero_sequence_test",
]
