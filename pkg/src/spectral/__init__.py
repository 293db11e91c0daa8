"""Eigenvalue counting and essential / transient classification."""

from src.spectral.classify import (
    DEFAULT_LADDER,
    Agreement,
    CrossCheck,
    DichotomyAudit,
    SpectralClassification,
    SpectrumEstimate,
    Verdict,
    classify_point,
    classify_table,
    cross_check_fredholm,
    dichotomy_audit,
    essential_spectrum_estimate,
)
from src.spectral.counting import CountTable, count_tables, eig_counts

__all__ = [
    "DEFAULT_LADDER",
    "Agreement",
    "CountTable",
    "CrossCheck",
    "DichotomyAudit",
    "SpectralClassification",
    "SpectrumEstimate",
    "Verdict",
    "classify_point",
    "classify_table",
    "count_tables",
    "cross_check_fredholm",
    "dichotomy_audit",
    "eig_counts",
    "essential_spectrum_estimate",
]
