"""Subsequence extraction along which finitely many statistics converge."""

from src.extraction.extractor import (
    ExtractionRequest,
    ExtractionResult,
    extract_convergent,
    verify_convergence,
)

__all__ = [
    "ExtractionRequest",
    "ExtractionResult",
    "extract_convergent",
    "verify_convergence",
]
