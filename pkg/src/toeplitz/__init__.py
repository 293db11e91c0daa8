"""Toeplitz symbols, finite sections and structured sequences."""

from src.toeplitz.sections import reflect, section_sequence, toeplitz_section
from src.toeplitz.structured import (
    Stability,
    StabilityVerdict,
    StructuredToeplitzSequence,
    assemble,
    limit_W,
    limit_Wtilde,
    noise_vanishes,
    require_vanishing_noise,
    stability_check,
)
from src.toeplitz.symbol import Symbol, SymbolSource, winding_number

__all__ = [
    "Stability",
    "StabilityVerdict",
    "StructuredToeplitzSequence",
    "Symbol",
    "SymbolSource",
    "assemble",
    "limit_W",
    "limit_Wtilde",
    "noise_vanishes",
    "reflect",
    "require_vanishing_noise",
    "section_sequence",
    "stability_check",
    "toeplitz_section",
    "winding_number",
]
