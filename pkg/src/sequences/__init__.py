"""Matrix sequences, their dimension functions and pointwise operations."""

from src.sequences.combinators import (
    ExplicitMode,
    add,
    adjoint,
    alternate,
    constant_sequence,
    direct_sum,
    evaluate,
    explicit_sequence,
    identity_sequence,
    mul,
    norms,
    restrict,
    scale,
    sup_norm,
    zero_sequence,
)
from src.sequences.dimension import DimensionFunction, DimensionKind
from src.sequences.index_map import Restriction
from src.sequences.sequence import ComplexMatrix, MatrixSequence, clear_cache, map_indices

__all__ = [
    "ComplexMatrix",
    "DimensionFunction",
    "DimensionKind",
    "ExplicitMode",
    "MatrixSequence",
    "Restriction",
    "add",
    "adjoint",
    "alternate",
    "clear_cache",
    "constant_sequence",
    "direct_sum",
    "evaluate",
    "explicit_sequence",
    "identity_sequence",
    "map_indices",
    "mul",
    "norms",
    "restrict",
    "scale",
    "sup_norm",
    "zero_sequence",
]
