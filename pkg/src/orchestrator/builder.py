"""Turn the validated composition tree of a config into matrix sequences."""

from dataclasses import dataclass
from pathlib import Path
from typing import Optional, Union

import numpy as np
from loguru import logger
from pydantic import TypeAdapter, ValidationError

from src.config.loader import (
    AnalysisConfig,
    BinaryNode,
    DecayNode,
    DimsSpec,
    Entry,
    ExplicitNode,
    IdentityNode,
    MatrixLiteral,
    RestrictNode,
    ScaleNode,
    SequenceNode,
    ToeplitzNode,
    UnaryNode,
    ZeroNode,
)
from src.errors import AlgebraError, ConfigurationError
from src.models import EtaFile
from src.sequences import (
    DimensionFunction,
    MatrixSequence,
    Restriction,
    add,
    adjoint,
    alternate,
    direct_sum,
    explicit_sequence,
    identity_sequence,
    mul,
    restrict,
    scale,
    zero_sequence,
)
from src.toeplitz import StructuredToeplitzSequence, Symbol, assemble, require_vanishing_noise

_eta_adapter = TypeAdapter(Union[list[int], EtaFile])


@dataclass
class BuiltSequence:
    """A built node: its sequence, the structured description when the node
    is a Toeplitz node, and the largest index at which it is defined."""

    sequence: MatrixSequence
    structured: Optional[StructuredToeplitzSequence] = None
    limit: Optional[int] = None


def to_complex(entry: Entry) -> complex:
    if isinstance(entry, tuple):
        return complex(entry[0], entry[1])
    return complex(entry)


def matrix_from(literal: MatrixLiteral) -> np.ndarray:
    """Nested lists of numbers or [re, im] pairs as a complex array."""
    return np.array([[to_complex(e) for e in row] for row in literal], dtype=np.complex128)


def dims_from(spec: DimsSpec) -> DimensionFunction:
    if spec.kind == "explicit":
        return DimensionFunction.explicit(spec.values, filtration=bool(spec.filtration))
    return DimensionFunction.linear(spec.slope, spec.offset, filtration=spec.filtration)


def load_eta(path: Path) -> list[int]:
    """Read an eta file: a JSON integer array or an object with an "eta" array."""
    if not path.exists():
        raise ConfigurationError(f"eta file not found: {path}")
    try:
        parsed = _eta_adapter.validate_json(path.read_text(encoding="utf-8"))
    except ValidationError as exc:
        raise ConfigurationError(f"invalid eta file {path}: {exc}") from exc
    return parsed.eta if isinstance(parsed, EtaFile) else parsed


def _min_limit(*limits: Optional[int]) -> Optional[int]:
    known = [v for v in limits if v is not None]
    return min(known) if known else None


class SequenceBuilder:
    """Recursive builder; file references resolve against the config's directory."""

    def __init__(self, config: AnalysisConfig, horizon: Optional[int] = None):
        self.config = config
        self.horizon = horizon or config.horizon

    def build(self, node: SequenceNode) -> BuiltSequence:
        if isinstance(node, IdentityNode):
            return BuiltSequence(identity_sequence(self._dims(node.dims)))
        if isinstance(node, ZeroNode):
            return BuiltSequence(zero_sequence(self._dims(node.dims)))
        if isinstance(node, DecayNode):
            return BuiltSequence(self._decay(node))
        if isinstance(node, ExplicitNode):
            return self._explicit(node)
        if isinstance(node, ToeplitzNode):
            return self._toeplitz(node)
        if isinstance(node, UnaryNode):
            inner = self.build(node.arg)
            return BuiltSequence(adjoint(inner.sequence), limit=inner.limit)
        if isinstance(node, ScaleNode):
            inner = self.build(node.arg)
            return BuiltSequence(scale(inner.sequence, to_complex(node.factor)), limit=inner.limit)
        if isinstance(node, RestrictNode):
            return self._restrict(node)
        if isinstance(node, BinaryNode):
            return self._binary(node)
        raise ConfigurationError(f"unknown sequence node {type(node).__name__}")

    def _dims(self, spec: DimsSpec) -> DimensionFunction:
        """Declared dimension function, checked for positivity and filtration up to the horizon."""
        dims = dims_from(spec)
        span = min(self.horizon, len(spec.values)) if spec.kind == "explicit" else self.horizon
        dims.check(span)
        return dims

    def _decay(self, node: DecayNode) -> MatrixSequence:
        dims = self._dims(node.dims)
        factor, power = node.scale, node.power
        return MatrixSequence(
            dims=dims,
            generator=lambda n: (factor / n**power) * np.eye(dims(n), dtype=np.complex128),
            selfadjoint_hint=True,
            label=f"({factor:g}/n^{power:g})I",
        )

    def _explicit(self, node: ExplicitNode) -> BuiltSequence:
        seq = explicit_sequence([matrix_from(m) for m in node.matrices], mode=node.mode)
        limit = len(node.matrices) if node.mode == "strict" else None
        return BuiltSequence(seq, limit=limit)

    def _toeplitz(self, node: ToeplitzNode) -> BuiltSequence:
        if node.symbol_file is not None:
            symbol = Symbol.from_file(self.config.resolve(node.symbol_file))
        else:
            symbol = Symbol.from_coeffs({c.k: complex(c.re, c.im) for c in node.coeffs or []})
        noise = self.build(node.noise) if node.noise is not None else None
        spec = StructuredToeplitzSequence(
            symbol=symbol,
            k_pert=matrix_from(node.K) if node.K is not None else None,
            l_pert=matrix_from(node.L) if node.L is not None else None,
            noise=noise.sequence if noise is not None else None,
            k_rank=node.k_rank,
            l_rank=node.l_rank,
            strict=node.strict,
        )
        if noise is not None:
            self._check_join("noise", DimensionFunction.linear(), noise.sequence.dims, noise.limit)
            span = _min_limit(self.horizon, noise.limit) or self.horizon
            require_vanishing_noise(spec, span, tol=self.config.tolerances.zero_tol)
        return BuiltSequence(assemble(spec), structured=spec, limit=noise.limit if noise else None)

    def _restrict(self, node: RestrictNode) -> BuiltSequence:
        if node.scale is not None:
            eta = Restriction.arithmetic(node.scale, node.offset)
        elif node.eta_file is not None:
            eta = Restriction.from_indices(
                load_eta(self.config.resolve(node.eta_file)), tail_step=node.tail_step
            )
        else:
            eta = Restriction.from_indices(node.eta or [], tail_step=node.tail_step)
        inner = self.build(node.arg)
        if inner.limit is not None:
            limit: Optional[int] = len(eta.within(inner.limit))
        else:
            limit = len(eta) if eta.is_finite else None
        if limit == 0:
            raise ConfigurationError(
                f"restriction {eta.describe()} has no index where its argument is defined"
            )
        return BuiltSequence(restrict(inner.sequence, eta), limit=limit)

    def _binary(self, node: BinaryNode) -> BuiltSequence:
        left, right = (self.build(arg) for arg in node.args)
        limit = _min_limit(left.limit, right.limit)
        if node.type == "direct_sum":
            return BuiltSequence(direct_sum(left.sequence, right.sequence), limit=limit)
        self._check_join(node.type, left.sequence.dims, right.sequence.dims, limit)
        combine = {"add": add, "mul": mul, "alternate": alternate}[node.type]
        return BuiltSequence(combine(left.sequence, right.sequence), limit=limit)

    def _check_join(
        self, op: str, left: DimensionFunction, right: DimensionFunction, limit: Optional[int]
    ) -> None:
        span = _min_limit(self.horizon, limit) or self.horizon
        if not left.same_on(right, span):
            raise AlgebraError(
                f"{op}: dimension functions {left.describe()} and {right.describe()} "
                f"differ within n <= {span}"
            )


def build_sequence(
    config: AnalysisConfig, node: Optional[SequenceNode] = None, horizon: Optional[int] = None
) -> BuiltSequence:
    """Build ``node`` (default: the config's main sequence)."""
    builder = SequenceBuilder(config, horizon)
    built = builder.build(node if node is not None else config.sequence)
    dims = built.sequence.dims
    if dims.filtration:
        dims.check(_min_limit(builder.horizon, built.limit) or builder.horizon)
    logger.debug(
        f"Built {built.sequence.label} (dims {built.sequence.dims.describe()}, "
        f"limit {built.limit})"
    )
    return built


def build_family(config: AnalysisConfig, horizon: Optional[int] = None) -> list[BuiltSequence]:
    """The extraction family; the main sequence alone when no family is configured."""
    nodes = config.family or [config.sequence]
    return [build_sequence(config, node, horizon) for node in nodes]
