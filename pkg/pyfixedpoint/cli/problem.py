# Copyright 2024, Sergey Dudanov
# SPDX-License-Identifier: Apache-2.0

"""JSON problem files: operators, sequences, contractions and run settings."""

import dataclasses as dc
import logging
from enum import StrEnum
from typing import override

import numpy as np

from ..iterate import ContractionFamily, IterationTrace, StopRule, halpern, viscosity
from ..models import Box, ConvexSetDescriptor, ScalarFunctionDescriptor
from ..operators import (
    Operator,
    constant_map,
    convex_combo,
    identity,
    projector,
    relax,
    resolvent,
    rotation,
    truncated_geometric_combo,
)
from ..oracle import OracleResult, composed_fixed_point_oracle, projection_oracle_for
from ..sequences import (
    BetaTable,
    HypothesisError,
    OperatorSequence,
    Schedule,
    ScheduleRole,
    cfp_sequence,
    constant_sequence,
    raw_sequence,
    relaxed_sequence,
    resolvent_sequence,
)
from ..serializer import BaseModel, SchemaError, TaggedModel, model_meta
from ..space import DimensionMismatchError, Vector

_LOGGER = logging.getLogger(__name__)


def _gate(schedule: Schedule, role: ScheduleRole, key: str) -> None:
    """Hypothesis gate at parse time, anchored at the schedule's key."""
    try:
        schedule.require(role)

    except HypothesisError as e:
        raise SchemaError(str(e), (key,)) from None


def _check_dim(key: str, dim: int, actual: int) -> None:
    if dim != actual:
        raise SchemaError(str(DimensionMismatchError(dim, actual)), (key,))


# OPERATORS


@dc.dataclass(frozen=True, eq=False)
class OperatorSpec(TaggedModel):
    """JSON form of an operator, dimension supplied by the problem."""

    def build(self, dim: int) -> Operator:
        raise NotImplementedError


@dc.dataclass(frozen=True, eq=False)
class IdentitySpec(OperatorSpec, tag="identity"):
    @override
    def build(self, dim: int) -> Operator:
        return identity(dim)


@dc.dataclass(frozen=True, eq=False)
class ConstantSpec(OperatorSpec, tag="constant"):
    point: Vector = dc.field(metadata=model_meta(format="v"))

    @override
    def build(self, dim: int) -> Operator:
        return constant_map(self.point)


@dc.dataclass(frozen=True, eq=False)
class ProjectSpec(OperatorSpec, tag="project"):
    target: ConvexSetDescriptor = dc.field(metadata=model_meta(key="set"))

    @override
    def build(self, dim: int) -> Operator:
        return projector(self.target)


@dc.dataclass(frozen=True, eq=False)
class ProxSpec(OperatorSpec, tag="prox"):
    function: ScalarFunctionDescriptor = dc.field(metadata=model_meta())
    lam: float = dc.field(default=1.0, metadata=model_meta(format="f+", key="lambda"))

    @override
    def build(self, dim: int) -> Operator:
        return resolvent(self.function, self.lam, dim)


@dc.dataclass(frozen=True, eq=False)
class RelaxSpec(OperatorSpec, tag="relax"):
    gamma: float = dc.field(metadata=model_meta(format="f(01)"))
    operator: OperatorSpec = dc.field(metadata=model_meta())

    @override
    def build(self, dim: int) -> Operator:
        return relax(self.gamma, self.operator.build(dim))


@dc.dataclass(frozen=True, eq=False)
class ComboSpec(OperatorSpec, tag="combo"):
    weights: tuple[float, ...] = dc.field(metadata=model_meta(format="f+"))
    operators: tuple[OperatorSpec, ...] = dc.field(metadata=model_meta())

    def __post_init__(self, *args, **kwargs):
        super().__post_init__()

        if not self.operators or len(self.weights) != len(self.operators):
            raise ValueError("Combination needs one weight per operator.")

    @override
    def build(self, dim: int) -> Operator:
        return convex_combo(self.weights, [op.build(dim) for op in self.operators])


@dc.dataclass(frozen=True, eq=False)
class GeometricSpec(OperatorSpec, tag="geometric"):
    operators: tuple[OperatorSpec, ...] = dc.field(metadata=model_meta())

    def __post_init__(self, *args, **kwargs):
        super().__post_init__()

        if not self.operators:
            raise ValueError("Combination needs at least one operator.")

    @override
    def build(self, dim: int) -> Operator:
        return truncated_geometric_combo([op.build(dim) for op in self.operators])


@dc.dataclass(frozen=True, eq=False)
class RotationSpec(OperatorSpec, tag="rotation"):
    angle: float = dc.field(metadata=model_meta(format="f"))

    @override
    def build(self, dim: int) -> Operator:
        return rotation(self.angle)


# SEQUENCES


@dc.dataclass(frozen=True, eq=False)
class SequenceSpec(TaggedModel, tag_key="kind"):
    """JSON form of an operator sequence."""

    def build(self, dim: int) -> OperatorSequence:
        raise NotImplementedError


@dc.dataclass(frozen=True, eq=False)
class ConstantSequenceSpec(SequenceSpec, tag="constant"):
    operator: OperatorSpec = dc.field(metadata=model_meta())

    @override
    def build(self, dim: int) -> OperatorSequence:
        return constant_sequence(self.operator.build(dim))


@dc.dataclass(frozen=True, eq=False)
class ResolventSequenceSpec(SequenceSpec, tag="resolvent"):
    function: ScalarFunctionDescriptor = dc.field(metadata=model_meta())
    lambdas: Schedule = dc.field(metadata=model_meta(key="lambda"))

    def __post_init__(self, *args, **kwargs):
        super().__post_init__()
        _gate(self.lambdas, ScheduleRole.LAMBDA, "lambda")

    @override
    def build(self, dim: int) -> OperatorSequence:
        return resolvent_sequence(self.function, self.lambdas, dim)


@dc.dataclass(frozen=True, eq=False)
class CfpSequenceSpec(SequenceSpec, tag="cfp"):
    """Common fixed points; beta weights follow the geometric rule."""

    operators: tuple[OperatorSpec, ...] = dc.field(metadata=model_meta())
    gamma: Schedule = dc.field(metadata=model_meta())

    def __post_init__(self, *args, **kwargs):
        super().__post_init__()

        if not self.operators:
            raise ValueError("At least one operator is required.")

        _gate(self.gamma, ScheduleRole.GAMMA, "gamma")

    @override
    def build(self, dim: int) -> OperatorSequence:
        ops = [op.build(dim) for op in self.operators]
        return cfp_sequence(ops, BetaTable(), self.gamma)


@dc.dataclass(frozen=True, eq=False)
class RelaxedSequenceSpec(SequenceSpec, tag="relaxed"):
    operators: tuple[OperatorSpec, ...] = dc.field(metadata=model_meta())
    gamma: Schedule = dc.field(metadata=model_meta())
    nst_target: OperatorSpec | None = dc.field(default=None, metadata=model_meta())

    def __post_init__(self, *args, **kwargs):
        super().__post_init__()

        if not self.operators:
            raise ValueError("At least one operator is required.")

        if len(self.operators) > 1 and self.nst_target is None:
            raise ValueError("NST target is required for distinct operators.")

        _gate(self.gamma, ScheduleRole.GAMMA, "gamma")

    @override
    def build(self, dim: int) -> OperatorSequence:
        ops = [op.build(dim) for op in self.operators]
        target = None if self.nst_target is None else self.nst_target.build(dim)
        return relaxed_sequence(ops, self.gamma, target)


@dc.dataclass(frozen=True, eq=False)
class RawSequenceSpec(SequenceSpec, tag="raw"):
    """`S_n = T` without a strong nonexpansiveness certificate."""

    operator: OperatorSpec = dc.field(metadata=model_meta())

    @override
    def build(self, dim: int) -> OperatorSequence:
        op = self.operator.build(dim)
        return raw_sequence(lambda n: op, op, op.fixed_set, f"raw({op.name})")


# CONTRACTIONS


@dc.dataclass(frozen=True, eq=False)
class ContractionSpec(TaggedModel, tag_key="family"):
    """JSON form of a viscosity contraction family."""

    def build(self) -> ContractionFamily:
        raise NotImplementedError

    @property
    def dim(self) -> int:
        raise NotImplementedError


@dc.dataclass(frozen=True, eq=False)
class ConstantContractionSpec(ContractionSpec, tag="constant"):
    u: Vector = dc.field(metadata=model_meta(format="v"))

    @override
    def build(self) -> ContractionFamily:
        return ContractionFamily.constant(self.u)

    @property
    @override
    def dim(self) -> int:
        return self.u.shape[0]


@dc.dataclass(frozen=True, eq=False)
class PerturbedAnchorSpec(ContractionSpec, tag="perturbed_anchor"):
    u: Vector = dc.field(metadata=model_meta(format="v"))
    e: Vector = dc.field(metadata=model_meta(format="v"))

    def __post_init__(self, *args, **kwargs):
        super().__post_init__()

        if self.u.shape != self.e.shape:
            raise DimensionMismatchError(self.u.shape[0], self.e.shape[0])

    @override
    def build(self) -> ContractionFamily:
        return ContractionFamily.perturbed_anchor(self.u, self.e)

    @property
    @override
    def dim(self) -> int:
        return self.u.shape[0]


@dc.dataclass(frozen=True, eq=False)
class ScaledSpec(ContractionSpec, tag="scaled"):
    theta: float = dc.field(metadata=model_meta(format="f0+"))
    center: Vector = dc.field(metadata=model_meta(format="v"))

    def __post_init__(self, *args, **kwargs):
        super().__post_init__()

        if not self.theta < 1:
            raise ValueError(f"Contraction constant {self.theta} outside [0, 1).")

    @override
    def build(self) -> ContractionFamily:
        return ContractionFamily.scaled(self.theta, self.center)

    @property
    @override
    def dim(self) -> int:
        return self.center.shape[0]


# PROBLEM


class Method(StrEnum):
    HALPERN = "halpern"
    VISCOSITY = "viscosity"


@dc.dataclass(frozen=True, eq=False)
class ProblemSpec(BaseModel):
    """
    Problem file of the `run`, `compare` and `oracle` commands.

    Schedules are gated against their roles while parsing, so a problem
    that violates a convergence hypothesis never reaches a driver.
    """

    dimension: int = dc.field(metadata=model_meta(format="i+"))
    sequence: SequenceSpec = dc.field(metadata=model_meta())
    alpha: Schedule = dc.field(metadata=model_meta())
    x1: Vector = dc.field(metadata=model_meta(format="v"))
    method: Method = dc.field(default=Method.HALPERN, metadata=model_meta())
    u: Vector | None = dc.field(default=None, metadata=model_meta(format="v"))
    """Anchor of the Halpern method."""
    contraction: ContractionSpec | None = dc.field(
        default=None, metadata=model_meta()
    )
    """Contraction family of the viscosity method."""
    stop: StopRule = dc.field(default_factory=StopRule, metadata=model_meta())
    domain: Box | None = dc.field(default=None, metadata=model_meta())
    """Box `C` the operators must map into itself."""
    reference: Vector | None = dc.field(default=None, metadata=model_meta(format="v"))
    """Known limit; computed by the oracle when absent."""
    seed: int = dc.field(default=0, metadata=model_meta(format="i0+"))
    output: str | None = dc.field(default=None, metadata=model_meta())
    """Output directory, overridden by `--out`."""

    def __post_init__(self, *args, **kwargs):
        super().__post_init__()
        _gate(self.alpha, ScheduleRole.ALPHA, "alpha")
        _check_dim("x1", self.dimension, self.x1.shape[0])

        for key in ("u", "reference", "domain", "contraction"):
            if (value := getattr(self, key)) is not None:
                dim = value.shape[0] if isinstance(value, np.ndarray) else value.dim
                _check_dim(key, self.dimension, dim)

        match self.method:
            case Method.HALPERN if self.u is None:
                raise SchemaError("missing required key 'u' for the halpern method")

            case Method.VISCOSITY if self.contraction is None:
                raise SchemaError(
                    "missing required key 'contraction' for the viscosity method"
                )

        try:
            seq = self.sequence.build(self.dimension)

        except ValueError as e:
            raise SchemaError(str(e), ("sequence",)) from None

        _check_dim("sequence", self.dimension, seq.dim)

    def replace(self, **changes) -> "ProblemSpec":
        """Copy with the non-`None` `changes` applied."""
        return dc.replace(self, **{k: v for k, v in changes.items() if v is not None})

    def build_sequence(self) -> OperatorSequence:
        """Operator sequence, its NST target restricted to the domain box."""
        seq = self.sequence.build(self.dimension)

        if self.domain is not None:
            rng = np.random.default_rng(self.seed)
            seq = dc.replace(seq, nst_target=seq.nst_target.restrict(self.domain, rng))
            _LOGGER.debug("NST target of %s restricted to the domain box.", seq.name)

        return seq

    def oracle(self, seq: OperatorSequence) -> OracleResult | None:
        """
        Ground truth for the limit: the projection of the anchor onto the
        common fixed set, or the fixed point of `Q∘f` for a scaled contraction.
        """
        if (fixed := seq.common_fixed_set) is None:
            return None

        match self.contraction if self.method == Method.VISCOSITY else None:
            case ScaledSpec(theta=theta) as c:
                f = c.build().at(1)
                return composed_fixed_point_oracle([fixed], f, theta, self.x1)

            case ConstantContractionSpec(u=u) | PerturbedAnchorSpec(u=u):
                return projection_oracle_for(fixed, u)

        assert self.u is not None
        return projection_oracle_for(fixed, self.u)

    def solve(
        self, seq: OperatorSequence, ref: Vector | None = None, stop: StopRule | None = None
    ) -> IterationTrace:
        """Runs the configured method."""
        stop = stop or self.stop

        if self.method == Method.VISCOSITY:
            assert self.contraction is not None
            return viscosity(seq, self.contraction.build(), self.x1, self.alpha, stop, ref)

        assert self.u is not None
        return halpern(seq, self.u, self.x1, self.alpha, stop, ref)
