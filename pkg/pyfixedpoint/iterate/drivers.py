# Copyright 2024, Sergey Dudanov
# SPDX-License-Identifier: Apache-2.0

"""
Halpern-type iteration drivers.

Every driver runs `x_{n+1} = α_n a_n + (1 − α_n) S_n x_n` where the anchor
term `a_n` is a fixed point `u` (Halpern) or a contraction value `f_n(x_n)`
(viscosity). Drivers are deterministic and single-threaded.
"""

import logging
from typing import Callable, Sequence

import numpy as np

from ..models import ScalarFunctionDescriptor
from ..operators import Operator
from ..sequences import (
    BetaTable,
    OperatorSequence,
    Schedule,
    ScheduleRole,
    cfp_sequence,
    resolvent_sequence,
)
from ..space import DimensionMismatchError, Vector, check_dims, vector
from .contraction import ContractionFamily
from .trace import IterationTrace, StopReason, StopRule

_LOGGER = logging.getLogger(__name__)

type AnchorTerm = Callable[[int, Vector], Vector]


def _check_start(seq: OperatorSequence, *points: Vector) -> None:
    if (dim := check_dims(*points)) != seq.dim:
        raise DimensionMismatchError(seq.dim, dim)

    if (domain := seq.nst_target.domain) is not None:
        for p in points:
            if not domain.contains(p):
                raise ValueError(f"Point {p.tolist()} lies outside the domain.")


def _run(
    seq: OperatorSequence,
    anchor: AnchorTerm,
    x1: Vector,
    alpha: Schedule,
    stop: StopRule,
    ref: Vector | None,
) -> IterationTrace:
    t = seq.nst_target
    target_tol = stop.target_tol if ref is not None else None

    residual_S: list[float] = []
    residual_T: list[float] = []
    dist: list[float] = []
    iterates: list[Vector] = []
    steps: list[int] = []

    x, n = x1, 1

    while True:
        s = seq.at(n)
        sx = s.apply(x)
        r_s = float(np.linalg.norm(x - sx))
        r_t = r_s if s is t else float(np.linalg.norm(x - t.apply(x)))
        residual_S.append(r_s)
        residual_T.append(r_t)

        if ref is not None:
            dist.append(float(np.linalg.norm(x - ref)))

        if n == 1 or n % stop.stride == 0:
            iterates.append(x)
            steps.append(n)

        if target_tol is not None and dist[-1] <= target_tol:
            reason = StopReason.TARGET_MET
            break

        a = alpha(n)
        x_next = a * anchor(n, x) + (1 - a) * sx

        # every point of F(T) has zero residual, so the step must vanish too
        if r_t <= stop.residual_tol and np.linalg.norm(x_next - x) <= stop.residual_tol:
            reason = StopReason.RESIDUAL_MET
            break

        if n >= stop.max_iters:
            reason = StopReason.MAX_ITERS
            break

        x, n = x_next, n + 1

    if steps[-1] != n:
        iterates.append(x)
        steps.append(n)

    _LOGGER.debug(
        "%s stopped at n=%d (%s), residual %.3e.", seq.name, n, reason, residual_T[-1]
    )

    return IterationTrace(
        iterates=tuple(iterates),
        iterate_steps=tuple(steps),
        residual_S=np.array(residual_S),
        residual_T=np.array(residual_T),
        dist_to_ref=np.array(dist) if ref is not None else None,
        stop_reason=reason,
    )


def halpern(
    seq: OperatorSequence,
    u: Vector,
    x1: Vector,
    alpha: Schedule,
    stop: StopRule = StopRule(),
    ref: Vector | None = None,
) -> IterationTrace:
    """
    Halpern iteration `x_{n+1} = α_n u + (1 − α_n) S_n x_n`.

    Converges to the projection of `u` onto the fixed-point set of the NST
    target when `α_n → 0`, `Σ α_n = ∞` and the sequence is strongly
    nonexpansive.

    Parameters:
    - `seq` - operator sequence.
    - `u` - anchor.
    - `x1` - starting point.
    - `alpha` - anchor weights, gated by `ScheduleRole.ALPHA`.
    - `stop` - termination rule.
    - `ref` - reference limit for the `dist_to_ref` column.
    """
    alpha.require(ScheduleRole.ALPHA)
    u, x1 = vector(u), vector(x1)
    _check_start(seq, u, x1)

    if ref is not None:
        ref = vector(ref)
        check_dims(u, ref)

    _LOGGER.debug("Halpern over %s, alpha %s.", seq.name, alpha.describe())

    return _run(seq, lambda n, x: u, x1, alpha, stop, ref)


def viscosity(
    seq: OperatorSequence,
    f: ContractionFamily,
    y1: Vector,
    alpha: Schedule,
    stop: StopRule = StopRule(),
    ref: Vector | None = None,
) -> IterationTrace:
    """
    Viscosity iteration `y_{n+1} = α_n f_n(y_n) + (1 − α_n) S_n y_n`.

    With `f_n ≡ u` the trace is bitwise identical to `halpern` anchored at `u`.
    """
    alpha.require(ScheduleRole.ALPHA)
    y1 = vector(y1)
    _check_start(seq, y1)

    if ref is not None:
        ref = vector(ref)
        check_dims(y1, ref)

    _LOGGER.debug("Viscosity over %s, contraction %s.", seq.name, f.name)

    return _run(seq, lambda n, y: f.at(n)(y), y1, alpha, stop, ref)


def proximal_halpern(
    f: ScalarFunctionDescriptor,
    lambdas: Schedule,
    u: Vector,
    x1: Vector,
    alpha: Schedule,
    stop: StopRule = StopRule(),
    ref: Vector | None = None,
) -> IterationTrace:
    """`x_{n+1} = α_n u + (1 − α_n) J_{λ_n} x_n`; the limit is `u` projected onto `argmin f`."""
    u = vector(u)
    seq = resolvent_sequence(f, lambdas, u.shape[0])
    return halpern(seq, u, x1, alpha, stop, ref)


def cfp_halpern(
    ops: Sequence[Operator],
    beta: BetaTable,
    gamma: Schedule,
    u: Vector,
    x1: Vector,
    alpha: Schedule,
    stop: StopRule = StopRule(),
    ref: Vector | None = None,
) -> IterationTrace:
    """Halpern iteration over `cfp_sequence`; the limit is `u` projected onto `∩ F(T_k)`."""
    return halpern(cfp_sequence(ops, beta, gamma), u, x1, alpha, stop, ref)
