# Copyright 2024, Sergey Dudanov
# SPDX-License-Identifier: Apache-2.0

import math
from typing import Sequence

import numpy as np

from ..const import WEIGHT_SUM_TOL
from ..models import Box, intersect
from ..space import DimensionMismatchError, Vector
from .operator import Certificate, Operator


def relax(gamma: float, v: Operator) -> Operator:
    """
    `S = γI + (1 − γ)V`, averaged with constant `1 − γ`, `F(S) = F(V)`.

    A sequence of such maps with `liminf γ_n > 0` is strongly nonexpansive.
    """
    if not 0 < gamma < 1:
        raise ValueError(f"Relaxation parameter {gamma} outside (0, 1).")

    def apply(x: Vector) -> Vector:
        return gamma * x + (1 - gamma) * v.apply(x)

    return Operator(
        apply=apply,
        domain_dim=v.domain_dim,
        fixed_set=v.fixed_set,
        certificate=Certificate.averaged(1 - gamma),
        name=f"relax({gamma:g}, {v.name})",
        domain=v.domain,
    )


def _check_weights(weights: Sequence[float]) -> None:
    if not weights:
        raise ValueError("Convex combination needs at least one operator.")

    if any(not w > 0 for w in weights):
        raise ValueError("Convex weights must be strictly positive.")

    if abs(math.fsum(weights) - 1) > WEIGHT_SUM_TOL:
        raise ValueError(f"Convex weights sum to {math.fsum(weights)!r}, not 1.")


def _shared_domain(ops: Sequence[Operator]) -> Box | None:
    """Box every operator is declared on, `None` unless they all agree."""
    if (box := ops[0].domain) is None:
        return None

    for op in ops[1:]:
        if (d := op.domain) is None:
            return None

        if not (np.array_equal(d.lo, box.lo) and np.array_equal(d.hi, box.hi)):
            return None

    return box


def convex_combo(weights: Sequence[float], ops: Sequence[Operator]) -> Operator:
    """
    `T = Σ w_k T_k`.

    Nonexpansive, and by strict convexity of the Euclidean norm its fixed
    points are exactly the common fixed points of the `T_k`.
    """
    weights, ops = tuple(weights), tuple(ops)
    _check_weights(weights)

    if len(weights) != len(ops):
        raise ValueError(f"{len(weights)} weights for {len(ops)} operators.")

    if len(dims := {op.domain_dim for op in ops}) != 1:
        raise DimensionMismatchError(*dims)

    if len(ops) == 1:
        return ops[0]

    def apply(x: Vector) -> Vector:
        result = weights[0] * ops[0].apply(x)

        for w, op in zip(weights[1:], ops[1:]):
            result = result + w * op.apply(x)

        return result

    fixed = None

    if all(op.fixed_set is not None for op in ops):
        fixed = intersect(*(op.fixed_set for op in ops if op.fixed_set is not None))

    # convex combination of a_k-averaged maps is max(a_k)-averaged
    alphas = [op.certificate.averaged_alpha for op in ops]

    if all(op.certificate == Certificate.firmly() for op in ops):
        certificate = Certificate.firmly()

    elif any(a is None for a in alphas):
        certificate = Certificate.nonexpansive()

    else:
        certificate = Certificate.averaged(max(a for a in alphas if a is not None))

    return Operator(
        apply=apply,
        domain_dim=ops[0].domain_dim,
        fixed_set=fixed,
        certificate=certificate,
        name="combo(" + ", ".join(op.name for op in ops) + ")",
        domain=_shared_domain(ops),
    )


def geometric_weights(n: int) -> tuple[float, ...]:
    """`(2^-1, …, 2^-(n−1), 2^-(n−1))`: geometric weights, tail folded into the last."""
    if n < 1:
        raise ValueError("Geometric weights need at least one term.")

    if n == 1:
        return (1.0,)

    return tuple(2.0**-k for k in range(1, n)) + (2.0 ** -(n - 1),)


def truncated_geometric_combo(ops: Sequence[Operator]) -> Operator:
    """Finite truncation of `Σ T_k / 2^k` with the tail mass on the last map."""
    if not ops:
        raise ValueError("Convex combination needs at least one operator.")

    return convex_combo(geometric_weights(len(ops)), ops)
