# Copyright 2024, Sergey Dudanov
# SPDX-License-Identifier: Apache-2.0

import logging
from typing import NamedTuple, Sequence

import numpy as np

from ..const import DYKSTRA_MAX_ITERS, DYKSTRA_ONLY_TOL, DYKSTRA_TOL
from ..models import ConvexSetDescriptor, primitives
from ..operators import project
from ..space import DimensionMismatchError, Vector, vector
from .result import EmptyIntersectionError

_LOGGER = logging.getLogger(__name__)


class DykstraResult(NamedTuple):
    value: Vector
    cycles: int
    """Full sweeps over the sets."""
    feasibility: float
    """Largest distance from `value` to a member set."""
    converged: bool


def _flatten(sets: Sequence[ConvexSetDescriptor]) -> tuple[ConvexSetDescriptor, ...]:
    result = tuple(p for s in sets for p in primitives(s))

    if not result:
        raise ValueError("At least one set is required.")

    return result


def feasibility(sets: Sequence[ConvexSetDescriptor], x: Vector) -> float:
    """`max_i dist(x, S_i)`."""
    return max(float(np.linalg.norm(x - project(s, x))) for s in _flatten(sets))


def dykstra(
    sets: Sequence[ConvexSetDescriptor],
    u: Vector,
    tol: float = DYKSTRA_TOL,
    max_iters: int = DYKSTRA_MAX_ITERS,
) -> DykstraResult:
    """
    Dykstra's cyclic projections onto `∩ S_i`.

    Unlike plain alternating projections, the correction terms make the
    limit the metric projection of `u`, not just some common point.
    Raises `EmptyIntersectionError` when the sweep ends infeasible.
    """
    sets = _flatten(sets)
    u = vector(u)
    if len(dims := {u.shape[0], *(s.dim for s in sets)}) != 1:
        raise DimensionMismatchError(*dims)

    x = u
    corrections = [np.zeros_like(u) for _ in sets]
    converged = False
    cycle = 0

    for cycle in range(1, max_iters + 1):
        change = 0.0

        for i, s in enumerate(sets):
            y = project(s, x + corrections[i])
            p = x + corrections[i] - y
            change += float(np.sum((p - corrections[i]) ** 2))
            change += float(np.sum((y - x) ** 2))
            corrections[i], x = p, y

        if change <= tol * tol:
            converged = True
            break

    residual = feasibility(sets, x)

    if residual > DYKSTRA_ONLY_TOL:
        raise EmptyIntersectionError(residual)

    if not converged:
        _LOGGER.warning("Dykstra stopped after %d cycles unconverged.", cycle)

    _LOGGER.debug("Dykstra: %d cycles, feasibility %.3e.", cycle, residual)

    return DykstraResult(vector(x), cycle, residual, converged)
