# Copyright 2024, Sergey Dudanov
# SPDX-License-Identifier: Apache-2.0

import logging
import math
from typing import Sequence

import numpy as np

from ..const import ANCHOR_EXTRA_ITERS, FIXED_POINT_TOL
from ..operators import Operator
from ..space import DimensionMismatchError, Vector, vector

_LOGGER = logging.getLogger(__name__)


def anchor_point(
    t_op: Operator,
    u: Vector,
    t: float,
    tol: float = FIXED_POINT_TOL,
    start: Vector | None = None,
) -> Vector:
    """
    Point `z_t` of the anchor path, the solution of `z = tu + (1 − t)Tz`.

    The map `z ↦ tu + (1 − t)Tz` is a `(1 − t)`-contraction, so the loop is
    capped at `ceil(log(tol / r_0) / log(1 − t)) + ANCHOR_EXTRA_ITERS`
    steps, `r_0` being the residual at the start point.

    Parameters:
    - `t_op` - nonexpansive operator `T`.
    - `u` - anchor.
    - `t` - path parameter in `(0, 1)`.
    - `tol` - bound on `‖z − (tu + (1 − t)Tz)‖`.
    - `start` - initial guess, `u` by default.
    """
    if not 0 < t < 1:
        raise ValueError(f"Anchor path parameter {t} outside (0, 1).")

    if not tol > 0:
        raise ValueError("Anchor path tolerance must be positive.")

    u = vector(u)

    if u.shape != (t_op.domain_dim,):
        raise DimensionMismatchError(t_op.domain_dim, u.shape[0])

    z = u if start is None else vector(start)
    z_next = t * u + (1 - t) * t_op.apply(z)

    if (r := float(np.linalg.norm(z_next - z))) <= tol:
        return z_next

    cap = math.ceil(math.log(tol / r) / math.log1p(-t)) + ANCHOR_EXTRA_ITERS

    for _ in range(cap):
        z = z_next
        z_next = t * u + (1 - t) * t_op.apply(z)

        if np.linalg.norm(z_next - z) <= tol:
            return z_next

    raise RuntimeError(f"Anchor path at t={t} missed tolerance {tol} in {cap} steps.")


def anchor_path(
    t_op: Operator, u: Vector, t_values: Sequence[float], tol: float = FIXED_POINT_TOL
) -> tuple[Vector, ...]:
    """Anchor path sampled at decreasing `t_values`, each solve warm-started."""
    if not t_values:
        raise ValueError("At least one path parameter is required.")

    if any(a <= b for a, b in zip(t_values, t_values[1:])):
        raise ValueError("Path parameters must be strictly decreasing.")

    result: list[Vector] = []
    z = None

    for t in t_values:
        result.append(z := anchor_point(t_op, u, t, tol, start=z))

    _LOGGER.debug("Anchor path of %s over %d parameters.", t_op.name, len(result))

    return tuple(result)


def anchor_limit(
    t_op: Operator, u: Vector, t_values: Sequence[float], tol: float = FIXED_POINT_TOL
) -> Vector:
    """
    Anchor path point at the smallest `t`.

    `z_t` tends to the projection of `u` onto `F(T)` as `t ↓ 0`; how small a
    `t` is enough is up to the caller.
    """
    return anchor_path(t_op, u, t_values, tol)[-1]
