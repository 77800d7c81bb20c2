# Copyright 2024, Sergey Dudanov
# SPDX-License-Identifier: Apache-2.0

import numpy as np

from ..const import SAMPLE_SPREAD
from ..models import Affine, Ball, Box, ConvexSetDescriptor, Halfspace, Intersection
from ..operators import project
from ..space import Vector, vector
from .dykstra import dykstra


def _ball_points(rng: np.random.Generator, center: Vector, radius: float, count: int):
    d = center.shape[0]
    directions = rng.standard_normal((count, d))
    directions /= np.linalg.norm(directions, axis=1, keepdims=True)
    radii = radius * rng.uniform(size=(count, 1)) ** (1 / d)
    return center + radii * directions


def sample_points(
    s: ConvexSetDescriptor,
    rng: np.random.Generator,
    count: int,
    spread: float = SAMPLE_SPREAD,
) -> tuple[Vector, ...]:
    """
    Random points of `s`, interior and boundary alike.

    Unbounded sets are sampled within `spread` of a reference point.
    Intersections project random points with Dykstra.
    """
    if count < 1:
        raise ValueError("At least one sample is required.")

    match s:
        case Ball(center=c, radius=r):
            points = _ball_points(rng, c, r, count)

        case Box(lo=lo, hi=hi):
            points = rng.uniform(lo, hi, size=(count, s.dim))

        case Halfspace(a=a, b=b):
            foot = (b / float(np.dot(a, a))) * a
            points = _ball_points(rng, foot, spread, count)
            excess = np.maximum(points @ a - b, 0.0) / float(np.dot(a, a))
            # mirror violating points into the halfspace
            points = points - 2 * excess[:, None] * a

        case Affine(point=p):
            points = [
                project(s, x) for x in _ball_points(rng, p, spread, count)
            ]

        case Intersection():
            center = dykstra(s.sets, np.zeros(s.dim)).value
            points = [
                dykstra(s.sets, x).value
                for x in _ball_points(rng, center, spread, count)
            ]

        case _:
            raise TypeError(f"Unsupported descriptor {type(s).__name__}.")

    return tuple(vector(x) for x in points)
