# Copyright 2024, Sergey Dudanov
# SPDX-License-Identifier: Apache-2.0

import math

import numpy as np

from ..models import Affine, Ball
from ..space import Vector, vector
from .operator import Certificate, Operator


def identity(dim: int) -> Operator:
    """Identity. Every point is fixed."""
    return Operator(
        apply=lambda x: x,
        domain_dim=dim,
        fixed_set=Affine(point=vector(np.zeros(dim)), normals=()),
        certificate=Certificate.firmly(),
        name="identity",
    )


def constant_map(point: Vector) -> Operator:
    """`x ↦ p`. Firmly nonexpansive with the single fixed point `p`."""
    p = vector(point)

    return Operator(
        apply=lambda x: p,
        domain_dim=p.shape[0],
        fixed_set=Ball(center=p, radius=0.0),
        certificate=Certificate.firmly(),
        name="constant",
    )


def rotation(angle: float) -> Operator:
    """
    Planar rotation by `angle`.

    An isometry: nonexpansive but not strongly nonexpansive for a nonzero
    angle, since `(I − R)(x − y)` has norm `2 sin(θ/2)‖x − y‖`.
    """
    c, s = math.cos(angle), math.sin(angle)
    m = np.array([[c, -s], [s, c]])

    return Operator(
        apply=lambda x: m @ x,
        domain_dim=2,
        fixed_set=Ball(center=vector([0.0, 0.0]), radius=0.0),
        certificate=Certificate.nonexpansive(),
        name=f"rotation({angle:g})",
    )
