# Copyright 2024, Sergey Dudanov
# SPDX-License-Identifier: Apache-2.0

import numpy as np

from ..models import (
    Affine,
    Ball,
    Box,
    ConvexSetDescriptor,
    DescriptorError,
    Halfspace,
    Intersection,
)
from ..space import DimensionMismatchError, Vector
from .operator import Certificate, Operator


def project(s: ConvexSetDescriptor, x: Vector) -> Vector:
    """
    Metric projection onto a primitive descriptor.

    In Hilbert space the metric projection is the sunny nonexpansive
    retraction onto the set. Intersections have no closed form; use
    `pyfixedpoint.oracle.project_intersection_oracle`.
    """
    if x.shape != (s.dim,):
        raise DimensionMismatchError(s.dim, x.shape[0])

    match s:
        case Halfspace(a=a, b=b):
            excess = float(np.dot(a, x)) - b

            if excess <= 0:
                return x

            return x - (excess / float(np.dot(a, a))) * a

        case Ball(center=c, radius=r):
            d = x - c
            n = float(np.linalg.norm(d))

            if n <= r:
                return x

            return c + (r / n) * d

        case Box(lo=lo, hi=hi):
            return np.clip(x, lo, hi)

        case Affine(point=p):
            n = s.normal_matrix
            return x - n.T @ (n @ (x - p))

        case Intersection():
            raise DescriptorError(
                "intersection", "no closed-form projection, use the oracle"
            )

    raise TypeError(f"Unsupported descriptor {type(s).__name__}.")


def projector(s: ConvexSetDescriptor) -> Operator:
    """Projection onto `s` as a firmly nonexpansive operator with `F = s`."""
    if isinstance(s, Intersection):
        raise DescriptorError("intersection", "no closed-form projection")

    return Operator(
        apply=lambda x: project(s, x),
        domain_dim=s.dim,
        fixed_set=s,
        certificate=Certificate.firmly(),
        name=f"project({s._tag})",
    )
