# Copyright 2024, Sergey Dudanov
# SPDX-License-Identifier: Apache-2.0

import dataclasses as dc
from functools import cached_property
from typing import override

import numpy as np

from ..const import FIXED_POINT_TOL
from ..serializer import TaggedModel, model_meta
from ..space import Vector, check_dims

_ORTHONORMAL_TOL = 1e-10


class DescriptorError(ValueError):
    """Descriptor does not denote a nonempty closed convex set or function."""

    def __init__(self, kind: str, reason: str) -> None:
        super().__init__(f"Invalid {kind} descriptor: {reason}.")


@dc.dataclass(frozen=True, eq=False)
class ConvexSetDescriptor(TaggedModel):
    """
    Nonempty closed convex subset of `R^d` with a closed-form description.

    Variants: `halfspace`, `ball`, `box`, `affine`, `intersection`.
    """

    @property
    def dim(self) -> int:
        raise NotImplementedError

    @property
    def polyhedral(self) -> bool:
        return True

    def contains(self, x: Vector, tol: float = FIXED_POINT_TOL) -> bool:
        raise NotImplementedError


@dc.dataclass(frozen=True, eq=False)
class Halfspace(ConvexSetDescriptor, tag="halfspace"):
    """Halfspace `{x : <a, x> ≤ b}`."""

    a: Vector = dc.field(metadata=model_meta(format="v"))
    """Outer normal. Nonzero."""

    b: float = dc.field(metadata=model_meta(format="f"))
    """Offset."""

    def __post_init__(self, *args, **kwargs):
        super().__post_init__()

        if not np.any(self.a):
            raise DescriptorError("halfspace", "normal vector must be nonzero")

    @property
    @override
    def dim(self) -> int:
        return self.a.shape[0]

    @override
    def contains(self, x: Vector, tol: float = FIXED_POINT_TOL) -> bool:
        return float(np.dot(self.a, x)) <= self.b + tol * max(1.0, abs(self.b))


@dc.dataclass(frozen=True, eq=False)
class Ball(ConvexSetDescriptor, tag="ball"):
    """Closed Euclidean ball."""

    center: Vector = dc.field(metadata=model_meta(format="v"))
    radius: float = dc.field(metadata=model_meta(format="f0+"))

    def __post_init__(self, *args, **kwargs):
        super().__post_init__()

        if not self.radius >= 0:
            raise DescriptorError("ball", "radius must be nonnegative")

    @property
    @override
    def dim(self) -> int:
        return self.center.shape[0]

    @property
    @override
    def polyhedral(self) -> bool:
        return self.radius == 0

    @override
    def contains(self, x: Vector, tol: float = FIXED_POINT_TOL) -> bool:
        return float(np.linalg.norm(x - self.center)) <= self.radius + tol


@dc.dataclass(frozen=True, eq=False)
class Box(ConvexSetDescriptor, tag="box"):
    """Axis-aligned box `{x : lo ≤ x ≤ hi}`."""

    lo: Vector = dc.field(metadata=model_meta(format="v"))
    hi: Vector = dc.field(metadata=model_meta(format="v"))

    def __post_init__(self, *args, **kwargs):
        super().__post_init__()
        check_dims(self.lo, self.hi)

        if np.any(self.lo > self.hi):
            raise DescriptorError("box", "lower corner exceeds upper corner")

    @property
    @override
    def dim(self) -> int:
        return self.lo.shape[0]

    @override
    def contains(self, x: Vector, tol: float = FIXED_POINT_TOL) -> bool:
        return bool(np.all(x >= self.lo - tol) and np.all(x <= self.hi + tol))


@dc.dataclass(frozen=True, eq=False)
class Affine(ConvexSetDescriptor, tag="affine"):
    """Affine subspace `{x : <n_i, x − p> = 0}` with orthonormal `n_i`."""

    point: Vector = dc.field(metadata=model_meta(format="v"))
    """Basis point `p`."""

    normals: tuple[Vector, ...] = dc.field(metadata=model_meta(format="v*"))
    """Orthonormal normal vectors."""

    def __post_init__(self, *args, **kwargs):
        super().__post_init__()
        check_dims(self.point, *self.normals)

        if len(self.normals) > self.dim:
            raise DescriptorError("affine", "more normals than dimensions")

        gram = self.normal_matrix @ self.normal_matrix.T

        if not np.allclose(gram, np.eye(len(self.normals)), atol=_ORTHONORMAL_TOL):
            raise DescriptorError("affine", "normals must be pairwise orthonormal")

    @cached_property
    def normal_matrix(self) -> np.ndarray:
        if not self.normals:
            return np.zeros((0, self.dim))

        return np.vstack(self.normals)

    @property
    @override
    def dim(self) -> int:
        return self.point.shape[0]

    @override
    def contains(self, x: Vector, tol: float = FIXED_POINT_TOL) -> bool:
        return bool(np.all(np.abs(self.normal_matrix @ (x - self.point)) <= tol))


@dc.dataclass(frozen=True, eq=False)
class Intersection(ConvexSetDescriptor, tag="intersection"):
    """
    Intersection of descriptors.

    Nonemptiness is asserted by the caller; the oracle detects violations.
    """

    sets: tuple[ConvexSetDescriptor, ...] = dc.field(metadata=model_meta())

    def __post_init__(self, *args, **kwargs):
        super().__post_init__()

        if not self.sets:
            raise DescriptorError("intersection", "at least one set is required")

        if len({s.dim for s in self.sets}) != 1:
            raise DescriptorError("intersection", "members differ in dimension")

    @property
    @override
    def dim(self) -> int:
        return self.sets[0].dim

    @property
    @override
    def polyhedral(self) -> bool:
        return all(s.polyhedral for s in self.sets)

    @override
    def contains(self, x: Vector, tol: float = FIXED_POINT_TOL) -> bool:
        return all(s.contains(x, tol) for s in self.sets)

    def flatten(self) -> tuple[ConvexSetDescriptor, ...]:
        """Primitive members, nested intersections expanded."""
        result: list[ConvexSetDescriptor] = []

        for s in self.sets:
            result.extend(s.flatten() if isinstance(s, Intersection) else (s,))

        return tuple(result)


def primitives(s: ConvexSetDescriptor) -> tuple[ConvexSetDescriptor, ...]:
    return s.flatten() if isinstance(s, Intersection) else (s,)


def intersect(*sets: ConvexSetDescriptor) -> ConvexSetDescriptor:
    """Intersection of descriptors, collapsing the single-member case."""
    members = tuple(p for s in sets for p in primitives(s))
    return members[0] if len(members) == 1 else Intersection(sets=members)
