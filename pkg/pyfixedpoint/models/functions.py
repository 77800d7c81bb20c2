# Copyright 2024, Sergey Dudanov
# SPDX-License-Identifier: Apache-2.0

import dataclasses as dc
import math
from typing import override

import numpy as np

from ..serializer import TaggedModel, model_meta
from .sets import Box, DescriptorError


@dc.dataclass(frozen=True, eq=False)
class ScalarFunctionDescriptor(TaggedModel):
    """
    Proper convex lower semicontinuous function `R → R ∪ {+∞}`, applied
    separably to every coordinate.

    Its subdifferential is the monotone operator whose resolvent is the
    proximal map. Variants: `abs_value`, `quadratic`, `indicator`.
    """

    def __call__(self, z: float) -> float:
        raise NotImplementedError

    def argmin(self) -> tuple[float, float]:
        """Closed interval of minimizers."""
        raise NotImplementedError

    def slope(self, z: float) -> float:
        """Derivative of `f` at `z` where it exists."""
        raise NotImplementedError

    def kinks(self) -> tuple[float, ...]:
        """Points where `f` is not differentiable."""
        return ()

    def argmin_set(self, dim: int) -> Box:
        """Minimizers of the separable extension to `R^dim`."""
        lo, hi = self.argmin()
        return Box(lo=np.full(dim, lo), hi=np.full(dim, hi))


@dc.dataclass(frozen=True, eq=False)
class AbsValue(ScalarFunctionDescriptor, tag="abs_value"):
    """`f(z) = |z|`."""

    @override
    def __call__(self, z: float) -> float:
        return abs(z)

    @override
    def argmin(self) -> tuple[float, float]:
        return 0.0, 0.0

    @override
    def slope(self, z: float) -> float:
        return float(np.sign(z))

    @override
    def kinks(self) -> tuple[float, ...]:
        return (0.0,)


@dc.dataclass(frozen=True, eq=False)
class Quadratic(ScalarFunctionDescriptor, tag="quadratic"):
    """`f(z) = curvature/2 · (z − center)²`."""

    curvature: float = dc.field(metadata=model_meta(format="f+"))
    center: float = dc.field(default=0.0, metadata=model_meta(format="f"))

    def __post_init__(self, *args, **kwargs):
        super().__post_init__()

        if not self.curvature > 0:
            raise DescriptorError("quadratic", "curvature must be positive")

    @override
    def __call__(self, z: float) -> float:
        return 0.5 * self.curvature * (z - self.center) ** 2

    @override
    def argmin(self) -> tuple[float, float]:
        return self.center, self.center

    @override
    def slope(self, z: float) -> float:
        return self.curvature * (z - self.center)


@dc.dataclass(frozen=True, eq=False)
class Indicator(ScalarFunctionDescriptor, tag="indicator"):
    """Indicator of the interval `[lo, hi]`: zero inside, `+∞` outside."""

    lo: float = dc.field(metadata=model_meta(format="f"))
    hi: float = dc.field(metadata=model_meta(format="f"))

    def __post_init__(self, *args, **kwargs):
        super().__post_init__()

        if self.lo > self.hi:
            raise DescriptorError("indicator", "empty interval")

    @override
    def __call__(self, z: float) -> float:
        return 0.0 if self.lo <= z <= self.hi else math.inf

    @override
    def argmin(self) -> tuple[float, float]:
        return self.lo, self.hi

    @override
    def slope(self, z: float) -> float:
        return 0.0

    @override
    def kinks(self) -> tuple[float, ...]:
        return self.lo, self.hi
