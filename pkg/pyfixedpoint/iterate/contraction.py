# Copyright 2024, Sergey Dudanov
# SPDX-License-Identifier: Apache-2.0

import dataclasses as dc
from enum import StrEnum
from typing import Callable

from ..space import Vector, check_dims, vector


class ContractionScope(StrEnum):
    GLOBAL = "global"
    """`‖f(x) − f(y)‖ ≤ θ‖x − y‖` for all `x, y`."""
    WITH_RESPECT_TO_F = "with_respect_to_F"
    """The bound is only required for `y` in the fixed-point set."""


@dc.dataclass(frozen=True, eq=False)
class ContractionFamily:
    """Sequence `n ↦ f_n` of `θ`-contractions feeding a viscosity iteration."""

    at: Callable[[int], Callable[[Vector], Vector]]
    theta: float
    scope: ContractionScope = ContractionScope.GLOBAL
    name: str = "contraction"

    def __post_init__(self):
        if not 0 <= self.theta < 1:
            raise ValueError(f"Contraction constant {self.theta} outside [0, 1).")

    @classmethod
    def constant(cls, u: Vector) -> "ContractionFamily":
        """`f_n ≡ u`. Reduces the viscosity iteration to Halpern's."""
        u = vector(u)
        return cls(at=lambda n: lambda x: u, theta=0.0, name="constant")

    @classmethod
    def perturbed_anchor(cls, u: Vector, e: Vector) -> "ContractionFamily":
        """`f_n ≡ u + e/n`, a vanishing perturbation of a constant anchor."""
        u, e = vector(u), vector(e)
        check_dims(u, e)

        def at(n: int) -> Callable[[Vector], Vector]:
            u_n = u + e / n
            return lambda x: u_n

        return cls(at=at, theta=0.0, name="perturbed_anchor")

    @classmethod
    def scaled(cls, theta: float, center: Vector) -> "ContractionFamily":
        """`f_n(x) = c + θ(x − c)` for every `n`."""
        c = vector(center)

        def f(x: Vector) -> Vector:
            return c + theta * (x - c)

        return cls(at=lambda n: f, theta=theta, name=f"scaled({theta:g})")
