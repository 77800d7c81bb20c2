# Copyright 2024, Sergey Dudanov
# SPDX-License-Identifier: Apache-2.0

import numpy as np

from ..models import AbsValue, Indicator, Quadratic, ScalarFunctionDescriptor
from ..space import Vector
from .operator import Certificate, Operator


def _check_lambda(lam: float) -> None:
    if not lam > 0:
        raise ValueError(f"Resolvent parameter must be positive, got {lam}.")


def prox(f: ScalarFunctionDescriptor, lam: float, x: Vector) -> Vector:
    """
    Resolvent `J_λ = (I + λ∂f)^{-1}` applied componentwise.

    Fixed points of `J_λ` are the minimizers of `f` for every `λ > 0`.
    """
    _check_lambda(lam)

    match f:
        case AbsValue():
            return np.sign(x) * np.maximum(np.abs(x) - lam, 0.0)

        case Quadratic(curvature=c, center=m):
            return (x + lam * c * m) / (1 + lam * c)

        case Indicator(lo=lo, hi=hi):
            return np.clip(x, lo, hi)

    raise TypeError(f"Unsupported function {type(f).__name__}.")


def resolvent(f: ScalarFunctionDescriptor, lam: float, dim: int) -> Operator:
    _check_lambda(lam)

    return Operator(
        apply=lambda x: prox(f, lam, x),
        domain_dim=dim,
        fixed_set=f.argmin_set(dim),
        certificate=Certificate.firmly(),
        name=f"prox({f._tag}, {lam:g})",
    )
