# Copyright 2024, Sergey Dudanov
# SPDX-License-Identifier: Apache-2.0

import itertools
import math

import numpy as np
from scipy.optimize import brentq, minimize_scalar

from ..const import PROX_GRID
from ..models import Indicator, ScalarFunctionDescriptor


def prox_scalar_oracle(
    f: ScalarFunctionDescriptor, lam: float, x: float, grid: int = PROX_GRID
) -> float:
    """
    Minimizer of `λ f(z) + (z − x)² / 2` without closed forms.

    The minimizer lies between `x` and `argmin f`. A grid scan picks the
    best cell, bounded Brent refines it, and `brentq` polishes the
    stationarity equation on every smooth piece of the cell; the candidate
    with the smallest objective wins, kinks included.
    """
    if not lam > 0:
        raise ValueError(f"Resolvent parameter must be positive, got {lam}.")

    def objective(z: float) -> float:
        return lam * f(z) + 0.5 * (z - x) ** 2

    def stationarity(z: float) -> float:
        return lam * f.slope(z) + z - x

    m_lo, m_hi = f.argmin()

    if isinstance(f, Indicator):
        lo, hi = f.lo, f.hi

        if lo == hi:
            return lo

    else:
        lo, hi = min(x, m_lo) - 1, max(x, m_hi) + 1

    zs = np.linspace(lo, hi, grid)
    i = int(np.argmin([objective(z) for z in zs]))
    a, b = float(zs[max(i - 1, 0)]), float(zs[min(i + 1, grid - 1)])

    res = minimize_scalar(
        objective, bounds=(a, b), method="bounded", options={"xatol": 1e-14}
    )
    candidates = [float(res.x), a, b]
    kinks = sorted(k for k in f.kinks() if a < k < b)
    candidates.extend(kinks)

    for p, q in itertools.pairwise([a, *kinks, b]):
        # pieces are open, so probe just inside the ends
        eps = 1e-15 * max(1.0, abs(p), abs(q))
        p_in, q_in = p + eps, q - eps

        if p_in < q_in and stationarity(p_in) * stationarity(q_in) < 0:
            candidates.append(brentq(stationarity, p_in, q_in, xtol=1e-15))

    best = min(candidates, key=objective)
    assert math.isfinite(objective(best))

    return best
