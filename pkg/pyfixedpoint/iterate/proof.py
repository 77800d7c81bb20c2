# Copyright 2024, Sergey Dudanov
# SPDX-License-Identifier: Apache-2.0

import numpy as np

from ..space import Vector, check_dims, vector
from .trace import IterationTrace


def halpern_xi_gamma(
    trace: IterationTrace, u: Vector, w: Vector
) -> tuple[np.ndarray, np.ndarray]:
    """
    Scalar sequences of the Halpern convergence argument.

    `ξ_n = ‖x_n − w‖²` and `γ_n = 2<u − w, x_{n+1} − w>` satisfy
    `ξ_{n+1} ≤ (1 − α_n) ξ_n + α_n γ_n` for every `w` in the common fixed
    set. The trace must be recorded with stride 1.

    Return:
    - `(xi, gamma)` with `len(gamma) == len(xi) - 1`.
    """
    if trace.iterate_steps != tuple(range(1, len(trace.iterates) + 1)):
        raise ValueError("Trace must record every iterate (stride 1).")

    u, w = vector(u), vector(w)
    xs = np.vstack(trace.iterates)
    check_dims(u, w, xs[0])

    xi = np.sum((xs - w) ** 2, axis=1)
    gamma = 2 * (xs[1:] - w) @ (u - w)

    return xi, gamma
