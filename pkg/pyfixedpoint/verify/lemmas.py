# Copyright 2024, Sergey Dudanov
# SPDX-License-Identifier: Apache-2.0

"""Finite-window forms of the scalar lemmas behind the convergence proofs."""

import math
from typing import Callable, Sequence

import numpy as np
import numpy.typing as npt

from ..const import CAUCHY_TOL, LIMSUP_TOL, RECURSION_SLACK, WEIGHT_SUM_TOL
from ..models import ProbeRejectedError, ProbeReport
from ..sequences import HypothesisError, Schedule, ScheduleClass
from ..space import Vector

type RealSequence = Sequence[float] | npt.NDArray[np.float64]


def _tail(values: RealSequence) -> np.ndarray:
    """Last quarter of a window, at least one element."""
    values = np.asarray(values, dtype=np.float64)
    return values[(3 * len(values)) // 4 :]


def xu_recursion(
    xi1: float,
    alpha: Schedule,
    gamma_seq: RealSequence | Callable[[int], float],
    count: int,
) -> np.ndarray:
    """
    `ξ_{n+1} = max(0, (1 − α_n) ξ_n + α_n γ_n)`, `n = 1, …, count − 1`.

    With `Σ α_n = ∞` and `limsup γ_n ≤ 0` the sequence tends to 0. The
    `limsup` hypothesis is checked on the tail of `γ`.

    Return:
    - `ξ_1, …, ξ_count`.
    """
    if not xi1 >= 0:
        raise ValueError(f"Initial value must be nonnegative, got {xi1}.")

    if count < 1:
        raise ValueError("At least one term is required.")

    if ScheduleClass.SUM_DIVERGES not in alpha.asserted_class:
        raise HypothesisError(
            f"schedule {alpha.describe()}", "the sum of the sequence must diverge"
        )

    if callable(gamma_seq):
        gamma = np.array([gamma_seq(n) for n in range(1, count)])

    else:
        gamma = np.asarray(gamma_seq, dtype=np.float64)[: count - 1]

        if len(gamma) < count - 1:
            raise ValueError(f"Need {count - 1} gamma values, got {len(gamma)}.")

    if len(gamma) and (top := float(np.max(_tail(gamma)))) > LIMSUP_TOL:
        raise HypothesisError("gamma sequence", f"tail maximum {top:.3e} is not ≤ 0")

    xi = np.empty(count)
    xi[0] = xi1

    for n in range(1, count):
        a = alpha(n)
        xi[n] = max(0.0, (1 - a) * xi[n - 1] + a * gamma[n - 1])

    return xi


def mainge_tau(xi: RealSequence, n0_hint: int = 1) -> list[int]:
    """
    Eventually increasing index map of a finite window.

    `τ(n) = max{k ≤ n : ξ_k ≤ ξ_{k+1}}` (indices from 1), for `n` from the
    first such `k ≥ n0_hint` to the end of the window. Then
    `ξ_{τ(n)} ≤ ξ_{τ(n)+1}` and `ξ_n ≤ ξ_{τ(n)+1}` for every returned `n`.

    Return:
    - `[τ(k0), τ(k0 + 1), …, τ(len(xi))]`; the first entry is `k0`.
    """
    xi = np.asarray(xi, dtype=np.float64)
    size = len(xi)
    start = next(
        (k for k in range(max(n0_hint, 1), size) if xi[k - 1] <= xi[k]), None
    )

    if start is None:
        raise ValueError("Window is strictly decreasing: no index with ξ_k ≤ ξ_{k+1}.")

    tau, last = [], start

    for n in range(start, size + 1):
        if n < size and xi[n - 1] <= xi[n]:
            last = n

        tau.append(last)

    return tau


def weighted_tail_sum(
    lambdas: RealSequence, y: Callable[[int, int], Vector], n: int
) -> Vector:
    """
    `Σ_j λ_j y_j^n` over a finite table given as `y(j, n)`, `j` from 1.

    Bounded by `max_j ‖y_j^n‖` since the weights sum to one.
    """
    lambdas = np.asarray(lambdas, dtype=np.float64)

    if not len(lambdas) or np.any(lambdas < 0):
        raise ValueError("Weights must be a nonempty nonnegative list.")

    if abs(math.fsum(lambdas) - 1) > WEIGHT_SUM_TOL:
        raise ValueError(f"Weights sum to {math.fsum(lambdas)!r}, not 1.")

    result = lambdas[0] * np.asarray(y(1, n), dtype=np.float64)

    for j, w in enumerate(lambdas[1:], start=2):
        result = result + w * np.asarray(y(j, n), dtype=np.float64)

    return result


def _check_recursion_hypotheses(
    xi: np.ndarray, alpha: Schedule, gamma: np.ndarray, tau: list[int]
) -> None:
    prop = "scalar recursion convergence"
    ks = sorted({k for k in tau if k < len(xi)})

    for k in ks:
        a = alpha(k)
        bound = (1 - a) * xi[k - 1] + a * gamma[k - 1]

        if xi[k] > bound + RECURSION_SLACK * max(1.0, abs(bound)):
            raise ProbeRejectedError(
                prop, f"ξ_{k + 1} = {xi[k]:.6g} exceeds the recursion bound {bound:.6g}"
            )

    if ks and (top := max(gamma[k - 1] for k in _tail(ks).astype(int))) > LIMSUP_TOL:
        raise ProbeRejectedError(prop, f"γ along τ has tail maximum {top:.3e}")


def scalar_recursion_convergence_probe(
    xi: RealSequence,
    alpha: Schedule,
    gamma: RealSequence,
    windows: Sequence[int] | None = None,
    tol: float = CAUCHY_TOL,
) -> ProbeReport:
    """
    Probes convergence of a nonnegative `ξ` under the scalar recursion
    `ξ_{τ(n)+1} ≤ (1 − α_{τ(n)}) ξ_{τ(n)} + α_{τ(n)} γ_{τ(n)}` with
    `limsup γ_{τ(n)} ≤ 0` along the increase map `τ` of `mainge_tau`.

    Every prefix window that is not yet Cauchy on its tail must satisfy
    both hypotheses, otherwise `ProbeRejectedError` is raised. The report
    carries the largest tail spread.
    """
    xi = np.asarray(xi, dtype=np.float64)
    gamma = np.asarray(gamma, dtype=np.float64)

    if np.any(xi < 0):
        raise ValueError("ξ must be nonnegative.")

    if len(gamma) < len(xi) - 1:
        raise ValueError(f"Need {len(xi) - 1} gamma values, got {len(gamma)}.")

    if windows is None:
        windows = (len(xi) // 2, len(xi))

    worst = 0.0

    for w in windows:
        if not 2 <= w <= len(xi):
            raise ValueError(f"Window {w} outside 2..{len(xi)}.")

        tail = _tail(xi[:w])
        spread = float(np.max(tail) - np.min(tail))

        if spread > tol:
            try:
                tau = mainge_tau(xi[:w])

            except ValueError:
                # nonincreasing windows are convergent already
                tau = []

            _check_recursion_hypotheses(xi[:w], alpha, gamma, tau)

        worst = max(worst, spread)

    return ProbeReport.build("scalar_recursion_convergence", len(windows), worst, tol)
