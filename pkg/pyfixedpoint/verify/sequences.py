# Copyright 2024, Sergey Dudanov
# SPDX-License-Identifier: Apache-2.0

"""Probes of strong nonexpansiveness and of the NST condition."""

import logging
from typing import Sequence

import numpy as np

from ..const import (
    FIXED_POINT_TOL,
    NONEXPANSIVE_SLACK,
    NST_TOL,
    SAMPLE_SPREAD,
    SNS_GAP_TOL,
    SNS_POOL,
    SNS_STEPS,
    SNS_TOL,
    SNS_TRIALS,
)
from ..models import Intersection, ProbeRejectedError, ProbeReport
from ..operators import Operator
from ..oracle import sample_points
from ..sequences import OperatorSequence
from ..space import Vector

_LOGGER = logging.getLogger(__name__)


def _unit_pairs(
    seq: OperatorSequence, rng: np.random.Generator, count: int
) -> tuple[np.ndarray, np.ndarray]:
    """Bounded pairs `(x, y)` with `‖x − y‖ = 1` inside the domain when one is set."""
    d = seq.dim
    v = rng.standard_normal((count, d))
    v /= np.linalg.norm(v, axis=1, keepdims=True)

    if (box := seq.nst_target.domain) is None:
        x = rng.uniform(-SAMPLE_SPREAD, SAMPLE_SPREAD, (count, d))
        return x, x + v

    x = rng.uniform(box.lo, box.hi, (count, d))
    y = np.clip(x + v, box.lo, box.hi)
    return x, y


def _stretch_direction(s: Operator, x: np.ndarray, delta: float) -> np.ndarray:
    """Unit direction `s` stretches most at `x`, from its difference quotient."""
    sx = s.apply(x)
    jac = np.column_stack(
        [(s.apply(x + delta * e) - sx) / delta for e in np.eye(len(x))]
    )
    return np.linalg.svd(jac)[2][0]


def _averaged_excess(
    s: Operator, xs: np.ndarray, ys: np.ndarray
) -> tuple[float, tuple[Vector, Vector] | None]:
    """Worst excess of the averaged inequality of `s` over the pairs."""
    if (alpha := s.certificate.averaged_alpha) is None:
        return 0.0, None

    sx = np.array([s.apply(x) for x in xs])
    sy = np.array([s.apply(y) for y in ys])
    k = (1 - alpha) / alpha
    r = (xs - sx) - (ys - sy)
    excess = (
        np.sum((sx - sy) ** 2, axis=1)
        - np.sum((xs - ys) ** 2, axis=1)
        + k * np.sum(r**2, axis=1)
    )
    j = int(np.argmax(excess))
    return float(excess[j]), (xs[j], ys[j])


def check_sns(
    seq: OperatorSequence,
    seed: int = 0,
    trials: int = SNS_TRIALS,
    steps: int = SNS_STEPS,
) -> ProbeReport:
    """
    Probes `(x_n − y_n) − (S_n x_n − S_n y_n) → 0` along pairs whose norm gap
    `‖x_n − y_n‖ − ‖S_n x_n − S_n y_n‖` vanishes.

    Each trial fixes a bounded base point `x` and pairs it at step `n` with
    `y_n = x + δ_n v_n`, `δ_n = 1/n`, where `v_n` is the unit direction
    along which `S_n` stretches most. Gap and displacement difference are
    measured relative to `δ_n`. A trial counts only if its gap is at most
    `SNS_GAP_TOL` at the last step; its steps with such a gap contribute
    their displacement difference to the violation. When no trial counts
    the hypothesis never held and `ProbeRejectedError` is raised.

    Operators certified averaged are also held to the quantitative averaged
    inequality on `SNS_POOL` random pairs per step.
    """
    if trials < 1:
        raise ValueError("At least one trial is required.")

    rng = np.random.default_rng(seed)
    box = seq.nst_target.domain
    lo, hi = (-SAMPLE_SPREAD, SAMPLE_SPREAD) if box is None else (box.lo, box.hi)
    ops = [seq.at(n) for n in range(1, steps + 1)]
    worst, witness = 0.0, None
    pairs = counted = 0

    for x in rng.uniform(lo, hi, (trials, seq.dim)):
        gap, found = 1.0, []

        for n, s in enumerate(ops, 1):
            delta = 1 / n
            y = x + delta * _stretch_direction(s, x, delta)

            if box is not None and not box.contains(y):
                continue

            sx, sy = s.apply(x), s.apply(y)
            pairs += 1
            gap = 1 - float(np.linalg.norm(sx - sy)) / delta

            if gap <= SNS_GAP_TOL:
                disp = float(np.linalg.norm((x - y) - (sx - sy))) / delta
                found.append((disp, (x, y)))

        if gap > SNS_GAP_TOL:
            continue

        counted += 1

        for disp, pair in found:
            if disp > worst:
                worst, witness = disp, pair

    if not counted:
        raise ProbeRejectedError(
            "strong nonexpansiveness",
            f"no norm gap of {seq.name} vanished over {trials} trials",
        )

    for s in ops:
        excess, pair = _averaged_excess(s, *_unit_pairs(seq, rng, SNS_POOL))
        pairs += SNS_POOL if pair is not None else 0

        if excess > NONEXPANSIVE_SLACK and excess > worst:
            worst, witness = excess, pair

    _LOGGER.debug(
        "SNS probe of %s: worst %.3e over %d pairs, %d of %d trials counted.",
        seq.name,
        worst,
        pairs,
        counted,
        trials,
    )

    return ProbeReport.build(
        f"sns[{seq.name}]", pairs, worst, SNS_TOL, seed=seed, witness=witness
    )


def check_nst(
    seq: OperatorSequence,
    probes: Sequence[Sequence[Vector]],
    tol: float = NST_TOL,
    hypothesis_tol: float = NST_TOL,
) -> ProbeReport:
    """
    Probes the NST condition: `x_n − S_n x_n → 0` forces `x_n − T x_n → 0`.

    Each probe is a finite bounded sequence `x_1, x_2, …` whose terminal
    residual against `S_n` must be at most `hypothesis_tol`; others are
    rejected with `ProbeRejectedError`. The probe passes when every terminal
    residual against `T` is at most `tol`.
    """
    if not probes:
        raise ValueError("At least one probe sequence is required.")

    t = seq.nst_target
    worst, witness = 0.0, None

    for k, probe in enumerate(probes):
        xs = np.asarray(probe, dtype=np.float64)

        if xs.ndim != 2 or not len(xs) or not np.all(np.isfinite(xs)):
            raise ProbeRejectedError("NST condition", f"probe {k} is not bounded")

        n, x = len(xs), xs[-1]

        if (r_s := float(np.linalg.norm(x - seq.at(n).apply(x)))) > hypothesis_tol:
            raise ProbeRejectedError(
                "NST condition",
                f"probe {k} ends with residual {r_s:.3e} against S_{n}",
            )

        if (r_t := float(np.linalg.norm(x - t.apply(x)))) > worst:
            worst, witness = r_t, (x,)

    return ProbeReport.build(
        f"nst[{seq.name}]", len(probes), worst, tol, witness=witness
    )


def check_fixed_set_inclusion(
    seq: OperatorSequence, seed: int = 0, samples: int = 100, n_max: int = 50
) -> ProbeReport:
    """
    Sampled points of the common fixed set are fixed by `S_1, …, S_{n_max}`
    and by the NST target.
    """
    if (fixed := seq.common_fixed_set) is None:
        raise ValueError(f"Sequence {seq.name} declares no common fixed set.")

    rng = np.random.default_rng(seed)
    ops = [seq.at(n) for n in range(1, n_max + 1)] + [seq.nst_target]
    worst, witness = 0.0, None

    for z in sample_points(fixed, rng, samples):
        for op in ops:
            if (d := float(np.linalg.norm(op.apply(z) - z))) > worst:
                worst, witness = d, (z,)

    tol = NONEXPANSIVE_SLACK if isinstance(fixed, Intersection) else FIXED_POINT_TOL

    return ProbeReport.build(
        f"fixed_set_inclusion[{seq.name}]",
        samples * len(ops),
        worst,
        tol,
        seed=seed,
        witness=witness,
    )
