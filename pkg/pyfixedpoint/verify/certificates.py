# Copyright 2024, Sergey Dudanov
# SPDX-License-Identifier: Apache-2.0

"""Empirical tests of the certificates operators are declared with."""

from typing import Callable

import numpy as np

from ..const import FIXED_POINT_TOL, NONEXPANSIVE_SLACK, SAMPLE_SPREAD
from ..iterate import ContractionFamily, ContractionScope
from ..models import ConvexSetDescriptor, Intersection, ProbeReport
from ..operators import CertificateKind, Operator
from ..oracle import sample_points
from ..space import DimensionMismatchError, Vector

type PairViolation = Callable[[Vector, Vector, Vector, Vector], float]
"""`(x, y, Tx, Ty) ↦ violation`, nonpositive when the inequality holds."""


def random_pairs(
    op: Operator, rng: np.random.Generator, trials: int
) -> tuple[np.ndarray, np.ndarray]:
    """Pairs drawn uniformly from the operator domain, or a cube around 0."""
    shape = (trials, op.domain_dim)

    if (box := op.domain) is not None:
        return rng.uniform(box.lo, box.hi, shape), rng.uniform(box.lo, box.hi, shape)

    s = SAMPLE_SPREAD
    return rng.uniform(-s, s, shape), rng.uniform(-s, s, shape)


def _pair_probe(
    name: str, op: Operator, violation: PairViolation, seed: int, trials: int
) -> ProbeReport:
    rng = np.random.default_rng(seed)
    worst, witness = -np.inf, None

    for x, y in zip(*random_pairs(op, rng, trials)):
        if (v := violation(x, y, op.apply(x), op.apply(y))) > worst:
            worst, witness = v, (x, y)

    return ProbeReport.build(
        f"{name}[{op.name}]",
        trials,
        max(worst, 0.0),
        NONEXPANSIVE_SLACK,
        seed=seed,
        witness=witness,
    )


def check_nonexpansive(op: Operator, seed: int = 0, trials: int = 1000) -> ProbeReport:
    """`‖Tx − Ty‖ ≤ ‖x − y‖`."""

    def violation(x, y, tx, ty) -> float:
        return float(np.linalg.norm(tx - ty) - np.linalg.norm(x - y))

    return _pair_probe("nonexpansive", op, violation, seed, trials)


def check_firmly_nonexpansive(
    op: Operator, seed: int = 0, trials: int = 1000
) -> ProbeReport:
    """`‖Tx − Ty‖² ≤ <Tx − Ty, x − y>`."""

    def violation(x, y, tx, ty) -> float:
        d = tx - ty
        return float(np.dot(d, d) - np.dot(d, x - y))

    return _pair_probe("firmly_nonexpansive", op, violation, seed, trials)


def check_averaged(
    op: Operator, alpha: float | None = None, seed: int = 0, trials: int = 1000
) -> ProbeReport:
    """
    `‖Sx − Sy‖² ≤ ‖x − y‖² − (1 − α)/α · ‖(I − S)x − (I − S)y‖²`.

    For `S = γI + (1 − γ)V` the constant is `α = 1 − γ`, so the factor is
    `γ/(1 − γ)`.
    """
    if alpha is None:
        alpha = op.certificate.averaged_alpha

    if alpha is None or not 0 < alpha < 1:
        raise ValueError(f"Operator {op.name} has no averagedness constant.")

    k = (1 - alpha) / alpha

    def violation(x, y, sx, sy) -> float:
        d, r = sx - sy, (x - sx) - (y - sy)
        return float(np.dot(d, d) - np.dot(x - y, x - y) + k * np.dot(r, r))

    return _pair_probe(f"averaged({alpha:g})", op, violation, seed, trials)


def check_fixed_set(op: Operator, seed: int = 0, samples: int = 200) -> ProbeReport:
    """Sampled points of the declared fixed-point set are fixed."""
    if op.fixed_set is None:
        raise ValueError(f"Operator {op.name} declares no fixed-point set.")

    rng = np.random.default_rng(seed)
    worst, witness = 0.0, None

    for z in sample_points(op.fixed_set, rng, samples):
        if (d := float(np.linalg.norm(op.apply(z) - z))) > worst:
            worst, witness = d, (z,)

    # Dykstra samples are feasible only to its own tolerance
    tol = (
        NONEXPANSIVE_SLACK if isinstance(op.fixed_set, Intersection) else FIXED_POINT_TOL
    )

    return ProbeReport.build(
        f"fixed_set[{op.name}]", samples, worst, tol, seed=seed, witness=witness
    )


def check_certificate(op: Operator, seed: int = 0, trials: int = 1000) -> list[ProbeReport]:
    """Every test the declared certificate and fixed set call for."""
    reports = [check_nonexpansive(op, seed, trials)]

    match op.certificate.kind:
        case CertificateKind.FIRMLY_NONEXPANSIVE:
            reports.append(check_firmly_nonexpansive(op, seed, trials))

        case CertificateKind.AVERAGED:
            reports.append(check_averaged(op, seed=seed, trials=trials))

    if op.fixed_set is not None:
        reports.append(check_fixed_set(op, seed))

    return reports


def check_contraction(
    f: ContractionFamily,
    dim: int,
    fixed_set: ConvexSetDescriptor | None = None,
    seed: int = 0,
    trials: int = 1000,
    n_max: int = 10,
) -> ProbeReport:
    """
    `‖f_n x − f_n y‖ ≤ θ‖x − y‖` for `n ≤ n_max`.

    Under `WITH_RESPECT_TO_F` scope `y` only ranges over sampled points of
    `fixed_set`, which is then required.
    """
    if trials < 1 or n_max < 1:
        raise ValueError("At least one trial and one map are required.")

    if fixed_set is not None and fixed_set.dim != dim:
        raise DimensionMismatchError(dim, fixed_set.dim)

    rng = np.random.default_rng(seed)
    s = SAMPLE_SPREAD
    xs = rng.uniform(-s, s, (trials, dim))

    if f.scope == ContractionScope.WITH_RESPECT_TO_F:
        if fixed_set is None:
            raise ValueError(f"Contraction {f.name} is scoped to a fixed-point set.")

        ys = np.asarray(sample_points(fixed_set, rng, trials))
    else:
        ys = rng.uniform(-s, s, (trials, dim))

    worst, witness = -np.inf, None

    for n in range(1, n_max + 1):
        f_n = f.at(n)

        for x, y in zip(xs, ys):
            v = np.linalg.norm(f_n(x) - f_n(y)) - f.theta * np.linalg.norm(x - y)

            if v > worst:
                worst, witness = float(v), (x, y)

    return ProbeReport.build(
        f"contraction({f.theta:g})[{f.name}]",
        trials * n_max,
        max(worst, 0.0),
        NONEXPANSIVE_SLACK,
        seed=seed,
        witness=witness,
    )
