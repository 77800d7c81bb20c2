# Copyright 2024, Sergey Dudanov
# SPDX-License-Identifier: Apache-2.0

import logging
from typing import Callable, Sequence

import numpy as np

from ..const import (
    CONTRACTION_TOL,
    DYKSTRA_ONLY_TOL,
    ENUM_MAX_CONSTRAINTS,
    ENUM_MAX_DIM,
    ENUM_MAX_SETS,
    KKT_TOL,
    MAX_ITERS,
    ORACLE_AGREEMENT_TOL,
    VI_TOL,
)
from ..models import (
    ConvexSetDescriptor,
    ProbeRejectedError,
    ProbeReport,
    primitives,
)
from ..operators import project
from ..space import Vector, vector
from .dykstra import dykstra, feasibility
from .enumeration import enumerate_projection, polyhedral_constraints
from .result import (
    EmptyIntersectionError,
    OracleDisagreementError,
    OracleMethod,
    OracleResult,
)
from .sampling import sample_points

_LOGGER = logging.getLogger(__name__)


def _dykstra_only(value: Vector, reason: str) -> OracleResult:
    _LOGGER.warning("Projection oracle is Dykstra-only: %s.", reason)

    return OracleResult(
        value=value,
        method=OracleMethod.DYKSTRA,
        certified_tol=DYKSTRA_ONLY_TOL,
        certified=False,
    )


def project_intersection_oracle(
    sets: Sequence[ConvexSetDescriptor], u: Vector
) -> OracleResult:
    """
    Metric projection of `u` onto `∩ sets`, certified by two methods.

    Polyhedral inputs within the enumeration caps are solved by active-set
    enumeration and by Dykstra; the two must agree within
    `ORACLE_AGREEMENT_TOL`. Other inputs get an uncertified Dykstra value.
    """
    flat = tuple(p for s in sets for p in primitives(s))
    u = vector(u)
    by_dykstra = dykstra(flat, u).value
    cons = polyhedral_constraints(flat, u.shape[0])

    if cons is None:
        return _dykstra_only(by_dykstra, "curved member set")

    if u.shape[0] > ENUM_MAX_DIM or len(flat) > ENUM_MAX_SETS:
        return _dykstra_only(by_dykstra, "enumeration size cap exceeded")

    if len(cons.ineq_b) > ENUM_MAX_CONSTRAINTS:
        return _dykstra_only(by_dykstra, "too many inequalities")

    value, kkt = enumerate_projection(cons, u)

    if (gap := float(np.linalg.norm(value - by_dykstra))) > ORACLE_AGREEMENT_TOL:
        raise OracleDisagreementError(gap, ORACLE_AGREEMENT_TOL)

    if kkt > KKT_TOL * max(1.0, float(np.linalg.norm(u - value))):
        return _dykstra_only(by_dykstra, f"KKT residual {kkt:.3e}")

    _LOGGER.debug("Projection certified by enumeration, gap %.3e.", gap)

    return OracleResult(
        value=vector(value),
        method=OracleMethod.ACTIVE_SET_ENUMERATION,
        certified_tol=ORACLE_AGREEMENT_TOL,
        kkt_residual=kkt,
    )


def _retraction(sets: Sequence[ConvexSetDescriptor]) -> Callable[[Vector], Vector]:
    """Metric projection onto `∩ sets`, closed form for a single primitive."""
    flat = tuple(p for s in sets for p in primitives(s))

    if len(flat) == 1:
        return lambda x: project(flat[0], x)

    return lambda x: dykstra(flat, x).value


def composed_fixed_point_oracle(
    sets: Sequence[ConvexSetDescriptor],
    f: Callable[[Vector], Vector],
    theta: float,
    start: Vector,
    tol: float = CONTRACTION_TOL,
    max_iters: int = MAX_ITERS,
) -> OracleResult:
    """
    Unique fixed point of `Q∘f` for a `θ`-contraction `f`.

    `Q∘f` is a `θ`-contraction too; iteration stops on the a-posteriori
    bound `θ/(1 − θ)·‖x_{k+1} − x_k‖ ≤ tol`.
    """
    if not 0 <= theta < 1:
        raise ValueError(f"Contraction constant {theta} outside [0, 1).")

    q = _retraction(sets)
    x = vector(start)
    bound = np.inf

    for _ in range(max_iters):
        x_next = q(f(x))
        step = float(np.linalg.norm(x_next - x))
        x = x_next

        if (bound := theta / (1 - theta) * step) <= tol:
            break

    else:
        raise RuntimeError(f"Contraction iteration missed tolerance {tol}.")

    return OracleResult(
        value=vector(x),
        method=OracleMethod.CONTRACTION_ITERATION,
        certified_tol=max(bound, np.finfo(np.float64).eps),
        certified=len(tuple(p for s in sets for p in primitives(s))) == 1,
    )


def variational_inequality_check(
    u: Vector,
    q: Vector,
    s: ConvexSetDescriptor,
    samples: int = 200,
    seed: int = 0,
    tol: float = VI_TOL,
) -> ProbeReport:
    """
    Tests `q = P_s u` through `<u − q, z − q> ≤ tol` for sampled `z ∈ s`.

    The true projection of `u` is always among the samples, and the
    distance from `q` to `s` counts as a violation too. Samples farther
    than `DYKSTRA_ONLY_TOL` from `s` are dropped; `ProbeRejectedError` is
    raised when `s` yields no points.
    """
    if samples < 1:
        raise ValueError("At least one sample is required.")

    u, q = vector(u), vector(q)
    rng = np.random.default_rng(seed)

    try:
        zs = (_retraction([s])(u), *sample_points(s, rng, samples))
    except EmptyIntersectionError as e:
        reason = f"the set looks empty, residual {e.residual:.3e}"
        raise ProbeRejectedError("variational inequality", reason) from e

    zs = [z for z in zs if feasibility([s], z) <= DYKSTRA_ONLY_TOL]

    if not zs:
        raise ProbeRejectedError("variational inequality", "no feasible samples")

    gaps = [float(np.dot(u - q, z - q)) for z in zs]
    i = int(np.argmax(gaps))
    worst, witness = gaps[i], [zs[i]]

    if (outside := feasibility([s], q)) > worst:
        worst, witness = outside, [q]

    return ProbeReport.build(
        "variational_inequality", len(zs), worst, tol, seed=seed, witness=witness
    )


def sunny_retraction_check(
    sets: Sequence[ConvexSetDescriptor],
    x: Vector,
    lambdas: Sequence[float] = (0.0, 0.5, 1.0, 2.0, 10.0),
    tol: float = VI_TOL,
) -> ProbeReport:
    """Tests `Q(Qx + λ(x − Qx)) = Qx` for the projection `Q` onto `∩ sets`."""
    q = _retraction(sets)
    x = vector(x)
    qx = q(x)
    worst, witness = 0.0, None

    for lam in lambdas:
        y = qx + lam * (x - qx)

        if (d := float(np.linalg.norm(q(y) - qx))) > worst:
            worst, witness = d, [x, y]

    return ProbeReport.build(
        "sunny_retraction", len(lambdas), worst, tol, witness=witness
    )


def projection_oracle_for(s: ConvexSetDescriptor, u: Vector) -> OracleResult:
    """`project_intersection_oracle` for a single (possibly compound) descriptor."""
    return project_intersection_oracle(primitives(s), u)
