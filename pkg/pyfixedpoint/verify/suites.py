# Copyright 2024, Sergey Dudanov
# SPDX-License-Identifier: Apache-2.0

"""Named probe batteries run by the `verify` command."""

import dataclasses as dc
import logging
from enum import StrEnum
from typing import Callable

import numpy as np

from ..const import ORACLE_AGREEMENT_TOL, SAMPLE_SPREAD, WEIGHT_SUM_TOL
from ..iterate import ContractionFamily, StopRule, halpern, halpern_xi_gamma
from ..models import (
    AbsValue,
    Halfspace,
    Indicator,
    Intersection,
    ProbeReport,
    Quadratic,
    ScalarFunctionDescriptor,
    merge_reports,
)
from ..operators import (
    Operator,
    convex_combo,
    projector,
    prox,
    relax,
    rotation,
)
from ..oracle import (
    dykstra,
    enumerate_projection,
    polyhedral_constraints,
    prox_scalar_oracle,
    variational_inequality_check,
)
from ..sequences import (
    BetaTable,
    Constant,
    OperatorSequence,
    Power,
    cfp_sequence,
    constant_sequence,
    raw_sequence,
    resolvent_sequence,
)
from ..space import vector
from .certificates import check_certificate, check_contraction
from .lemmas import (
    mainge_tau,
    scalar_recursion_convergence_probe,
    weighted_tail_sum,
    xu_recursion,
)
from .sequences import check_fixed_set_inclusion, check_nst, check_sns

_LOGGER = logging.getLogger(__name__)

NST_RUN_ITERS = 10_000
XU_TERMS = 10_000
XU_TOL = 2e-3
MAINGE_WINDOWS = 1000
MAINGE_WINDOW_LEN = 200
TAIL_SUM_INDEX = 2_000_000
TAIL_SUM_TOL = 1e-6
POLYHEDRAL_INSTANCES = 100
PROX_TRIPLES = 1000
PROX_AGREEMENT_TOL = 1e-8


class SuiteName(StrEnum):
    SNS = "sns"
    NST = "nst"
    LEMMAS = "lemmas"
    ORACLE_CROSSCHECK = "oracle-crosscheck"
    ALL = "all"


def quadrant_projections() -> tuple[Operator, Operator]:
    """Projections onto `{x_1 ≤ 0}` and `{x_2 ≤ 0}`; their common fixed set is the third quadrant."""
    return (
        projector(Halfspace(a=vector([1.0, 0.0]), b=0.0)),
        projector(Halfspace(a=vector([0.0, 1.0]), b=0.0)),
    )


def _quadrant_sequences() -> dict[str, OperatorSequence]:
    p1, p2 = quadrant_projections()

    return {
        "constant": constant_sequence(convex_combo((0.5, 0.5), (p1, p2))),
        "cfp": cfp_sequence((p1, p2), BetaTable(), Constant(v=0.5)),
    }


def _sns_suite(seed: int) -> list[ProbeReport]:
    p1, p2 = quadrant_projections()
    relaxed = relax(0.5, p1)
    sequences = [
        constant_sequence(projector(Halfspace(a=vector([1.0, 1.0]), b=1.0))),
        constant_sequence(relaxed),
        resolvent_sequence(AbsValue(), Constant(v=2.0), 1),
        *_quadrant_sequences().values(),
    ]
    reports = [check_sns(seq, seed) for seq in sequences]

    for op in (p1, p2, relaxed, convex_combo((0.5, 0.5), (p1, p2))):
        reports.extend(check_certificate(op, seed))

    viscosity_anchor = ContractionFamily.scaled(0.5, vector([2.0, 3.0]))
    reports.append(check_contraction(viscosity_anchor, 2, seed=seed))

    rot = rotation(0.5)
    control = check_sns(raw_sequence(lambda n: rot, rot, rot.fixed_set, rot.name), seed)
    reports.append(dc.replace(control, expected_to_fail=True))

    return reports


def _halpern_probe(seq: OperatorSequence, u: list[float]) -> list[np.ndarray]:
    stop = StopRule(max_iters=NST_RUN_ITERS, stride=1)
    trace = halpern(seq, vector(u), vector(u), Power(), stop)
    return list(trace.iterates)


def _nst_suite(seed: int) -> list[ProbeReport]:
    reports = []
    resolvents = resolvent_sequence(AbsValue(), Constant(v=2.0), 1)
    reports.append(check_nst(resolvents, [_halpern_probe(resolvents, [5.0])]))
    reports.append(check_fixed_set_inclusion(resolvents, seed))

    for seq in _quadrant_sequences().values():
        probes = [_halpern_probe(seq, u) for u in ([1.0, 1.0], [3.0, -2.0])]
        reports.append(check_nst(seq, probes))
        reports.append(check_fixed_set_inclusion(seq, seed))

    return reports


def _xu_suite() -> list[ProbeReport]:
    alpha = Power()
    instances: list[tuple[float, Callable[[int], float]]] = [
        (1.0, lambda n: 0.0),
        (0.0, lambda n: -1.0 / n),
        (5.0, lambda n: 1.0 / n),
    ]
    reports = []

    for i, (xi1, gamma) in enumerate(instances, start=1):
        xi = xu_recursion(xi1, alpha, gamma, XU_TERMS)
        reports.append(
            ProbeReport.build(f"xu_recursion[{i}]", XU_TERMS, float(xi[-1]), XU_TOL)
        )

    return reports


def mainge_violations(xi: np.ndarray, tau: list[int]) -> int:
    """Number of window positions where the increase map properties fail."""
    start, bad = tau[0], 0

    for n, (prev, k) in enumerate(zip([start, *tau], tau), start=start):
        bad += k < prev or k > n
        bad += not xi[k - 1] <= xi[k]
        bad += not xi[n - 1] <= xi[k]

    return bad


def _mainge_suite(seed: int) -> ProbeReport:
    rng = np.random.default_rng(seed)
    worst, checked = 0, 0

    while checked < MAINGE_WINDOWS:
        xi = rng.standard_normal(MAINGE_WINDOW_LEN).cumsum()

        if np.all(np.diff(xi) < 0):
            continue

        worst = max(worst, mainge_violations(xi, mainge_tau(xi)))
        checked += 1

    return ProbeReport.build("mainge_tau", checked, worst, 0.0, seed=seed)


def _tail_sum_suite() -> list[ProbeReport]:
    e1 = vector([1.0, 0.0])
    geometric = BetaTable().row(20)
    tables = {
        "constant_in_j": (geometric, lambda j, n: e1 / n),
        "zero": (geometric, lambda j, n: 0 * e1),
        "linear_in_j": ((0.5, 0.25, 0.25), lambda j, n: (j / n) * e1),
    }
    reports = []

    for name, (lambdas, y) in tables.items():
        n = TAIL_SUM_INDEX
        value = float(np.linalg.norm(weighted_tail_sum(lambdas, y, n)))
        bound = max(float(np.linalg.norm(y(j, n))) for j in range(1, len(lambdas) + 1))
        # the sum is bounded by the largest table entry
        tol = min(TAIL_SUM_TOL, bound * (1 + WEIGHT_SUM_TOL))
        reports.append(ProbeReport.build(f"weighted_tail_sum[{name}]", 1, value, tol))

    return reports


def _scalar_probe_suite() -> ProbeReport:
    u, alpha = vector([1.0, 1.0]), Power()
    seq = _quadrant_sequences()["constant"]
    trace = halpern(seq, u, u, alpha, StopRule(max_iters=NST_RUN_ITERS, stride=1))
    xi, gamma = halpern_xi_gamma(trace, u, vector([0.0, 0.0]))

    return scalar_recursion_convergence_probe(xi, alpha, gamma)


def _lemmas_suite(seed: int) -> list[ProbeReport]:
    return [
        *_xu_suite(),
        _mainge_suite(seed),
        *_tail_sum_suite(),
        _scalar_probe_suite(),
    ]


def random_polyhedron(
    rng: np.random.Generator, dim: int, count: int
) -> tuple[Halfspace, ...]:
    """`count` halfspaces in `R^dim` sharing a random interior point."""
    p = rng.uniform(-1, 1, dim)
    sets = []

    for _ in range(count):
        a = rng.standard_normal(dim)
        a /= np.linalg.norm(a)
        sets.append(Halfspace(a=vector(a), b=float(a @ p + rng.uniform(0, 1))))

    return tuple(sets)


def _polyhedral_crosscheck(seed: int) -> list[ProbeReport]:
    rng = np.random.default_rng(seed)
    gaps, vi_reports = [], []

    for i in range(POLYHEDRAL_INSTANCES):
        dim = int(rng.integers(2, 5))
        sets = random_polyhedron(rng, dim, int(rng.integers(1, 5)))
        u = vector(rng.uniform(-SAMPLE_SPREAD, SAMPLE_SPREAD, dim))

        cons = polyhedral_constraints(sets, dim)
        assert cons is not None
        q, _ = enumerate_projection(cons, u)
        gaps.append(float(np.linalg.norm(q - dykstra(sets, u).value)))

        tol = ORACLE_AGREEMENT_TOL * max(1.0, float(np.linalg.norm(u - q)))
        vi_reports.append(
            variational_inequality_check(
                u, q, Intersection(sets=sets), samples=20, seed=seed + i, tol=tol
            )
        )

    return [
        ProbeReport.build(
            "enumeration_vs_dykstra",
            len(gaps),
            max(gaps),
            ORACLE_AGREEMENT_TOL,
            seed=seed,
        ),
        merge_reports("variational_inequality", vi_reports),
    ]


def random_scalar_function(rng: np.random.Generator) -> ScalarFunctionDescriptor:
    match int(rng.integers(3)):
        case 0:
            return AbsValue()

        case 1:
            return Quadratic(
                curvature=float(rng.uniform(0.1, 5)), center=float(rng.uniform(-3, 3))
            )

    lo = float(rng.uniform(-3, 3))
    return Indicator(lo=lo, hi=lo + float(rng.uniform(0, 3)))


def _prox_crosscheck(seed: int) -> ProbeReport:
    rng = np.random.default_rng(seed)
    worst, witness = 0.0, None

    for _ in range(PROX_TRIPLES):
        f = random_scalar_function(rng)
        lam = float(rng.uniform(0.1, 5))
        x = float(rng.uniform(-SAMPLE_SPREAD, SAMPLE_SPREAD))
        closed = float(prox(f, lam, vector([x]))[0])

        if (gap := abs(prox_scalar_oracle(f, lam, x) - closed)) > worst:
            worst, witness = gap, (vector([x]),)

    return ProbeReport.build(
        "prox_oracle_vs_closed_form",
        PROX_TRIPLES,
        worst,
        PROX_AGREEMENT_TOL,
        seed=seed,
        witness=witness,
    )


def _oracle_suite(seed: int) -> list[ProbeReport]:
    return [*_polyhedral_crosscheck(seed), _prox_crosscheck(seed)]


_SUITES: dict[SuiteName, Callable[[int], list[ProbeReport]]] = {
    SuiteName.SNS: _sns_suite,
    SuiteName.NST: _nst_suite,
    SuiteName.LEMMAS: _lemmas_suite,
    SuiteName.ORACLE_CROSSCHECK: _oracle_suite,
}


def run_suite(
    name: SuiteName | str, seed: int = 0
) -> dict[SuiteName, list[ProbeReport]]:
    """
    Runs a battery, or every battery for `all`.

    Return:
    - Reports per suite. A suite succeeds when every report is `ok`.
    """
    name = SuiteName(name)
    names = list(_SUITES) if name == SuiteName.ALL else [name]
    result = {}

    for n in names:
        _LOGGER.debug("Running suite '%s', seed %d.", n, seed)
        result[n] = _SUITES[n](seed)

    return result
