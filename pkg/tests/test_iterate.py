import io
import math

import numpy as np
import pytest

from pyfixedpoint.iterate import (
    ContractionFamily,
    StopReason,
    StopRule,
    TraceSummary,
    anchor_limit,
    anchor_path,
    anchor_point,
    cfp_halpern,
    halpern,
    halpern_xi_gamma,
    proximal_halpern,
    viscosity,
)
from pyfixedpoint.models import AbsValue, Box, Halfspace, Indicator, Quadratic
from pyfixedpoint.operators import constant_map, convex_combo, identity, projector
from pyfixedpoint.oracle import composed_fixed_point_oracle
from pyfixedpoint.sequences import (
    BetaTable,
    Constant,
    HypothesisError,
    Power,
    constant_sequence,
)
from pyfixedpoint.serializer import get_serializer
from pyfixedpoint.space import DimensionMismatchError, vector

ORIGIN = vector([0, 0])


def _quadrant():
    return (
        projector(Halfspace(a=vector([1, 0]), b=0)),
        projector(Halfspace(a=vector([0, 1]), b=0)),
    )


def _quadrant_sequence():
    return constant_sequence(convex_combo((0.5, 0.5), _quadrant()))


def test_identity_halpern_telescopes():
    seq = constant_sequence(identity(2))
    u = vector([1, 1])
    trace = halpern(seq, u, ORIGIN, Power(), StopRule(max_iters=101, stride=1))

    assert trace.stop_reason == StopReason.MAX_ITERS
    assert trace.iters == 101
    assert trace.final.tolist() == pytest.approx([100 / 101, 100 / 101], rel=1e-12)

    for n, x in zip(trace.iterate_steps, trace.iterates):
        assert x.tolist() == pytest.approx([(n - 1) / n] * 2, rel=1e-12, abs=1e-15)


def test_stationary_at_fixed_point():
    p = vector([-1, 2])
    seq = constant_sequence(_quadrant()[0])
    trace = halpern(seq, p, p, Power())

    assert trace.stop_reason == StopReason.RESIDUAL_MET
    assert trace.iters == 1
    assert trace.final.tolist() == [-1, 2]


def test_quadrant_halpern_reaches_projection():
    u = vector([1, 1])
    tol = 1e-2 * math.sqrt(2)
    stop = StopRule(target_tol=tol, stride=1)
    trace = halpern(_quadrant_sequence(), u, u, Power(), stop, ref=ORIGIN)

    assert trace.stop_reason == StopReason.TARGET_MET
    assert trace.summary().final_dist <= tol

    # iterates stay in the ball around any common fixed point
    assert trace.check_bounded(ORIGIN, float(np.linalg.norm(u)))
    assert not trace.check_bounded(ORIGIN, 0.5)


def _third_quadrant_points(seed: int, count: int = 5):
    rng = np.random.default_rng(seed)
    return [vector(-rng.uniform(0, 5, 2)) for _ in range(count)]


@pytest.mark.parametrize("seed", range(3))
def test_halpern_a_priori_bound(seed: int):
    u, x1 = vector([1, 1]), vector([3, -1])
    stop = StopRule(max_iters=2000, stride=1)
    trace = halpern(_quadrant_sequence(), u, x1, Power(), stop)

    for w in _third_quadrant_points(seed):
        radius = max(np.linalg.norm(u - w), np.linalg.norm(x1 - w))
        assert trace.check_bounded(w, float(radius))


@pytest.mark.parametrize("seed", range(3))
def test_viscosity_a_priori_bound(seed: int):
    # ‖y_n − w‖ ≤ max{‖y_1 − w‖, ‖f(w) − w‖/(1 − θ)}, and for the scaled
    # contraction ‖f(w) − w‖/(1 − θ) = ‖c − w‖
    center, y1 = vector([2, 3]), vector([-4, 1])
    f = ContractionFamily.scaled(0.5, center)
    stop = StopRule(max_iters=2000, stride=1)
    trace = viscosity(_quadrant_sequence(), f, y1, Power(), stop)

    for w in _third_quadrant_points(seed):
        radius = max(np.linalg.norm(y1 - w), np.linalg.norm(center - w))
        assert trace.check_bounded(w, float(radius))


def test_quadrant_halpern_residual_stop():
    u = vector([1, 1])
    stop = StopRule(residual_tol=1e-4)
    trace = halpern(_quadrant_sequence(), u, u, Power(), stop, ref=ORIGIN)

    assert trace.stop_reason == StopReason.RESIDUAL_MET
    assert trace.stop_reason.converged
    assert trace.residual_T[-1] <= 1e-4
    assert trace.final_dist <= 1e-2


def test_constant_viscosity_matches_halpern():
    seq = _quadrant_sequence()
    u, x1 = vector([1, 2]), vector([3, -1])
    stop = StopRule(max_iters=500, stride=7)

    h = halpern(seq, u, x1, Power(), stop, ref=ORIGIN)
    v = viscosity(seq, ContractionFamily.constant(u), x1, Power(), stop, ref=ORIGIN)

    assert np.array_equal(h.residual_S, v.residual_S)
    assert np.array_equal(h.residual_T, v.residual_T)
    assert np.array_equal(h.dist_to_ref, v.dist_to_ref)
    assert h.iterate_steps == v.iterate_steps
    assert all(np.array_equal(a, b) for a, b in zip(h.iterates, v.iterates))


def test_scaled_viscosity_limit():
    halfline = Halfspace(a=vector([1]), b=0)
    seq = constant_sequence(projector(halfline))
    f = ContractionFamily.scaled(0.5, vector([0]))

    oracle = composed_fixed_point_oracle([halfline], f.at(1), f.theta, vector([3]))
    assert oracle.value.tolist() == pytest.approx([0], abs=1e-12)

    stop = StopRule(target_tol=1e-8)
    trace = viscosity(seq, f, vector([3]), Power(), stop, ref=oracle.value)

    assert trace.stop_reason == StopReason.TARGET_MET


def test_perturbed_anchor_viscosity():
    f = ContractionFamily.perturbed_anchor(vector([1, 1]), vector([1, 0]))
    tol = 1e-2 * math.sqrt(2)
    stop = StopRule(target_tol=tol)
    trace = viscosity(_quadrant_sequence(), f, vector([1, 1]), Power(), stop, ORIGIN)

    assert trace.stop_reason == StopReason.TARGET_MET


def test_contraction_family():
    with pytest.raises(ValueError):
        ContractionFamily.scaled(1.0, vector([0]))

    with pytest.raises(DimensionMismatchError):
        ContractionFamily.perturbed_anchor(vector([1, 1]), vector([1]))

    f = ContractionFamily.perturbed_anchor(vector([1]), vector([2]))
    assert f.at(4)(vector([9])).tolist() == [1.5]


@pytest.mark.parametrize(
    "f,u,limit",
    [
        (AbsValue(), 5.0, 0.0),
        (Indicator(lo=0, hi=1), 3.0, 1.0),
        (Quadratic(curvature=1, center=2), 0.0, 2.0),
    ],
)
def test_proximal_halpern(f, u: float, limit: float):
    tol = 1e-2 * max(1.0, abs(u - limit))
    stop = StopRule(target_tol=tol)
    trace = proximal_halpern(
        f, Constant(v=1.0), vector([u]), vector([u]), Power(), stop, vector([limit])
    )

    assert trace.stop_reason == StopReason.TARGET_MET
    assert abs(trace.final[0] - limit) <= tol


def test_cfp_halpern():
    u = vector([2, 1])
    tol = 1e-2 * math.sqrt(5)
    stop = StopRule(target_tol=tol)
    trace = cfp_halpern(
        _quadrant(), BetaTable(), Constant(v=0.5), u, u, Power(), stop, ORIGIN
    )

    assert trace.stop_reason == StopReason.TARGET_MET


def test_cfp_halpern_long_run():
    p1, p2 = _quadrant()
    u = vector([1, 1])
    stop = StopRule(max_iters=10_000, stride=1000)
    trace = cfp_halpern(
        (p1, p2), BetaTable(), Constant(v=0.5), u, u, Power(), stop, ORIGIN
    )

    assert trace.stop_reason == StopReason.MAX_ITERS
    assert trace.iters == 10_000
    assert trace.final_dist <= 1e-3

    for p in (p1, p2):
        assert np.linalg.norm(trace.final - p(trace.final)) <= 1e-3


def test_cfp_halpern_identity_limit_is_anchor():
    u = vector([2, 1])
    stop = StopRule(target_tol=1e-2)
    trace = cfp_halpern(
        (identity(2),), BetaTable(), Constant(v=0.5), u, ORIGIN, Power(), stop, u
    )

    assert trace.stop_reason == StopReason.TARGET_MET


def test_driver_gates():
    seq = _quadrant_sequence()

    with pytest.raises(HypothesisError):
        halpern(seq, ORIGIN, ORIGIN, Power(p=2))

    with pytest.raises(DimensionMismatchError):
        halpern(seq, vector([1, 1, 1]), vector([1, 1, 1]), Power())

    with pytest.raises(ValueError):
        StopRule(max_iters=0)


def test_driver_rejects_start_outside_domain():
    box = Box(lo=vector([-1, -1]), hi=vector([1, 1]))
    ops = [p.restrict(box) for p in _quadrant()]
    seq = constant_sequence(convex_combo((0.5, 0.5), ops))

    with pytest.raises(ValueError):
        halpern(seq, vector([2, 0]), ORIGIN, Power())

    u = vector([1, 1])
    trace = halpern(seq, u, u, Power(), StopRule(max_iters=10))
    assert trace.iters == 10


def test_trace_csv_and_summary():
    trace = halpern(
        _quadrant_sequence(),
        vector([1, 1]),
        vector([1, 1]),
        Power(),
        StopRule(max_iters=250),
        ref=ORIGIN,
    )
    file = io.StringIO()
    trace.write_csv(file)
    lines = file.getvalue().splitlines()

    assert lines[0] == "n,residual_S,residual_T,dist_to_ref"
    assert len(lines) == 251
    assert lines[1].startswith("1,")

    # first, every 100th and the last iterate
    assert trace.iterate_steps == (1, 100, 200, 250)

    summary = trace.summary()
    assert summary.iters == 250
    assert summary.stop_reason == StopReason.MAX_ITERS

    obj = get_serializer(TraceSummary).serialize(summary)
    assert obj["stop_reason"] == "max_iters"
    assert len(obj["final_iterate"]) == 2


def test_halpern_xi_gamma_recursion():
    u = vector([1, 1])
    trace = halpern(
        _quadrant_sequence(), u, u, Power(), StopRule(max_iters=300, stride=1)
    )
    xi, gamma = halpern_xi_gamma(trace, u, ORIGIN)
    alpha = Power().values(len(gamma))

    assert len(gamma) == len(xi) - 1
    assert np.all(xi[1:] <= (1 - alpha) * xi[:-1] + alpha * gamma + 1e-12)

    strided = halpern(_quadrant_sequence(), u, u, Power(), StopRule(max_iters=300))

    with pytest.raises(ValueError):
        halpern_xi_gamma(strided, u, ORIGIN)


@pytest.mark.parametrize("t", [0.5, 0.1, 1e-3])
def test_anchor_point_closed_forms(t: float):
    u = vector([1, -2])
    p = vector([3, 3])

    assert anchor_point(identity(2), u, t).tolist() == pytest.approx(u.tolist())
    assert anchor_point(constant_map(p), u, t).tolist() == pytest.approx(
        (t * u + (1 - t) * p).tolist()
    )

    halfline = projector(Halfspace(a=vector([1]), b=0))
    assert anchor_point(halfline, vector([1]), t)[0] == pytest.approx(t, abs=1e-10)


def test_anchor_limit():
    u = vector([1, 1])
    halfline = projector(Halfspace(a=vector([1]), b=0))

    assert anchor_limit(halfline, vector([1]), [1e-2, 1e-4])[0] <= 1e-4 + 1e-10

    t_op = convex_combo((0.5, 0.5), _quadrant())
    z = anchor_limit(t_op, u, [0.1, 1e-2, 1e-3])

    assert np.linalg.norm(z) <= 5e-3

    path = anchor_path(t_op, u, [0.5, 0.1, 1e-2])
    dists = [np.linalg.norm(z) for z in path]
    assert dists == sorted(dists, reverse=True)


def test_anchor_errors():
    with pytest.raises(ValueError):
        anchor_point(identity(1), vector([1]), 1.0)

    with pytest.raises(ValueError):
        anchor_path(identity(1), vector([1]), [0.1, 0.5])

    with pytest.raises(DimensionMismatchError):
        anchor_point(identity(2), vector([1]), 0.5)
