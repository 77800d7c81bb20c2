import numpy as np
import pytest

from pyfixedpoint.models import (
    AbsValue,
    Affine,
    Ball,
    Box,
    Halfspace,
    Indicator,
    Intersection,
    ProbeRejectedError,
    Quadratic,
)
from pyfixedpoint.operators import project, prox
from pyfixedpoint.oracle import (
    EmptyIntersectionError,
    OracleMethod,
    OracleResult,
    dykstra,
    enumerate_projection,
    polyhedral_constraints,
    project_intersection_oracle,
    projection_oracle_for,
    prox_scalar_oracle,
    sample_points,
    sunny_retraction_check,
    variational_inequality_check,
)
from pyfixedpoint.serializer import get_serializer
from pyfixedpoint.space import vector

QUADRANT = (
    Halfspace(a=vector([1, 0]), b=0),
    Halfspace(a=vector([0, 1]), b=0),
)


@pytest.mark.parametrize(
    "sets,u,result",
    [
        (QUADRANT, [1, 1], [0, 0]),
        (QUADRANT, [-1, -2], [-1, -2]),
        (QUADRANT, [3, -2], [0, -2]),
        (QUADRANT[:1], [2, 3], [0, 3]),
        (
            (Box(lo=vector([0, 0]), hi=vector([1, 1])), Halfspace(a=vector([1, 1]), b=1)),
            [2, 2],
            [0.5, 0.5],
        ),
        (
            (
                Affine(point=vector([0, 0, 1]), normals=(vector([0, 0, 1]),)),
                Halfspace(a=vector([1, 0, 0]), b=0),
            ),
            [0, 0, 0],
            [0, 0, 1],
        ),
    ],
)
def test_project_intersection_oracle(sets, u: list, result: list):
    r = project_intersection_oracle(sets, vector(u))

    assert r.method == OracleMethod.ACTIVE_SET_ENUMERATION
    assert r.certified
    assert r.kkt_residual <= 1e-10
    assert r.value.tolist() == pytest.approx(result, abs=1e-9)


def test_curved_sets_are_dykstra_only(caplog):
    ball = Ball(center=vector([0, 0]), radius=1)
    r = project_intersection_oracle((ball, QUADRANT[0]), vector([3, 4]))

    assert r.method == OracleMethod.DYKSTRA
    assert not r.certified
    assert r.value.tolist() == pytest.approx([0, 1], abs=1e-6)
    assert "Dykstra-only" in caplog.text


def test_empty_intersection():
    sets = (Halfspace(a=vector([1]), b=-1), Halfspace(a=vector([-1]), b=-1))

    with pytest.raises(EmptyIntersectionError):
        dykstra(sets, vector([0]), max_iters=1000)

    cons = polyhedral_constraints(sets, 1)

    with pytest.raises(EmptyIntersectionError):
        enumerate_projection(cons, vector([0]))


def test_dykstra_matches_enumeration():
    sets = (Halfspace(a=vector([1, -1]), b=0), Halfspace(a=vector([0, 1]), b=0))
    u = vector([2, 1])
    r = dykstra(sets, u)

    assert r.converged
    assert r.value.tolist() == pytest.approx(
        enumerate_projection(polyhedral_constraints(sets, 2), u)[0].tolist(), abs=1e-9
    )


def test_projection_oracle_for_compound():
    r = projection_oracle_for(Intersection(sets=QUADRANT), vector([1, 1]))
    assert r.value.tolist() == pytest.approx([0, 0], abs=1e-9)


def test_oracle_result_json():
    r = project_intersection_oracle(QUADRANT, vector([1, 1]))
    obj = get_serializer(OracleResult).serialize(r)

    assert obj["method"] == "active_set_enumeration"
    assert obj["certified"] is True
    assert len(obj["value"]) == 2


@pytest.mark.parametrize(
    "f,lam,x,result",
    [
        (AbsValue(), 1.0, 2.5, 1.5),
        (AbsValue(), 1.0, 0.0, 0.0),
        (AbsValue(), 3.0, -1.0, 0.0),
        (Quadratic(curvature=1), 1.0, 3.0, 1.5),
        (Quadratic(curvature=2), 0.5, 4.0, 2.0),
        (Indicator(lo=0, hi=1), 2.0, 3.0, 1.0),
        (Indicator(lo=2, hi=2), 2.0, -3.0, 2.0),
    ],
)
def test_prox_scalar_oracle(f, lam: float, x: float, result: float):
    assert prox_scalar_oracle(f, lam, x) == pytest.approx(result, abs=1e-10)


@pytest.mark.parametrize("seed", range(3))
def test_prox_oracle_matches_closed_form(seed: int):
    rng = np.random.default_rng(seed)

    for f in (AbsValue(), Quadratic(curvature=0.7, center=-1), Indicator(lo=-1, hi=2)):
        lam = float(rng.uniform(0.1, 5))
        x = float(rng.uniform(-10, 10))
        expected = float(prox(f, lam, vector([x]))[0])

        assert prox_scalar_oracle(f, lam, x) == pytest.approx(expected, abs=1e-8)


def test_prox_oracle_lambda():
    with pytest.raises(ValueError):
        prox_scalar_oracle(AbsValue(), -1.0, 0.0)


def test_variational_inequality_check():
    s = QUADRANT[0]
    u = vector([2, 3])
    q = project(s, u)

    assert variational_inequality_check(u, q, s, samples=50).passed

    inside = vector([-1, 1])
    assert variational_inequality_check(inside, inside, s, samples=50).passed

    off = vector([-0.1, 3])
    report = variational_inequality_check(u, off, s, samples=50)

    assert not report.passed
    assert report.worst_violation > 0
    assert report.witness is not None

    with pytest.raises(ValueError):
        variational_inequality_check(u, q, s, samples=0)


def test_variational_inequality_check_rejects_empty_set():
    empty = Intersection(
        sets=(Halfspace(a=vector([1]), b=-1), Halfspace(a=vector([-1]), b=-1))
    )

    with pytest.raises(ProbeRejectedError) as e:
        variational_inequality_check(vector([0]), vector([0]), empty, samples=10)

    assert e.value.prop == "variational inequality"


def test_sunny_retraction_check():
    assert sunny_retraction_check(QUADRANT, vector([2, 1])).passed


@pytest.mark.parametrize(
    "s",
    [
        Halfspace(a=vector([1, 1]), b=1),
        Ball(center=vector([1, 0]), radius=2),
        Box(lo=vector([0, 0]), hi=vector([1, 3])),
        Affine(point=vector([0, 1]), normals=(vector([0, 1]),)),
        Intersection(sets=QUADRANT),
    ],
)
def test_sample_points_lie_in_set(s):
    points = sample_points(s, np.random.default_rng(1), 25)

    assert len(points) == 25
    assert all(s.contains(p, 1e-9) for p in points)
