import math

import numpy as np
import pytest

from pyfixedpoint.space import (
    DimensionMismatchError,
    VectorError,
    check_dims,
    convexity_gap,
    dist,
    inner,
    modulus_of_convexity,
    norm,
    norm_square_inequality_gap,
    vector,
    zeros,
)


def test_vector_is_read_only_float():
    x = vector([1, 2, 3])

    assert x.dtype == np.float64
    assert not x.flags.writeable

    with pytest.raises(ValueError):
        x[0] = 5


@pytest.mark.parametrize(
    "coords",
    [[], [[1.0, 2.0]], [1.0, math.nan], [math.inf], [0.0] * 65],
)
def test_vector_rejects(coords):
    with pytest.raises(VectorError):
        vector(coords)


def test_check_dims():
    assert check_dims(zeros(3), vector([1, 2, 3])) == 3

    with pytest.raises(DimensionMismatchError):
        check_dims(zeros(2), zeros(3))

    with pytest.raises(DimensionMismatchError):
        inner(zeros(2), zeros(3))


def test_metric():
    x, y = vector([3, 0]), vector([0, 4])

    assert inner(x, y) == 0
    assert norm(x) == 3
    assert dist(x, y) == 5


@pytest.mark.parametrize("seed", range(5))
def test_norm_square_inequality_gap(seed: int):
    rng = np.random.default_rng(seed)
    x, y = vector(rng.normal(size=4)), vector(rng.normal(size=4))

    assert norm_square_inequality_gap(x, y) == pytest.approx(inner(y, y))
    assert norm_square_inequality_gap(x, y) >= 0


@pytest.mark.parametrize("lam", [0.0, 0.25, 0.5, 1.0])
def test_convexity_gap(lam: float):
    x, y = vector([1, 2]), vector([-2, 0])

    assert convexity_gap(lam, x, y) == pytest.approx(lam * (1 - lam) * dist(x, y) ** 2)


def test_convexity_gap_range():
    with pytest.raises(ValueError):
        convexity_gap(1.5, zeros(1), zeros(1))


@pytest.mark.parametrize(
    "eps,value",
    [(0.0, 0.0), (2.0, 1.0), (1.0, 1 - math.sqrt(0.75))],
)
def test_modulus_of_convexity(eps: float, value: float):
    assert modulus_of_convexity(eps) == pytest.approx(value)


def test_modulus_range():
    with pytest.raises(ValueError):
        modulus_of_convexity(2.5)


@pytest.mark.parametrize("dim", [1, 3, 64])
def test_cauchy_schwarz(dim: int):
    rng = np.random.default_rng(dim)

    for x, y in rng.normal(size=(1000, 2, dim)):
        x, y = vector(x), vector(y)
        assert abs(inner(x, y)) <= norm(x) * norm(y) + 1e-12


@pytest.mark.parametrize("dim", [1, 3, 64])
def test_parallelogram_law(dim: int):
    rng = np.random.default_rng(dim)

    for x, y in rng.normal(size=(1000, 2, dim)):
        x, y = vector(x), vector(y)
        lhs = norm(x + y) ** 2 + norm(x - y) ** 2
        rhs = 2 * norm(x) ** 2 + 2 * norm(y) ** 2

        assert lhs == pytest.approx(rhs, rel=1e-10)
