import logging
import math

import pytest

from pyfixedpoint.models import AbsValue, Halfspace, Intersection
from pyfixedpoint.operators import identity, projector, rotation
from pyfixedpoint.sequences import (
    BetaTable,
    Constant,
    Custom,
    HarmonicShifted,
    HypothesisError,
    Power,
    ScheduleClass,
    ScheduleRole,
    cfp_sequence,
    constant_sequence,
    make_schedule,
    raw_sequence,
    relaxed_sequence,
    resolvent_sequence,
)
from pyfixedpoint.space import vector


@pytest.mark.parametrize(
    "schedule,values",
    [
        (Power(), [0.5, 1 / 3, 0.25]),
        (Power(c=2), [1.0, 2 / 3, 0.5]),
        (Power(p=2, offset=1), [1 / 9, 1 / 16, 1 / 25]),
        (Constant(v=0.5), [0.5, 0.5, 0.5]),
        (HarmonicShifted(c=2), [2 / 3, 0.5, 0.4]),
        (Custom(items=(0.5, 0.25)), [0.5, 0.25, 0.25]),
    ],
)
def test_schedule_values(schedule, values: list):
    assert schedule.values(3).tolist() == pytest.approx(values)


def test_schedule_index():
    with pytest.raises(IndexError):
        Power()(0)


@pytest.mark.parametrize(
    "schedule,role",
    [
        (Power(), ScheduleRole.ALPHA),
        (Power(p=0.5), ScheduleRole.ALPHA),
        (HarmonicShifted(), ScheduleRole.ALPHA),
        (Constant(v=0.5), ScheduleRole.GAMMA),
        (Constant(v=2), ScheduleRole.LAMBDA),
    ],
)
def test_require_accepts(schedule, role: ScheduleRole):
    assert schedule.require(role) is schedule


@pytest.mark.parametrize(
    "schedule,role,reason",
    [
        (Power(p=2), ScheduleRole.ALPHA, "the sum of the sequence must diverge"),
        (Constant(v=0.5), ScheduleRole.ALPHA, "the sequence must tend to zero"),
        (Constant(v=1.5), ScheduleRole.GAMMA, "the supremum must be below one"),
        (Power(), ScheduleRole.GAMMA, "the infimum must be positive"),
        (Power(), ScheduleRole.LAMBDA, "the infimum must be positive"),
        (
            Custom(items=(2.0,), asserted=("tends_to_zero", "sum_diverges")),
            ScheduleRole.ALPHA,
            "values must lie in (0, 1]",
        ),
    ],
)
def test_require_rejects(schedule, role: ScheduleRole, reason: str):
    with pytest.raises(HypothesisError) as e:
        schedule.require(role)

    assert e.value.reason == reason
    assert str(e.value).startswith(f"{role.value} schedule ")


def test_power_classes():
    assert ScheduleClass.SUM_DIVERGES in Power().asserted_class
    assert ScheduleClass.SUM_DIVERGES not in Power(p=1.5).asserted_class
    assert ScheduleClass.SUP_BELOW_ONE not in Power(c=2).asserted_class


@pytest.mark.parametrize("count", [1, 10, 1000, 10**6])
def test_power_partial_sums_diverge(count: int):
    # Σ_{n ≤ N} 1/(n + 1) ≥ ln((N + 2)/2)
    assert Power().partial_sum(count) >= math.log((count + 2) / 2)


def test_custom_schedule_is_unverified(caplog):
    s = Custom(items=(0.5, 0.25), asserted=("tends_to_zero", "sum_diverges"))

    with caplog.at_level(logging.WARNING):
        s.require(ScheduleRole.ALPHA)

    assert not s.verified
    assert "caller-asserted" in caplog.text
    assert s.describe() == "custom(2 values)"

    with pytest.raises(ValueError):
        Custom(items=(0.5,), asserted=("bounded",))


def test_make_schedule():
    assert make_schedule("custom", values=[0.5]).items == (0.5,)
    assert make_schedule("power", p=0.5).describe() == "power(c=1.0, p=0.5, offset=0.0)"

    with pytest.raises(HypothesisError):
        make_schedule("power", require=ScheduleRole.ALPHA, p=2)

    with pytest.raises(ValueError):
        make_schedule("fibonacci")


def test_beta_table():
    beta = BetaTable()

    assert beta.row(3) == (0.5, 0.25, 0.25)
    assert beta.folded_row(4, 2) == (0.5, 0.5)
    assert beta.folded_row(2, 4) == (0.5, 0.5)
    assert beta.inf_lower_bound(2, 10) == 0.25

    uniform = BetaTable(rule=lambda n: (1 / n,) * n, name="uniform")
    assert uniform.inf_lower_bound(1, 10) == pytest.approx(0.1)

    with pytest.raises(ValueError):
        BetaTable(rule=lambda n: (1.0,) * n).row(2)

    with pytest.raises(IndexError):
        beta.row(0)


@pytest.mark.parametrize(
    "n, m, row",
    [
        (1076, 2, (0.5, 0.5)),
        (5000, 3, (0.5, 0.25, 0.25)),
        (10**9, 1, (1.0,)),
        (3, 5, (0.5, 0.25, 0.25)),
    ],
)
def test_beta_folded_row_far_out(n: int, m: int, row: tuple):
    assert BetaTable().folded_row(n, m) == row


def test_beta_full_row_underflows():
    # 2^-1075 is zero in double precision
    with pytest.raises(ValueError):
        BetaTable().row(1076)

    assert BetaTable().inf_lower_bound(3, 5000) == 0.125


def test_beta_uniform():
    beta = BetaTable.uniform()

    assert beta.name == "uniform"
    assert beta.folded_row(10, 3) == pytest.approx((0.1, 0.1, 0.8))
    assert beta.folded_row(2, 3) == (0.5, 0.5)
    assert beta.entry(10, 3) == pytest.approx(0.1)
    assert beta.inf_lower_bound(1, 10_000) == pytest.approx(1e-4)


def _quadrant():
    return (
        projector(Halfspace(a=vector([1, 0]), b=0)),
        projector(Halfspace(a=vector([0, 1]), b=0)),
    )


def test_constant_sequence():
    p1, _ = _quadrant()
    seq = constant_sequence(p1)

    assert seq(7) is p1
    assert seq.nst_target is p1
    assert seq.sns_certified
    assert seq.dim == 2

    with pytest.raises(IndexError):
        seq(0)

    with pytest.raises(HypothesisError):
        constant_sequence(rotation(0.5))


def test_cfp_sequence():
    seq = cfp_sequence(_quadrant(), BetaTable(), Constant(v=0.5))
    x = vector([2, 2])

    assert seq(1)(x).tolist() == [1, 2]
    assert seq(2)(x).tolist() == [1.5, 1.5]
    assert seq(5000)(x).tolist() == [1.5, 1.5]
    assert isinstance(seq.common_fixed_set, Intersection)
    assert seq.sns_certified

    with pytest.raises(HypothesisError):
        cfp_sequence(_quadrant(), BetaTable(), Power())

    with pytest.raises(ValueError):
        cfp_sequence((), BetaTable(), Constant(v=0.5))


def test_relaxed_sequence():
    p1, p2 = _quadrant()
    seq = relaxed_sequence((p1,), Constant(v=0.5))

    assert seq.nst_target is p1
    assert seq(3)(vector([2, 0])).tolist() == [1, 0]

    with pytest.raises(ValueError):
        relaxed_sequence((p1, p2), Constant(v=0.5))


def test_resolvent_sequence():
    seq = resolvent_sequence(AbsValue(), Constant(v=2), 1)

    assert seq(1)(vector([5])).tolist() == [3]
    assert seq.nst_target(vector([5])).tolist() == [4]
    assert seq.common_fixed_set.contains(vector([0]))

    with pytest.raises(HypothesisError):
        resolvent_sequence(AbsValue(), Power(), 1)


def test_raw_sequence():
    seq = raw_sequence(lambda n: identity(2), identity(2))

    assert not seq.sns_certified
    assert seq.common_fixed_set is None
