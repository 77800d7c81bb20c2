# Copyright 2024, Sergey Dudanov
# SPDX-License-Identifier: Apache-2.0

import dataclasses as dc
import logging
import math
from enum import IntFlag, StrEnum, auto
from typing import Any, override

import numpy as np

from ..serializer import TaggedModel, model_meta

_LOGGER = logging.getLogger(__name__)


class ScheduleClass(IntFlag):
    """Asymptotic class of a real sequence."""

    TENDS_TO_ZERO = auto()
    """`a_n → 0`."""
    SUM_DIVERGES = auto()
    """`Σ a_n = ∞`."""
    INF_POSITIVE = auto()
    """`inf_n a_n > 0`."""
    SUP_BELOW_ONE = auto()
    """`sup_n a_n < 1`."""


class ScheduleRole(StrEnum):
    """Role a schedule plays in an iteration, with the hypotheses it must meet."""

    ALPHA = "alpha"
    """Anchor weights: values in (0, 1], vanishing, not summable."""
    GAMMA = "gamma"
    """Relaxation weights: values in (0, 1), bounded away from 0 and 1."""
    LAMBDA = "lambda"
    """Resolvent parameters: positive, bounded away from 0."""

    @property
    def required(self) -> ScheduleClass:
        match self:
            case ScheduleRole.ALPHA:
                return ScheduleClass.TENDS_TO_ZERO | ScheduleClass.SUM_DIVERGES

            case ScheduleRole.GAMMA:
                return ScheduleClass.INF_POSITIVE | ScheduleClass.SUP_BELOW_ONE

            case ScheduleRole.LAMBDA:
                return ScheduleClass.INF_POSITIVE

    def admits(self, value: float) -> bool:
        match self:
            case ScheduleRole.ALPHA:
                return 0 < value <= 1

            case ScheduleRole.GAMMA:
                return 0 < value < 1

            case ScheduleRole.LAMBDA:
                return value > 0

    @property
    def range_text(self) -> str:
        return {"alpha": "(0, 1]", "gamma": "(0, 1)", "lambda": "(0, ∞)"}[self.value]


_HYPOTHESIS_TEXT = {
    ScheduleClass.TENDS_TO_ZERO: "the sequence must tend to zero",
    ScheduleClass.SUM_DIVERGES: "the sum of the sequence must diverge",
    ScheduleClass.INF_POSITIVE: "the infimum must be positive",
    ScheduleClass.SUP_BELOW_ONE: "the supremum must be below one",
}


class HypothesisError(ValueError):
    """Input violates a hypothesis of the convergence theorem it is used with."""

    def __init__(self, subject: str, reason: str) -> None:
        self.subject = subject
        self.reason = reason
        super().__init__(f"{subject} violates hypothesis: {reason}.")


@dc.dataclass(frozen=True, eq=False)
class Schedule(TaggedModel, tag_key="family"):
    """
    Validated real sequence `n ↦ a_n`, `n ≥ 1`, with a declared asymptotic class.

    Built-in families derive their class analytically; `custom` schedules
    carry caller-asserted flags and are marked unverified.
    """

    def value(self, n: int) -> float:
        raise NotImplementedError

    @property
    def asserted_class(self) -> ScheduleClass:
        raise NotImplementedError

    @property
    def verified(self) -> bool:
        return True

    def __call__(self, n: int) -> float:
        if n < 1:
            raise IndexError(f"Schedules are indexed from 1, got {n}.")

        return self.value(n)

    def values(self, count: int) -> np.ndarray:
        """`a_1, …, a_count`."""
        return np.array([self.value(n) for n in range(1, count + 1)])

    def partial_sum(self, count: int) -> float:
        return math.fsum(self.values(count))

    def admits(self, role: ScheduleRole) -> bool:
        """Whether every value lies in the range required by `role`."""
        raise NotImplementedError

    def describe(self) -> str:
        items = self._asdict().items()
        params = ", ".join(f"{k}={v}" for k, v in items if k != self._tag_key)
        return f"{self._tag}({params})"

    def require(self, role: ScheduleRole) -> "Schedule":
        """
        Gate against the hypotheses of `role`.

        Return:
        - `self` when all flags are present and values are in range.
        """
        subject = f"{role.value} schedule {self.describe()}"

        if missing := role.required & ~self.asserted_class:
            reasons = (_HYPOTHESIS_TEXT[f] for f in ScheduleClass if f in missing)
            raise HypothesisError(subject, "; ".join(reasons))

        if not self.admits(role):
            raise HypothesisError(subject, f"values must lie in {role.range_text}")

        if not self.verified:
            _LOGGER.warning("%s: flags are caller-asserted, not verified.", subject)

        return self


@dc.dataclass(frozen=True, eq=False)
class Power(Schedule, tag="power"):
    """`a_n = min(1, c / (n + 1 + offset)^p)`."""

    c: float = dc.field(default=1.0, metadata=model_meta(format="f+"))
    p: float = dc.field(default=1.0, metadata=model_meta(format="f+"))
    offset: float = dc.field(default=0.0, metadata=model_meta(format="f0+"))

    def __post_init__(self, *args, **kwargs):
        super().__post_init__()

        if not (self.c > 0 and self.p > 0 and self.offset >= 0):
            raise ValueError("Power schedule needs c > 0, p > 0 and offset ≥ 0.")

    @override
    def value(self, n: int) -> float:
        return min(1.0, self.c / (n + 1 + self.offset) ** self.p)

    @property
    @override
    def asserted_class(self) -> ScheduleClass:
        result = ScheduleClass.TENDS_TO_ZERO

        if self.p <= 1:
            result |= ScheduleClass.SUM_DIVERGES

        # nonincreasing, so the supremum is the first value
        if self.value(1) < 1:
            result |= ScheduleClass.SUP_BELOW_ONE

        return result

    @override
    def admits(self, role: ScheduleRole) -> bool:
        return True


@dc.dataclass(frozen=True, eq=False)
class Constant(Schedule, tag="constant"):
    """`a_n = v`."""

    v: float = dc.field(metadata=model_meta(format="f+"))

    def __post_init__(self, *args, **kwargs):
        super().__post_init__()

        if not self.v > 0:
            raise ValueError("Constant schedule needs a positive value.")

    @override
    def value(self, n: int) -> float:
        return self.v

    @property
    @override
    def asserted_class(self) -> ScheduleClass:
        result = ScheduleClass.SUM_DIVERGES | ScheduleClass.INF_POSITIVE

        if self.v < 1:
            result |= ScheduleClass.SUP_BELOW_ONE

        return result

    @override
    def admits(self, role: ScheduleRole) -> bool:
        return role.admits(self.v)


@dc.dataclass(frozen=True, eq=False)
class HarmonicShifted(Schedule, tag="harmonic_shifted"):
    """`a_n = c / (n + c)`."""

    c: float = dc.field(default=1.0, metadata=model_meta(format="f+"))

    def __post_init__(self, *args, **kwargs):
        super().__post_init__()

        if not self.c > 0:
            raise ValueError("Harmonic schedule needs c > 0.")

    @override
    def value(self, n: int) -> float:
        return self.c / (n + self.c)

    @property
    @override
    def asserted_class(self) -> ScheduleClass:
        return (
            ScheduleClass.TENDS_TO_ZERO
            | ScheduleClass.SUM_DIVERGES
            | ScheduleClass.SUP_BELOW_ONE
        )

    @override
    def admits(self, role: ScheduleRole) -> bool:
        return True


@dc.dataclass(frozen=True, eq=False)
class Custom(Schedule, tag="custom"):
    """Explicit finite list; the last value repeats past the end."""

    items: tuple[float, ...] = dc.field(metadata=model_meta(format="f", key="values"))
    asserted: tuple[str, ...] = dc.field(default=(), metadata=model_meta())
    """Names of the caller-asserted `ScheduleClass` flags."""

    def __post_init__(self, *args, **kwargs):
        super().__post_init__()

        if not self.items:
            raise ValueError("Custom schedule needs at least one value.")

        for name in self.asserted:
            if name.upper() not in ScheduleClass.__members__:
                raise ValueError(f"Unknown schedule flag '{name}'.")

    @override
    def value(self, n: int) -> float:
        return self.items[min(n, len(self.items)) - 1]

    @property
    @override
    def asserted_class(self) -> ScheduleClass:
        result = ScheduleClass(0)

        for name in self.asserted:
            result |= ScheduleClass[name.upper()]

        return result

    @property
    @override
    def verified(self) -> bool:
        return False

    @override
    def admits(self, role: ScheduleRole) -> bool:
        return all(role.admits(v) for v in self.items)

    @override
    def describe(self) -> str:
        return f"custom({len(self.items)} values)"


def make_schedule(
    family: str, *, require: ScheduleRole | None = None, **params: Any
) -> Schedule:
    """
    Builds a schedule of a named family.

    Parameters:
    - `family` - `power`, `constant`, `harmonic_shifted` or `custom`.
    - `require` - role to gate against, see `Schedule.require`.
    - `params` - family parameters.
    """
    if (cls := Schedule._variants.get(family)) is None:
        raise ValueError(f"Unknown schedule family '{family}'.")

    if family == "custom" and "values" in params:
        params["items"] = tuple(params.pop("values"))

    schedule = cls(**params)

    return schedule if require is None else schedule.require(require)
