# Copyright 2024, Sergey Dudanov
# SPDX-License-Identifier: Apache-2.0

from .beta import BetaTable
from .schedule import (
    Constant,
    Custom,
    HarmonicShifted,
    HypothesisError,
    Power,
    Schedule,
    ScheduleClass,
    ScheduleRole,
    make_schedule,
)
from .sequence import (
    OperatorSequence,
    cfp_sequence,
    constant_sequence,
    raw_sequence,
    relaxed_sequence,
    resolvent_sequence,
)

__all__ = [
    "Schedule",
    "ScheduleClass",
    "ScheduleRole",
    "Power",
    "Constant",
    "HarmonicShifted",
    "Custom",
    "HypothesisError",
    "make_schedule",
    "BetaTable",
    "OperatorSequence",
    "constant_sequence",
    "resolvent_sequence",
    "cfp_sequence",
    "relaxed_sequence",
    "raw_sequence",
]
