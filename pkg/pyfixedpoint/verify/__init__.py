# Copyright 2024, Sergey Dudanov
# SPDX-License-Identifier: Apache-2.0

from ..models import ProbeRejectedError, ProbeReport, merge_reports
from ..oracle import sample_points
from .certificates import (
    check_averaged,
    check_certificate,
    check_contraction,
    check_firmly_nonexpansive,
    check_fixed_set,
    check_nonexpansive,
    random_pairs,
)
from .lemmas import (
    mainge_tau,
    scalar_recursion_convergence_probe,
    weighted_tail_sum,
    xu_recursion,
)
from .sequences import check_fixed_set_inclusion, check_nst, check_sns
from .suites import SuiteName, quadrant_projections, run_suite

__all__ = [
    "ProbeReport",
    "ProbeRejectedError",
    "merge_reports",
    "sample_points",
    "random_pairs",
    "check_nonexpansive",
    "check_firmly_nonexpansive",
    "check_averaged",
    "check_fixed_set",
    "check_certificate",
    "check_contraction",
    "check_sns",
    "check_nst",
    "check_fixed_set_inclusion",
    "xu_recursion",
    "mainge_tau",
    "weighted_tail_sum",
    "scalar_recursion_convergence_probe",
    "SuiteName",
    "run_suite",
    "quadrant_projections",
]
