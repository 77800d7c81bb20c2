# Copyright 2024, Sergey Dudanov
# SPDX-License-Identifier: Apache-2.0

# SPACE

MAX_DIM = 64
"""Largest supported ambient dimension."""

# TOLERANCES

NONEXPANSIVE_SLACK = 1e-10
"""Slack for sampled Lipschitz and firm-nonexpansiveness inequalities."""

FIXED_POINT_TOL = 1e-12
"""Sampled fixed points must move by no more than this."""

WEIGHT_SUM_TOL = 1e-12
"""Convex weights must sum to one within this tolerance."""

VI_TOL = 1e-10
"""Variational inequality tolerance of the projection characterization."""

# ITERATION DEFAULTS

MAX_ITERS = 1_000_000
RESIDUAL_TOL = 1e-10
TRACE_STRIDE = 100
ANCHOR_EXTRA_ITERS = 64
"""Added to the contraction estimate of `anchor_point` inner loop."""

# ORACLE

ENUM_MAX_DIM = 8
ENUM_MAX_SETS = 6
ENUM_MAX_CONSTRAINTS = 16
DYKSTRA_TOL = 1e-12
DYKSTRA_MAX_ITERS = 200_000
ORACLE_AGREEMENT_TOL = 1e-8
KKT_TOL = 1e-10
DYKSTRA_ONLY_TOL = 1e-6
"""Certified tolerance reported for single-method (Dykstra) projections."""
PROX_GRID = 2001
"""Grid size of the scalar prox oracle before local refinement."""
PROX_TOL = 1e-10
CONTRACTION_TOL = 1e-12

# VERIFY

SNS_STEPS = 32
SNS_POOL = 64
SNS_TRIALS = 16
"""Base points of the strong nonexpansiveness probe."""
SNS_GAP_TOL = 1e-12
"""Relative norm gaps at or below this count as vanished."""
SNS_TOL = 1e-8
NST_TOL = 1e-3
"""Terminal residual bound of NST probes, for hypothesis and conclusion alike."""
LIMSUP_TOL = 1e-2
"""Finite-window surrogate of `limsup ≤ 0`: tail maximum bound."""
CAUCHY_TOL = 1e-3
RECURSION_SLACK = 1e-12
SAMPLE_SPREAD = 10.0
"""Radius of the ball random probe points are drawn from."""
DOMAIN_TRIALS = 200
"""Samples used to check that an operator maps its box domain into itself."""

# CLI

LOG_ENV = "FIXEDPOINT_LOG"
TRACE_CSV_HEADER = ("n", "residual_S", "residual_T", "dist_to_ref")
TRACE_CSV = "trace.csv"
SUMMARY_JSON = "summary.json"
COMPARE_LEVELS = (1e-1, 1e-2, 1e-3)
ORACLE_JSON = "oracle.json"
COMPARE_CSV = "compare.csv"

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_NOT_CONVERGED = 2
"""Run stopped on the iteration budget, or a sweep missed a level."""
