# Copyright 2024, Sergey Dudanov
# SPDX-License-Identifier: Apache-2.0

from .commands import (
    compare,
    levels_reached,
    load_problem,
    load_schedules,
    oracle,
    run,
    verify,
)
from .main import build_parser, main, setup_logging
from .problem import (
    CfpSequenceSpec,
    ComboSpec,
    ConstantContractionSpec,
    ConstantSequenceSpec,
    ConstantSpec,
    ContractionSpec,
    GeometricSpec,
    IdentitySpec,
    Method,
    OperatorSpec,
    PerturbedAnchorSpec,
    ProblemSpec,
    ProjectSpec,
    ProxSpec,
    RawSequenceSpec,
    RelaxedSequenceSpec,
    RelaxSpec,
    ResolventSequenceSpec,
    RotationSpec,
    ScaledSpec,
    SequenceSpec,
)

__all__ = [
    "main",
    "build_parser",
    "setup_logging",
    "run",
    "verify",
    "compare",
    "oracle",
    "load_problem",
    "load_schedules",
    "levels_reached",
    "ProblemSpec",
    "Method",
    "OperatorSpec",
    "IdentitySpec",
    "ConstantSpec",
    "ProjectSpec",
    "ProxSpec",
    "RelaxSpec",
    "ComboSpec",
    "GeometricSpec",
    "RotationSpec",
    "SequenceSpec",
    "ConstantSequenceSpec",
    "ResolventSequenceSpec",
    "CfpSequenceSpec",
    "RelaxedSequenceSpec",
    "RawSequenceSpec",
    "ContractionSpec",
    "ConstantContractionSpec",
    "PerturbedAnchorSpec",
    "ScaledSpec",
]
