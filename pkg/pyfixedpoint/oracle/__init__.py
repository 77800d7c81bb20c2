# Copyright 2024, Sergey Dudanov
# SPDX-License-Identifier: Apache-2.0

from .dykstra import DykstraResult, dykstra, feasibility
from .enumeration import (
    Constraints,
    enumerate_projection,
    kkt_residual,
    polyhedral_constraints,
)
from .projection import (
    composed_fixed_point_oracle,
    project_intersection_oracle,
    projection_oracle_for,
    sunny_retraction_check,
    variational_inequality_check,
)
from .result import (
    EmptyIntersectionError,
    OracleDisagreementError,
    OracleMethod,
    OracleResult,
)
from .sampling import sample_points
from .scalar import prox_scalar_oracle

__all__ = [
    "OracleResult",
    "OracleMethod",
    "EmptyIntersectionError",
    "OracleDisagreementError",
    "project_intersection_oracle",
    "projection_oracle_for",
    "prox_scalar_oracle",
    "variational_inequality_check",
    "composed_fixed_point_oracle",
    "sunny_retraction_check",
    "dykstra",
    "DykstraResult",
    "feasibility",
    "Constraints",
    "polyhedral_constraints",
    "enumerate_projection",
    "kkt_residual",
    "sample_points",
]
