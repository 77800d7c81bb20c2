# Copyright 2024, Sergey Dudanov
# SPDX-License-Identifier: Apache-2.0

"""
.. include:: ../README.md
"""

from .iterate import (
    ContractionFamily,
    IterationTrace,
    StopReason,
    StopRule,
    anchor_path,
    anchor_point,
    cfp_halpern,
    halpern,
    proximal_halpern,
    viscosity,
)
from .models import (
    AbsValue,
    Affine,
    Ball,
    Box,
    ConvexSetDescriptor,
    DescriptorError,
    Halfspace,
    Indicator,
    Intersection,
    ProbeReport,
    Quadratic,
    ScalarFunctionDescriptor,
)
from .operators import Certificate, CertificateKind, Operator, projector, resolvent
from .oracle import OracleResult, project_intersection_oracle, prox_scalar_oracle
from .sequences import (
    BetaTable,
    Constant,
    HypothesisError,
    OperatorSequence,
    Power,
    Schedule,
    ScheduleRole,
    cfp_sequence,
    constant_sequence,
    make_schedule,
    resolvent_sequence,
)
from .space import DimensionMismatchError, Vector, VectorError, vector

__all__ = [
    "Vector",
    "vector",
    "VectorError",
    "DimensionMismatchError",
    # Descriptors
    "ConvexSetDescriptor",
    "Halfspace",
    "Ball",
    "Box",
    "Affine",
    "Intersection",
    "ScalarFunctionDescriptor",
    "AbsValue",
    "Quadratic",
    "Indicator",
    "DescriptorError",
    # Operators and sequences
    "Operator",
    "Certificate",
    "CertificateKind",
    "projector",
    "resolvent",
    "Schedule",
    "Power",
    "Constant",
    "ScheduleRole",
    "HypothesisError",
    "make_schedule",
    "BetaTable",
    "OperatorSequence",
    "constant_sequence",
    "resolvent_sequence",
    "cfp_sequence",
    # Drivers
    "halpern",
    "viscosity",
    "proximal_halpern",
    "cfp_halpern",
    "anchor_point",
    "anchor_path",
    "ContractionFamily",
    "StopRule",
    "StopReason",
    "IterationTrace",
    # Oracles and probes
    "OracleResult",
    "project_intersection_oracle",
    "prox_scalar_oracle",
    "ProbeReport",
]
