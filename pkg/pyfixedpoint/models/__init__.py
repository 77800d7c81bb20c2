# Copyright 2024, Sergey Dudanov
# SPDX-License-Identifier: Apache-2.0

from .functions import AbsValue, Indicator, Quadratic, ScalarFunctionDescriptor
from .report import ProbeRejectedError, ProbeReport, merge_reports
from .sets import (
    Affine,
    Ball,
    Box,
    ConvexSetDescriptor,
    DescriptorError,
    Halfspace,
    Intersection,
    intersect,
    primitives,
)

__all__ = [
    "ConvexSetDescriptor",
    "Halfspace",
    "Ball",
    "Box",
    "Affine",
    "Intersection",
    "DescriptorError",
    "intersect",
    "primitives",
    "ScalarFunctionDescriptor",
    "AbsValue",
    "Quadratic",
    "Indicator",
    "ProbeReport",
    "ProbeRejectedError",
    "merge_reports",
]
