# Copyright 2024, Sergey Dudanov
# SPDX-License-Identifier: Apache-2.0

from .anchor import anchor_limit, anchor_path, anchor_point
from .contraction import ContractionFamily, ContractionScope
from .drivers import cfp_halpern, halpern, proximal_halpern, viscosity
from .proof import halpern_xi_gamma
from .trace import IterationTrace, StopReason, StopRule, TraceSummary

__all__ = [
    "halpern",
    "viscosity",
    "proximal_halpern",
    "cfp_halpern",
    "anchor_point",
    "anchor_path",
    "anchor_limit",
    "ContractionFamily",
    "ContractionScope",
    "IterationTrace",
    "StopReason",
    "StopRule",
    "TraceSummary",
    "halpern_xi_gamma",
]
