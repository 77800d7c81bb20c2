# Copyright 2024, Sergey Dudanov
# SPDX-License-Identifier: Apache-2.0

from .basic import constant_map, identity, rotation
from .combinators import (
    convex_combo,
    geometric_weights,
    relax,
    truncated_geometric_combo,
)
from .operator import Certificate, CertificateKind, Operator
from .projection import project, projector
from .prox import prox, resolvent

__all__ = [
    "Operator",
    "Certificate",
    "CertificateKind",
    "project",
    "projector",
    "prox",
    "resolvent",
    "relax",
    "convex_combo",
    "geometric_weights",
    "truncated_geometric_combo",
    "identity",
    "constant_map",
    "rotation",
]
