# Copyright 2024, Sergey Dudanov
# SPDX-License-Identifier: Apache-2.0

import dataclasses as dc
from enum import StrEnum

from ..serializer import BaseModel, model_meta
from ..space import Vector


class OracleMethod(StrEnum):
    ACTIVE_SET_ENUMERATION = "active_set_enumeration"
    """Exhaustive active-set search, cross-checked by Dykstra."""
    DYKSTRA = "dykstra"
    """Dykstra alone: non-polyhedral input or enumeration caps exceeded."""
    SCALAR_MINIMIZATION = "scalar_minimization"
    CONTRACTION_ITERATION = "contraction_iteration"


class EmptyIntersectionError(RuntimeError):
    """Projection target has no points."""

    def __init__(self, residual: float) -> None:
        self.residual = residual
        super().__init__(
            f"Intersection appears empty: feasibility residual {residual:.3e} "
            "does not vanish."
        )


class OracleDisagreementError(RuntimeError):
    """Independent projection methods returned different points."""

    def __init__(self, gap: float, tol: float) -> None:
        self.gap = gap
        super().__init__(
            f"Enumeration and Dykstra disagree by {gap:.3e} (tolerance {tol:.1e})."
        )


@dc.dataclass(frozen=True, eq=False)
class OracleResult(BaseModel):
    """Ground-truth value with the method that produced it."""

    value: Vector = dc.field(metadata=model_meta(format="v"))
    method: OracleMethod = dc.field(metadata=model_meta())
    certified_tol: float = dc.field(metadata=model_meta(format="f+"))
    """Error bound on `value`."""
    certified: bool = dc.field(default=True, metadata=model_meta())
    """Two independent methods agreed. Uncertified values stay out of acceptance runs."""
    kkt_residual: float | None = dc.field(
        default=None, metadata=model_meta(format="f0+")
    )

    def __post_init__(self, *args, **kwargs):
        super().__post_init__()
        assert self.certified_tol > 0
