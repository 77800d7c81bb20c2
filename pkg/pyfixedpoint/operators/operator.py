# Copyright 2024, Sergey Dudanov
# SPDX-License-Identifier: Apache-2.0

import dataclasses as dc
from enum import StrEnum
from typing import Callable, NamedTuple

import numpy as np

from ..const import DOMAIN_TRIALS, NONEXPANSIVE_SLACK
from ..models import Box, ConvexSetDescriptor, DescriptorError
from ..space import DimensionMismatchError, Vector


class CertificateKind(StrEnum):
    """Nonexpansiveness class declared by an operator constructor."""

    FIRMLY_NONEXPANSIVE = "firmly_nonexpansive"
    """`‖Tx − Ty‖² ≤ <Tx − Ty, x − y>`. Projections and resolvents."""
    AVERAGED = "averaged"
    """`T = (1 − a)I + aN` with `N` nonexpansive and `a ∈ (0, 1)`."""
    NONEXPANSIVE_ONLY = "nonexpansive_only"
    """Lipschitz constant one, nothing more is known."""


class Certificate(NamedTuple):
    """Declared certificate. Constructors tag it, `verify` tests it."""

    kind: CertificateKind
    alpha: float | None = None
    """Averagedness constant of `AVERAGED` certificates."""

    @classmethod
    def firmly(cls) -> "Certificate":
        return cls(CertificateKind.FIRMLY_NONEXPANSIVE)

    @classmethod
    def averaged(cls, alpha: float) -> "Certificate":
        if not 0 < alpha < 1:
            raise ValueError(f"Averagedness constant {alpha} outside (0, 1).")

        return cls(CertificateKind.AVERAGED, alpha)

    @classmethod
    def nonexpansive(cls) -> "Certificate":
        return cls(CertificateKind.NONEXPANSIVE_ONLY)

    @property
    def averaged_alpha(self) -> float | None:
        """Averagedness constant; firmly nonexpansive maps are 1/2-averaged."""
        match self.kind:
            case CertificateKind.FIRMLY_NONEXPANSIVE:
                return 0.5

            case CertificateKind.AVERAGED:
                return self.alpha

        return None

    @property
    def strongly_nonexpansive(self) -> bool:
        """Averaged maps are strongly nonexpansive."""
        return self.averaged_alpha is not None

    def __str__(self) -> str:
        if self.kind == CertificateKind.AVERAGED:
            return f"averaged({self.alpha:g})"

        return self.kind.value


@dc.dataclass(frozen=True, eq=False)
class Operator:
    """
    Nonexpansive self-map of the iteration domain.

    Immutable; `apply` is pure.
    """

    apply: Callable[[Vector], Vector]
    """The map itself."""

    domain_dim: int
    """Dimension of the ambient space."""

    fixed_set: ConvexSetDescriptor | None = None
    """Closed-form fixed-point set, when known."""

    certificate: Certificate = Certificate.nonexpansive()
    """Declared nonexpansiveness class."""

    name: str = "operator"

    domain: Box | None = None
    """Iteration domain `C`; the whole space when `None`."""

    def __post_init__(self):
        if self.fixed_set is not None and self.fixed_set.dim != self.domain_dim:
            raise DimensionMismatchError(self.domain_dim, self.fixed_set.dim)

    def __call__(self, x: Vector) -> Vector:
        if x.shape != (self.domain_dim,):
            raise DimensionMismatchError(self.domain_dim, x.shape[0])

        return self.apply(x)

    def restrict(
        self,
        domain: Box,
        rng: np.random.Generator | None = None,
        trials: int = DOMAIN_TRIALS,
    ) -> "Operator":
        """
        Same operator declared on the box `domain`.

        Checks on `trials` uniform samples that the box is mapped into itself.
        """
        if domain.dim != self.domain_dim:
            raise DimensionMismatchError(self.domain_dim, domain.dim)

        rng = rng or np.random.default_rng(0)

        for x in rng.uniform(domain.lo, domain.hi, size=(trials, self.domain_dim)):
            if not domain.contains(self.apply(x), NONEXPANSIVE_SLACK):
                raise DescriptorError(
                    "domain", f"{self.name} maps {x.tolist()} outside the box"
                )

        return dc.replace(self, domain=domain)

    def __repr__(self) -> str:
        return f"Operator({self.name}, dim={self.domain_dim}, {self.certificate})"
