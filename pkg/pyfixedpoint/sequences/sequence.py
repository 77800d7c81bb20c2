# Copyright 2024, Sergey Dudanov
# SPDX-License-Identifier: Apache-2.0

import dataclasses as dc
import logging
from functools import lru_cache
from typing import Callable, Sequence

from ..models import ConvexSetDescriptor, ScalarFunctionDescriptor, intersect
from ..operators import (
    Operator,
    convex_combo,
    relax,
    resolvent,
    truncated_geometric_combo,
)
from ..space import DimensionMismatchError
from .beta import BetaTable
from .schedule import HypothesisError, Schedule, ScheduleRole

_LOGGER = logging.getLogger(__name__)


@dc.dataclass(frozen=True, eq=False)
class OperatorSequence:
    """
    Indexed family `n ↦ S_n` with its NST target `T`.

    The family satisfies the NST condition with `T`: bounded sequences with
    `x_n − S_n x_n → 0` also have `x_n − T x_n → 0`.
    """

    at: Callable[[int], Operator]
    """`n ↦ S_n`, `n ≥ 1`. Pure."""

    nst_target: Operator
    """Reference operator `T` of the NST condition."""

    common_fixed_set: ConvexSetDescriptor | None
    """`F({S_n})`, when known in closed form."""

    sns_certified: bool
    """Strong nonexpansiveness follows from construction."""

    name: str = "sequence"

    @property
    def dim(self) -> int:
        return self.nst_target.domain_dim

    def __call__(self, n: int) -> Operator:
        if n < 1:
            raise IndexError(f"Sequences are indexed from 1, got {n}.")

        return self.at(n)


def constant_sequence(t: Operator) -> OperatorSequence:
    """`S_n = T`. Strongly nonexpansive when `T` is averaged."""
    if t.fixed_set is None:
        raise HypothesisError(f"operator {t.name}", "fixed-point set is unknown")

    if not t.certificate.strongly_nonexpansive:
        raise HypothesisError(
            f"operator {t.name}",
            f"certificate {t.certificate} is not strongly nonexpansive",
        )

    return OperatorSequence(
        at=lambda n: t,
        nst_target=t,
        common_fixed_set=t.fixed_set,
        sns_certified=True,
        name=f"constant({t.name})",
    )


def resolvent_sequence(
    f: ScalarFunctionDescriptor, lambdas: Schedule, dim: int
) -> OperatorSequence:
    """
    `S_n = J_{λ_n}` of the subdifferential of the separable `f`.

    NST target is `J_1`; all resolvents share the fixed-point set `argmin f`.
    """
    lambdas.require(ScheduleRole.LAMBDA)

    return OperatorSequence(
        at=lambda n: resolvent(f, lambdas(n), dim),
        nst_target=resolvent(f, 1.0, dim),
        common_fixed_set=f.argmin_set(dim),
        sns_certified=True,
        name=f"resolvent({f._tag}, {lambdas.describe()})",
    )


def _common_fixed_set(ops: Sequence[Operator]) -> ConvexSetDescriptor:
    if missing := [op.name for op in ops if op.fixed_set is None]:
        raise HypothesisError(
            f"operators {', '.join(missing)}", "fixed-point set is unknown"
        )

    if len(dims := {op.domain_dim for op in ops}) != 1:
        raise DimensionMismatchError(*dims)

    return intersect(*(op.fixed_set for op in ops if op.fixed_set is not None))


def cfp_sequence(
    ops: Sequence[Operator], beta: BetaTable, gamma: Schedule
) -> OperatorSequence:
    """
    Common fixed points of `T_1, …, T_m`.

    `S_n = γ_n I + (1 − γ_n) Σ_{k ≤ min(n, m)} β_n^k T_k`, with the beta mass
    of indices above `m` folded onto `T_m`. NST target is the truncated
    geometric combination of the `T_k`.
    """
    ops = tuple(ops)

    if not ops:
        raise ValueError("Common fixed-point sequence needs at least one operator.")

    gamma.require(ScheduleRole.GAMMA)
    fixed = _common_fixed_set(ops)
    m = len(ops)

    @lru_cache(maxsize=64)
    def combo(weights: tuple[float, ...]) -> Operator:
        return convex_combo(weights, ops[: len(weights)])

    def at(n: int) -> Operator:
        return relax(gamma(n), combo(beta.folded_row(n, m)))

    _LOGGER.debug("CFP sequence over %d operators, beta rule %s.", m, beta.name)

    return OperatorSequence(
        at=at,
        nst_target=truncated_geometric_combo(ops),
        common_fixed_set=fixed,
        sns_certified=True,
        name="cfp(" + ", ".join(op.name for op in ops) + ")",
    )


def relaxed_sequence(
    vs: Sequence[Operator], gamma: Schedule, nst_target: Operator | None = None
) -> OperatorSequence:
    """
    `S_n = γ_n I + (1 − γ_n) V_n`; indices past the list repeat the last `V`.

    Strongly nonexpansive whenever `liminf γ_n > 0`. The NST target must be
    supplied unless all `V_n` coincide, in which case it is `V` itself.
    """
    vs = tuple(vs)

    if not vs:
        raise ValueError("Relaxed sequence needs at least one operator.")

    gamma.require(ScheduleRole.GAMMA)
    fixed = _common_fixed_set(vs)

    if nst_target is None:
        if any(v is not vs[0] for v in vs):
            raise ValueError("NST target is required for distinct operators.")

        nst_target = vs[0]

    return OperatorSequence(
        at=lambda n: relax(gamma(n), vs[min(n, len(vs)) - 1]),
        nst_target=nst_target,
        common_fixed_set=fixed,
        sns_certified=True,
        name=f"relaxed({', '.join(v.name for v in vs)})",
    )


def raw_sequence(
    at: Callable[[int], Operator],
    nst_target: Operator,
    common_fixed_set: ConvexSetDescriptor | None = None,
    name: str = "raw",
) -> OperatorSequence:
    """User-supplied family; strong nonexpansiveness is left to `verify`."""
    _LOGGER.warning("Sequence %s is not certified strongly nonexpansive.", name)

    return OperatorSequence(
        at=at,
        nst_target=nst_target,
        common_fixed_set=common_fixed_set,
        sns_certified=False,
        name=name,
    )
