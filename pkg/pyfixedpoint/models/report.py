# Copyright 2024, Sergey Dudanov
# SPDX-License-Identifier: Apache-2.0

import dataclasses as dc
from typing import Sequence

from ..serializer import BaseModel, model_meta
from ..space import Vector


@dc.dataclass(frozen=True, eq=False)
class ProbeReport(BaseModel):
    """
    Outcome of an empirical property check.

    `passed` holds iff `worst_violation ≤ tolerance`. Negative controls set
    `expected_to_fail` and count as successful when they fail.
    """

    name: str = dc.field(metadata=model_meta(key="property"))
    trials: int = dc.field(metadata=model_meta(format="i0+"))
    worst_violation: float = dc.field(metadata=model_meta(format="f"))
    tolerance: float = dc.field(metadata=model_meta(format="f0+"))
    passed: bool = dc.field(metadata=model_meta())
    seed: int | None = dc.field(default=None, metadata=model_meta(format="i0+"))
    witness: tuple[Vector, ...] | None = dc.field(
        default=None, metadata=model_meta(format="v*")
    )
    """Input points realizing the worst violation."""
    expected_to_fail: bool = dc.field(default=False, metadata=model_meta())

    def __post_init__(self, *args, **kwargs):
        super().__post_init__()
        assert self.passed == (self.worst_violation <= self.tolerance)

    @classmethod
    def build(
        cls,
        prop: str,
        trials: int,
        worst_violation: float,
        tolerance: float,
        *,
        seed: int | None = None,
        witness: Sequence[Vector] | None = None,
        expected_to_fail: bool = False,
    ) -> "ProbeReport":
        return cls(
            name=prop,
            trials=trials,
            worst_violation=float(worst_violation),
            tolerance=tolerance,
            passed=bool(worst_violation <= tolerance),
            seed=seed,
            witness=None if witness is None else tuple(witness),
            expected_to_fail=expected_to_fail,
        )

    @property
    def ok(self) -> bool:
        """Passed, or failed as a negative control must."""
        return self.passed != self.expected_to_fail

    def __str__(self) -> str:
        verdict = "PASS" if self.passed else "FAIL"

        if self.expected_to_fail:
            verdict += " (expected FAIL)"

        return (
            f"{self.name}: {verdict}, worst {self.worst_violation:.3e} "
            f"/ tol {self.tolerance:.1e} over {self.trials} trials"
        )


def merge_reports(prop: str, reports: Sequence[ProbeReport]) -> ProbeReport:
    """Combined report: trials add up, the worst violation wins."""
    if not reports:
        raise ValueError("Nothing to merge.")

    worst = max(reports, key=lambda r: r.worst_violation - r.tolerance)

    return ProbeReport.build(
        prop,
        sum(r.trials for r in reports),
        worst.worst_violation,
        worst.tolerance,
        seed=worst.seed,
        witness=worst.witness,
        expected_to_fail=worst.expected_to_fail,
    )


class ProbeRejectedError(ValueError):
    """Probe input violates the hypothesis of the property it probes."""

    def __init__(self, prop: str, reason: str) -> None:
        self.prop = prop
        super().__init__(f"Probe of {prop} rejected: {reason}.")
