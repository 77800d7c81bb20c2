# Copyright 2024, Sergey Dudanov
# SPDX-License-Identifier: Apache-2.0

import csv
import dataclasses as dc
from enum import StrEnum
from pathlib import Path
from typing import TextIO

import numpy as np

from ..const import (
    MAX_ITERS,
    NONEXPANSIVE_SLACK,
    RESIDUAL_TOL,
    TRACE_CSV_HEADER,
    TRACE_STRIDE,
)
from ..serializer import BaseModel, model_meta
from ..space import Vector


class StopReason(StrEnum):
    RESIDUAL_MET = "residual_met"
    """`‖x_n − T x_n‖` fell to the residual tolerance."""
    TARGET_MET = "target_met"
    """Distance to the reference limit fell to the target tolerance."""
    MAX_ITERS = "max_iters"
    """Iteration budget exhausted."""

    @property
    def converged(self) -> bool:
        return self != StopReason.MAX_ITERS


@dc.dataclass(frozen=True, eq=False)
class StopRule(BaseModel):
    """Termination and recording parameters of a driver run."""

    max_iters: int = dc.field(default=MAX_ITERS, metadata=model_meta(format="i+"))
    residual_tol: float = dc.field(
        default=RESIDUAL_TOL, metadata=model_meta(format="f+")
    )
    target_tol: float | None = dc.field(default=None, metadata=model_meta(format="f+"))
    """Applied to `‖x_n − ref‖` when a reference limit is supplied."""
    stride: int = dc.field(default=TRACE_STRIDE, metadata=model_meta(format="i+"))
    """Every `stride`-th iterate is kept; residuals are kept at every step."""

    def __post_init__(self, *args, **kwargs):
        super().__post_init__()

        if self.max_iters < 1 or self.stride < 1:
            raise ValueError("Iteration budget and stride must be positive.")

        if not self.residual_tol > 0:
            raise ValueError("Residual tolerance must be positive.")

        if self.target_tol is not None and not self.target_tol > 0:
            raise ValueError("Target tolerance must be positive.")

    def replace(self, **changes) -> "StopRule":
        """Copy with the non-`None` `changes` applied."""
        return dc.replace(self, **{k: v for k, v in changes.items() if v is not None})


@dc.dataclass(frozen=True, eq=False)
class TraceSummary(BaseModel):
    stop_reason: StopReason = dc.field(metadata=model_meta())
    iters: int = dc.field(metadata=model_meta(format="i+"))
    final_residual: float = dc.field(metadata=model_meta(format="f0+"))
    """`‖x_N − T x_N‖` at the last recorded step."""
    final_iterate: Vector = dc.field(metadata=model_meta(format="v"))
    final_dist: float | None = dc.field(default=None, metadata=model_meta(format="f0+"))


@dc.dataclass(frozen=True, eq=False)
class IterationTrace:
    """
    Record of a driver run.

    Step `n` (from 1) holds the residuals of `x_n`. Scalar columns have one
    entry per step; `iterates` holds the strided iterates, always including
    the first and the last.
    """

    iterates: tuple[Vector, ...]
    iterate_steps: tuple[int, ...]
    """Step index of every recorded iterate."""
    residual_S: np.ndarray
    """`‖x_n − S_n x_n‖`."""
    residual_T: np.ndarray
    """`‖x_n − T x_n‖`."""
    dist_to_ref: np.ndarray | None
    """`‖x_n − ref‖`, when a reference limit was supplied."""
    stop_reason: StopReason

    def __post_init__(self):
        assert len(self.residual_S) == len(self.residual_T)
        assert self.dist_to_ref is None or len(self.dist_to_ref) == len(self.residual_S)
        assert len(self.iterates) == len(self.iterate_steps)

    @property
    def iters(self) -> int:
        return len(self.residual_S)

    @property
    def final(self) -> Vector:
        return self.iterates[-1]

    @property
    def final_dist(self) -> float | None:
        return None if self.dist_to_ref is None else float(self.dist_to_ref[-1])

    def check_bounded(
        self, w: Vector, radius: float, slack: float = NONEXPANSIVE_SLACK
    ) -> bool:
        """
        `‖x_n − w‖ ≤ radius + slack` for every recorded iterate.

        Record with `stride=1` to cover every step.
        """
        dists = np.linalg.norm(np.asarray(self.iterates) - w, axis=1)
        return bool(np.all(dists <= radius + slack))

    def summary(self) -> TraceSummary:
        return TraceSummary(
            stop_reason=self.stop_reason,
            iters=self.iters,
            final_residual=float(self.residual_T[-1]),
            final_dist=self.final_dist,
            final_iterate=self.final,
        )

    def write_csv(self, file: TextIO) -> None:
        """Columns `n, residual_S, residual_T, dist_to_ref`; floats as `repr`."""
        writer = csv.writer(file, lineterminator="\n")
        writer.writerow(TRACE_CSV_HEADER)
        dist = self.dist_to_ref

        for i in range(self.iters):
            writer.writerow(
                (
                    i + 1,
                    repr(float(self.residual_S[i])),
                    repr(float(self.residual_T[i])),
                    "" if dist is None else repr(float(dist[i])),
                )
            )

    def to_csv(self, path: str | Path) -> None:
        with open(path, "w", encoding="utf-8", newline="") as file:
            self.write_csv(file)
