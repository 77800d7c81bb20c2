# Copyright 2024, Sergey Dudanov
# SPDX-License-Identifier: Apache-2.0

"""Subcommands. Each returns a process exit code."""

import csv
import logging
from pathlib import Path
from typing import Sequence

import numpy as np

from ..const import (
    COMPARE_CSV,
    COMPARE_LEVELS,
    EXIT_ERROR,
    EXIT_NOT_CONVERGED,
    EXIT_OK,
    ORACLE_JSON,
    SUMMARY_JSON,
    TRACE_CSV,
)
from ..iterate import IterationTrace, TraceSummary
from ..models import ProbeReport
from ..oracle import OracleResult
from ..sequences import Schedule
from ..serializer import ListSerializer, get_serializer
from ..space import Vector
from ..verify import SuiteName, run_suite
from .problem import ProblemSpec

_LOGGER = logging.getLogger(__name__)


def load_problem(path: str | Path) -> ProblemSpec:
    """Parses a problem file; schema errors carry the offending line."""
    return get_serializer(ProblemSpec).deserialize(Path(path).read_text("utf-8"))


def load_schedules(path: str | Path) -> tuple[Schedule, ...]:
    serializer = ListSerializer(get_serializer(Schedule))
    return serializer.deserialize(Path(path).read_text("utf-8"))


def _out_dir(problem: ProblemSpec | None, out: str | None) -> Path:
    path = Path(out or (problem and problem.output) or ".")
    path.mkdir(parents=True, exist_ok=True)
    return path


def _reference(problem: ProblemSpec, oracle: OracleResult | None) -> Vector | None:
    if problem.reference is not None:
        return problem.reference

    return None if oracle is None else oracle.value


def run(problem: ProblemSpec, out: str | None = None) -> int:
    """
    Runs the problem, writes the trace CSV, the summary and the oracle value.

    Exit code is `EXIT_OK` on a converged stop and `EXIT_NOT_CONVERGED` when
    the iteration budget runs out.
    """
    path = _out_dir(problem, out)
    seq = problem.build_sequence()
    oracle = problem.oracle(seq)
    trace = problem.solve(seq, _reference(problem, oracle))

    trace.to_csv(path / TRACE_CSV)
    summary = trace.summary()
    (path / SUMMARY_JSON).write_text(get_serializer(TraceSummary).dumps(summary))

    if oracle is not None:
        (path / ORACLE_JSON).write_text(get_serializer(OracleResult).dumps(oracle))

    _LOGGER.info(
        "Run stopped after %d iterations (%s), final distance %s.",
        summary.iters,
        summary.stop_reason,
        summary.final_dist,
    )

    return EXIT_OK if summary.stop_reason.converged else EXIT_NOT_CONVERGED


def oracle(problem: ProblemSpec, out: str | None = None) -> int:
    """Writes the ground-truth limit of the problem."""
    result = problem.oracle(problem.build_sequence())

    if result is None:
        _LOGGER.error("Sequence declares no closed-form common fixed set.")
        return EXIT_ERROR

    text = get_serializer(OracleResult).dumps(result)
    (_out_dir(problem, out) / ORACLE_JSON).write_text(text)
    print(text)

    return EXIT_OK


def verify(suite: str, seed: int = 0, out: str | None = None) -> int:
    """Runs a probe battery; negative controls count when they fail."""
    try:
        name = SuiteName(suite)

    except ValueError:
        allowed = ", ".join(s.value for s in SuiteName)
        _LOGGER.error("Unknown suite '%s', expected one of %s.", suite, allowed)
        return EXIT_ERROR

    path = _out_dir(None, out)
    serializer = ListSerializer(get_serializer(ProbeReport))
    all_ok = True

    for n, reports in run_suite(name, seed).items():
        (path / f"verify-{n}.json").write_text(serializer.dumps(reports))
        passed = sum(r.ok for r in reports)

        for r in reports:
            print(f"  {r}")

        print(f"{n}: {passed}/{len(reports)} ok")
        all_ok &= passed == len(reports)

    return EXIT_OK if all_ok else EXIT_ERROR


def levels_reached(
    trace: IterationTrace, thresholds: Sequence[float]
) -> list[int | None]:
    """First step `n` with `‖x_n − ref‖ ≤ threshold`, per threshold."""
    assert trace.dist_to_ref is not None
    result = []

    for t in thresholds:
        hits = np.flatnonzero(trace.dist_to_ref <= t)
        result.append(int(hits[0]) + 1 if len(hits) else None)

    return result


def compare(
    problem: ProblemSpec, schedules: Sequence[Schedule], out: str | None = None
) -> int:
    """
    Sweeps anchor schedules over one problem.

    Writes one CSV row per schedule with the iterations needed to reach
    every level of `COMPARE_LEVELS` times `‖u − Qu‖`.
    """
    if not schedules:
        _LOGGER.error("Schedule list is empty.")
        return EXIT_ERROR

    # parse-time gate of every schedule
    runs = [problem.replace(alpha=s) for s in schedules]
    seq = problem.build_sequence()

    if (ref := _reference(problem, problem.oracle(seq))) is None:
        _LOGGER.error("Comparison needs a reference limit.")
        return EXIT_ERROR

    anchor = problem.u if problem.u is not None else problem.x1
    scale = float(np.linalg.norm(anchor - ref)) or 1.0
    thresholds = [level * scale for level in COMPARE_LEVELS]
    stop = problem.stop.replace(target_tol=min(thresholds))
    rows, complete = [], True

    for p in runs:
        reached = levels_reached(p.solve(seq, ref, stop), thresholds)
        complete &= all(n is not None for n in reached)
        rows.append((p.alpha.describe(), *("" if n is None else n for n in reached)))

    with open(_out_dir(problem, out) / COMPARE_CSV, "w", newline="") as file:
        writer = csv.writer(file, lineterminator="\n")
        writer.writerow(("schedule", *(f"n_at_{level:g}" for level in COMPARE_LEVELS)))
        writer.writerows(rows)

    return EXIT_OK if complete else EXIT_NOT_CONVERGED
