# Copyright 2024, Sergey Dudanov
# SPDX-License-Identifier: Apache-2.0

import argparse
import logging
import os
from typing import Sequence

from ..const import EXIT_ERROR, LOG_ENV
from ..models import DescriptorError
from ..oracle import EmptyIntersectionError, OracleDisagreementError
from ..sequences import HypothesisError
from ..serializer import SchemaError
from ..space import DimensionMismatchError, VectorError
from . import commands

_LOGGER = logging.getLogger(__name__)

_USER_ERRORS = (
    SchemaError,
    HypothesisError,
    DescriptorError,
    DimensionMismatchError,
    VectorError,
    EmptyIntersectionError,
    OracleDisagreementError,
    OSError,
)
"""Failures reported as a message with `EXIT_ERROR`, without a traceback."""


def setup_logging() -> None:
    """Root logger level from `FIXEDPOINT_LOG`: a level name or number."""
    level = os.environ.get(LOG_ENV, "WARNING").strip().upper()
    logging.basicConfig(format="%(levelname)s: %(name)s: %(message)s")
    root = logging.getLogger()

    try:
        root.setLevel(int(level) if level.isdigit() else level)

    except ValueError:
        root.setLevel(logging.WARNING)
        _LOGGER.warning("Unknown log level '%s' in %s.", level, LOG_ENV)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pyfixedpoint",
        description="Halpern-type fixed-point iterations with verified oracles.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_run_options(p: argparse.ArgumentParser) -> None:
        p.add_argument("--spec", required=True, help="JSON problem file")
        p.add_argument("--out", help="output directory")
        p.add_argument("--seed", type=int, help="seed of sampled checks")
        p.add_argument("--max-iters", type=int, help="iteration budget")
        p.add_argument("--tol", type=float, help="residual tolerance")
        p.add_argument("--stride", type=int, help="keep every N-th iterate")

    add_run_options(sub.add_parser("run", help="run a problem, write its trace"))
    add_run_options(sub.add_parser("oracle", help="compute the limit of a problem"))

    compare = sub.add_parser("compare", help="sweep anchor schedules on a problem")
    add_run_options(compare)
    compare.add_argument(
        "--schedules", required=True, help="JSON array of alpha schedules"
    )

    verify = sub.add_parser("verify", help="run a named probe battery")
    verify.add_argument("suite", help="sns, nst, lemmas, oracle-crosscheck or all")
    verify.add_argument("--out", help="output directory")
    verify.add_argument("--seed", type=int, default=0, help="sampler seed")

    return parser


def _dispatch(args: argparse.Namespace) -> int:
    if args.command == "verify":
        return commands.verify(args.suite, args.seed, args.out)

    problem = commands.load_problem(args.spec)
    problem = problem.replace(
        stop=problem.stop.replace(
            max_iters=args.max_iters, residual_tol=args.tol, stride=args.stride
        ),
        seed=args.seed,
    )

    match args.command:
        case "run":
            return commands.run(problem, args.out)

        case "oracle":
            return commands.oracle(problem, args.out)

    return commands.compare(problem, commands.load_schedules(args.schedules), args.out)


def main(argv: Sequence[str] | None = None) -> int:
    setup_logging()
    args = build_parser().parse_args(argv)

    try:
        return _dispatch(args)

    except _USER_ERRORS as e:
        source = f"{args.spec}: " if isinstance(e, SchemaError) and "spec" in args else ""
        _LOGGER.error("%s%s", source, e)
        return EXIT_ERROR

    except Exception:
        _LOGGER.exception("Unexpected failure of '%s'.", args.command)
        raise
