# Copyright 2024, Sergey Dudanov
# SPDX-License-Identifier: Apache-2.0

import itertools
import math
from typing import NamedTuple, Sequence

import numpy as np
from scipy.optimize import nnls

from ..const import KKT_TOL
from ..models import Affine, Ball, Box, ConvexSetDescriptor, Halfspace
from ..space import Vector
from .result import EmptyIntersectionError


class Constraints(NamedTuple):
    """Polyhedron `{x : E x = e, A x ≤ b}`."""

    eq_a: np.ndarray
    eq_b: np.ndarray
    ineq_a: np.ndarray
    ineq_b: np.ndarray


def polyhedral_constraints(
    sets: Sequence[ConvexSetDescriptor], dim: int
) -> Constraints | None:
    """Linear description of primitive `sets`, or `None` if one is curved."""
    eq_a, eq_b, ineq_a, ineq_b = [], [], [], []

    for s in sets:
        match s:
            case Halfspace(a=a, b=b):
                ineq_a.append(a)
                ineq_b.append(b)

            case Box(lo=lo, hi=hi):
                for i, e in enumerate(np.eye(dim)):
                    if lo[i] == hi[i]:
                        eq_a.append(e)
                        eq_b.append(lo[i])

                    else:
                        ineq_a.extend((-e, e))
                        ineq_b.extend((-lo[i], hi[i]))

            case Affine(point=p):
                for n in s.normals:
                    eq_a.append(n)
                    eq_b.append(float(np.dot(n, p)))

            case Ball(center=c, radius=0):
                eq_a.extend(np.eye(dim))
                eq_b.extend(c)

            case _:
                return None

    def matrix(rows: list) -> np.ndarray:
        return np.array(rows, dtype=np.float64).reshape(len(rows), dim)

    return Constraints(
        matrix(eq_a),
        np.array(eq_b, dtype=np.float64),
        matrix(ineq_a),
        np.array(ineq_b, dtype=np.float64),
    )


def _equality_projection(g: np.ndarray, h: np.ndarray, u: Vector) -> Vector:
    """Least-squares solution of `min ‖x − u‖` subject to `G x = h`."""
    if not len(g):
        return u

    mu = np.linalg.lstsq(g @ g.T, g @ u - h, rcond=None)[0]
    return u - g.T @ mu


def kkt_residual(c: Constraints, u: Vector, x: Vector, tol: float) -> float:
    """
    Distance of `u − x` from the cone generated by the active normals.

    Zero exactly when `x` is the projection of `u` (given feasibility).
    Multipliers of active inequalities are kept nonnegative by `nnls`.
    """
    active = np.abs(c.ineq_a @ x - c.ineq_b) <= tol
    m = np.hstack((c.eq_a.T, -c.eq_a.T, c.ineq_a[active].T))

    if not m.shape[1]:
        return float(np.linalg.norm(u - x))

    return float(nnls(m, u - x)[1])


def enumerate_projection(c: Constraints, u: Vector) -> tuple[Vector, float]:
    """
    Projection onto a polyhedron by exhaustive active-set search.

    Every subset of at most `dim` inequalities is tried as the active set;
    the equality-constrained minimizers that are feasible compete and the
    nearest one wins.

    Return:
    - Projection and its KKT residual.
    """
    dim = u.shape[0]
    scale = max(1.0, float(np.max(np.abs(u))), *np.abs(c.eq_b), *np.abs(c.ineq_b))
    tol = KKT_TOL * scale
    best, best_dist = None, math.inf

    for size in range(min(len(c.ineq_b), dim) + 1):
        for active in itertools.combinations(range(len(c.ineq_b)), size):
            idx = list(active)
            g = np.vstack((c.eq_a, c.ineq_a[idx]))
            h = np.concatenate((c.eq_b, c.ineq_b[idx]))
            x = _equality_projection(g, h, u)

            if len(g) and np.max(np.abs(g @ x - h)) > tol:
                continue

            if len(c.ineq_b) and np.max(c.ineq_a @ x - c.ineq_b) > tol:
                continue

            if (d := float(np.linalg.norm(x - u))) < best_dist:
                best, best_dist = x, d

    if best is None:
        raise EmptyIntersectionError(math.inf)

    return best, kkt_residual(c, u, best, tol)
