# Copyright 2024, Sergey Dudanov
# SPDX-License-Identifier: Apache-2.0

"""
Euclidean Hilbert-space primitives.

Points of `R^d` are read-only `float64` numpy arrays. The duality mapping of
a Hilbert space is the identity, so the pairing `<x, f>` is the plain inner
product.
"""

import math
from typing import Iterable

import numpy as np
import numpy.typing as npt

from .const import MAX_DIM

type Vector = npt.NDArray[np.float64]


class VectorError(ValueError):
    """Raised on malformed vector input (shape, dimension or non-finite values)."""

    def __init__(self, reason: str) -> None:
        super().__init__(f"Invalid vector: {reason}.")


class DimensionMismatchError(ValueError):
    """Raised when two operands live in different spaces."""

    def __init__(self, *dims: int) -> None:
        super().__init__(f"Dimension mismatch: {', '.join(map(str, dims))}.")


def vector(coords: Iterable[float] | npt.ArrayLike) -> Vector:
    """
    Creates a validated read-only vector.

    Parameters:
    - `coords` - coordinates.

    Return:
    - `Vector` of dimension `1..MAX_DIM` with finite coordinates.
    """
    x = np.array(coords, dtype=np.float64)

    if x.ndim != 1:
        raise VectorError(f"expected 1-D coordinates, got shape {x.shape}")

    if not 1 <= x.size <= MAX_DIM:
        raise VectorError(f"dimension {x.size} outside 1..{MAX_DIM}")

    if not np.all(np.isfinite(x)):
        raise VectorError("coordinates must be finite")

    x.setflags(write=False)

    return x


def zeros(dim: int) -> Vector:
    return vector(np.zeros(dim))


def check_dims(*xs: Vector) -> int:
    """Returns common dimension or raises `DimensionMismatchError`."""
    dims = {x.shape[0] for x in xs}

    if len(dims) != 1:
        raise DimensionMismatchError(*(x.shape[0] for x in xs))

    return dims.pop()


def inner(x: Vector, y: Vector) -> float:
    check_dims(x, y)
    return float(np.dot(x, y))


def norm(x: Vector) -> float:
    return float(np.linalg.norm(x))


def dist(x: Vector, y: Vector) -> float:
    check_dims(x, y)
    return float(np.linalg.norm(x - y))


def norm_square_inequality_gap(x: Vector, y: Vector) -> float:
    """
    Slack of `‖x+y‖² ≤ ‖x‖² + 2<y, J(x+y)>` with `J` the identity.

    Always nonnegative; in Hilbert space it equals `‖y‖²`.
    """
    s = x + y
    return inner(x, x) + 2 * inner(y, s) - inner(s, s)


def convexity_gap(lam: float, x: Vector, y: Vector) -> float:
    """
    `λ‖x‖² + (1−λ)‖y‖² − ‖λx + (1−λ)y‖²`, equal to `λ(1−λ)‖x−y‖²` here.

    Its vanishing with `λ` bounded away from zero forces `(1−λ)‖x−y‖ → 0`.
    """
    if not 0 <= lam <= 1:
        raise ValueError(f"Convex weight {lam} outside [0, 1].")

    m = lam * x + (1 - lam) * y
    return lam * inner(x, x) + (1 - lam) * inner(y, y) - inner(m, m)


def modulus_of_convexity(eps: float) -> float:
    """Modulus of convexity of a Hilbert space: `1 − sqrt(1 − ε²/4)`."""
    if not 0 <= eps <= 2:
        raise ValueError(f"Modulus argument {eps} outside [0, 2].")

    return 1 - math.sqrt(1 - eps * eps / 4)
