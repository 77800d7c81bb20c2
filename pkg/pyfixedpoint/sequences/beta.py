# Copyright 2024, Sergey Dudanov
# SPDX-License-Identifier: Apache-2.0

import dataclasses as dc
import math
from typing import Callable

from ..const import WEIGHT_SUM_TOL
from ..operators import geometric_weights

type BetaRule = Callable[[int], tuple[float, ...]]
type FoldedRule = Callable[[int, int], tuple[float, ...]]


def geometric_folded(n: int, m: int) -> tuple[float, ...]:
    """
    Folded geometric row.

    Past `m` the tail `2^-m + … + 2^-(n−1) + 2^-(n−1)` is `2^-(m−1)`, so the
    folded row no longer depends on `n`.
    """
    return geometric_weights(min(n, m))


def uniform_weights(n: int) -> tuple[float, ...]:
    return (1 / n,) * n


def uniform_folded(n: int, m: int) -> tuple[float, ...]:
    if n <= m:
        return uniform_weights(n)

    return (1 / n,) * (m - 1) + ((n - m + 1) / n,)


_CLOSED_FORMS: dict[BetaRule, FoldedRule] = {
    geometric_weights: geometric_folded,
    uniform_weights: uniform_folded,
}


@dc.dataclass(frozen=True)
class BetaTable:
    """
    Triangular table of convex weights `β_n^k`, `1 ≤ k ≤ n`.

    Each row sums to one and `inf{β_n^k : n ≥ k} > 0` for every `k`. The
    default geometric rule `β_n^k = 2^-k`, `β_n^n = 2^-(n−1)` attains the
    infimum `2^-k`; the uniform rule `1/n` does not.

    `folded` computes a row restricted to `m` operators without building
    the full row; the built-in rules bring their own. Tables without one
    fold the full row, which costs `O(n)` and fails once its entries
    underflow.
    """

    rule: BetaRule = geometric_weights
    name: str = "geometric"
    folded: FoldedRule | None = None

    def __post_init__(self):
        if self.folded is None:
            object.__setattr__(self, "folded", _CLOSED_FORMS.get(self.rule))

    @classmethod
    def geometric(cls) -> "BetaTable":
        return cls()

    @classmethod
    def uniform(cls) -> "BetaTable":
        return cls(rule=uniform_weights, name="uniform")

    @staticmethod
    def _validate(r: tuple[float, ...], size: int, what: str) -> tuple[float, ...]:
        if len(r) != size:
            raise ValueError(f"{what} has {len(r)} entries.")

        if any(not 0 < b <= 1 for b in r):
            raise ValueError(f"{what} has entries outside (0, 1].")

        if abs(math.fsum(r) - 1) > WEIGHT_SUM_TOL:
            raise ValueError(f"{what} sums to {math.fsum(r)!r}.")

        return r

    def row(self, n: int) -> tuple[float, ...]:
        """Row `n`, validated."""
        if n < 1:
            raise IndexError(f"Beta rows are indexed from 1, got {n}.")

        return self._validate(tuple(self.rule(n)), n, f"Beta row {n}")

    def folded_row(self, n: int, m: int) -> tuple[float, ...]:
        """
        Row `n` restricted to `m` operators, `min(n, m)` entries.

        Indices above `m` repeat `T_m`, so their mass is folded onto entry `m`.
        Only the returned entries are validated.
        """
        if n < 1 or m < 1:
            raise IndexError(f"Beta rows are indexed from 1, got n={n}, m={m}.")

        if self.folded is None:
            r = self.row(n)
            return r if n <= m else r[: m - 1] + (math.fsum(r[m - 1 :]),)

        what = f"Beta row {n} folded to {m}"
        return self._validate(tuple(self.folded(n, m)), min(n, m), what)

    def entry(self, n: int, k: int) -> float:
        """`β_n^k`, read off a row folded just past `k`."""
        if not 1 <= k <= n:
            raise IndexError(f"Need 1 ≤ k ≤ n, got k={k}, n={n}.")

        return self.folded_row(n, k + 1)[k - 1]

    def inf_lower_bound(self, k: int, n_max: int) -> float:
        """`min{β_n^k : k ≤ n ≤ n_max}`, a finite surrogate of the infimum."""
        if not 1 <= k <= n_max:
            raise ValueError(f"Need 1 ≤ k ≤ n_max, got k={k}, n_max={n_max}.")

        return min(self.entry(n, k) for n in range(k, n_max + 1))
