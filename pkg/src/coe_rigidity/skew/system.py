"""Skew products of the odometer with a finite group F.

F×Z acts on (Z/n_L)×F by (f, n)·(x, f′) = (x + n, c(n, x)·f′·f⁻¹). Points are
indexed ``x·|F| + f′`` so that whole sweeps run as numpy array operations.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Any

import numpy as np

from coe_rigidity.cocycle.level_cocycle import CocycleTable, LevelCocycle
from coe_rigidity.errors import BaseMismatch, SkewError
from coe_rigidity.group.finite_table import FiniteGroupTable
from coe_rigidity.odometer.model import OdometerModel

Point = tuple[int, int]
GroupElement = tuple[int, int]  # (f, n) in F×Z


@dataclass(frozen=True)
class SkewSystem:
    """The F×Z action on (Z/n_L)×F twisted by a level cocycle."""

    base: OdometerModel
    group: FiniteGroupTable
    cocycle: LevelCocycle
    _tables: dict[int, CocycleTable] = field(default_factory=dict, init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        if self.cocycle.target != self.group:
            raise SkewError(f"cocycle is valued in {self.cocycle.target!r}, not {self.group!r}")
        self.cocycle.check_chain(self.base.chain)
        self.base.require_level(self.cocycle.level, "skew base")
        bad = verify_action_law(self, window=1)
        if bad is not None:
            raise SkewError(f"action law fails on the generator window at {bad}")

    @property
    def point_count(self) -> int:
        return self.base.modulus * self.group.order

    def index(self, p: Point) -> int:
        x, f = p
        return x * self.group.order + f

    def point(self, i: int) -> Point:
        x, f = divmod(i, self.group.order)
        return x, f

    def point_arrays(self) -> tuple[np.ndarray, np.ndarray]:
        idx = np.arange(self.point_count, dtype=np.int64)
        return idx // self.group.order, idx % self.group.order

    def cocycle_table(self, window: int) -> CocycleTable:
        """c(n, x) for |n| ≤ window, cached per window."""
        table = self._tables.get(window)
        if table is None:
            table = CocycleTable.from_level_cocycle(self.cocycle, self.base, window)
            self._tables[window] = table
        return table

    def lifted(self, level: int) -> SkewSystem:
        return SkewSystem(self.base.at_level(level), self.group, self.cocycle)

    def to_json(self) -> dict[str, Any]:
        return {
            "chain": self.base.chain.to_json(),
            "level": self.base.level,
            "F": self.group.name or self.group.to_json(),
            "c": self.cocycle.to_json(),
        }


def require_same_base(sys: SkewSystem, other: SkewSystem) -> None:
    if sys.base != other.base or sys.group != other.group:
        raise BaseMismatch(f"skew systems differ in base or group: {sys.base} / {other.base}")


def skew_act(sys: SkewSystem, g: GroupElement, p: Point) -> Point:
    f, n = g
    x, fp = p
    sys.base.check_state(x)
    group = sys.group
    value = sys.cocycle.value(n, x)
    return (x + n) % sys.base.modulus, int(group.mul(group.mul(value, fp), group.inverse(f)))


def act_arrays(
    sys: SkewSystem,
    g: GroupElement,
    xs: np.ndarray,
    fs: np.ndarray,
    table: CocycleTable,
) -> tuple[np.ndarray, np.ndarray]:
    """Vectorised :func:`skew_act` using a precomputed cocycle table."""
    f, n = g
    group = sys.group
    moved = group.mul(group.mul(table.row(n)[xs], fs), group.inverse(f))
    return (xs + n) % sys.base.modulus, moved


def verify_action_law(sys: SkewSystem, window: int = 8) -> dict[str, Any] | None:
    """First (g1, g2, point) with g1·(g2·p) ≠ (g1g2)·p on the window, or None."""
    table = CocycleTable.from_level_cocycle(sys.cocycle, sys.base, 2 * window)
    xs, fs = sys.point_arrays()
    group = sys.group
    for f2 in group.elements:
        for n2 in range(-window, window + 1):
            x2, g2 = act_arrays(sys, (f2, n2), xs, fs, table)
            for f1 in group.elements:
                product = (int(group.mul(f1, f2)), n2)
                for n1 in range(-window, window + 1):
                    x_seq, f_seq = act_arrays(sys, (f1, n1), x2, g2, table)
                    x_one, f_one = act_arrays(sys, (product[0], n1 + n2), xs, fs, table)
                    bad = np.flatnonzero((x_seq != x_one) | (f_seq != f_one))
                    if bad.size:
                        return {"g1": [f1, n1], "g2": [f2, n2], "point": list(sys.point(int(bad[0])))}
    return None


def _is_transitive(sys: SkewSystem) -> bool:
    group = sys.group
    seen = np.zeros(sys.point_count, dtype=bool)
    seen[0] = True
    frontier = deque([(0, group.identity)])
    moves = [(group.identity, 1), (group.identity, -1)] + [(f, 0) for f in group.elements]
    while frontier:
        p = frontier.popleft()
        for g in moves:
            q = skew_act(sys, g, p)
            i = sys.index(q)
            if not seen[i]:
                seen[i] = True
                frontier.append(q)
    return bool(seen.all())


def _stabilizer_sweep(sys: SkewSystem, window: int) -> list[dict[str, Any]]:
    """Non-identity (f, n), |n| ≤ window, fixing some point of ``sys``."""
    table = sys.cocycle_table(window)
    xs, fs = sys.point_arrays()
    hits = []
    for n in range(-window, window + 1):
        for f in sys.group.elements:
            if n == 0 and f == sys.group.identity:
                continue
            x_new, f_new = act_arrays(sys, (f, n), xs, fs, table)
            fixed = np.flatnonzero((x_new == xs) & (f_new == fs))
            if fixed.size:
                hits.append({"g": [f, n], "point": list(sys.point(int(fixed[0])))})
    return hits


def transitive_and_free_check(sys: SkewSystem) -> tuple[bool, bool]:
    """Finite analogues of minimality and freeness.

    Transitivity is tested on the model itself. The stabilizer sweep over
    |n| ≤ n_L·|F| runs on the base lifted to the first level whose modulus
    exceeds that window, so returns forced by the finite period of the
    truncation do not count as stabilizers.
    """
    window = sys.point_count
    sweep_level = max(sys.base.level, sys.base.chain.level_reaching(window))
    return _is_transitive(sys), not _stabilizer_sweep(sys.lifted(sweep_level), window)
