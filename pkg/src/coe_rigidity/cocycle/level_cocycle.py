"""Cocycles over the odometer given by a table at a finite level.

A continuous map from the odometer to a finite group factors through some
finite level, so a table f on Z/nⱼ is fully general. The cocycle identity
c(n₁+n₂, x) = c(n₁, Tⁿ²x)·c(n₂, x) with c(1, x) = f(x) extends f to all n.
"""

from __future__ import annotations

from collections.abc import Callable
from dataclasses import dataclass
from enum import Enum
from functools import cached_property
from typing import Any

import numpy as np

from coe_rigidity.errors import LevelMismatch, NotSingleCoset
from coe_rigidity.group.finite_table import FiniteGroupTable, restrict
from coe_rigidity.odometer.chain import DivisibilityChain
from coe_rigidity.odometer.model import OdometerModel


class Orientation(Enum):
    """How a transfer L untwists a cocycle."""

    FORWARD = "forward"  # c(n, x) = L(Tⁿx)·L(x)⁻¹
    INVERSE = "inverse"  # c(n, x) = L(Tⁿx)⁻¹·L(x)


@dataclass(frozen=True)
class LevelCocycle:
    """c(1, x) = table[x mod nⱼ], valued in ``target``."""

    target: FiniteGroupTable
    level: int
    table: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "table", tuple(int(v) for v in self.table))
        if not self.table:
            raise ValueError("cocycle table must be nonempty")
        bad = [v for v in self.table if not 0 <= v < self.target.order]
        if bad:
            raise ValueError(f"cocycle values {bad} are not elements of {self.target.name or 'the target'}")

    @property
    def period(self) -> int:
        return len(self.table)

    @property
    def is_trivial(self) -> bool:
        return all(v == self.target.identity for v in self.table)

    def check_chain(self, chain: DivisibilityChain) -> None:
        expected = chain.nth_modulus(self.level)
        if expected != self.period:
            raise ValueError(f"table has length {self.period} but n_{self.level} = {expected} for {chain}")

    @cached_property
    def _partials(self) -> np.ndarray:
        # _partials[y, r] = c(r, y) for 0 ≤ r ≤ period
        p = self.period
        out = np.empty((p, p + 1), dtype=np.int64)
        for y in range(p):
            acc = self.target.identity
            out[y, 0] = acc
            for r in range(1, p + 1):
                acc = int(self.target.table[self.table[(y + r - 1) % p], acc])
                out[y, r] = acc
        out.setflags(write=False)
        return out

    def value(self, n: int, x: int) -> int:
        """c(n, x); x may be any integer representative of its class."""
        p = self.period
        if n < 0:
            return int(self.target.inverses[self.value(-n, x + n)])
        y = x % p
        q, r = divmod(n, p)
        # c(qp + r, y) = c(r, y)·c(p, y)^q since c(p, ·) is p-periodic
        full = self.target.power(int(self._partials[y, p]), q)
        return int(self.target.table[self._partials[y, r], full])

    def values_on(self, model: OdometerModel) -> np.ndarray:
        """f lifted to every state of ``model``."""
        return np.asarray(self.table, dtype=np.int64)[model.state_array() % self.period]

    def to_json(self) -> dict[str, Any]:
        return {"target": self.target.name or self.target.to_json(), "level": self.level, "table": list(self.table)}

    @classmethod
    def constant(cls, target: FiniteGroupTable, chain: DivisibilityChain, level: int, value: int) -> LevelCocycle:
        return cls(target=target, level=level, table=(value,) * chain.nth_modulus(level))


@dataclass(frozen=True)
class TransferFunction:
    """A level-k map L: Z/n_k → K witnessing a cohomology."""

    target: FiniteGroupTable
    level: int
    table: tuple[int, ...]
    orientation: Orientation = Orientation.FORWARD

    def __post_init__(self) -> None:
        object.__setattr__(self, "table", tuple(int(v) for v in self.table))

    def values_on(self, model: OdometerModel) -> np.ndarray:
        model.require_level(self.level, "model")
        return np.asarray(self.table, dtype=np.int64)[model.state_array() % len(self.table)]

    def to_json(self) -> dict[str, Any]:
        return {"level": self.level, "orientation": self.orientation.value, "table": list(self.table)}


@dataclass
class CocycleTable:
    """Window table of c(n, x) for |n| ≤ window and every state x.

    ``unit`` is the generator step on states: Tⁿx = x + unit·n mod modulus.
    Values are group element indices, or integers for Z-valued cocycles.
    """

    values: np.ndarray  # shape (2·window + 1, modulus)
    window: int
    unit: int = 1

    @property
    def modulus(self) -> int:
        return int(self.values.shape[1])

    def row(self, n: int) -> np.ndarray:
        if abs(n) > self.window:
            raise IndexError(f"|n|={abs(n)} outside table window {self.window}")
        return self.values[n + self.window]

    def __getitem__(self, key: tuple[int, int]) -> int:
        n, x = key
        return int(self.row(n)[x])

    def moved(self, n: int) -> np.ndarray:
        """Tⁿx for every state x."""
        return (np.arange(self.modulus, dtype=np.int64) + self.unit * n) % self.modulus

    @classmethod
    def build(
        cls,
        generator_values: np.ndarray,
        window: int,
        combine: Callable[[Any, Any], Any],
        invert: Callable[[Any], Any],
        neutral: int,
        unit: int = 1,
    ) -> CocycleTable:
        """Extend c(1, ·) to |n| ≤ window by the cocycle identity.

        c(n+1, x) = c(1, Tⁿx)·c(n, x) and c(n−1, x) = c(1, Tⁿ⁻¹x)⁻¹·c(n, x).
        """
        modulus = generator_values.shape[0]
        states = np.arange(modulus, dtype=np.int64)
        values = np.empty((2 * window + 1, modulus), dtype=np.int64)
        values[window] = neutral
        for n in range(window):
            moved = (states + unit * n) % modulus
            values[window + n + 1] = combine(generator_values[moved], values[window + n])
        for n in range(0, -window, -1):
            moved = (states + unit * (n - 1)) % modulus
            values[window + n - 1] = combine(invert(generator_values[moved]), values[window + n])
        return cls(values=values, window=window, unit=unit)

    @classmethod
    def from_level_cocycle(cls, c: LevelCocycle, model: OdometerModel, window: int) -> CocycleTable:
        model.require_level(c.level, "model")
        c.check_chain(model.chain)
        group = c.target
        return cls.build(c.values_on(model), window, group.mul, group.inverse, group.identity)

    @classmethod
    def from_integers(cls, generator_values: np.ndarray, window: int, unit: int = 1) -> CocycleTable:
        """Z-valued cocycle with c(1, x) = ``generator_values[x]``."""
        return cls.build(np.asarray(generator_values, dtype=np.int64), window, np.add, np.negative, 0, unit)


def evaluate(c: LevelCocycle, model: OdometerModel, n: int, x: int) -> int:
    """c(n, x) on a model at level ≥ c.level."""
    if model.level < c.level:
        raise LevelMismatch(c.level, model.level)
    c.check_chain(model.chain)
    model.check_state(x)
    return c.value(n, x)


def verify_cocycle_identity(
    table: CocycleTable,
    combine: Callable[[Any, Any], Any],
    window: int,
) -> dict[str, int] | None:
    """First (n₁, n₂, x) violating c(n₁+n₂, x) = c(n₁, Tⁿ²x)·c(n₂, x), or None."""
    if 2 * window > table.window:
        raise ValueError(f"identity window {window} needs a table window of at least {2 * window}")
    for n2 in range(-window, window + 1):
        moved = table.moved(n2)
        right = table.row(n2)
        for n1 in range(-window, window + 1):
            left = table.row(n1 + n2)
            composed = combine(table.row(n1)[moved], right)
            bad = np.flatnonzero(left != composed)
            if bad.size:
                return {"n1": n1, "n2": n2, "x": int(bad[0])}
    return None


def is_cocycle_exhaustive(
    c: LevelCocycle,
    model: OdometerModel,
    window: int,
    values: CocycleTable | None = None,
) -> bool:
    """Check the cocycle identity for |n₁|, |n₂| ≤ window on every state.

    ``values`` may supply a precomputed (possibly tampered) table of c(n, ·).
    """
    table = values if values is not None else CocycleTable.from_level_cocycle(c, model, 2 * window)
    return verify_cocycle_identity(table, c.target.mul, window) is None


def cohomologous_verify(
    c1: LevelCocycle,
    c2: LevelCocycle,
    b: TransferFunction,
    model: OdometerModel,
    window: int,
) -> bool:
    """Check c1(n, x) = b(Tⁿx)⁻¹·c2(n, x)·b(x) (INVERSE) or b(Tⁿx)·c2(n, x)·b(x)⁻¹ (FORWARD)."""
    group = c1.target
    if c2.target != group or b.target != group:
        raise ValueError("cohomologous_verify needs a shared target group")
    first = CocycleTable.from_level_cocycle(c1, model, window)
    second = CocycleTable.from_level_cocycle(c2, model, window)
    bvals = b.values_on(model)
    for n in range(-window, window + 1):
        moved = bvals[first.moved(n)]
        if b.orientation is Orientation.FORWARD:
            twisted = group.mul(group.mul(moved, second.row(n)), group.inverse(bvals))
        else:
            twisted = group.mul(group.mul(group.inverse(moved), second.row(n)), bvals)
        if not np.array_equal(first.row(n), twisted):
            return False
    return True


def coboundary_of(b: TransferFunction) -> LevelCocycle:
    """The cocycle untwisted by b: f(x) = b(x+1)·b(x)⁻¹ (FORWARD) or b(x+1)⁻¹·b(x) (INVERSE)."""
    group = b.target
    size = len(b.table)
    table = []
    for x in range(size):
        ahead, here = b.table[(x + 1) % size], b.table[x]
        if b.orientation is Orientation.FORWARD:
            table.append(int(group.mul(ahead, group.inverse(here))))
        else:
            table.append(int(group.mul(group.inverse(ahead), here)))
    return LevelCocycle(target=group, level=b.level, table=tuple(table))


def _require_values_in(c: LevelCocycle, subgroup: frozenset[int]) -> None:
    group = c.target
    if not group.is_subgroup(subgroup):
        raise ValueError(f"{sorted(subgroup)} is not a subgroup of {group.name or 'the target'}")
    stray = sorted(set(c.table) - subgroup)
    if stray:
        raise ValueError(f"cocycle values {stray} lie outside the subgroup")


def restrict_target(c: LevelCocycle, subgroup: frozenset[int], name: str = "") -> tuple[LevelCocycle, list[int]]:
    """c as a cocycle into K₀ on K₀'s own indices, plus the embedding ``new index -> old index``."""
    _require_values_in(c, subgroup)
    small, members = restrict(c.target, subgroup, name=name)
    position = {a: i for i, a in enumerate(members)}
    return LevelCocycle(target=small, level=c.level, table=tuple(position[v] for v in c.table)), members


def reduce_target(
    c: LevelCocycle,
    subgroup: frozenset[int],
    b: TransferFunction,
    model: OdometerModel,
) -> TransferFunction:
    """Replace a K-valued transfer of a K₀-valued cocycle by a K₀-valued one.

    For the FORWARD orientation the b-values lie in one right coset K₀k and
    f′ = b·k⁻¹; for INVERSE they lie in one left coset kK₀ and f′ = k⁻¹·b.
    The representative k is e when b is already K₀-valued, else b(0).
    """
    _require_values_in(c, subgroup)
    group = c.target
    model.require_level(b.level, "model")

    forward = b.orientation is Orientation.FORWARD
    cosets: dict[frozenset[int], list[int]] = {}
    for value in b.table:
        coset = (
            group.right_coset(subgroup, value)
            if forward
            else frozenset(int(group.mul(value, h)) for h in subgroup)
        )
        cosets.setdefault(coset, []).append(value)
    if len(cosets) > 1:
        raise NotSingleCoset([sorted(coset) for coset in cosets])

    rep = group.identity if set(b.table) <= subgroup else b.table[0]
    rep_inv = int(group.inverse(rep))
    if forward:
        reduced = tuple(int(group.mul(v, rep_inv)) for v in b.table)
    else:
        reduced = tuple(int(group.mul(rep_inv, v)) for v in b.table)
    return TransferFunction(target=group, level=b.level, table=reduced, orientation=b.orientation)
