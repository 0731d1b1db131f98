"""Essential values of abelian level cocycles.

Returns of a point to its level-k cylinder happen exactly at multiples of
n_k, and past level j the value c(n_k, ·) is the constant (n_k/nⱼ)·S. The
brute-force sweep and the closed form therefore agree on every model.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any

import numpy as np

from coe_rigidity.cocycle.coboundary import cycle_sum, require_abelian
from coe_rigidity.cocycle.level_cocycle import LevelCocycle
from coe_rigidity.group.finite_table import FiniteGroupTable
from coe_rigidity.odometer.chain import DivisibilityChain
from coe_rigidity.odometer.model import OdometerModel


@dataclass(frozen=True)
class EssentialValueSet:
    target: FiniteGroupTable
    values: frozenset[int]

    def __post_init__(self) -> None:
        if self.target.identity not in self.values:
            raise ValueError("an essential value set always contains the identity")

    @property
    def is_trivial(self) -> bool:
        return self.values == {self.target.identity}

    def to_json(self) -> dict[str, Any]:
        return {"target": self.target.name, "values": sorted(self.values)}


def essential_values_bruteforce(c: LevelCocycle, model: OdometerModel, k: int) -> EssentialValueSet:
    """Values r hit by c(N, x) on a return of x to its own level-k cylinder, for every cylinder."""
    require_abelian(c.target)
    c.check_chain(model.chain)
    if k < c.level:
        raise ValueError(f"cylinder level {k} is below the cocycle level {c.level}")
    model.require_level(k, "model")

    group = c.target
    size = model.modulus
    block = model.chain.nth_modulus(k)
    states = model.state_array()
    # c(n_k, x) for every state
    first_return = np.array([c.value(block, int(x)) for x in states], dtype=np.int64)

    reached = np.zeros((block, group.order), dtype=bool)
    acc = np.full(size, group.identity, dtype=np.int64)
    for ell in range(group.order + 1):
        np.logical_or.at(reached, (states % block, acc), True)
        acc = group.mul(first_return[(states + ell * block) % size], acc)

    common = reached.all(axis=0)
    return EssentialValueSet(group, frozenset(int(r) for r in np.flatnonzero(common)))


def essential_values_closed_form(c: LevelCocycle, chain: DivisibilityChain, k: int) -> EssentialValueSet:
    """⟨(n_k/nⱼ)·S⟩."""
    require_abelian(c.target)
    c.check_chain(chain)
    generator = c.target.power(cycle_sum(c), chain.ratio(c.level, k))
    return EssentialValueSet(c.target, c.target.subgroup_generated([generator]))


def essential_values_limit(c: LevelCocycle, chain: DivisibilityChain) -> EssentialValueSet:
    """The intersection over all k of ⟨(n_k/nⱼ)·S⟩, read at the stabilization level."""
    require_abelian(c.target)
    total = cycle_sum(c)
    level = chain.stabilization_level(c.level, c.target.element_order(total))
    return essential_values_closed_form(c, chain, level)
