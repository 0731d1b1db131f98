"""Deciding whether a level cocycle over the odometer is a coboundary.

For an abelian target the telescoped transfer L(x+1) = L(x)·f(x mod nⱼ) on
Z/n_k closes up exactly when (n_k/nⱼ)·S = e, where S is the sum of f over one
period. Whether some level achieves that is read off the chain's periodic
multiplier tail.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

from sympy import factorint, multiplicity

from coe_rigidity.cocycle.level_cocycle import LevelCocycle, Orientation, TransferFunction
from coe_rigidity.errors import NonAbelianTarget
from coe_rigidity.group.finite_table import FiniteGroupTable
from coe_rigidity.odometer.chain import DivisibilityChain


@dataclass(frozen=True)
class Unsolvable:
    """The transfer equation has no solution at ``level``; ``obstruction`` = (n_k/nⱼ)·S."""

    level: int
    obstruction: int

    def to_json(self) -> dict[str, Any]:
        return {"verdict": "unsolvable", "level": self.level, "obstruction": self.obstruction}


@dataclass(frozen=True)
class CoboundaryAtLevel:
    """c is a coboundary of a level-``level`` transfer, and of none at a lower level."""

    level: int
    transfer: TransferFunction | None = None

    def to_json(self) -> dict[str, Any]:
        out: dict[str, Any] = {"verdict": "coboundary", "level": self.level}
        if self.transfer is not None:
            out["transfer"] = self.transfer.to_json()
        return out


@dataclass(frozen=True)
class NeverCoboundary:
    """No level solves the transfer equation.

    Attributes:
        obstruction: (n_k/nⱼ)·S at the stabilization level; never e.
        sum_value: S itself.
        blocking_primes: Primes p with ord(p, n_k/nⱼ) bounded below the
            p-part of ord(S).
    """

    obstruction: int
    sum_value: int
    blocking_primes: tuple[int, ...] = field(default=())

    def to_json(self) -> dict[str, Any]:
        return {
            "verdict": "never_coboundary",
            "obstruction": self.obstruction,
            "sum": self.sum_value,
            "blocking_primes": list(self.blocking_primes),
        }


CoboundaryVerdict = CoboundaryAtLevel | NeverCoboundary


def require_abelian(group: FiniteGroupTable) -> None:
    witness = group.commuting_failure()
    if witness is not None:
        raise NonAbelianTarget(group.name or repr(group), witness)


def cycle_sum(c: LevelCocycle) -> int:
    """S = f(0)·f(1)⋯f(nⱼ − 1) for an abelian target."""
    require_abelian(c.target)
    acc = c.target.identity
    for value in c.table:
        acc = int(c.target.table[acc, value])
    return acc


def coboundary_solve_at_level(
    c: LevelCocycle,
    chain: DivisibilityChain,
    k: int,
    orientation: Orientation = Orientation.FORWARD,
) -> TransferFunction | Unsolvable:
    """Telescope the transfer on Z/n_k, or report the obstruction."""
    require_abelian(c.target)
    c.check_chain(chain)
    if k < c.level:
        raise ValueError(f"transfer level {k} is below the cocycle level {c.level}")

    group = c.target
    obstruction = group.power(cycle_sum(c), chain.ratio(c.level, k))
    if obstruction != group.identity:
        return Unsolvable(level=k, obstruction=obstruction)

    step = c.table if orientation is Orientation.FORWARD else tuple(int(group.inverse(v)) for v in c.table)
    size = chain.nth_modulus(k)
    table = [group.identity]
    for x in range(size - 1):
        table.append(int(group.table[table[-1], step[x % c.period]]))
    return TransferFunction(target=group, level=k, table=tuple(table), orientation=orientation)


def coboundary_decide_chain(c: LevelCocycle, chain: DivisibilityChain) -> CoboundaryVerdict:
    """Minimal level solving the transfer equation, or the persistent obstruction."""
    require_abelian(c.target)
    c.check_chain(chain)
    group = c.target
    total = cycle_sum(c)
    j = c.level
    if total == group.identity:
        return CoboundaryAtLevel(level=j, transfer=coboundary_solve_at_level(c, chain, j))

    order = group.element_order(total)
    factors = factorint(order)
    horizon = chain.stabilization_level(j, order)
    for k in range(j, horizon + 1):
        if chain.ratio(j, k) % order == 0:
            transfer = coboundary_solve_at_level(c, chain, k)
            return CoboundaryAtLevel(level=k, transfer=transfer)

    ratio = chain.ratio(j, horizon)
    blocking = tuple(sorted(p for p, e in factors.items() if multiplicity(p, ratio) < e))
    return NeverCoboundary(obstruction=group.power(total, ratio), sum_value=total, blocking_primes=blocking)
