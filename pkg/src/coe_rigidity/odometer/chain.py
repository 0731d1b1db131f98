"""Divisibility chains n₁ | n₂ | ⋯ with an eventually periodic multiplier tail.

A chain is stored by its multipliers: n₁ = base and nᵢ₊₁ = nᵢ·mᵢ, where mᵢ
walks the prefix and then cycles through the tail forever. The periodic tail
makes questions about sup over all levels decidable.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Any

from sympy import factorint, isprime, multiplicity

from coe_rigidity.errors import InvalidChain


@dataclass(frozen=True)
class DivisibilityChain:
    """Chain (nᵢ) given by base, multiplier prefix and periodic multiplier tail."""

    base: int
    prefix: tuple[int, ...] = ()
    tail: tuple[int, ...] = (2,)

    def __post_init__(self) -> None:
        object.__setattr__(self, "prefix", tuple(int(m) for m in self.prefix))
        object.__setattr__(self, "tail", tuple(int(m) for m in self.tail))
        if self.base < 1:
            raise InvalidChain(f"base must be a positive integer, got {self.base}")
        if not self.tail:
            raise InvalidChain("tail multipliers must be nonempty")
        bad = [m for m in (*self.prefix, *self.tail) if m < 2]
        if bad:
            raise InvalidChain(f"multipliers must be >= 2, got {bad}")

    def __str__(self) -> str:
        prefix = f" prefix={list(self.prefix)}" if self.prefix else ""
        return f"chain(base={self.base}{prefix} tail={list(self.tail)})"

    def multiplier(self, i: int) -> int:
        """mᵢ, so that nᵢ₊₁ = nᵢ·mᵢ (i ≥ 1)."""
        if i < 1:
            raise ValueError(f"multiplier index must be >= 1, got {i}")
        if i <= len(self.prefix):
            return self.prefix[i - 1]
        return self.tail[(i - 1 - len(self.prefix)) % len(self.tail)]

    def nth_modulus(self, i: int) -> int:
        if i < 1:
            raise ValueError(f"level must be >= 1, got {i}")
        n = self.base
        for level in range(1, i):
            n *= self.multiplier(level)
        return n

    def ratio(self, j: int, k: int) -> int:
        """n_k / n_j for k ≥ j."""
        if k < j:
            raise ValueError(f"ratio needs k >= j, got j={j}, k={k}")
        return math.prod(self.multiplier(level) for level in range(j, k))

    def horizon(self, j: int, max_exponent: int) -> int:
        """A level by which every achievable prime-power growth past level j has happened.

        After the prefix, each tail period multiplies in every prime dividing a
        tail multiplier at least once, so ``max_exponent`` periods suffice.
        """
        return max(j, len(self.prefix) + 1) + len(self.tail) * max(max_exponent, 1)

    def stabilization_level(self, j: int, order: int) -> int:
        """Level past which gcd(n_k/nⱼ, ``order``) no longer changes."""
        if order <= 1:
            return j
        return self.horizon(j, max(factorint(order).values()))

    def level_reaching(self, modulus: int) -> int:
        """Smallest level i with nᵢ > modulus."""
        level = 1
        while self.nth_modulus(level) <= modulus:
            level += 1
        return level

    def to_json(self) -> dict[str, Any]:
        return {"base": self.base, "prefix": list(self.prefix), "tail": list(self.tail)}

    @classmethod
    def from_json(cls, data: dict[str, Any]) -> DivisibilityChain:
        return cls(base=int(data["base"]), prefix=tuple(data.get("prefix", ())), tail=tuple(data["tail"]))

    @classmethod
    def powers(cls, m: int) -> DivisibilityChain:
        """The chain nᵢ = mⁱ."""
        return cls(base=m, tail=(m,))

    @classmethod
    def dyadic(cls) -> DivisibilityChain:
        return cls.powers(2)


CHAIN_PRESETS = {
    "dyadic": DivisibilityChain.powers(2),
    "triadic": DivisibilityChain.powers(3),
    "sixfold": DivisibilityChain.powers(6),
}


def nth_modulus(chain: DivisibilityChain, i: int) -> int:
    return chain.nth_modulus(i)


def _check_prime(p: int) -> None:
    if not isprime(p):
        raise ValueError(f"p must be prime, got {p}")


def ord_p(chain: DivisibilityChain, p: int, i: int) -> int:
    """p-adic valuation of nᵢ."""
    _check_prime(p)
    return int(multiplicity(p, chain.nth_modulus(i)))


def sup_ord_infinite(chain: DivisibilityChain, p: int) -> bool:
    """True iff ord(p, nᵢ) is unbounded in i."""
    _check_prime(p)
    return any(m % p == 0 for m in chain.tail)
