"""Finite truncations of the odometer Z ↷ lim Z/nᵢ."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from coe_rigidity.errors import LevelMismatch
from coe_rigidity.odometer.chain import DivisibilityChain


@dataclass(frozen=True)
class OdometerModel:
    """The level-L model: states Z/n_L, generator x ↦ x + 1."""

    chain: DivisibilityChain
    level: int

    def __post_init__(self) -> None:
        if self.level < 1:
            raise ValueError(f"model level must be >= 1, got {self.level}")

    def __str__(self) -> str:
        return f"odometer(level={self.level}, modulus={self.modulus})"

    @cached_property
    def modulus(self) -> int:
        return self.chain.nth_modulus(self.level)

    def states(self) -> range:
        return range(self.modulus)

    def state_array(self) -> np.ndarray:
        return np.arange(self.modulus, dtype=np.int64)

    def check_state(self, x: int) -> None:
        if not 0 <= x < self.modulus:
            raise ValueError(f"state {x} outside Z/{self.modulus}")

    def require_level(self, level: int, what: str = "model") -> None:
        if self.level < level:
            raise LevelMismatch(level, self.level, what)

    def orbit(self, x: int = 0) -> list[int]:
        """Forward orbit of x under the generator, until it returns."""
        self.check_state(x)
        seen = [x]
        y = step(self, x, 1)
        while y != x:
            seen.append(y)
            y = step(self, y, 1)
        return seen

    def is_transitive(self) -> bool:
        return len(self.orbit(0)) == self.modulus

    def at_level(self, level: int) -> OdometerModel:
        return OdometerModel(self.chain, level)


def step(model: OdometerModel, x: int, n: int) -> int:
    """αₙ(x) = x + n mod n_L."""
    model.check_state(x)
    return (x + n) % model.modulus


def project(model: OdometerModel, x: int, i: int) -> int:
    """Factor map onto the level-i model."""
    model.check_state(x)
    if not 1 <= i <= model.level:
        raise ValueError(f"projection level must lie in [1, {model.level}], got {i}")
    return x % model.chain.nth_modulus(i)


def state_to_json(x: int) -> str:
    """States are serialized as decimal strings."""
    return str(x)


def state_from_json(value: str | int) -> int:
    return int(value)
