"""Finite models of D∞ actions.

Case I is the reflection odometer on Z/n_L: s acts by x ↦ x + u and t by
x ↦ o − x, with rotation u = ±1 and reflection offset o (canonically u = 1,
o = 0). Case II is the action induced from the odometer along D∞/⟨s⟩: states
are (coset, x) with coset 0 for ⟨s⟩ and 1 for t⟨s⟩, indexed ``coset·n_L + x``.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from functools import cached_property
from typing import Any

import numpy as np

from coe_rigidity.group.dihedral import IDENTITY, DihedralElement, S, T, translation
from coe_rigidity.odometer.chain import DivisibilityChain
from coe_rigidity.odometer.model import OdometerModel


class ModelKind(str, Enum):
    CASE_I = "case1"
    CASE_II = "case2"


def delta(g: DihedralElement, coset: int) -> DihedralElement:
    """δ(g, g′⟨s⟩) = L(gg′⟨s⟩)⁻¹·g·L(g′⟨s⟩) for the lift L(⟨s⟩) = e, L(t⟨s⟩) = t.

    Computed from the lift, which gives s^{±n} with sign + exactly when the
    reflection bit of g matches the coset.
    """
    if coset not in (0, 1):
        raise ValueError(f"coset must be 0 (Z) or 1 (tZ), got {coset}")
    lift_from = T if coset else IDENTITY
    lift_to = T if coset ^ g.reflection else IDENTITY
    return lift_to.inverse() * g * lift_from


@dataclass(frozen=True)
class DinftyModel:
    """A D∞ action on a finite state space.

    Attributes:
        kind: Case I (one s-orbit) or Case II (two components swapped by t).
        base: The odometer level the model is built on.
        rotation: u = ±1; s moves base states by u.
        reflection_offset: o for Case I, where t acts by x ↦ o − x.
    """

    kind: ModelKind
    base: OdometerModel
    rotation: int = 1
    reflection_offset: int = 0

    def __post_init__(self) -> None:
        object.__setattr__(self, "kind", ModelKind(self.kind))
        if self.rotation not in (1, -1):
            raise ValueError(f"rotation must be +1 or -1, got {self.rotation}")
        if self.kind is ModelKind.CASE_I and self.base.modulus < 3:
            raise ValueError(f"Case I models need n_L >= 3, got {self.base.modulus}")
        if self.kind is ModelKind.CASE_II and self.reflection_offset:
            raise ValueError("reflection offsets only apply to Case I models")

    def __str__(self) -> str:
        return f"{self.kind.value}(n_L={self.modulus}, u={self.rotation}, o={self.reflection_offset})"

    @property
    def modulus(self) -> int:
        return self.base.modulus

    @property
    def size(self) -> int:
        return self.modulus * (2 if self.kind is ModelKind.CASE_II else 1)

    def states(self) -> range:
        return range(self.size)

    def state_array(self) -> np.ndarray:
        return np.arange(self.size, dtype=np.int64)

    def check_state(self, x: int) -> None:
        if not 0 <= x < self.size:
            raise ValueError(f"state {x} outside the {self.size}-state model")

    def split_state(self, x: int) -> tuple[int, int]:
        """(coset, base state); Case I states are all in coset 0."""
        return divmod(x, self.modulus)

    def act(self, g: DihedralElement, x: int) -> int:
        self.check_state(x)
        return int(self.act_array(g)[x])

    def act_array(self, g: DihedralElement, xs: np.ndarray | None = None) -> np.ndarray:
        """g·x for every state (or for ``xs``)."""
        xs = self.state_array() if xs is None else np.asarray(xs, dtype=np.int64)
        return self.act_elements(np.full(xs.shape, g.exponent), np.full(xs.shape, g.reflection), xs)

    def act_elements(self, exponents: np.ndarray, reflections: np.ndarray, xs: np.ndarray) -> np.ndarray:
        """(s^kᵢ t^rᵢ)·xᵢ elementwise."""
        m, u = self.modulus, self.rotation
        if self.kind is ModelKind.CASE_I:
            ys = np.where(reflections == 1, self.reflection_offset - xs, xs)
            return (ys + u * exponents) % m
        coset, base = np.divmod(xs, m)
        coset = np.where(reflections == 1, 1 - coset, coset)
        sign = np.where(coset == 0, 1, -1)
        return coset * m + (base + u * sign * exponents) % m

    @cached_property
    def s_permutation(self) -> np.ndarray:
        perm = self.act_array(S)
        perm.setflags(write=False)
        return perm

    @cached_property
    def t_permutation(self) -> np.ndarray:
        perm = self.act_array(T)
        perm.setflags(write=False)
        return perm

    def s_orbits(self) -> list[list[int]]:
        """Orbits of the sub-Z action, each listed from its smallest state along s."""
        seen = np.zeros(self.size, dtype=bool)
        orbits = []
        for root in self.states():
            if seen[root]:
                continue
            orbit = [root]
            seen[root] = True
            y = int(self.s_permutation[root])
            while y != root:
                orbit.append(y)
                seen[y] = True
                y = int(self.s_permutation[y])
            orbits.append(orbit)
        return orbits

    def translation_offset(self, x_from: int, x_to: int) -> int | None:
        """j mod n_L with sʲ·x_from = x_to, or None when no translation connects them."""
        c_from, y_from = self.split_state(x_from)
        c_to, y_to = self.split_state(x_to)
        if c_from != c_to:
            return None
        sign = 1 if c_from == 0 else -1
        return (sign * self.rotation * (y_to - y_from)) % self.modulus

    def relations_hold(self) -> bool:
        """t² = e and tst = s⁻¹ on every state."""
        states = self.state_array()
        t = self.t_permutation
        s = self.s_permutation
        return bool(np.array_equal(t[t], states) and np.array_equal(t[s[t]], self.act_array(translation(-1))))

    def to_json(self) -> dict[str, Any]:
        return {
            "kind": self.kind.value,
            "chain": self.base.chain.to_json(),
            "level": self.base.level,
            "rotation": self.rotation,
            "reflection_offset": self.reflection_offset,
        }

    @classmethod
    def from_json(cls, data: dict[str, Any]) -> DinftyModel:
        base = OdometerModel(DivisibilityChain.from_json(data["chain"]), int(data["level"]))
        return cls(
            kind=ModelKind(data["kind"]),
            base=base,
            rotation=int(data.get("rotation", 1)),
            reflection_offset=int(data.get("reflection_offset", 0)),
        )


def build_case1_model(
    chain: DivisibilityChain, level: int, rotation: int = 1, reflection_offset: int = 0
) -> DinftyModel:
    return DinftyModel(ModelKind.CASE_I, OdometerModel(chain, level), rotation, reflection_offset)


def build_case2_model(chain: DivisibilityChain, level: int, rotation: int = 1) -> DinftyModel:
    return DinftyModel(ModelKind.CASE_II, OdometerModel(chain, level), rotation)
