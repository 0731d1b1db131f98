"""Exact arithmetic in the infinite dihedral group D∞ = ⟨s, t | t², tsts⟩.

Every element has a unique normal form sᵏtʳ with k ∈ Z and r ∈ {0, 1}.
"""

from __future__ import annotations

from collections.abc import Callable
from dataclasses import dataclass
from typing import Any

import numpy as np


@dataclass(frozen=True, order=True)
class DihedralElement:
    """Normal form sᵏtʳ.

    Attributes:
        exponent: The k in sᵏtʳ.
        reflection: The r in sᵏtʳ (0 for translations, 1 for reflections).
    """

    exponent: int = 0
    reflection: int = 0

    def __post_init__(self) -> None:
        if self.reflection not in (0, 1):
            raise ValueError(f"reflection bit must be 0 or 1, got {self.reflection}")

    def __mul__(self, other: DihedralElement) -> DihedralElement:
        return dmul(self, other)

    def __str__(self) -> str:
        if self.exponent == 0:
            return "t" if self.reflection else "e"
        base = "s" if self.exponent == 1 else f"s^{self.exponent}"
        return f"{base}t" if self.reflection else base

    @property
    def is_reflection(self) -> bool:
        return self.reflection == 1

    @property
    def is_identity(self) -> bool:
        return self.exponent == 0 and self.reflection == 0

    def inverse(self) -> DihedralElement:
        if self.reflection:
            return self
        return DihedralElement(-self.exponent, 0)

    def power(self, n: int) -> DihedralElement:
        if self.reflection:
            return self if n % 2 else IDENTITY
        return DihedralElement(self.exponent * n, 0)

    def to_json(self) -> dict[str, int]:
        return {"k": self.exponent, "t": self.reflection}

    @classmethod
    def from_json(cls, data: Any) -> DihedralElement:
        """Accept ``{"k": int, "t": 0|1}`` or a ``[k, t]`` pair."""
        if isinstance(data, dict):
            return cls(int(data["k"]), int(data.get("t", 0)))
        k, r = data
        return cls(int(k), int(r))


IDENTITY = DihedralElement(0, 0)
S = DihedralElement(1, 0)
T = DihedralElement(0, 1)


def translation(n: int) -> DihedralElement:
    """sⁿ."""
    return DihedralElement(n, 0)


def reflection(n: int) -> DihedralElement:
    """sⁿt."""
    return DihedralElement(n, 1)


def dmul(a: DihedralElement, b: DihedralElement) -> DihedralElement:
    """Product ab in normal form."""
    sign = -1 if a.reflection else 1
    return DihedralElement(a.exponent + sign * b.exponent, a.reflection ^ b.reflection)


def word_length(g: DihedralElement) -> int:
    """Word length for the generating set {s, s⁻¹, t}."""
    return abs(g.exponent) + g.reflection


def dmetric(g1: DihedralElement, g2: DihedralElement) -> int:
    """Right-invariant word metric d(g1, g2) = |g2·g1⁻¹|."""
    return word_length(dmul(g2, g1.inverse()))


def phi_auto(i: int, g: DihedralElement) -> DihedralElement:
    """The automorphism φᵢ with φᵢ(s) = s and φᵢ(t) = sⁱt."""
    return DihedralElement(g.exponent + i * g.reflection, g.reflection)


def invert_orientation(g: DihedralElement) -> DihedralElement:
    """The automorphism s ↦ s⁻¹, t ↦ t (conjugation by t)."""
    return DihedralElement(-g.exponent, g.reflection)


def pairing_pi(n: int) -> DihedralElement:
    """Bijection Z → D∞ with 2m ↦ sᵐ and 2m+1 ↦ tsᵐ."""
    m, parity = divmod(n, 2)
    if parity == 0:
        return DihedralElement(m, 0)
    # t·sᵐ = s⁻ᵐt
    return DihedralElement(-m, 1)


def pairing_pi_inv(g: DihedralElement) -> int:
    """Inverse of :func:`pairing_pi`: sⁿ ↦ 2n and sⁿt ↦ 1 − 2n."""
    if g.reflection:
        return 1 - 2 * g.exponent
    return 2 * g.exponent


def left_translation_conjugate(g: DihedralElement) -> Callable[[int], int]:
    """n ↦ π⁻¹(g·π(n)): left multiplication transported to Z."""
    return lambda n: pairing_pi_inv(dmul(g, pairing_pi(n)))


def right_translation_conjugate(g: DihedralElement) -> Callable[[int], int]:
    """n ↦ π⁻¹(π(n)·g): right multiplication transported to Z."""
    return lambda n: pairing_pi_inv(dmul(pairing_pi(n), g))


# Vectorised forms over parallel (exponent, reflection) arrays.


def dmul_arrays(
    k1: np.ndarray, r1: np.ndarray, k2: np.ndarray, r2: np.ndarray
) -> tuple[np.ndarray, np.ndarray]:
    return k1 + (1 - 2 * r1) * k2, r1 ^ r2


def dinv_arrays(k: np.ndarray, r: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    return np.where(r == 1, k, -k), r.copy()


def word_length_arrays(k: np.ndarray, r: np.ndarray) -> np.ndarray:
    return np.abs(k) + r


def to_arrays(elements: list[DihedralElement] | tuple[DihedralElement, ...]) -> tuple[np.ndarray, np.ndarray]:
    k = np.array([g.exponent for g in elements], dtype=np.int64)
    r = np.array([g.reflection for g in elements], dtype=np.int64)
    return k, r


def from_arrays(k: np.ndarray, r: np.ndarray) -> tuple[DihedralElement, ...]:
    return tuple(DihedralElement(int(a), int(b)) for a, b in zip(k, r, strict=True))
