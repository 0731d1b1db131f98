"""Subgroups of D∞.

Every subgroup is one of ⟨sᵏ, sⁱt⟩ (k ≥ 1), ⟨sⁱt⟩ or ⟨sᵏ⟩ (k ≥ 0). The
classifier reads generators into that normal form.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

from coe_rigidity.group.dihedral import DihedralElement, reflection, translation


class SubgroupKind(Enum):
    LATTICE_WITH_REFLECTION = "lattice_with_reflection"  # ⟨sᵏ, sⁱt⟩
    PURE_REFLECTION = "pure_reflection"  # ⟨sⁱt⟩
    PURE_TRANSLATION = "pure_translation"  # ⟨sᵏ⟩


@dataclass(frozen=True)
class SubgroupClass:
    """Canonical description of a subgroup of D∞.

    Attributes:
        kind: Which of the three shapes the subgroup has.
        k: Translation period (0 for PURE_REFLECTION and for the trivial group).
        i: Reflection offset; for LATTICE_WITH_REFLECTION it lies in [0, k).
    """

    kind: SubgroupKind
    k: int = 0
    i: int = 0

    def __str__(self) -> str:
        if self.kind is SubgroupKind.LATTICE_WITH_REFLECTION:
            return f"<s^{self.k}, s^{self.i}t>"
        if self.kind is SubgroupKind.PURE_REFLECTION:
            return f"<s^{self.i}t>"
        return f"<s^{self.k}>"

    @property
    def is_trivial(self) -> bool:
        return self.kind is SubgroupKind.PURE_TRANSLATION and self.k == 0

    def contains(self, g: DihedralElement) -> bool:
        if self.kind is SubgroupKind.PURE_TRANSLATION:
            if g.reflection:
                return False
            return g.exponent == 0 if self.k == 0 else g.exponent % self.k == 0
        if self.kind is SubgroupKind.PURE_REFLECTION:
            return (g.exponent == 0 and not g.reflection) or (g.reflection == 1 and g.exponent == self.i)
        offset = self.i if g.reflection else 0
        return (g.exponent - offset) % self.k == 0

    def generators(self) -> list[DihedralElement]:
        if self.kind is SubgroupKind.LATTICE_WITH_REFLECTION:
            return [translation(self.k), reflection(self.i)]
        if self.kind is SubgroupKind.PURE_REFLECTION:
            return [reflection(self.i)]
        return [translation(self.k)]


def classify_subgroup(gens: list[DihedralElement]) -> SubgroupClass:
    """Canonical class of the subgroup generated by ``gens``."""
    if not gens:
        raise ValueError("classify_subgroup needs at least one generator")

    translations = [g.exponent for g in gens if not g.reflection]
    reflections = [g.exponent for g in gens if g.reflection]

    period = 0
    for exponent in translations:
        period = math.gcd(period, exponent)
    if not reflections:
        return SubgroupClass(SubgroupKind.PURE_TRANSLATION, k=period)

    # (sᵃt)(sᵇt) = sᵃ⁻ᵇ, so reflection differences join the translation lattice.
    first = reflections[0]
    for exponent in reflections[1:]:
        period = math.gcd(period, exponent - first)
    if period == 0:
        return SubgroupClass(SubgroupKind.PURE_REFLECTION, i=first)
    return SubgroupClass(SubgroupKind.LATTICE_WITH_REFLECTION, k=period, i=first % period)
