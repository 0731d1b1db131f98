"""Stabilizer sweep on finite D∞ models.

A finite model cannot be free: sⁿ with n the kernel period acts trivially.
Stabilizers are therefore read modulo that kernel, where a minimal model
leaves either the trivial group or a single reflection {e, sⁱt}.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any

import numpy as np

from coe_rigidity.group.dihedral import DihedralElement, reflection, translation
from coe_rigidity.group.subgroups import SubgroupClass, SubgroupKind, classify_subgroup
from coe_rigidity.rigidity.models import DinftyModel


@dataclass(frozen=True)
class StateStabilizer:
    state: int
    subgroup: SubgroupClass
    kernel: int
    reflection: int | None  # i when the stabilizer is {e, sⁱt} modulo the kernel

    @property
    def is_trivial(self) -> bool:
        return self.subgroup.kind is SubgroupKind.PURE_TRANSLATION and self.subgroup.k == self.kernel


@dataclass
class FreenessReport:
    """Per-state stabilizers and fixed sets of each reflection sⁱt, i mod the kernel period."""

    model: DinftyModel
    window: int
    kernel_period: int
    stabilizers: tuple[StateStabilizer, ...]
    fixed_sets: dict[int, tuple[int, ...]]

    @property
    def is_free(self) -> bool:
        """Free modulo the kernel."""
        return all(s.is_trivial for s in self.stabilizers)

    @property
    def fixed_counts(self) -> dict[int, int]:
        return {i: len(states) for i, states in self.fixed_sets.items()}

    def to_json(self) -> dict[str, Any]:
        return {
            "model": self.model.to_json(),
            "window": self.window,
            "kernel_period": self.kernel_period,
            "free_mod_kernel": self.is_free,
            "stabilizers": [
                {"state": s.state, "subgroup": str(s.subgroup), "reflection": s.reflection} for s in self.stabilizers
            ],
            "fixed_sets": {str(i): list(states) for i, states in sorted(self.fixed_sets.items())},
        }


def kernel_period(model: DinftyModel) -> int:
    """Smallest n ≥ 1 with sⁿ acting trivially."""
    states = model.state_array()
    for n in range(1, model.size + 1):
        if np.array_equal(model.act_array(translation(n)), states):
            return n
    raise ValueError(f"s has no finite period on {model}")


def topological_freeness_sweep(model: DinftyModel, window: int | None = None) -> FreenessReport:
    """Stabilizer of every state among words of length ≤ ``window`` (default 2·n_L)."""
    window = window if window is not None else 2 * model.modulus
    period = kernel_period(model)
    states = model.state_array()

    found: list[list[DihedralElement]] = [[translation(period)] for _ in states]
    fixed_sets: dict[int, set[int]] = {}
    for n in range(-window, window + 1):
        candidates = [translation(n)] if n else []
        if abs(n) + 1 <= window:
            candidates.append(reflection(n))
        for g in candidates:
            for x in np.flatnonzero(model.act_array(g) == states):
                found[int(x)].append(g)
                if g.reflection:
                    fixed_sets.setdefault(n % period, set()).add(int(x))

    stabilizers = []
    for x, gens in enumerate(found):
        subgroup = classify_subgroup(gens)
        index = subgroup.i if subgroup.kind is SubgroupKind.LATTICE_WITH_REFLECTION else None
        if index is not None and subgroup.k != period:
            index = None
        stabilizers.append(StateStabilizer(state=x, subgroup=subgroup, kernel=period, reflection=index))
    return FreenessReport(
        model=model,
        window=window,
        kernel_period=period,
        stabilizers=tuple(stabilizers),
        fixed_sets={i: tuple(sorted(xs)) for i, xs in sorted(fixed_sets.items())},
    )
