"""Restriction and lifting of orbit equivalences between induced (Case II) models.

An identity-based coe between two induced models restricts to a Z-valued
cocycle θ on the ⟨s⟩-component. Conversely a θ that telescopes as
θ(x) = f(x) − f(x + u) ± 1 lifts back to a conjugacy (c, x) ↦ (c, x + f(x)·u′) up to the automorphism fixing t.
"""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass
from typing import Any

import numpy as np

from coe_rigidity.cocycle.level_cocycle import CocycleTable, Orientation, verify_cocycle_identity
from coe_rigidity.errors import NotIdentityWitness, TransferUnsolvable, VerificationFailed
from coe_rigidity.group.dihedral import DihedralElement, invert_orientation, reflection, to_arrays, translation
from coe_rigidity.rigidity.extraction import GHUnsolvable, gh_solve
from coe_rigidity.rigidity.models import DinftyModel, ModelKind
from coe_rigidity.rigidity.witness import CoeWitness, check_witness


@dataclass
class InducedRestriction:
    """θ(s, x) = s^θ(x) on the ⟨s⟩-component, x ∈ Z/n_L."""

    theta: np.ndarray
    window: int

    @property
    def winding(self) -> int:
        return int(self.theta.sum())

    def to_json(self) -> dict[str, Any]:
        return {"theta": self.theta.tolist(), "window": self.window, "winding": self.winding}


@dataclass
class InducedLift:
    """Conjugacy (c, x) ↦ (c, x + f(x)·u′) intertwining s ↦ τ(s), t ↦ t.

    Attributes:
        sign: +1 when τ is the identity, -1 when τ(s) = s⁻¹.
        transfer: f, with θ(x) = f(x) − f(x + u) + sign.
        conjugacy: The lifted map as a state permutation.
    """

    sign: int
    transfer: np.ndarray
    conjugacy: tuple[int, ...]

    def automorphism(self, g: DihedralElement) -> DihedralElement:
        return g if self.sign == 1 else invert_orientation(g)

    def to_json(self) -> dict[str, Any]:
        return {
            "sign": self.sign,
            "automorphism": "identity" if self.sign == 1 else "s -> s^-1, t -> t",
            "transfer": self.transfer.tolist(),
            "conjugacy": list(self.conjugacy),
        }


def _require_induced_pair(model: DinftyModel, model_prime: DinftyModel) -> None:
    if model.kind is not ModelKind.CASE_II or model_prime.kind is not ModelKind.CASE_II:
        raise NotIdentityWitness(f"induced restriction needs two Case II models, got {model} and {model_prime}")
    if model.modulus != model_prime.modulus:
        raise NotIdentityWitness(f"models differ in n_L: {model.modulus} and {model_prime.modulus}")


def induced_coe_restrict(
    witness: CoeWitness,
    model: DinftyModel,
    model_prime: DinftyModel,
    window: int | None = None,
) -> InducedRestriction:
    """θ(x) := c(s, (⟨s⟩, x)), verified as a Z-cocycle with α_s(x) = β_θ(x)(x)."""
    _require_induced_pair(model, model_prime)
    if witness.h != tuple(model.states()):
        raise NotIdentityWitness("the witness homeomorphism is not the identity")
    check_witness(witness, model, model_prime)

    m = model.modulus
    window = window if window is not None else m
    k, r = to_arrays(witness.c_s[:m])
    bad = np.flatnonzero(r != 0)
    if bad.size:
        raise VerificationFailed("c(s, x~) lies in <s>", {"state": int(bad[0])})

    xs = np.arange(m, dtype=np.int64)
    alpha = (xs + model.rotation) % m
    beta = (xs + k * model_prime.rotation) % m
    bad = np.flatnonzero(alpha != beta)
    if bad.size:
        raise VerificationFailed("alpha_s(x) = beta_theta(x)(x)", {"state": int(bad[0])})

    table = CocycleTable.from_integers(k, 2 * window, unit=model.rotation)
    failure = verify_cocycle_identity(table, np.add, window)
    if failure is not None:
        raise VerificationFailed("theta cocycle identity", failure)
    return InducedRestriction(theta=k, window=window)


def induced_conjugacy_lift(
    theta: Sequence[int] | np.ndarray,
    model: DinftyModel,
    model_prime: DinftyModel,
    sign: int | None = None,
) -> InducedLift:
    """Lift θ = f(x) − f(x + u) + sign to a conjugacy of the induced models.

    The sign defaults to the direction of the winding of θ. Raises
    :class:`TransferUnsolvable` when θ − sign does not telescope, and
    :class:`VerificationFailed` when the lifted map is not a conjugacy.
    """
    _require_induced_pair(model, model_prime)
    theta = np.asarray(theta, dtype=np.int64)
    m = model.modulus
    if theta.shape != (m,):
        raise ValueError(f"theta has shape {theta.shape}, expected ({m},)")
    if sign is None:
        sign = 1 if theta.sum() >= 0 else -1
    if sign not in (1, -1):
        raise ValueError(f"sign must be +1 or -1, got {sign}")

    xs = np.arange(m, dtype=np.int64)
    solved = gh_solve(sign - theta, (xs + model.rotation) % m, Orientation.FORWARD)
    if isinstance(solved, GHUnsolvable):
        raise TransferUnsolvable(solved.cycle_sum, "the <s>-component")
    f = solved.values

    states = model.state_array()
    coset, base = np.divmod(states, m)
    conj = coset * m + (base + f[base] * model_prime.rotation) % m
    if not np.array_equal(np.sort(conj), states):
        raise VerificationFailed("lifted map is a bijection", {"image": conj.tolist()})

    lift = InducedLift(sign=sign, transfer=f, conjugacy=tuple(int(v) for v in conj))
    for name, g in (("s", translation(1)), ("t", reflection(0))):
        bad = np.flatnonzero(conj[model.act_array(g)] != model_prime.act_array(lift.automorphism(g), conj))
        if bad.size:
            raise VerificationFailed(f"Psi({name}x) = tau({name}) Psi(x)", {"state": int(bad[0]), "sign": sign})
    return lift
