"""Non-conjugacy certificates for coe skew pairs, and a brute-force conjugacy search.

An automorphism of F×Z has the form (t, n) ↦ (ε(t)·gⁿ, ±n) with ε ∈ Aut(F) and
g ∈ C(F). A conjugacy between skew products over the same odometer then
amounts to a base map φ(x) = ±x + r and a transfer ψ with

    c′(±n, φ(x)) = ψ(x + n)·ε(c(n, x))·gⁿ·ψ(x)⁻¹.

With c′ trivial and C(F) = {e}, a conjugacy forces c to be a coboundary, so a
non-coboundary c certifies that the coe pair is not conjugate.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Any

import numpy as np
from sympy import isprime

from coe_rigidity.cocycle.coboundary import NeverCoboundary, coboundary_decide_chain
from coe_rigidity.cocycle.level_cocycle import LevelCocycle, restrict_target
from coe_rigidity.group.finite_table import FiniteGroupTable, center
from coe_rigidity.odometer.chain import DivisibilityChain
from coe_rigidity.skew.system import SkewSystem, require_same_base
from coe_rigidity.trace import TraceLog


class CannotCertifyReason(Enum):
    NONTRIVIAL_CENTER = "nontrivial_center"
    COBOUNDARY = "coboundary"
    VALUES_NOT_PRIME_CYCLIC = "values_not_prime_cyclic"


@dataclass(frozen=True)
class CannotCertify:
    reason: CannotCertifyReason
    detail: str = ""

    def to_json(self) -> dict[str, Any]:
        return {"certified": False, "reason": self.reason.value, "detail": self.detail}


@dataclass(frozen=True)
class NonConjugacyCertificate:
    """Evidence that the skew pair built from ``cocycle`` and the trivial cocycle is not conjugate.

    Attributes:
        group: The finite group F.
        table_digest: SHA-256 of F's multiplication table.
        center_witnesses: For each a ≠ e, some b with ab ≠ ba.
        value_subgroup: Members of the prime-order subgroup K₀ generated by the cocycle values.
        reduced: The cocycle re-indexed into K₀ ≅ Z/p.
        chain: Chain the obstruction is decided over.
        obstruction: The verdict for ``reduced``.
    """

    group: FiniteGroupTable
    table_digest: str
    center_witnesses: tuple[tuple[int, int], ...]
    value_subgroup: tuple[int, ...]
    cocycle: LevelCocycle
    reduced: LevelCocycle
    chain: DivisibilityChain
    obstruction: NeverCoboundary

    def verify(self) -> bool:
        """Re-check both components against the stored group."""
        if self.group.digest() != self.table_digest:
            return False
        g = self.group
        nontrivial = {a for a in g.elements if a != g.identity}
        if {a for a, _ in self.center_witnesses} != nontrivial:
            return False
        if any(g.mul(a, b) == g.mul(b, a) for a, b in self.center_witnesses):
            return False
        reduced, _ = restrict_target(self.cocycle, frozenset(self.value_subgroup))
        if reduced.table != self.reduced.table:
            return False
        return coboundary_decide_chain(self.reduced, self.chain) == self.obstruction

    def to_json(self) -> dict[str, Any]:
        return {
            "certified": True,
            "group": self.group.name,
            "table_digest": self.table_digest,
            "center_witnesses": [list(w) for w in self.center_witnesses],
            "value_subgroup": list(self.value_subgroup),
            "cocycle": self.cocycle.to_json(),
            "reduced": self.reduced.to_json(),
            "chain": self.chain.to_json(),
            "obstruction": self.obstruction.to_json(),
        }


def _center_witnesses(group: FiniteGroupTable) -> tuple[tuple[int, int], ...]:
    witnesses = []
    for a in group.elements:
        if a == group.identity:
            continue
        row_diff = np.flatnonzero(group.table[a] != group.table[:, a])
        witnesses.append((a, int(row_diff[0])))
    return tuple(witnesses)


def nonconjugacy_certificate(
    group: FiniteGroupTable,
    c: LevelCocycle,
    chain: DivisibilityChain,
    trace: TraceLog | None = None,
) -> NonConjugacyCertificate | CannotCertify:
    """Certify non-conjugacy of the skew pair (c, trivial), or say why not."""
    trace = trace if trace is not None else TraceLog(subject="certificate")
    if c.target != group:
        raise ValueError(f"cocycle is valued in {c.target!r}, not {group!r}")

    central = center(group)
    if central != {group.identity}:
        trace.fail("center", f"|C(F)|={len(central)}")
        return CannotCertify(CannotCertifyReason.NONTRIVIAL_CENTER, f"center has {len(central)} elements")
    trace.ok("center", "trivial")

    values = group.subgroup_generated(set(c.table))
    if not isprime(len(values)):
        trace.fail("values", f"|K0|={len(values)}")
        return CannotCertify(
            CannotCertifyReason.VALUES_NOT_PRIME_CYCLIC,
            f"cocycle values generate a subgroup of order {len(values)}",
        )
    reduced, members = restrict_target(c, values, name=f"Z/{len(values)}")
    trace.ok("values", f"|K0|={len(values)}")

    verdict = coboundary_decide_chain(reduced, chain)
    if not isinstance(verdict, NeverCoboundary):
        trace.fail("obstruction", f"coboundary at level {verdict.level}")
        return CannotCertify(CannotCertifyReason.COBOUNDARY, f"coboundary at level {verdict.level}")
    trace.ok("obstruction", f"sum={verdict.sum_value}")

    return NonConjugacyCertificate(
        group=group,
        table_digest=group.digest(),
        center_witnesses=_center_witnesses(group),
        value_subgroup=tuple(members),
        cocycle=c,
        reduced=reduced,
        chain=chain,
        obstruction=verdict,
    )


@dataclass(frozen=True)
class AutomorphismTriple:
    """Φ(t, n) = (ε(t)·gⁿ, sign·n)."""

    epsilon: tuple[int, ...]
    g: int
    sign: int


def automorphism_family(group: FiniteGroupTable) -> list[AutomorphismTriple]:
    """Aut(F×Z) as (ε, g, ±) with ε ∈ Aut(F), g ∈ C(F)."""
    central = sorted(center(group))
    return [
        AutomorphismTriple(epsilon=eps, g=g, sign=sign)
        for eps in group.automorphisms()
        for g in central
        for sign in (1, -1)
    ]


@dataclass(frozen=True)
class SkewConjugacy:
    """Ψ(x, f) = (sign·x + offset, ψ(x)·ε(f)) intertwining α̃ and α̃′ through ``automorphism``."""

    automorphism: AutomorphismTriple
    offset: int
    psi: tuple[int, ...]

    def to_json(self) -> dict[str, Any]:
        return {
            "epsilon": list(self.automorphism.epsilon),
            "g": self.automorphism.g,
            "sign": self.automorphism.sign,
            "offset": self.offset,
            "psi": list(self.psi),
        }


def conjugacy_holds(sys: SkewSystem, sys_prime: SkewSystem, conj: SkewConjugacy, window: int) -> bool:
    """Ψ(α̃_{(f,n)}p) = α̃′_{Φ(f,n)}Ψ(p) for |n| ≤ window, all f and points."""
    require_same_base(sys, sys_prime)
    group = sys.group
    size = sys.base.modulus
    eps = np.asarray(conj.automorphism.epsilon, dtype=np.int64)
    psi = np.asarray(conj.psi, dtype=np.int64)
    sign = conj.automorphism.sign
    table = sys.cocycle_table(window)
    table_prime = sys_prime.cocycle_table(window)
    xs, fs = sys.point_arrays()
    phi = (sign * xs + conj.offset) % size
    image_f = group.mul(psi[xs], eps[fs])
    for n in range(-window, window + 1):
        gn = group.power(conj.automorphism.g, n)
        moved_x = (xs + n) % size
        moved_f = group.mul(table.row(n)[xs], fs)
        for f in group.elements:
            # left side: Ψ(x + n, c(n, x)·f′·f⁻¹)
            left_f = group.mul(psi[moved_x], eps[group.mul(moved_f, group.inverse(f))])
            left_x = (sign * moved_x + conj.offset) % size
            # right side: α̃′ by (ε(f)·gⁿ, sign·n) on Ψ(p)
            h = int(group.mul(eps[f], gn))
            right_f = group.mul(group.mul(table_prime.row(sign * n)[phi], image_f), group.inverse(h))
            right_x = (phi + sign * n) % size
            if np.any(left_x != right_x) or np.any(left_f != right_f):
                return False
    return True


def search_skew_conjugacy(sys: SkewSystem, sys_prime: SkewSystem, window: int) -> SkewConjugacy | None:
    """First conjugacy found by exhaustive search, or None.

    The n = 1 case of the transfer equation determines ψ from ψ(0), so the
    search runs over Aut(F×Z), the base offset r and ψ(0) only.
    """
    require_same_base(sys, sys_prime)
    group = sys.group
    size = sys.base.modulus
    c = sys.cocycle
    c_prime = sys_prime.cocycle
    for auto in automorphism_family(group):
        eps = auto.epsilon
        g_inv = int(group.inverse(auto.g))
        for offset in range(size):
            for start in group.elements:
                psi = [start]
                for x in range(size):
                    # ψ(x+1) = c′(±1, φ(x))·ψ(x)·g⁻¹·ε(c(1, x))⁻¹
                    lead = c_prime.value(auto.sign, auto.sign * x + offset)
                    tail = group.inverse(eps[c.value(1, x)])
                    psi.append(int(group.mul(group.mul(group.mul(lead, psi[-1]), g_inv), tail)))
                if psi[-1] != start:
                    continue
                candidate = SkewConjugacy(automorphism=auto, offset=offset, psi=tuple(psi[:-1]))
                if conjugacy_holds(sys, sys_prime, candidate, window):
                    return candidate
    return None
