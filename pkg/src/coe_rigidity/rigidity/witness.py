"""Continuous orbit equivalence witnesses between finite D∞ models.

A witness is a bijection h from the states of one model to those of another,
together with the generator values of its orbit cocycle: h(s·x) = c(s, x)·h(x)
and h(t·x) = c(t, x)·h(x). Values at other group elements follow from the
cocycle identity c(g₁g₂, x) = c(g₁, g₂x)·c(g₂, x).
"""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass
from typing import Any

import numpy as np

from coe_rigidity.errors import InvalidWitness, NotEquivariant
from coe_rigidity.group.dihedral import (
    IDENTITY,
    DihedralElement,
    dinv_arrays,
    dmul_arrays,
    from_arrays,
    reflection,
    to_arrays,
    translation,
)
from coe_rigidity.rigidity.models import DinftyModel


@dataclass(frozen=True)
class CoeWitness:
    """h plus the tables c(s, ·) and c(t, ·)."""

    h: tuple[int, ...]
    c_s: tuple[DihedralElement, ...]
    c_t: tuple[DihedralElement, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "h", tuple(int(v) for v in self.h))
        object.__setattr__(self, "c_s", tuple(self.c_s))
        object.__setattr__(self, "c_t", tuple(self.c_t))
        if not len(self.h) == len(self.c_s) == len(self.c_t):
            raise ValueError(f"witness tables disagree in length: {len(self.h)}, {len(self.c_s)}, {len(self.c_t)}")

    @property
    def size(self) -> int:
        return len(self.h)

    def generator_value(self, g: DihedralElement, x: int, model: DinftyModel) -> DihedralElement:
        """c(g, x) by walking the normal form sᵏtʳ of g."""
        value = IDENTITY
        y = x
        if g.reflection:
            value = self.c_t[y]
            y = int(model.t_permutation[y])
        step = 1 if g.exponent >= 0 else -1
        for _ in range(abs(g.exponent)):
            if step > 0:
                value = self.c_s[y] * value
                y = int(model.s_permutation[y])
            else:
                y = int(model.act(translation(-1), y))
                value = self.c_s[y].inverse() * value
        return value

    def to_json(self) -> dict[str, Any]:
        return {
            "h": list(self.h),
            "c_s": [[g.exponent, g.reflection] for g in self.c_s],
            "c_t": [[g.exponent, g.reflection] for g in self.c_t],
        }

    @classmethod
    def from_json(cls, data: dict[str, Any]) -> CoeWitness:
        return cls(
            h=tuple(data["h"]),
            c_s=tuple(DihedralElement.from_json(v) for v in data["c_s"]),
            c_t=tuple(DihedralElement.from_json(v) for v in data["c_t"]),
        )


@dataclass
class PowerTable:
    """c(sⁿ, x) for |n| ≤ window as exponent/reflection arrays, plus sⁿx.

    Row ``n + window`` holds the values for sⁿ.
    """

    exponents: np.ndarray
    reflections: np.ndarray
    positions: np.ndarray
    window: int

    def row(self, n: int) -> tuple[np.ndarray, np.ndarray]:
        if abs(n) > self.window:
            raise IndexError(f"|n|={abs(n)} outside table window {self.window}")
        return self.exponents[n + self.window], self.reflections[n + self.window]

    def moved(self, n: int) -> np.ndarray:
        return self.positions[n + self.window]


def power_table(witness: CoeWitness, model: DinftyModel, window: int) -> PowerTable:
    """Vectorised c(sⁿ, ·) by c(sⁿ⁺¹, x) = c(s, sⁿx)·c(sⁿ, x) in both directions."""
    size = model.size
    ks, rs = to_arrays(witness.c_s)
    inv_perm = model.act_array(translation(-1))
    rows = 2 * window + 1
    exps = np.zeros((rows, size), dtype=np.int64)
    refl = np.zeros((rows, size), dtype=np.int64)
    pos = np.zeros((rows, size), dtype=np.int64)
    pos[window] = model.state_array()
    for n in range(window):
        here = pos[window + n]
        exps[window + n + 1], refl[window + n + 1] = dmul_arrays(
            ks[here], rs[here], exps[window + n], refl[window + n]
        )
        pos[window + n + 1] = model.s_permutation[here]
    for n in range(0, -window, -1):
        back = inv_perm[pos[window + n]]
        # c(s⁻¹, y) = c(s, s⁻¹y)⁻¹
        step_k, step_r = dinv_arrays(ks[back], rs[back])
        exps[window + n - 1], refl[window + n - 1] = dmul_arrays(step_k, step_r, exps[window + n], refl[window + n])
        pos[window + n - 1] = back
    return PowerTable(exponents=exps, reflections=refl, positions=pos, window=window)


def _reflection_row(
    witness: CoeWitness, model: DinftyModel, table: PowerTable, n: int
) -> tuple[np.ndarray, np.ndarray]:
    """c(sⁿt, x) = c(sⁿ, tx)·c(t, x) for every state."""
    tk, tr = to_arrays(witness.c_t)
    tx = model.t_permutation
    k, r = table.row(n)
    return dmul_arrays(k[tx], r[tx], tk, tr)


def witness_from_conjugacy(
    model: DinftyModel,
    model_prime: DinftyModel,
    h: Sequence[int],
    k: int = 0,
) -> CoeWitness:
    """Orbit cocycle of a bijection h that intertwines the actions through φ_k.

    h must satisfy h(gx) = φ_k(g)·h(x) on generators, or the same identity
    after inverting orientation (conjugation by t), which covers maps like
    x ↦ o − x. The orientation is read from the s-step and must be the same at
    every state. c(t, x) is then exactly sᵏt, or s⁻ᵏt for reversed orientation;
    a reflection that only matches modulo n_L for another k raises.
    """
    h = tuple(int(v) for v in h)
    if len(h) != model.size or model.size != model_prime.size:
        raise ValueError(f"h has {len(h)} entries for models of sizes {model.size} and {model_prime.size}")
    m = model_prime.modulus
    c_s: list[DihedralElement] = []
    c_t: list[DihedralElement] = []
    orientation = 0
    for x in model.states():
        target = h[int(model.s_permutation[x])]
        if model_prime.act(translation(1), h[x]) == target:
            sign = 1
        elif model_prime.act(translation(-1), h[x]) == target:
            sign = -1
        else:
            raise NotEquivariant("s", x, f"h(sx)={target} is not s^±1·h(x)")
        if orientation and sign != orientation:
            raise NotEquivariant("s", x, f"h(sx)={target} reverses orientation relative to state 0")
        orientation = orientation or sign
        c_s.append(translation(orientation))

        expected = orientation * k
        reflected = model_prime.act(reflection(0), h[x])
        j = model_prime.translation_offset(reflected, h[int(model.t_permutation[x])])
        if j is None:
            raise NotEquivariant("t", x, "no reflection carries h(x) to h(tx)")
        if (j - expected) % m:
            raise NotEquivariant("t", x, f"h(tx) = s^{j}t·h(x) mod {m}, not φ_{k}(t)·h(x)")
        c_t.append(reflection(expected))
    return CoeWitness(h=h, c_s=tuple(c_s), c_t=tuple(c_t))


def twist_witness(
    witness: CoeWitness,
    model: DinftyModel,
    model_prime: DinftyModel,
    untwister: Sequence[DihedralElement],
) -> CoeWitness:
    """The cohomologous witness (U⁻¹·h, U(gx)⁻¹·c(g, x)·U(x))."""
    if len(untwister) != model.size:
        raise ValueError(f"untwister has {len(untwister)} entries for {model.size} states")
    uk, ur = to_arrays(untwister)
    inv_k, inv_r = dinv_arrays(uk, ur)
    h = np.asarray(witness.h, dtype=np.int64)
    new_h = model_prime.act_elements(inv_k, inv_r, h)
    seen, first = np.unique(new_h, return_index=True)
    if len(seen) != model_prime.size:
        repeated = np.setdiff1d(np.arange(len(new_h)), first)
        raise InvalidWitness("U⁻¹·h is a bijection", {"state": int(repeated[0]), "h": new_h.tolist()})

    def conjugated(values: tuple[DihedralElement, ...], perm: np.ndarray) -> tuple[DihedralElement, ...]:
        k, r = to_arrays(values)
        k, r = dmul_arrays(inv_k[perm], inv_r[perm], k, r)
        return from_arrays(*dmul_arrays(k, r, uk, ur))

    return CoeWitness(
        h=tuple(int(v) for v in new_h),
        c_s=conjugated(witness.c_s, model.s_permutation),
        c_t=conjugated(witness.c_t, model.t_permutation),
    )


def check_witness(
    witness: CoeWitness,
    model: DinftyModel,
    model_prime: DinftyModel,
    window: int | None = None,
) -> None:
    """Raise :class:`InvalidWitness` at the first violated witness invariant.

    Checks that h is a bijection intertwining the generators through c, that
    c respects t² = e and tst = s⁻¹, and that g ↦ c(g, x) is injective on
    {sⁿ, sⁿt : |n| ≤ window} (default n_L).
    """
    size = model.size
    if witness.size != size or model_prime.size != size:
        raise InvalidWitness("shape", {"witness": witness.size, "model": size, "model_prime": model_prime.size})
    h = np.asarray(witness.h, dtype=np.int64)
    if not np.array_equal(np.sort(h), np.arange(size)):
        raise InvalidWitness("h is a bijection", {"h": list(witness.h)})

    sk, sr = to_arrays(witness.c_s)
    tk, tr = to_arrays(witness.c_t)
    generators = (
        ("h(sx) = c(s,x)h(x)", model.s_permutation, sk, sr),
        ("h(tx) = c(t,x)h(x)", model.t_permutation, tk, tr),
    )
    for name, perm, k, r in generators:
        bad = np.flatnonzero(h[perm] != model_prime.act_elements(k, r, h))
        if bad.size:
            raise InvalidWitness(name, {"state": int(bad[0])})

    t = model.t_permutation
    s = model.s_permutation
    k, r = dmul_arrays(tk[t], tr[t], tk, tr)
    bad = np.flatnonzero((k != 0) | (r != 0))
    if bad.size:
        raise InvalidWitness("c(t,tx)c(t,x) = e", {"state": int(bad[0])})

    inv_perm = model.act_array(translation(-1))
    # c(t, stx)·c(s, tx)·c(t, x) against c(s⁻¹, x) = c(s, s⁻¹x)⁻¹
    k, r = dmul_arrays(sk[t], sr[t], tk, tr)
    k, r = dmul_arrays(tk[s[t]], tr[s[t]], k, r)
    ek, er = dinv_arrays(sk[inv_perm], sr[inv_perm])
    bad = np.flatnonzero((k != ek) | (r != er))
    if bad.size:
        raise InvalidWitness("c(tst,x) = c(s^-1,x)", {"state": int(bad[0])})

    window = window if window is not None else model.modulus
    table = power_table(witness, model, window)
    codes = [2 * table.exponents + table.reflections]
    for n in range(-window, window + 1):
        k, r = _reflection_row(witness, model, table, n)
        codes.append((2 * k + r)[None, :])
    stacked = np.sort(np.concatenate(codes, axis=0), axis=0)
    repeats = np.argwhere(stacked[1:] == stacked[:-1])
    if repeats.size:
        raise InvalidWitness("g -> c(g,x) injective", {"state": int(repeats[0][1]), "window": window})
