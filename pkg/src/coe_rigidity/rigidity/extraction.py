"""Turn a coe witness between D∞ models into an explicit conjugacy.

The pipeline splits states by the orientation of n ↦ c(sⁿ, x), strips the
orientation off as a bounded defect, normalizes the defect into a Z-valued
cocycle, telescopes it into a transfer, and reads off the automorphism
φₖ(s) = s, φₖ(t) = sᵏt. Every stage either verifies its identity on the
whole finite model or raises with the first counterexample.
"""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass
from typing import Any

import numpy as np

from coe_rigidity.cocycle.level_cocycle import Orientation
from coe_rigidity.errors import (
    DefectNotInExpectedCoset,
    NonReflectionCoset,
    NotConstant,
    TransferUnsolvable,
    UnclassifiablePoint,
    VerificationFailed,
)
from coe_rigidity.group.dihedral import (
    DihedralElement,
    dinv_arrays,
    dmul_arrays,
    from_arrays,
    phi_auto,
    reflection,
    to_arrays,
    translation,
    word_length,
)
from coe_rigidity.rigidity.models import DinftyModel, ModelKind
from coe_rigidity.rigidity.witness import CoeWitness, _reflection_row, check_witness, power_table
from coe_rigidity.trace import TraceLog

Arrays = tuple[np.ndarray, np.ndarray]


def _mul(*factors: Arrays) -> Arrays:
    k, r = factors[0]
    for fk, fr in factors[1:]:
        k, r = dmul_arrays(k, r, fk, fr)
    return k, r


def _inv(pair: Arrays) -> Arrays:
    return dinv_arrays(*pair)


def _const(g: DihedralElement, size: int) -> Arrays:
    return np.full(size, g.exponent, dtype=np.int64), np.full(size, g.reflection, dtype=np.int64)


def _take(pair: Arrays, idx: np.ndarray) -> Arrays:
    return pair[0][idx], pair[1][idx]


def _first_mismatch(left: Arrays, right: Arrays) -> int | None:
    bad = np.flatnonzero((left[0] != right[0]) | (left[1] != right[1]))
    return int(bad[0]) if bad.size else None


@dataclass
class SplitConfig:
    """Window and bound for the orientation split."""

    window_multiplier: int = 4  # W = multiplier·n_L, at least 4
    bound: int | None = None  # None: B = 2·max(|c(s,x)| + |c(t,x)|)


@dataclass
class Partition:
    """X₊ / X₋ with the evidence that produced it."""

    model: DinftyModel
    signs: np.ndarray  # +1 on X₊, -1 on X₋
    window: int
    bound: int
    deviation_plus: np.ndarray
    deviation_minus: np.ndarray

    @property
    def plus(self) -> frozenset[int]:
        return frozenset(int(x) for x in np.flatnonzero(self.signs == 1))

    @property
    def minus(self) -> frozenset[int]:
        return frozenset(int(x) for x in np.flatnonzero(self.signs == -1))

    def sign(self, x: int) -> int:
        return int(self.signs[x])

    def to_json(self) -> dict[str, Any]:
        return {
            "plus": sorted(self.plus),
            "minus": sorted(self.minus),
            "window": self.window,
            "bound": self.bound,
        }


def split_X_pm(  # noqa: N802
    witness: CoeWitness,
    model: DinftyModel,
    window: int | None = None,
    config: SplitConfig | None = None,
) -> Partition:
    """Classify each state by whether c(sⁿ, x) tracks sⁿ or s⁻ⁿ over |n| ≤ W."""
    config = config if config is not None else SplitConfig()
    window = window if window is not None else config.window_multiplier * model.modulus
    if window < 4 * model.modulus:
        raise ValueError(f"split window {window} is below 4*n_L = {4 * model.modulus}")
    bound = config.bound
    if bound is None:
        bound = 2 * max(word_length(a) + word_length(b) for a, b in zip(witness.c_s, witness.c_t, strict=True))

    table = power_table(witness, model, window)
    inv_k, inv_r = dinv_arrays(table.exponents, table.reflections)
    ns = np.arange(-window, window + 1, dtype=np.int64)[:, None]
    # d(g, sⁿ) = |sⁿ·g⁻¹|
    dev_plus = (np.abs(ns + inv_k) + inv_r).max(axis=0)
    dev_minus = (np.abs(-ns + inv_k) + inv_r).max(axis=0)

    signs = np.zeros(model.size, dtype=np.int64)
    signs[(dev_plus <= bound) & (dev_plus < dev_minus)] = 1
    signs[(dev_minus <= bound) & (dev_minus < dev_plus)] = -1
    stuck = np.flatnonzero(signs == 0)
    if stuck.size:
        x = int(stuck[0])
        raise UnclassifiablePoint(x, int(dev_plus[x]), int(dev_minus[x]), bound)
    return Partition(model, signs, window, bound, dev_plus, dev_minus)


def defect_cocycle(witness: CoeWitness, partition: Partition, n: int, x: int) -> DihedralElement:
    """a(sⁿ, x) = c(sⁿ, x)·s⁻ⁿ on X₊ and c(sⁿ, x)·sⁿ on X₋."""
    value = witness.generator_value(translation(n), x, partition.model)
    return value * translation(-n * partition.sign(x))


def defect_table(witness: CoeWitness, partition: Partition, window: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Exponents, reflection bits and positions sⁿx of a(sⁿ, ·) for |n| ≤ window."""
    table = power_table(witness, partition.model, window)
    ns = np.arange(-window, window + 1, dtype=np.int64)[:, None]
    shift = -ns * partition.signs[None, :]
    k, r = dmul_arrays(table.exponents, table.reflections, shift, np.zeros_like(table.reflections))
    return k, r, table.positions


@dataclass
class NormalizedDefect:
    """a′(sⁿ, x) = D(sⁿx)·a(sⁿ, x)·D(x)⁻¹, valued in ⟨s⟩.

    Attributes:
        generator: Exponent of a′(s, x) per state.
        untwist: D(x): t on X₋ and e on X₊.
        values: Exponents of a′(sⁿ, ·), row ``n + window``.
    """

    generator: np.ndarray
    untwist: tuple[DihedralElement, ...]
    values: np.ndarray
    window: int


def normalize_defect(witness: CoeWitness, partition: Partition, window: int | None = None) -> NormalizedDefect:
    model = partition.model
    window = window if window is not None else model.modulus
    size = model.size
    dk = np.zeros(size, dtype=np.int64)
    dr = (partition.signs == -1).astype(np.int64)

    # D(tx)·c(t, x)·D(x)⁻¹ must stay a reflection
    t = model.t_permutation
    tk, tr = to_arrays(witness.c_t)
    k, r = _mul((dk[t], dr[t]), (tk, tr), _inv((dk, dr)))
    bad = np.flatnonzero(r != 1)
    if bad.size:
        x = int(bad[0])
        raise DefectNotInExpectedCoset(x, 0, DihedralElement(int(k[x]), int(r[x])), "<s>t for the generator t")

    ak, ar, positions = defect_table(witness, partition, window)
    k, r = _mul((dk[positions], dr[positions]), (ak, ar), _inv((dk[None, :], dr[None, :])))
    bad = np.argwhere(r != 0)
    if bad.size:
        row, x = (int(v) for v in bad[0])
        value = DihedralElement(int(k[row, x]), int(r[row, x]))
        raise DefectNotInExpectedCoset(x, row - window, value, "<s>")
    return NormalizedDefect(
        generator=k[window + 1].copy(),
        untwist=from_arrays(dk, dr),
        values=k,
        window=window,
    )


@dataclass
class GHTransfer:
    """Integer transfer L with L(sx) = L(x) + g(x) (FORWARD) or L(x) − g(x) (INVERSE)."""

    values: np.ndarray
    orientation: Orientation = Orientation.FORWARD
    roots: tuple[int, ...] = ()

    def to_json(self) -> dict[str, Any]:
        return {"values": self.values.tolist(), "orientation": self.orientation.value, "roots": list(self.roots)}


@dataclass(frozen=True)
class GHUnsolvable:
    """The cycle through ``root`` has nonzero winding ``cycle_sum``."""

    cycle_sum: int
    root: int = 0


def gh_solve(
    g: Sequence[int] | np.ndarray,
    successor: np.ndarray | None = None,
    orientation: Orientation = Orientation.FORWARD,
) -> GHTransfer | GHUnsolvable:
    """Telescope g along every cycle of ``successor`` (default x ↦ x + 1 mod m).

    Each cycle starts from L = 0 at its smallest state. A cycle whose sum of g
    is nonzero has no solution.
    """
    g = np.asarray(g, dtype=np.int64)
    size = g.shape[0]
    succ = np.asarray(successor, dtype=np.int64) if successor is not None else (np.arange(size) + 1) % size
    step = 1 if orientation is Orientation.FORWARD else -1
    values = np.zeros(size, dtype=np.int64)
    seen = np.zeros(size, dtype=bool)
    roots = []
    for root in range(size):
        if seen[root]:
            continue
        roots.append(root)
        seen[root] = True
        total = int(g[root])
        x, y = root, int(succ[root])
        while y != root:
            values[y] = values[x] + step * g[x]
            seen[y] = True
            total += int(g[y])
            x, y = y, int(succ[y])
        if total != 0:
            return GHUnsolvable(cycle_sum=total, root=root)
    return GHTransfer(values=values, orientation=orientation, roots=tuple(roots))


def claim4_constant(
    witness: CoeWitness,
    model: DinftyModel,
    untwister: Sequence[DihedralElement],
    states: Sequence[int] | None = None,
) -> int:
    """The constant k with L′(x)·c(t, x)⁻¹·L′(tx)⁻¹ = sᵏt on ``states`` (default all)."""
    idx = np.asarray(list(states) if states is not None else model.states(), dtype=np.int64)
    lk, lr = to_arrays(untwister)
    tk, tr = to_arrays(witness.c_t)
    tx = model.t_permutation[idx]
    k, r = _mul((lk[idx], lr[idx]), _inv((tk[idx], tr[idx])), _inv((lk[tx], lr[tx])))
    bad = np.flatnonzero(r != 1)
    if bad.size:
        i = int(bad[0])
        raise NonReflectionCoset(int(idx[i]), DihedralElement(int(k[i]), int(r[i])))
    found: dict[int, list[int]] = {}
    for x, value in zip(idx.tolist(), k.tolist(), strict=True):
        found.setdefault(int(value), []).append(int(x))
    if len(found) > 1:
        raise NotConstant(found)
    return next(iter(found))


@dataclass
class ConjugacyResult:
    """An explicit conjugacy Ψ(x) = V(x)·h(x) with Ψ(gx) = φₖ(g)·Ψ(x).

    Attributes:
        kind: Which case of the model the pipeline ran.
        untwister: V, with c(g, x) = V(gx)⁻¹·φₖ(g)·V(x).
        k: Index of the automorphism φₖ.
        verified: Whether every identity held on the whole model.
        conjugacy: Ψ as a state permutation.
        reflection_index: The constant read off the t-values (equal to k in Case I).
        partition_sizes: |X₊| and |X₋|.
        defect_values: Distinct exponents of the normalized defect at s.
        transfer: The integer transfer solved from the normalized defect.
    """

    kind: ModelKind
    untwister: tuple[DihedralElement, ...]
    k: int
    verified: bool
    conjugacy: tuple[int, ...]
    reflection_index: int
    partition_sizes: tuple[int, int] = (0, 0)
    defect_values: tuple[int, ...] = ()
    transfer: tuple[int, ...] = ()

    def to_json(self) -> dict[str, Any]:
        return {
            "case": self.kind.value,
            "k": self.k,
            "reflection_index": self.reflection_index,
            "verified": self.verified,
            "partition": {"plus": self.partition_sizes[0], "minus": self.partition_sizes[1]},
            "defect_values": list(self.defect_values),
            "transfer": list(self.transfer),
            "untwister": [[g.exponent, g.reflection] for g in self.untwister],
            "conjugacy": list(self.conjugacy),
        }


def _verify_untwister(witness: CoeWitness, model: DinftyModel, untwister: Arrays, k: int) -> None:
    """c(g, x) = V(gx)⁻¹·φₖ(g)·V(x) for g ∈ {sⁿ, sⁿt : |n| ≤ n_L} and all x."""
    window = model.modulus
    table = power_table(witness, model, window)
    size = model.size
    for n in range(-window, window + 1):
        moved = table.moved(n)
        expected = _mul(_inv(_take(untwister, moved)), _const(translation(n), size), untwister)
        x = _first_mismatch(table.row(n), expected)
        if x is not None:
            raise VerificationFailed("c(s^n,x) = V(s^n x)^-1 s^n V(x)", {"n": n, "state": x})

        moved = table.moved(n)[model.t_permutation]
        image = phi_auto(k, reflection(n))
        expected = _mul(_inv(_take(untwister, moved)), _const(image, size), untwister)
        x = _first_mismatch(_reflection_row(witness, model, table, n), expected)
        if x is not None:
            raise VerificationFailed(f"c(s^n t,x) = V(s^n t x)^-1 {image} V(x)", {"n": n, "state": x})


def _verify_conjugacy(model: DinftyModel, model_prime: DinftyModel, conj: np.ndarray, k: int) -> None:
    if not np.array_equal(np.sort(conj), model_prime.state_array()):
        raise VerificationFailed("conjugacy is a bijection", {"image": conj.tolist()})
    for name, g in (("s", translation(1)), ("t", reflection(0))):
        perm = model.act_array(g)
        bad = np.flatnonzero(conj[perm] != model_prime.act_array(phi_auto(k, g), conj))
        if bad.size:
            raise VerificationFailed(f"Psi({name}x) = phi_k({name}) Psi(x)", {"state": int(bad[0]), "k": k})


def _case2_untwister(
    witness: CoeWitness,
    model: DinftyModel,
    transfer: Arrays,
    trace: TraceLog,
) -> tuple[Arrays, int]:
    """Patch the tX₀ transfer from X₀ and assemble V with Φ = id."""
    x0 = np.asarray(model.s_orbits()[0], dtype=np.int64)
    tx0 = model.t_permutation[x0]

    k = claim4_constant(witness, model, from_arrays(*transfer), states=x0.tolist())
    trace.ok("claim4", f"k={k}")

    tk, tr = to_arrays(witness.c_t)
    lx = _take(transfer, x0)
    c_t_x = (tk[x0], tr[x0])
    patched_k, patched_r = transfer[0].copy(), transfer[1].copy()
    pk, pr = _mul(_const(reflection(0), x0.size), _const(translation(-k), x0.size), lx, _inv(c_t_x))
    patched_k[tx0], patched_r[tx0] = pk, pr
    patched = (patched_k, patched_r)

    window = model.modulus
    table = power_table(witness, model, window)
    for n in range(-window, window + 1):
        fwd = table.moved(n)[x0]
        back = table.moved(-n)[x0]
        c_n = _take(table.row(n), x0)
        first = _mul(_inv(_take(patched, fwd)), _const(translation(n), x0.size), lx)
        second = _mul(
            _take((tk, tr), back),
            _inv(_take(patched, back)),
            _const(translation(-n), x0.size),
            lx,
        )
        branches = (
            ("c(s^n,x)", c_n, first),
            ("c(s^n t,x)", _take(_reflection_row(witness, model, table, n), x0), second),
            ("c(s^n,tx)", _take(table.row(n), tx0), _mul(second, _inv(c_t_x))),
            ("c(s^n t,tx)", _take(_reflection_row(witness, model, table, n), tx0), _mul(first, _take((tk, tr), tx0))),
            (
                "c(s^n,tx) = L'(s^n tx)^-1 s^n L'(tx)",
                _take(table.row(n), tx0),
                _mul(_inv(_take(patched, table.moved(n)[tx0])), _const(translation(n), x0.size), _take(patched, tx0)),
            ),
        )
        for name, left, right in branches:
            i = _first_mismatch(left, right)
            if i is not None:
                raise VerificationFailed(name, {"n": n, "state": int(x0[i])})
    trace.ok("case2_branches", f"window={window}")

    # V = L″ on X₀ and t·L″(x)·c(t, x)⁻¹ at tx
    vk, vr = transfer[0].copy(), transfer[1].copy()
    wk, wr = _mul(_const(reflection(0), x0.size), lx, _inv(c_t_x))
    vk[tx0], vr[tx0] = wk, wr
    return (vk, vr), k


def rigidity_extract(
    witness: CoeWitness,
    model: DinftyModel,
    model_prime: DinftyModel,
    config: SplitConfig | None = None,
    trace: TraceLog | None = None,
) -> ConjugacyResult:
    """Run the whole pipeline and return a verified conjugacy.

    Raises the first upstream error, :class:`TransferUnsolvable` when the
    normalized defect has nonzero winding, and :class:`VerificationFailed` when
    an assembled identity fails.
    """
    trace = trace if trace is not None else TraceLog(subject="rigidity")
    check_witness(witness, model, model_prime)
    trace.ok("witness")

    partition = split_X_pm(witness, model, config=config)
    trace.ok("split", f"|X+|={len(partition.plus)} |X-|={len(partition.minus)}")
    normalized = normalize_defect(witness, partition)
    trace.ok("normalize")

    solved = gh_solve(normalized.generator, model.s_permutation, Orientation.INVERSE)
    if isinstance(solved, GHUnsolvable):
        trace.fail("transfer", f"cycle sum {solved.cycle_sum}")
        raise TransferUnsolvable(solved.cycle_sum, f"the s-orbit of state {solved.root}")
    trace.ok("transfer")
    dk, dr = to_arrays(normalized.untwist)
    transfer = dmul_arrays(solved.values, np.zeros_like(solved.values), dk, dr)

    kind = model.kind
    if kind is ModelKind.CASE_I:
        k = claim4_constant(witness, model, from_arrays(*transfer))
        trace.ok("claim4", f"k={k}")
        untwister, auto_k = transfer, k
    else:
        untwister, k = _case2_untwister(witness, model, transfer, trace)
        auto_k = 0

    _verify_untwister(witness, model, untwister, auto_k)
    trace.ok("untwister")
    conj = model_prime.act_elements(untwister[0], untwister[1], np.asarray(witness.h, dtype=np.int64))
    _verify_conjugacy(model, model_prime, conj, auto_k)
    trace.ok("conjugacy")
    return ConjugacyResult(
        kind=kind,
        untwister=from_arrays(*untwister),
        k=auto_k,
        verified=True,
        conjugacy=tuple(int(v) for v in conj),
        reflection_index=k,
        partition_sizes=(len(partition.plus), len(partition.minus)),
        defect_values=tuple(sorted({int(v) for v in normalized.generator})),
        transfer=tuple(int(v) for v in solved.values),
    )
