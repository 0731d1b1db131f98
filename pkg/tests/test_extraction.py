from __future__ import annotations

import dataclasses

import numpy as np
import pytest
from coe_rigidity.cocycle.level_cocycle import Orientation
from coe_rigidity.errors import (
    DefectNotInExpectedCoset,
    InvalidWitness,
    NonReflectionCoset,
    NotConstant,
    TransferUnsolvable,
    UnclassifiablePoint,
)
from coe_rigidity.group.dihedral import IDENTITY, S, T, translation
from coe_rigidity.odometer.chain import CHAIN_PRESETS
from coe_rigidity.rigidity.extraction import (
    GHTransfer,
    GHUnsolvable,
    SplitConfig,
    claim4_constant,
    defect_cocycle,
    gh_solve,
    normalize_defect,
    rigidity_extract,
    split_X_pm,
)
from coe_rigidity.rigidity.models import DinftyModel, ModelKind, build_case1_model
from coe_rigidity.rigidity.witness import CoeWitness, twist_witness, witness_from_conjugacy
from coe_rigidity.trace import TraceLog


class TestGHSolve:
    def test_forward(self) -> None:
        solved = gh_solve([1, -1, 2, -2])
        assert isinstance(solved, GHTransfer)
        assert solved.values.tolist() == [0, 1, 0, 2]
        assert solved.roots == (0,)

    def test_inverse(self) -> None:
        solved = gh_solve([1, -1, 2, -2], orientation=Orientation.INVERSE)
        assert solved.values.tolist() == [0, -1, 0, -2]

    def test_nonzero_winding(self) -> None:
        assert gh_solve([1, 0, 0, 0]) == GHUnsolvable(cycle_sum=1, root=0)

    def test_several_cycles(self) -> None:
        solved = gh_solve([2, -2, 5, -5], successor=np.array([1, 0, 3, 2]))
        assert solved.values.tolist() == [0, 2, 0, 5]
        assert solved.roots == (0, 2)
        assert gh_solve([2, -2, 5, -4], successor=np.array([1, 0, 3, 2])) == GHUnsolvable(cycle_sum=1, root=2)


def _translation_witness(case1: DinftyModel) -> CoeWitness:
    return witness_from_conjugacy(case1, case1, [(x + 3) % 8 for x in case1.states()], k=6)


class TestCaseI:
    def test_translation(self, load_witness) -> None:
        witness, model, model_prime = load_witness("case1_translation")
        trace = TraceLog(subject="rigidity")
        result = rigidity_extract(witness, model, model_prime, trace=trace)

        assert result.kind is ModelKind.CASE_I
        assert result.verified
        assert result.k == 6
        assert result.reflection_index == 6
        assert result.untwister == (IDENTITY,) * 8
        assert result.conjugacy == witness.h
        assert result.partition_sizes == (8, 0)
        assert result.defect_values == (0,)
        assert result.transfer == (0,) * 8
        assert [e.stage for e in trace.entries] == [
            "witness",
            "split",
            "normalize",
            "transfer",
            "claim4",
            "untwister",
            "conjugacy",
        ]
        assert result.to_json()["partition"] == {"plus": 8, "minus": 0}

    def test_reflection_through_zero(self, case1: DinftyModel) -> None:
        witness = witness_from_conjugacy(case1, case1, [(-x) % 8 for x in case1.states()])
        result = rigidity_extract(witness, case1, case1)
        assert result.k == 0
        assert result.untwister == (T,) * 8
        assert result.conjugacy == tuple(range(8))
        assert result.partition_sizes == (0, 8)

    def test_reflection_with_offset(self, case1: DinftyModel) -> None:
        witness = witness_from_conjugacy(case1, case1, [(3 - x) % 8 for x in case1.states()], k=-6)
        result = rigidity_extract(witness, case1, case1)
        assert result.k == -6
        assert result.conjugacy == tuple((x - 3) % 8 for x in range(8))

    def test_kernel_twist_keeps_conjugacy(self, case1: DinftyModel) -> None:
        witness = _translation_witness(case1)
        twisted = twist_witness(witness, case1, case1, [translation(-8)] + [IDENTITY] * 7)
        result = rigidity_extract(twisted, case1, case1)
        assert result.verified
        assert result.k % 8 == 6
        assert result.conjugacy == witness.h
        assert result.transfer == (0, 8, 8, 8, 8, 8, 8, 8)
        assert result.defect_values == (-8, 0, 8)

    def test_corrupted_witness(self, load_witness) -> None:
        witness, model, model_prime = load_witness("case1_corrupted")
        with pytest.raises(InvalidWitness, match="state': 5"):
            rigidity_extract(witness, model, model_prime)

    def test_nonzero_winding_is_unsolvable(self, case1: DinftyModel) -> None:
        # s⁹ acts like s on Z/8, so the defect a(s, x) = s⁸ winds once per state
        witness = CoeWitness(h=tuple(range(8)), c_s=(translation(9),) * 8, c_t=(T,) * 8)
        with pytest.raises(TransferUnsolvable, match="cycle sum 64"):
            rigidity_extract(witness, case1, case1, config=SplitConfig(bound=10**6))


@pytest.mark.slow
@pytest.mark.parametrize(("preset", "level"), [("dyadic", 3), ("dyadic", 4), ("triadic", 3), ("dyadic", 6)])
@pytest.mark.parametrize("offset", range(-4, 5))
def test_every_dihedral_symmetry_round_trips(preset: str, level: int, offset: int) -> None:
    model = build_case1_model(CHAIN_PRESETS[preset], level)
    # t acts by x ↦ offset − x on the target, so x ↦ x + r carries t to s^(2r − offset)·t
    target = build_case1_model(CHAIN_PRESETS[preset], level, reflection_offset=offset)
    m = model.modulus
    for r in range(m):
        k = 2 * r - offset
        shift = witness_from_conjugacy(model, target, [(x + r) % m for x in model.states()], k=k)
        result = rigidity_extract(shift, model, target)
        assert result.verified
        assert result.k == k
        assert result.untwister == (IDENTITY,) * m
        assert result.conjugacy == shift.h
        assert result.partition_sizes == (m, 0)

        flip = witness_from_conjugacy(model, target, [(r - x) % m for x in model.states()], k=-k)
        result = rigidity_extract(flip, model, target)
        assert result.verified
        assert result.k == -k
        assert result.untwister == (T,) * m
        assert result.conjugacy == tuple((x + offset - r) % m for x in model.states())
        assert result.partition_sizes == (0, m)


def test_hand_derived_automorphisms(dyadic) -> None:
    model = build_case1_model(dyadic, 4)
    for r in (1, 5, 11):
        shift = witness_from_conjugacy(model, model, [(x + r) % 16 for x in model.states()], k=2 * r)
        assert rigidity_extract(shift, model, model).k == 2 * r
    flip = witness_from_conjugacy(model, model, [(-x) % 16 for x in model.states()])
    result = rigidity_extract(flip, model, model)
    assert result.k == 0
    assert result.untwister == (T,) * 16


class TestCaseII:
    def test_componentwise_shift(self, load_witness) -> None:
        witness, model, model_prime = load_witness("case2_componentwise")
        trace = TraceLog()
        result = rigidity_extract(witness, model, model_prime, trace=trace)

        assert result.kind is ModelKind.CASE_II
        assert result.k == 0
        assert result.reflection_index == 2
        assert result.partition_sizes == (16, 0)
        assert result.conjugacy == tuple([*range(1, 8), 0, *range(9, 16), 8])
        assert result.untwister == (IDENTITY,) * 8 + (translation(-2),) * 8
        assert "case2_branches" in [e.stage for e in trace.entries]

    def test_identity(self, case2: DinftyModel) -> None:
        witness = CoeWitness(h=tuple(range(16)), c_s=(S,) * 16, c_t=(T,) * 16)
        result = rigidity_extract(witness, case2, case2)
        assert result.reflection_index == 0
        assert result.conjugacy == tuple(range(16))


class TestStages:
    def test_split_window_floor(self, case1: DinftyModel) -> None:
        with pytest.raises(ValueError, match=r"below 4\*n_L"):
            split_X_pm(_translation_witness(case1), case1, window=31)

    def test_unclassifiable(self, case1: DinftyModel) -> None:
        twisted = twist_witness(_translation_witness(case1), case1, case1, [translation(-8)] + [IDENTITY] * 7)
        with pytest.raises(UnclassifiablePoint) as exc_info:
            split_X_pm(twisted, case1, config=SplitConfig(bound=1))
        assert exc_info.value.state == 0
        assert exc_info.value.deviation_plus == 8

    def test_defect(self, case1: DinftyModel) -> None:
        witness = _translation_witness(case1)
        partition = split_X_pm(witness, case1)
        assert partition.plus == frozenset(range(8))
        assert partition.to_json()["bound"] == 2 * (1 + 7)
        assert defect_cocycle(witness, partition, 5, 2) == IDENTITY

    def test_defect_leaves_translations(self, case1: DinftyModel) -> None:
        witness = _translation_witness(case1)
        partition = split_X_pm(witness, case1)
        signs = partition.signs.copy()
        signs[0] = -1
        with pytest.raises(DefectNotInExpectedCoset) as exc_info:
            normalize_defect(witness, dataclasses.replace(partition, signs=signs))
        assert (exc_info.value.state, exc_info.value.exponent) == (0, -7)

    def test_claim4_needs_reflections(self, case1: DinftyModel) -> None:
        witness = _translation_witness(case1)
        untwister = [IDENTITY] * 8
        untwister[1] = T
        with pytest.raises(NonReflectionCoset) as exc_info:
            claim4_constant(witness, case1, untwister)
        assert exc_info.value.state == 1

    def test_claim4_needs_a_constant(self, case1: DinftyModel) -> None:
        witness = _translation_witness(case1)
        untwister = [IDENTITY] * 8
        untwister[1] = S
        with pytest.raises(NotConstant) as exc_info:
            claim4_constant(witness, case1, untwister)
        assert exc_info.value.values[7] == [1, 7]
        assert claim4_constant(witness, case1, [IDENTITY] * 8, states=[2, 3]) == 6

    def test_normalized_defect_of_reflection(self, case1: DinftyModel) -> None:
        witness = witness_from_conjugacy(case1, case1, [(-x) % 8 for x in case1.states()])
        normalized = normalize_defect(witness, split_X_pm(witness, case1))
        assert normalized.untwist == (T,) * 8
        assert normalized.generator.tolist() == [0] * 8
