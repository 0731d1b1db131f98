from __future__ import annotations

import numpy as np
import pytest
from coe_rigidity.group.dihedral import IDENTITY, S, T, reflection, translation
from coe_rigidity.odometer.chain import DivisibilityChain
from coe_rigidity.rigidity.models import DinftyModel, ModelKind, build_case1_model, build_case2_model, delta


def test_case1_actions(case1: DinftyModel) -> None:
    assert case1.size == 8
    assert case1.s_permutation.tolist() == [1, 2, 3, 4, 5, 6, 7, 0]
    assert case1.t_permutation.tolist() == [0, 7, 6, 5, 4, 3, 2, 1]
    assert case1.act(reflection(3), 1) == 2
    assert case1.relations_hold()
    assert case1.s_orbits() == [list(range(8))]


def test_case1_rotation_and_offset(dyadic: DivisibilityChain) -> None:
    model = build_case1_model(dyadic, 3, rotation=-1, reflection_offset=2)
    assert model.act(S, 0) == 7
    assert model.act(T, 0) == 2
    assert model.relations_hold()
    assert str(model) == "case1(n_L=8, u=-1, o=2)"


def test_case2_actions(case2: DinftyModel) -> None:
    assert case2.size == 16
    assert case2.act(S, 3) == 4
    assert case2.act(S, 8) == 15
    assert case2.act(T, 3) == 11
    assert case2.act(T, 11) == 3
    assert case2.relations_hold()
    assert case2.s_orbits() == [list(range(8)), [8, 15, 14, 13, 12, 11, 10, 9]]
    assert case2.split_state(11) == (1, 3)


def test_translation_offset(case2: DinftyModel) -> None:
    assert case2.translation_offset(1, 4) == 3
    assert case2.translation_offset(9, 12) == 5
    assert case2.translation_offset(1, 12) is None


def test_act_elements_matches_act(case2: DinftyModel) -> None:
    ks = np.array([3, -2, 5, 0])
    rs = np.array([0, 1, 1, 0])
    xs = np.array([0, 9, 4, 15])
    expected = [case2.act(translation(3), 0), case2.act(reflection(-2), 9), case2.act(reflection(5), 4), 15]
    assert case2.act_elements(ks, rs, xs).tolist() == expected


def test_delta_lifts_through_cosets() -> None:
    assert delta(S, 0) == S
    assert delta(S, 1) == translation(-1)
    assert delta(T, 0) == IDENTITY
    assert delta(T, 1) == IDENTITY
    assert delta(reflection(2), 0) == translation(-2)
    with pytest.raises(ValueError, match="coset"):
        delta(S, 2)


def test_validation(dyadic: DivisibilityChain) -> None:
    with pytest.raises(ValueError, match="n_L >= 3"):
        build_case1_model(dyadic, 1)
    with pytest.raises(ValueError, match="rotation"):
        build_case1_model(dyadic, 3, rotation=2)
    with pytest.raises(ValueError, match="reflection offsets"):
        DinftyModel(ModelKind.CASE_II, build_case2_model(dyadic, 2).base, 1, 3)
    with pytest.raises(ValueError, match="outside"):
        build_case2_model(dyadic, 2).check_state(8)


def test_json(case2: DinftyModel) -> None:
    assert DinftyModel.from_json(case2.to_json()) == case2
    assert DinftyModel("case1", case2.base).kind is ModelKind.CASE_I
