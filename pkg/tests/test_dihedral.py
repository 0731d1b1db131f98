from __future__ import annotations

import pytest
from coe_rigidity.group.dihedral import (
    IDENTITY,
    DihedralElement,
    S,
    T,
    dmetric,
    dmul,
    invert_orientation,
    left_translation_conjugate,
    pairing_pi,
    pairing_pi_inv,
    phi_auto,
    reflection,
    right_translation_conjugate,
    translation,
    word_length,
)
from coe_rigidity.group.subgroups import SubgroupKind, classify_subgroup
from hypothesis import given
from hypothesis import strategies as st

elements = st.builds(DihedralElement, st.integers(-50, 50), st.integers(0, 1))


def test_relations() -> None:
    assert T * T == IDENTITY
    assert T * S * T == translation(-1)
    assert S * T == reflection(1)
    assert T * S == reflection(-1)


def test_reflection_bit_is_validated() -> None:
    with pytest.raises(ValueError, match="reflection bit"):
        DihedralElement(0, 2)


def test_inverse_and_power() -> None:
    assert translation(3).inverse() == translation(-3)
    assert reflection(5).inverse() == reflection(5)
    assert reflection(5).power(2) == IDENTITY
    assert reflection(5).power(3) == reflection(5)
    assert translation(2).power(-3) == translation(-6)


def test_str() -> None:
    assert str(IDENTITY) == "e"
    assert str(T) == "t"
    assert str(S) == "s"
    assert str(reflection(-2)) == "s^-2t"


def test_word_length_and_metric() -> None:
    assert word_length(reflection(-3)) == 4
    assert dmetric(IDENTITY, translation(2)) == 2
    assert dmetric(S, T) == 2


def test_json_forms() -> None:
    assert DihedralElement.from_json({"k": 4, "t": 1}) == reflection(4)
    assert DihedralElement.from_json([-2, 0]) == translation(-2)
    assert reflection(4).to_json() == {"k": 4, "t": 1}


@given(elements, elements, elements)
def test_associative(a: DihedralElement, b: DihedralElement, c: DihedralElement) -> None:
    assert dmul(dmul(a, b), c) == dmul(a, dmul(b, c))


@given(elements)
def test_inverse_is_two_sided(g: DihedralElement) -> None:
    assert g * g.inverse() == IDENTITY
    assert g.inverse() * g == IDENTITY


@given(st.integers(-20, 20), elements, elements)
def test_phi_auto_is_homomorphism(i: int, a: DihedralElement, b: DihedralElement) -> None:
    assert phi_auto(i, a * b) == phi_auto(i, a) * phi_auto(i, b)


@given(elements)
def test_invert_orientation_is_conjugation_by_t(g: DihedralElement) -> None:
    assert invert_orientation(g) == T * g * T


def test_phi_auto_moves_t_only() -> None:
    assert phi_auto(3, S) == S
    assert phi_auto(3, T) == reflection(3)


def test_pairing_values() -> None:
    assert [pairing_pi(n) for n in range(4)] == [IDENTITY, T, S, T * S]
    assert pairing_pi(-1) == reflection(1)
    assert pairing_pi_inv(reflection(1)) == -1


@given(st.integers(-1000, 1000))
def test_pairing_is_bijective(n: int) -> None:
    assert pairing_pi_inv(pairing_pi(n)) == n


@given(st.integers(-200, 200), st.integers(-200, 200))
def test_pairing_is_bilipschitz(n: int, m: int) -> None:
    d = dmetric(pairing_pi(n), pairing_pi(m))
    assert -(-abs(n - m) // 2) <= d <= 2 * abs(n - m)


def test_translation_conjugates_by_t() -> None:
    right = right_translation_conjugate(T)
    assert [right(n) for n in range(-3, 4)] == [1 - n for n in range(-3, 4)]
    left = left_translation_conjugate(T)
    assert [left(n) for n in range(4)] == [1, 0, 3, 2]


class TestClassifySubgroup:
    def test_pure_translation(self) -> None:
        sub = classify_subgroup([translation(4), translation(6)])
        assert sub.kind is SubgroupKind.PURE_TRANSLATION
        assert sub.k == 2
        assert sub.contains(translation(-8))
        assert not sub.contains(translation(3))
        assert not sub.contains(T)

    def test_trivial(self) -> None:
        sub = classify_subgroup([IDENTITY])
        assert sub.is_trivial
        assert sub.contains(IDENTITY)
        assert not sub.contains(S)

    def test_lattice_with_reflection(self) -> None:
        sub = classify_subgroup([reflection(3), reflection(1)])
        assert sub.kind is SubgroupKind.LATTICE_WITH_REFLECTION
        assert (sub.k, sub.i) == (2, 1)
        assert sub.contains(reflection(5))
        assert sub.contains(translation(4))
        assert not sub.contains(reflection(2))
        assert str(sub) == "<s^2, s^1t>"

    def test_pure_reflection(self) -> None:
        sub = classify_subgroup([reflection(5)])
        assert sub.kind is SubgroupKind.PURE_REFLECTION
        assert sub.i == 5
        assert sub.contains(IDENTITY)
        assert not sub.contains(reflection(4))
        assert sub.generators() == [reflection(5)]

    def test_needs_generators(self) -> None:
        with pytest.raises(ValueError, match="at least one generator"):
            classify_subgroup([])


@given(elements, elements, elements)
def test_metric_is_right_invariant(a: DihedralElement, b: DihedralElement, h: DihedralElement) -> None:
    assert dmetric(a * h, b * h) == dmetric(a, b)


def _closure(gens: list[DihedralElement], bound: int = 40) -> set[DihedralElement]:
    """Subgroup members with |exponent| ≤ bound, by breadth-first products."""
    steps = [*gens, *(g.inverse() for g in gens)]
    members = {IDENTITY}
    frontier = [IDENTITY]
    while frontier:
        g = frontier.pop()
        for a in steps:
            product = a * g
            if abs(product.exponent) <= bound and product not in members:
                members.add(product)
                frontier.append(product)
    return members


@given(st.lists(st.builds(DihedralElement, st.integers(-6, 6), st.integers(0, 1)), min_size=1, max_size=3))
def test_classification_matches_closure(gens: list[DihedralElement]) -> None:
    sub = classify_subgroup(gens)
    closed = _closure(gens)
    for exponent in range(-10, 11):
        for bit in (0, 1):
            g = DihedralElement(exponent, bit)
            assert sub.contains(g) == (g in closed), (gens, g)
