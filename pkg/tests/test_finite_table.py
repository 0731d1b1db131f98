from __future__ import annotations

import numpy as np
import pytest
from coe_rigidity.errors import InvalidGroupTable, NoSuchElement
from coe_rigidity.group.finite_table import FiniteGroupTable, center, prime_order_element, restrict


def test_symmetric_group_indexing(s3: FiniteGroupTable) -> None:
    assert s3.order == 6
    assert s3.identity == 0
    # sorted by array form: the 3-cycles sit at 3 and 4
    assert [s3.element_order(a) for a in s3.elements] == [1, 2, 2, 3, 3, 2]
    assert s3.mul(3, 3) == 4
    assert s3.inverse(3) == 4


def test_abelian_and_center(s3: FiniteGroupTable, z3: FiniteGroupTable) -> None:
    assert not s3.is_abelian
    assert s3.commuting_failure() is not None
    assert center(s3) == {0}
    assert z3.is_abelian
    assert center(z3) == {0, 1, 2}
    assert len(center(FiniteGroupTable.dihedral(4))) == 2


def test_power(z3: FiniteGroupTable) -> None:
    assert z3.power(1, 4) == 1
    assert z3.power(1, -1) == 2
    assert z3.power(2, 0) == 0


def test_prime_order_element(s3: FiniteGroupTable) -> None:
    assert prime_order_element(s3, 3) == 3
    assert prime_order_element(s3, 2) == 1
    with pytest.raises(NoSuchElement):
        prime_order_element(s3, 5)
    with pytest.raises(ValueError, match="prime"):
        prime_order_element(s3, 4)


def test_subgroups_and_restrict(s3: FiniteGroupTable) -> None:
    rotations = s3.subgroup_generated([3])
    assert rotations == {0, 3, 4}
    assert s3.is_subgroup(rotations)
    assert not s3.is_subgroup({0, 1, 3})

    small, members = restrict(s3, rotations, name="Z/3")
    assert members == [0, 3, 4]
    assert small.order == 3
    assert small.is_abelian
    with pytest.raises(ValueError, match="not a subgroup"):
        restrict(s3, frozenset({0, 1, 3}))


@pytest.mark.parametrize(
    ("group", "count"),
    [
        (FiniteGroupTable.cyclic(3), 2),
        (FiniteGroupTable.cyclic(5), 4),
        (FiniteGroupTable.symmetric(3), 6),
        (FiniteGroupTable.dihedral(4), 8),
        # order 10 goes through the generator-image search
        (FiniteGroupTable.cyclic(10), 4),
    ],
)
def test_automorphism_counts(group: FiniteGroupTable, count: int) -> None:
    autos = group.automorphisms()
    assert len(autos) == count
    assert autos[0] == tuple(group.elements)
    for perm in autos:
        assert group.is_automorphism(np.asarray(perm))


def test_named() -> None:
    assert FiniteGroupTable.named("Z/4").order == 4
    assert FiniteGroupTable.named("S3").name == "S3"
    assert FiniteGroupTable.named("D3").order == 6
    assert FiniteGroupTable.named("trivial").order == 1
    with pytest.raises(ValueError, match="Unknown group"):
        FiniteGroupTable.named("Q8")


def test_invalid_tables() -> None:
    with pytest.raises(InvalidGroupTable, match="two-sided inverse"):
        FiniteGroupTable(table=np.array([[0, 1], [1, 1]]))
    with pytest.raises(InvalidGroupTable, match="square"):
        FiniteGroupTable(table=np.array([[0, 1]]))
    with pytest.raises(InvalidGroupTable, match="identity row"):
        FiniteGroupTable(table=np.array([[1, 0], [0, 1]]))
    # a Latin square with identity whose products disagree at (1·1)·2 and 1·(1·2)
    loop = np.array([[0, 1, 2, 3, 4], [1, 0, 3, 4, 2], [2, 4, 0, 1, 3], [3, 2, 4, 0, 1], [4, 3, 1, 2, 0]])
    with pytest.raises(InvalidGroupTable, match="not associative"):
        FiniteGroupTable(table=loop)


def test_json_and_digest(s3: FiniteGroupTable) -> None:
    data = s3.to_json()
    again = FiniteGroupTable.from_json(data)
    assert again == s3
    assert again.digest() == s3.digest()
    assert FiniteGroupTable.cyclic(3).digest() != s3.digest()
    with pytest.raises(InvalidGroupTable, match="declared order"):
        FiniteGroupTable.from_json({"order": 3, "identity": 0, "table": [[0]]})


@pytest.mark.parametrize("name", ["S3", "S4", "D4", "D5", "Z/6"])
def test_center_is_exactly_the_commuting_elements(name: str) -> None:
    group = FiniteGroupTable.named(name)
    central = center(group)
    for a in group.elements:
        commutes = all(group.mul(a, b) == group.mul(b, a) for b in group.elements)
        assert (a in central) == commutes
