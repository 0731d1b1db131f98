from __future__ import annotations

import pytest
from coe_rigidity.errors import InvalidChain, LevelMismatch
from coe_rigidity.odometer.chain import CHAIN_PRESETS, DivisibilityChain, ord_p, sup_ord_infinite
from coe_rigidity.odometer.model import OdometerModel, project, state_from_json, state_to_json, step


class TestDivisibilityChain:
    def test_moduli(self, dyadic: DivisibilityChain, triadic: DivisibilityChain) -> None:
        assert [dyadic.nth_modulus(i) for i in range(1, 5)] == [2, 4, 8, 16]
        assert triadic.nth_modulus(2) == 9
        assert dyadic.ratio(1, 3) == 4
        assert dyadic.ratio(2, 2) == 1

    def test_prefix_then_tail(self) -> None:
        chain = DivisibilityChain(base=3, prefix=(2,), tail=(5, 7))
        assert [chain.multiplier(i) for i in range(1, 5)] == [2, 5, 7, 5]
        assert [chain.nth_modulus(i) for i in range(1, 4)] == [3, 6, 30]
        assert str(chain) == "chain(base=3 prefix=[2] tail=[5, 7])"

    @pytest.mark.parametrize(
        "kwargs",
        [
            {"base": 0},
            {"base": 2, "tail": ()},
            {"base": 2, "tail": (1,)},
            {"base": 2, "prefix": (3, 1), "tail": (2,)},
        ],
    )
    def test_invalid(self, kwargs: dict) -> None:
        with pytest.raises(InvalidChain):
            DivisibilityChain(**kwargs)

    def test_bad_indices(self, dyadic: DivisibilityChain) -> None:
        with pytest.raises(ValueError, match="level must be >= 1"):
            dyadic.nth_modulus(0)
        with pytest.raises(ValueError, match="k >= j"):
            dyadic.ratio(3, 1)

    def test_valuations(self, dyadic: DivisibilityChain) -> None:
        assert ord_p(dyadic, 2, 3) == 3
        assert ord_p(dyadic, 3, 3) == 0
        assert not sup_ord_infinite(dyadic, 3)
        assert sup_ord_infinite(CHAIN_PRESETS["sixfold"], 3)
        with pytest.raises(ValueError, match="prime"):
            ord_p(dyadic, 4, 1)

    def test_levels(self, dyadic: DivisibilityChain) -> None:
        assert dyadic.level_reaching(8) == 4
        assert dyadic.level_reaching(1) == 1
        assert dyadic.stabilization_level(2, 1) == 2
        # one tail period per unit of exponent past level j
        assert dyadic.stabilization_level(1, 3) == 2
        assert dyadic.stabilization_level(1, 9) == 3

    def test_json(self) -> None:
        chain = DivisibilityChain(base=3, prefix=(2,), tail=(5,))
        assert DivisibilityChain.from_json(chain.to_json()) == chain


class TestOdometerModel:
    def test_states_and_step(self, dyadic: DivisibilityChain) -> None:
        model = OdometerModel(dyadic, 3)
        assert model.modulus == 8
        assert list(model.states()) == list(range(8))
        assert step(model, 7, 1) == 0
        assert step(model, 2, -5) == 5
        assert model.orbit(3)[:3] == [3, 4, 5]
        assert model.is_transitive()

    def test_project(self, dyadic: DivisibilityChain) -> None:
        model = OdometerModel(dyadic, 3)
        assert project(model, 5, 1) == 1
        assert project(model, 5, 2) == 1
        assert project(model, 6, 3) == 6
        with pytest.raises(ValueError, match="projection level"):
            project(model, 5, 4)

    def test_validation(self, dyadic: DivisibilityChain) -> None:
        with pytest.raises(ValueError, match="level must be >= 1"):
            OdometerModel(dyadic, 0)
        model = OdometerModel(dyadic, 2)
        with pytest.raises(ValueError, match="outside"):
            model.check_state(4)
        with pytest.raises(LevelMismatch):
            model.require_level(3)
        assert model.at_level(4).modulus == 16

    def test_state_json(self) -> None:
        assert state_to_json(12) == "12"
        assert state_from_json("12") == 12


CHAINS = [
    DivisibilityChain.powers(2),
    DivisibilityChain.powers(6),
    DivisibilityChain(base=3, prefix=(2,), tail=(5, 7)),
    DivisibilityChain(base=12, prefix=(3,), tail=(10,)),
]


def _trial_division(n: int, p: int) -> int:
    count = 0
    while n % p == 0:
        n //= p
        count += 1
    return count


@pytest.mark.parametrize("chain", CHAINS, ids=str)
def test_valuations_match_trial_division(chain: DivisibilityChain) -> None:
    for p in (2, 3, 5, 7, 11):
        assert [ord_p(chain, p, i) for i in range(1, 8)] == [
            _trial_division(chain.nth_modulus(i), p) for i in range(1, 8)
        ]


@pytest.mark.parametrize("chain", CHAINS, ids=str)
def test_unbounded_valuation_iff_tail_period_grows_it(chain: DivisibilityChain) -> None:
    start = len(chain.prefix) + 1
    for p in (2, 3, 5, 7, 11):
        grows = ord_p(chain, p, start + len(chain.tail)) > ord_p(chain, p, start)
        assert sup_ord_infinite(chain, p) == grows


def test_dyadic_rotation_is_transitive_at_every_level(dyadic: DivisibilityChain) -> None:
    for level in range(1, 15):
        model = OdometerModel(dyadic, level)
        assert model.is_transitive()
        assert sorted(model.orbit(0)) == list(model.states())
