"""Shared groups, chains, models and witnesses for the test suite."""

from __future__ import annotations

import pytest
from coe_rigidity.config import parse_config, read_source
from coe_rigidity.group.finite_table import FiniteGroupTable
from coe_rigidity.odometer.chain import CHAIN_PRESETS, DivisibilityChain
from coe_rigidity.rigidity.models import DinftyModel, build_case1_model, build_case2_model
from coe_rigidity.rigidity.witness import CoeWitness


@pytest.fixture
def dyadic() -> DivisibilityChain:
    return CHAIN_PRESETS["dyadic"]


@pytest.fixture
def triadic() -> DivisibilityChain:
    return CHAIN_PRESETS["triadic"]


@pytest.fixture
def s3() -> FiniteGroupTable:
    return FiniteGroupTable.symmetric(3)


@pytest.fixture
def z3() -> FiniteGroupTable:
    return FiniteGroupTable.cyclic(3)


@pytest.fixture
def case1(dyadic: DivisibilityChain) -> DinftyModel:
    """Reflection odometer on Z/8."""
    return build_case1_model(dyadic, 3)


@pytest.fixture
def case2(dyadic: DivisibilityChain) -> DinftyModel:
    """Induced model on two copies of Z/8."""
    return build_case2_model(dyadic, 3)


def _load_witness(name: str) -> tuple[CoeWitness, DinftyModel, DinftyModel]:
    witness, model, model_prime, _ = parse_config("rigidity", read_source(name)).build()
    return witness, model, model_prime


@pytest.fixture
def load_witness():
    """Witness and models from a bundled fixture."""
    return _load_witness
