"""Finite D∞ models, coe witnesses and the rigidity extractor."""

from .extraction import (
    ConjugacyResult,
    GHTransfer,
    GHUnsolvable,
    NormalizedDefect,
    Partition,
    SplitConfig,
    claim4_constant,
    defect_cocycle,
    gh_solve,
    normalize_defect,
    rigidity_extract,
    split_X_pm,
)
from .freeness import FreenessReport, StateStabilizer, kernel_period, topological_freeness_sweep
from .induced import InducedLift, InducedRestriction, induced_coe_restrict, induced_conjugacy_lift
from .models import DinftyModel, ModelKind, build_case1_model, build_case2_model, delta
from .witness import CoeWitness, check_witness, power_table, twist_witness, witness_from_conjugacy

__all__ = [
    "CoeWitness",
    "ConjugacyResult",
    "DinftyModel",
    "FreenessReport",
    "GHTransfer",
    "GHUnsolvable",
    "InducedLift",
    "InducedRestriction",
    "ModelKind",
    "NormalizedDefect",
    "Partition",
    "SplitConfig",
    "StateStabilizer",
    "build_case1_model",
    "build_case2_model",
    "check_witness",
    "claim4_constant",
    "defect_cocycle",
    "delta",
    "gh_solve",
    "induced_coe_restrict",
    "induced_conjugacy_lift",
    "kernel_period",
    "normalize_defect",
    "power_table",
    "rigidity_extract",
    "split_X_pm",
    "topological_freeness_sweep",
    "twist_witness",
    "witness_from_conjugacy",
]
