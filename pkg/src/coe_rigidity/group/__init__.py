"""Exact D∞ arithmetic, finite group tables and window classifiers."""

from .bilipschitz import (
    BiLipschitzConfig,
    BiLipschitzReport,
    bilipschitz_classify,
    sample_window,
    transported_orientation,
)
from .dihedral import (
    IDENTITY,
    S,
    T,
    DihedralElement,
    dmetric,
    dmul,
    pairing_pi,
    pairing_pi_inv,
    phi_auto,
    reflection,
    translation,
    word_length,
)
from .finite_table import FiniteGroupTable, center, prime_order_element, restrict
from .subgroups import SubgroupClass, SubgroupKind, classify_subgroup

__all__ = [
    "IDENTITY",
    "S",
    "T",
    "BiLipschitzConfig",
    "BiLipschitzReport",
    "DihedralElement",
    "FiniteGroupTable",
    "SubgroupClass",
    "SubgroupKind",
    "bilipschitz_classify",
    "center",
    "classify_subgroup",
    "dmetric",
    "dmul",
    "pairing_pi",
    "pairing_pi_inv",
    "phi_auto",
    "prime_order_element",
    "reflection",
    "restrict",
    "sample_window",
    "translation",
    "transported_orientation",
    "word_length",
]
