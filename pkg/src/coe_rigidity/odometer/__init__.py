"""Divisibility chains and finite odometer models."""

from .chain import CHAIN_PRESETS, DivisibilityChain, nth_modulus, ord_p, sup_ord_infinite
from .model import OdometerModel, project, step

__all__ = [
    "CHAIN_PRESETS",
    "DivisibilityChain",
    "OdometerModel",
    "nth_modulus",
    "ord_p",
    "project",
    "step",
    "sup_ord_infinite",
]
