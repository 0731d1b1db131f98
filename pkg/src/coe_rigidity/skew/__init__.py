"""Skew products F×Z ↷ (Z/n_L)×F, orbit cocycles and non-conjugacy certificates."""

from .certificate import (
    AutomorphismTriple,
    CannotCertify,
    CannotCertifyReason,
    NonConjugacyCertificate,
    SkewConjugacy,
    automorphism_family,
    conjugacy_holds,
    nonconjugacy_certificate,
    search_skew_conjugacy,
)
from .orbit_cocycle import theta, verify_coe, verify_theta_cocycle
from .system import SkewSystem, skew_act, transitive_and_free_check, verify_action_law

__all__ = [
    "AutomorphismTriple",
    "CannotCertify",
    "CannotCertifyReason",
    "NonConjugacyCertificate",
    "SkewConjugacy",
    "SkewSystem",
    "automorphism_family",
    "conjugacy_holds",
    "nonconjugacy_certificate",
    "search_skew_conjugacy",
    "skew_act",
    "theta",
    "transitive_and_free_check",
    "verify_action_law",
    "verify_coe",
    "verify_theta_cocycle",
]
