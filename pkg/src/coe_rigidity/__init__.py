"""Exact finite-model tools for cocycles over odometers, skew products and D∞ orbit-equivalence rigidity."""
