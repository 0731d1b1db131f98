"""Window classification of bi-Lipschitz bijections of Z.

A bi-Lipschitz bijection f of Z is within bounded distance of x ↦ ±x + const.
On a finite window that dichotomy can only be witnessed, not proved: the
classifier picks the sign whose residual f(x) ∓ x has the smaller spread and
reports the residual's median and sup.
"""

from __future__ import annotations

from collections.abc import Callable, Mapping
from dataclasses import dataclass
from typing import Any

import numpy as np

from coe_rigidity.errors import AmbiguousOrientation
from coe_rigidity.group.dihedral import dmetric, pairing_pi, translation


@dataclass(frozen=True)
class BiLipschitzConfig:
    """Classifier settings."""

    # Spread both signs must exceed before equal spreads count as ambiguous.
    # None uses the window half-width N.
    ambiguity_threshold: int | None = None


@dataclass(frozen=True)
class BiLipschitzReport:
    """f(x) = sign·x + constant + r(x) with |r(x)| ≤ defect_bound on the window."""

    sign: int
    constant: int
    defect_bound: int
    window: int

    def to_json(self) -> dict[str, Any]:
        return {
            "sign": "+" if self.sign > 0 else "-",
            "constant": self.constant,
            "defect_bound": self.defect_bound,
            "window": self.window,
        }


@dataclass(frozen=True)
class TransportedOrientation:
    """Orientation of g ↦ π(f(π⁻¹g)) on translations: sᵐ stays near s^{sign·m}."""

    sign: int
    max_deviation: int
    deviation_plus: int
    deviation_minus: int

    def to_json(self) -> dict[str, Any]:
        return {
            "sign": "+" if self.sign > 0 else "-",
            "max_deviation": self.max_deviation,
            "deviation_plus": self.deviation_plus,
            "deviation_minus": self.deviation_minus,
        }


def sample_window(f: Callable[[int], int], n: int) -> dict[int, int]:
    """Tabulate f on [−n, n]."""
    return {x: f(x) for x in range(-n, n + 1)}


def _window_arrays(samples: Mapping[int, int]) -> tuple[np.ndarray, np.ndarray, int]:
    if not samples:
        raise ValueError("samples must not be empty")
    xs = np.array(sorted(samples), dtype=np.int64)
    fs = np.array([samples[int(x)] for x in xs], dtype=np.int64)
    if len(set(fs.tolist())) != len(fs):
        raise ValueError("samples do not come from an injective map")
    half_width = int(np.abs(xs).max())
    if half_width < 1:
        raise ValueError("window half-width must be at least 1")
    return xs, fs, half_width


def bilipschitz_classify(
    samples: Mapping[int, int],
    config: BiLipschitzConfig | None = None,
) -> BiLipschitzReport:
    """Classify sampled f against x ↦ ±x + const."""
    config = config or BiLipschitzConfig()
    xs, fs, half_width = _window_arrays(samples)

    residual_plus = fs - xs
    residual_minus = fs + xs
    range_plus = int(residual_plus.max() - residual_plus.min())
    range_minus = int(residual_minus.max() - residual_minus.min())

    threshold = half_width if config.ambiguity_threshold is None else config.ambiguity_threshold
    if min(range_plus, range_minus) > threshold and abs(range_plus - range_minus) < 1:
        raise AmbiguousOrientation(range_plus, range_minus, threshold)

    sign = 1 if range_plus <= range_minus else -1
    residual = residual_plus if sign > 0 else residual_minus
    ordered = np.sort(residual)
    constant = int(ordered[(len(ordered) - 1) // 2])
    defect = int(np.abs(residual - constant).max())
    return BiLipschitzReport(sign=sign, constant=constant, defect_bound=defect, window=half_width)


def transported_orientation(samples: Mapping[int, int]) -> TransportedOrientation:
    """Read f as a map of D∞ through π and measure how it moves translations.

    Even sample points 2m correspond to sᵐ. The deviation for a sign is
    max d(π(f(2m)), s^{±m}) over the window.
    """
    dev_plus = dev_minus = 0
    for x, fx in samples.items():
        if x % 2:
            continue
        image = pairing_pi(fx)
        m = x // 2
        dev_plus = max(dev_plus, dmetric(image, translation(m)))
        dev_minus = max(dev_minus, dmetric(image, translation(-m)))
    sign = 1 if dev_plus <= dev_minus else -1
    return TransportedOrientation(
        sign=sign,
        max_deviation=min(dev_plus, dev_minus),
        deviation_plus=dev_plus,
        deviation_minus=dev_minus,
    )
