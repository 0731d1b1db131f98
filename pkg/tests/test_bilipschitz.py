from __future__ import annotations

import pytest
from coe_rigidity.errors import AmbiguousOrientation
from coe_rigidity.group.bilipschitz import (
    BiLipschitzConfig,
    bilipschitz_classify,
    sample_window,
    transported_orientation,
)
from coe_rigidity.group.dihedral import T, left_translation_conjugate, right_translation_conjugate


def test_affine_maps() -> None:
    report = bilipschitz_classify(sample_window(lambda x: 3 - x, 20))
    assert (report.sign, report.constant, report.defect_bound, report.window) == (-1, 3, 0, 20)

    report = bilipschitz_classify(sample_window(lambda x: x + 7, 20))
    assert (report.sign, report.constant, report.defect_bound) == (1, 7, 0)
    assert report.to_json()["sign"] == "+"


def test_right_translation_by_t_reverses() -> None:
    samples = sample_window(right_translation_conjugate(T), 50)
    report = bilipschitz_classify(samples)
    assert (report.sign, report.constant, report.defect_bound) == (-1, 1, 0)

    transported = transported_orientation(samples)
    assert transported.sign == -1
    assert transported.max_deviation == 1


def test_left_translation_by_t_preserves() -> None:
    samples = sample_window(left_translation_conjugate(T), 50)
    report = bilipschitz_classify(samples)
    assert report.sign == 1
    assert report.constant == 1
    assert report.defect_bound == 2

    transported = transported_orientation(samples)
    assert transported.sign == 1
    assert transported.max_deviation == 1
    assert transported.deviation_minus == 51


def test_equal_spreads_are_ambiguous() -> None:
    samples = {-2: 99, -1: -100, 0: 0, 1: 100, 2: -99}
    with pytest.raises(AmbiguousOrientation) as exc_info:
        bilipschitz_classify(samples)
    assert exc_info.value.range_plus == exc_info.value.range_minus == 202

    # a threshold above the spread lets the tie resolve to +
    report = bilipschitz_classify(samples, BiLipschitzConfig(ambiguity_threshold=500))
    assert report.sign == 1


def test_rejects_bad_samples() -> None:
    with pytest.raises(ValueError, match="empty"):
        bilipschitz_classify({})
    with pytest.raises(ValueError, match="injective"):
        bilipschitz_classify({-1: 0, 0: 0, 1: 2})
    with pytest.raises(ValueError, match="half-width"):
        bilipschitz_classify({0: 4})
