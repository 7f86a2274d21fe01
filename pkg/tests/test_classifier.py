"""Type classification, static table and empirical detection."""

from fractions import Fraction

import pytest

from goldshift.classifier import (
    STATIC_TABLE,
    TYPE_D,
    TYPE_E,
    TYPE_O,
    TYPE_O2,
    TYPE_Z,
    classify_static,
    detect_empirical,
    dominant_monomials,
    essentiality,
    ratio_trace,
)
from goldshift.errors import IndeterminateError
from goldshift.recurrence import ALL_PAIRS, build_system
from goldshift.reference import reference_types


def test_static_table_matches_reference_csv():
    refs = reference_types()
    for k, l in ALL_PAIRS:
        assert classify_static(k, l) == refs[(k, l)]


def test_static_table_census():
    from collections import Counter

    census = Counter(STATIC_TABLE.values())
    assert census[TYPE_Z] == 16
    assert census[TYPE_E] == 9
    assert census[TYPE_O] == 4
    assert census[TYPE_O2] == 4
    assert census[TYPE_D] == 48


def test_essentiality_examples():
    assert essentiality(build_system(1, 6)).essential_indices == (0, 1, 2, 3)
    rep = essentiality(build_system(3, 9))
    assert rep.essential_indices == (0, 2)
    assert rep.inessential_indices == (1, 3)
    rep = essentiality(build_system(6, 7))
    assert rep.essential_indices == ()
    assert essentiality(build_system(7, 4)).essential_indices == (1,)


def test_essentiality_rejects_tiny_horizon():
    with pytest.raises(ValueError):
        essentiality(build_system(1, 6), horizon=1)


def test_ratio_trace_oscillating_example():
    rt = ratio_trace(build_system(3, 8), 6)
    assert rt.tau[:5] == (
        Fraction(2), Fraction(3, 2), Fraction(5, 6), Fraction(11, 15),
        Fraction(52, 55),
    )
    assert rt.chi[:5] == (
        Fraction(2), Fraction(3), Fraction(5, 2), Fraction(11, 6),
        Fraction(26, 15),
    )
    # root-symbol dominance flips back and forth around 1
    flips = [t > 1 for t in rt.tau[:5]]
    assert True in flips and False in flips


def test_ratio_trace_parity_alternating_example():
    rt = ratio_trace(build_system(3, 6), 5)
    assert rt.tau[:4] == (
        Fraction(2), Fraction(3, 4), Fraction(14, 9), Fraction(69, 98),
    )
    assert all(t > 1 for t in rt.tau[0::2])
    assert all(t < 1 for t in rt.tau[1::2])


def test_detect_matches_static_on_all_systems():
    for k, l in ALL_PAIRS:
        assert detect_empirical(build_system(k, l)) == classify_static(k, l)


def test_detect_window_validation():
    sys = build_system(1, 6)
    with pytest.raises(ValueError):
        detect_empirical(sys, window=(1, 40))
    with pytest.raises(ValueError):
        detect_empirical(sys, window=(5, 5))


def test_dominant_monomials_stable_for_dominating_system():
    picks = dominant_monomials(build_system(1, 6))
    assert len(picks) == 4
    sys = build_system(1, 6)
    for ei, pick in enumerate(picks):
        assert 0 <= pick < len(sys.term_sets[ei])


def test_dominant_monomials_indeterminate_for_oscillating_system():
    with pytest.raises(IndeterminateError):
        dominant_monomials(build_system(7, 2))
