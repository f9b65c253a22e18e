from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from ospchar.algebra_core import EXTRA, AlgebraSignature, Even, Odd, Weight, index_weight
from ospchar.branching import dominant_weights
from ospchar.char_roots import (
    case_split_roots,
    casimir_difference_roots,
    characteristic_roots,
    child_labelled_parent_roots,
    degeneracy_report,
    extended_labels,
    parent_label_map,
    parent_roots,
)

S = AlgebraSignature
h = Fraction(1, 2)


def test_extended_labels_examples():
    sig = S(3, 2)
    ext = extended_labels(Weight([1], [2]), sig)
    assert ext.even == (1, h, 0)
    assert ext.odd == (2, 0)
    ext0 = extended_labels(Weight.zero(sig), sig)
    assert ext0.even == (0, h, 1)
    assert ext0.odd == (0, 2)


@pytest.mark.parametrize("m", [1, 3, 5])
def test_middle_label_is_half(m):
    sig = S(m, 2)
    assert extended_labels(Weight.zero(sig), sig)[Even(sig.h + 1)] == h


def test_roots_example():
    roots = characteristic_roots(Weight([1], [2]), S(3, 2))
    assert roots.alpha_even == (1, -h, -2)
    assert roots.alpha_odd == (-1, 2)


def test_osp12_single_even_root():
    for lab in range(4):
        assert characteristic_roots(Weight([], [lab]), S(1, 2)).alpha_even == (Fraction(-3, 2),)


def test_vector_module_degeneracy():
    roots = characteristic_roots(Weight.delta(S(3, 2), 1), S(3, 2))
    assert roots[Even(1)] == roots[Odd(1)] == 0
    assert degeneracy_report(roots) == [(Even(1), Odd(1))]
    assert degeneracy_report(characteristic_roots(Weight([1], [2]), S(3, 2))) == []
    flat = {Even(1): Fraction(0), Even(2): Fraction(0), Odd(1): Fraction(0)}
    assert len(degeneracy_report(flat)) == 3


def test_parent_roots_examples():
    parent = S(1, 2)
    beta = parent_roots(Weight([], [1]), parent)
    assert beta.alpha_even == (Fraction(-3, 2),)
    assert beta.alpha_odd == (-2, 1)
    assert parent_roots(Weight.zero(parent), parent).alpha_odd == (-1, 0)


def test_casimir_rule_changes_only_the_middle_root():
    sig = S(3, 4)
    w = Weight([2], [3, 1])
    a = characteristic_roots(w, sig).alpha
    b = characteristic_roots(w, sig, middle_root="casimir").alpha
    assert {p for p in a if a[p] != b[p]} == {Even(2)}
    assert b[Even(2)] == Fraction(3 - 4 - 1, 2)
    with pytest.raises(ValueError):
        characteristic_roots(w, sig, middle_root="other")


@pytest.mark.parametrize("m", range(6))
@pytest.mark.parametrize("n", [2, 4])
def test_unified_equals_case_split(m, n):
    sig = S(m, n)
    for w in dominant_weights(sig, 2):
        assert characteristic_roots(w, sig).alpha == case_split_roots(w, sig).alpha


@pytest.mark.parametrize("m", range(6))
@pytest.mark.parametrize("n", [2, 4, 6])
def test_casimir_difference_on_vector_module(m, n):
    # the two rules agree away from the middle root; the casimir rule agrees everywhere
    sig = S(m, n)
    vec = Weight.delta(sig, 1)
    diff = casimir_difference_roots(vec, sig).alpha
    assert diff == characteristic_roots(vec, sig, middle_root="casimir").alpha
    formula = characteristic_roots(vec, sig).alpha
    assert {p for p in diff if diff[p] != formula[p]} == ({sig.middle} if sig.m_odd else set())


labels = st.integers(-6, 6)


@given(st.integers(0, 5), st.sampled_from([2, 4, 6]), st.data())
def test_roots_affine_with_unit_slopes(m, n, data):
    sig = S(m, n)
    even = [Fraction(data.draw(labels), 2) for _ in range(sig.h)]
    odd = [data.draw(labels) for _ in range(sig.k)]
    w = Weight(even, odd)
    base = characteristic_roots(w, sig).alpha
    for p in sig.indices:
        if p.label > (sig.h if p.is_even else sig.k):
            continue
        moved = characteristic_roots(w + index_weight(p, sig), sig).alpha
        for q in sig.indices:
            slope = moved[q] - base[q]
            assert slope in (-1, 0, 1)
            if q == p:
                assert slope == (1 if p.is_even else -1)


def test_parent_label_map_places_extra_index():
    child = S(3, 2)
    mapping = parent_label_map(child)  # parent osp(4|2)
    assert mapping[Even(1)] == Even(1)
    assert mapping[Even(2)] == EXTRA
    assert mapping[Even(3)] == Even(2)
    assert mapping[Even(4)] == Even(3)
    assert mapping[Odd(2)] == Odd(2)
    beta = child_labelled_parent_roots(Weight([1, 1], [2]), child)
    assert list(beta) == [EXTRA, Even(1), Even(2), Even(3), Odd(1), Odd(2)]
