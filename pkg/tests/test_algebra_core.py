from __future__ import annotations

from fractions import Fraction

import pytest

from ospchar.algebra_core import (
    EXTRA,
    AlgebraSignature,
    Convention,
    Even,
    GradedIndex,
    Odd,
    Weight,
    bar,
    bilinear_form,
    casimir_eigenvalue,
    check_index,
    format_weight,
    half_sum,
    parity,
    parse_weight,
    positive_roots,
    rho,
    theta,
    tilde,
    validate_dominant,
)
from ospchar.errors import InvalidIndex, InvalidWeight

S = AlgebraSignature


def test_signature_derived_fields():
    sig = S(5, 4)
    assert (sig.h, sig.k, sig.m_odd, sig.dim) == (2, 2, True, 9)
    assert sig.indices[:5] == tuple(Even(i) for i in range(1, 6))
    assert sig.odd_indices == tuple(Odd(mu) for mu in range(1, 5))
    assert sig.grading == (0,) * 5 + (1,) * 4
    assert sig.middle == Even(3)
    assert S(4, 2).middle is None


@pytest.mark.parametrize("m,n", [(-1, 2), (2, 3), (2, 0)])
def test_signature_rejects_bad_shapes(m, n):
    with pytest.raises(ValueError):
        S(m, n)


def test_parity_examples():
    assert parity(Even(2), S(3, 2)) == 0
    assert parity(Odd(1), S(3, 2)) == 1
    assert parity(Even(1), S(1, 2)) == 0


def test_theta_examples():
    assert theta(Odd(1), S(0, 4)) == 1
    assert theta(Odd(3), S(0, 4)) == -1
    assert theta(Even(2), S(3, 2)) == 1


def test_bar_and_tilde_examples():
    assert bar(Even(1), S(3, 2)) == Even(3)
    assert bar(Odd(1), S(0, 4)) == Odd(4)
    assert bar(Even(2), S(3, 2)) == Even(2)
    assert tilde(Even(3), S(5, 2)) == Even(3)
    assert tilde(Odd(2), S(0, 4)) == Odd(3)
    assert tilde(Odd(1), S(0, 2)) == Odd(2)


def test_index_range_checked():
    with pytest.raises(InvalidIndex):
        check_index(Even(4), S(3, 2))
    with pytest.raises(InvalidIndex):
        bar(Odd(3), S(1, 2))


def test_index_keys_round_trip():
    for p in (EXTRA, Even(3), Odd(12)):
        assert GradedIndex.from_key(p.key()) == p
    assert EXTRA.key() == "0" and Even(3).key() == "E3" and Odd(2).key() == "O2"
    assert EXTRA.is_extra and not Even(1).is_extra


def test_bilinear_form_examples():
    sig = S(3, 2)
    e, d = Weight.epsilon(sig, 1), Weight.delta(sig, 1)
    assert bilinear_form(e, e) == 1
    assert bilinear_form(d, d) == -1
    assert bilinear_form(e, d) == 0


def test_rho_examples():
    assert rho(S(3, 2)) == Weight([Fraction(1, 2)], [Fraction(-1, 2)])
    assert rho(S(2, 2), Convention.DISTINGUISHED) == Weight([-1], [1])
    assert rho(S(0, 2)) == Weight([], [1])


def test_distinguished_only_for_m2():
    with pytest.raises(ValueError):
        rho(S(3, 2), Convention.DISTINGUISHED)


@pytest.mark.parametrize("m", range(6))
@pytest.mark.parametrize("n", [2, 4, 6])
def test_canonical_rho_is_even_minus_odd_half_sums(m, n):
    sig = S(m, n)
    even_roots, odd_roots = positive_roots(sig)
    assert rho(sig) == half_sum(even_roots, sig) - half_sum(odd_roots, sig)


def test_validate_dominant_examples():
    assert validate_dominant(Weight([1], [2]), S(3, 2)) == "tensor"
    assert validate_dominant(Weight([Fraction(1, 2), Fraction(1, 2)], [1]), S(4, 2)) == "spinor"
    assert validate_dominant(Weight([1], [-1]), S(3, 2)) == "invalid"


def test_validate_dominant_orderings():
    # odd labels non-increasing
    assert validate_dominant(Weight([], [2, 1]), S(0, 4)) == "tensor"
    assert validate_dominant(Weight([], [1, 2]), S(0, 4)) == "invalid"
    # even m: last label may be negative up to the previous one
    assert validate_dominant(Weight([2, -2], [0]), S(4, 2)) == "tensor"
    assert validate_dominant(Weight([1, -2], [0]), S(4, 2)) == "invalid"
    # odd m: last label non-negative
    assert validate_dominant(Weight([2, -1], [0]), S(5, 2)) == "invalid"
    # mixed integral and half-odd labels
    assert validate_dominant(Weight([1, Fraction(1, 2)], [0]), S(5, 2)) == "invalid"
    # osp(2|n): any rational label
    assert validate_dominant(Weight([Fraction(-7, 3)], [1]), S(2, 2)) == "generic"


def test_weight_shape_checked():
    with pytest.raises(InvalidWeight):
        Weight([1], [1, 2]).check_shape(S(3, 2))


def test_floats_rejected():
    with pytest.raises(TypeError):
        Weight([0.5], [1])


def test_weight_text_round_trip():
    w = Weight([Fraction(3, 2)], [2, 1])
    assert format_weight(w) == "even:3/2;odd:2,1"
    assert parse_weight("even:3/2;odd:2,1") == w
    assert parse_weight("odd:1") == Weight([], [1])
    assert parse_weight(" even: ; odd: 2 ") == Weight([], [2])


@pytest.mark.parametrize("text", ["even:1;even:2", "spin:1", "even:x", "odd 1"])
def test_weight_text_errors(text):
    with pytest.raises(InvalidWeight):
        parse_weight(text)


def test_casimir_examples():
    assert casimir_eigenvalue(Weight.zero(S(3, 2)), S(3, 2)) == 0
    assert casimir_eigenvalue(Weight.delta(S(3, 2), 1), S(3, 2)) == 0
    sig = S(2, 4)
    assert casimir_eigenvalue(Weight.delta(sig, 1), sig) == -3
    assert casimir_eigenvalue(Weight.epsilon(sig, 1), sig, Convention.DISTINGUISHED) == -3


@pytest.mark.parametrize("m", range(6))
@pytest.mark.parametrize("n", [2, 4, 6])
def test_vector_casimir(m, n):
    sig = S(m, n)
    assert casimir_eigenvalue(Weight.delta(sig, 1), sig) == m - n - 1
