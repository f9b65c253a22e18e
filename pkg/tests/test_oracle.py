from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ospchar import matrix_rep as mr
from ospchar import oracle
from ospchar.algebra_core import EXTRA, AlgebraSignature, Odd, Weight
from ospchar.branching import index_sets
from ospchar.errors import SingularSystem
from ospchar.supermatrix import SuperMatrix

S = AlgebraSignature
F = Fraction


def test_bareiss_small():
    assert oracle.bareiss_solve([[2, 1], [1, 3]], [3, 5]) == [F(4, 5), F(7, 5)]
    assert oracle.bareiss_solve([[0, 1], [1, 0]], [2, 3]) == [3, 2]
    assert oracle.bareiss_solve([[F(1, 2)]], [1]) == [2]


def test_bareiss_singular_and_shape():
    with pytest.raises(SingularSystem):
        oracle.bareiss_solve([[1, 2], [2, 4]], [1, 2])
    with pytest.raises(ValueError):
        oracle.bareiss_solve([[1, 2]], [1])


small = st.fractions(min_value=-4, max_value=4, max_denominator=5)


@settings(max_examples=60)
@given(st.integers(1, 4).flatmap(lambda n: st.tuples(
    st.lists(st.lists(small, min_size=n, max_size=n), min_size=n, max_size=n),
    st.lists(small, min_size=n, max_size=n),
)))
def test_bareiss_residual_vanishes(system):
    A, b = system
    sysm = oracle.ExactLinearSystem(A, b)
    try:
        sysm.solve()
    except SingularSystem:
        assert sysm.singular
        return
    assert not any(sysm.residual())


def test_residual_needs_solution():
    with pytest.raises(ValueError):
        oracle.ExactLinearSystem([[F(1)]], [F(1)]).residual()


def test_hand_systems():
    ctx = index_sets(Weight([], [1]), Weight([], [1]), S(0, 2))
    sysm = oracle.c_system(ctx)
    assert len(sysm.matrix) == 2 and sysm.unknowns == (EXTRA, Odd(2))
    C = sysm.solve().as_dict()
    assert C == {EXTRA: F(3, 5), Odd(2): F(2, 5)}
    g = oracle.gamma_system(ctx, Odd(2), C).solve()
    assert not any(g.residual())


def test_polynomials():
    p = oracle.poly_from_roots([F(1), F(-2)])
    assert p == [-2, 1, 1]
    q, r = oracle.poly_divmod(p, [F(-1), F(1)])
    assert q == [2, 1] and r == []
    q, r = oracle.poly_divmod([F(1), F(0), F(1)], [F(1), F(1)])
    assert r == [2]
    with pytest.raises(ZeroDivisionError):
        oracle.poly_divmod(p, [F(0)])
    assert oracle.poly_str(p) == "x^2 + x - 2"
    assert oracle.poly_str([]) == "0"


def test_minimal_polynomial_basics():
    g = (0, 0, 1)
    assert oracle.minimal_polynomial(SuperMatrix.zeros(g)) == [0, 1]
    assert oracle.minimal_polynomial(SuperMatrix.identity(g)) == [-1, 1]
    nil = SuperMatrix.from_entries([[0, 1, 0], [0, 0, 0], [0, 0, 0]], g)
    assert oracle.minimal_polynomial(nil) == [0, 0, 1]
    diag = SuperMatrix.from_entries([[2, 0, 0], [0, 2, 0], [0, 0, -1]], g)
    assert oracle.minimal_polynomial(diag) == oracle.poly_from_roots([F(2), F(-1)])


@pytest.mark.parametrize("sig", [S(0, 2), S(1, 2), S(2, 2), S(3, 2), S(2, 4)], ids=str)
def test_minimal_polynomial_annihilates_A(sig):
    A = mr.characteristic_matrix(mr.defining_module(sig))
    mp = oracle.minimal_polynomial(A)
    acc = SuperMatrix.zeros(A.grading)
    power = SuperMatrix.identity(A.grading)
    for c in mp:
        acc = acc + power.scale(c)
        power = power @ A
    assert acc.is_zero()


@pytest.mark.parametrize("child", [S(0, 2), S(0, 4), S(1, 2)], ids=str)
def test_operator_checks_match_under_casimir_rule(child):
    rep = oracle.operator_invariant_check(mr.embed_parent(child), "casimir")
    assert rep.ok and rep.count("mismatch") == 0 and rep.count("match") > 0


@pytest.mark.parametrize("child", [S(0, 2), S(0, 4), S(1, 2), S(1, 4)], ids=str)
def test_operator_checks_expose_formula_rule(child):
    # the parent has odd m, so its middle root enters the closed forms
    rep = oracle.operator_invariant_check(mr.embed_parent(child), "formula")
    assert not rep.ok
    assert {c.name for c in rep.checks if c.status == "mismatch"} <= {"C", "gamma_p", "mu", "identity"}


def test_operator_checks_skip_degenerate_modules():
    rep = oracle.operator_invariant_check(mr.embed_parent(S(2, 2)))
    assert rep.ok and rep.count("skipped") == len(rep.checks)


def test_vacuous_checks_where_projection_vanishes():
    # P[t] is zero on the constituent, so there is nothing to compare
    rep = oracle.operator_invariant_check(mr.embed_parent(S(0, 2)), "casimir")
    vac = [c for c in rep.checks if c.status == "vacuous"]
    assert vac and all(c.ok for c in vac)


def test_operator_omega_on_saturated_index():
    # the realized P[t] Q[s] P[t] gives omega = 1 where beta_s = alpha_s
    rep = oracle.operator_invariant_check(mr.embed_parent(S(0, 2)), "casimir")
    hit = [c for c in rep.checks if c.name == "omega" and c.constituent == "even:;odd:1" and c.index == "O2,O2"]
    assert len(hit) == 1 and hit[0].status == "match" and hit[0].observed == "1"
