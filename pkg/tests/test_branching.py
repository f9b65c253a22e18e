from __future__ import annotations

import pytest

from ospchar.algebra_core import EXTRA, AlgebraSignature, Odd, Weight, validate_dominant
from ospchar.branching import (
    branch_enumerate,
    branching_grid,
    dominant_weights,
    index_sets,
    split_odd,
    validate_branch_pair,
)
from ospchar.errors import InvalidBranch, InvalidWeight

S = AlgebraSignature


def test_validate_branch_pair_examples():
    child = S(2, 2)
    assert validate_branch_pair(Weight([1], [2]), Weight([0], [2]), child)
    assert not validate_branch_pair(Weight([1], [2]), Weight([2], [2]), child)
    assert validate_branch_pair(Weight([], [1]), Weight([], [0]), S(0, 2))
    assert not validate_branch_pair(Weight([], [2]), Weight([], [0]), S(0, 2))


def test_enumerate_examples():
    kids = branch_enumerate(Weight([1], [2]), S(3, 2))
    assert len(kids) == 6
    assert set(kids) == {Weight([lam], [mu]) for lam in (-1, 0, 1) for mu in (1, 2)}
    assert branch_enumerate(Weight([0], [0]), S(3, 2)) == [Weight([0], [0])]
    assert branch_enumerate(Weight([], [1]), S(1, 2)) == [Weight([], [0]), Weight([], [1])]


def test_enumerate_rejects_non_dominant_parent():
    with pytest.raises(InvalidWeight):
        branch_enumerate(Weight([1], [-1]), S(3, 2))


def test_index_sets_examples():
    child = S(0, 2)
    ctx = index_sets(Weight([], [1]), Weight([], [1]), child)
    assert ctx.I1 == (Odd(2),) and ctx.I1bar == (Odd(1),)
    assert ctx.I0 == () and ctx.Itilde == (EXTRA, Odd(2))
    ctx = index_sets(Weight([], [1]), Weight([], [0]), child)
    assert ctx.I1 == (Odd(1),) and ctx.I1bar == (Odd(2),)
    with pytest.raises(InvalidBranch):
        index_sets(Weight([], [2]), Weight([], [0]), child)


def test_split_odd_takes_one_of_each_pair():
    I1, I1bar = split_odd(Weight([], [3, 1]), Weight([], [2, 1]), S(0, 4))
    assert I1 == (Odd(1), Odd(3))
    assert I1bar == (Odd(2), Odd(4))


GRID_SIGS = [S(m, n) for m in range(5) for n in (2, 4)]


@pytest.mark.parametrize("child", GRID_SIGS, ids=str)
def test_context_invariants(child):
    for ctx in branching_grid(child, 2):
        odd = set(child.odd_indices)
        assert set(ctx.I1) | set(ctx.I1bar) == odd and not set(ctx.I1) & set(ctx.I1bar)
        for mu in range(1, child.k + 1):
            assert (Odd(mu) in ctx.I1) != (Odd(child.n + 1 - mu) in ctx.I1)
        assert len(ctx.Itilde) == len(ctx.I) + 1
        assert len(ctx.I) == child.m + child.k
        for q in ctx.I1:
            assert ctx.beta[q] == ctx.alpha[q]
        for q in ctx.I1bar:
            assert ctx.beta[q] == ctx.alpha[q] + 1


@pytest.mark.parametrize("parent_sig", [S(m, n) for m in range(1, 5) for n in (2, 4)], ids=str)
def test_enumeration_properties(parent_sig):
    child = S(parent_sig.m - 1, parent_sig.n)
    for parent in dominant_weights(parent_sig, 2):
        kids = branch_enumerate(parent, parent_sig)
        assert len(kids) == len(set(kids))
        assert kids == sorted(kids, key=lambda w: (w.even, w.odd))
        for w in kids:
            assert validate_branch_pair(parent, w, child)
            assert validate_dominant(w, child) != "invalid"
        # re-running is stable
        assert branch_enumerate(parent, parent_sig) == kids


def test_enumeration_is_exhaustive_on_a_box():
    parent_sig, child = S(4, 2), S(3, 2)
    parent = Weight([2, 1], [2])
    kids = set(branch_enumerate(parent, parent_sig))
    for cand in dominant_weights(child, 3):
        if validate_branch_pair(parent, cand, child):
            assert cand in kids


def test_dominant_weights_are_dominant():
    for w in dominant_weights(S(4, 2), 2):
        assert validate_dominant(w, S(4, 2)) in ("tensor", "spinor")
