"""Branching osp(m+1|n) -> osp(m|n): betweenness conditions, enumeration and index sets."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product

from .algebra_core import (
    EXTRA,
    AlgebraSignature,
    Even,
    GradedIndex,
    Odd,
    Weight,
    validate_dominant,
)
from .char_roots import characteristic_roots, child_labelled_parent_roots
from .errors import InvalidBranch, InvalidWeight


@dataclass(frozen=True)
class BranchContext:
    parent_sig: AlgebraSignature
    child_sig: AlgebraSignature
    parent: Weight
    child: Weight
    beta: dict[GradedIndex, Fraction] = field(repr=False)  # keyed by child labels and EXTRA
    alpha: dict[GradedIndex, Fraction] = field(repr=False)
    I0: tuple[GradedIndex, ...]
    I1: tuple[GradedIndex, ...]
    I1bar: tuple[GradedIndex, ...]
    middle_root: str = "formula"

    @property
    def I(self) -> tuple[GradedIndex, ...]:
        return self.I0 + self.I1

    @property
    def Itilde(self) -> tuple[GradedIndex, ...]:
        return (EXTRA,) + self.I

    def a(self, r: GradedIndex) -> Fraction:
        """alpha_r + (-1)^{(r)} - delta_{r,h+1}: the shifted child root used throughout."""
        return self.alpha[r] + r.sign - self.delta_middle(r)

    def delta_middle(self, r: GradedIndex) -> int:
        """delta_{r,h+1}, nonzero only for odd child m."""
        mid = self.child_sig.middle
        return 1 if mid is not None and r == mid else 0

    def bar(self, r: GradedIndex) -> GradedIndex:
        from .algebra_core import bar

        return bar(r, self.child_sig)


def _shape_check(parent: Weight, child: Weight, psig: AlgebraSignature, csig: AlgebraSignature) -> None:
    parent.check_shape(psig)
    child.check_shape(csig)


def _even_interleave(parent: Weight, child: Weight, child_sig: AlgebraSignature) -> bool:
    pe, ce = parent.even, child.even
    h = child_sig.h
    if h == 0:
        return True
    if any((p - c).denominator != 1 for p, c in zip(pe, ce)):
        return False
    if child_sig.m == 2:
        # osp(3|n) > osp(2|n): l >= lambda >= -l with l - lambda integral
        return pe[0] >= ce[0] >= -pe[0]
    for i in range(h - 1):
        if not pe[i] >= ce[i] >= pe[i + 1]:
            return False
    if child_sig.m_odd:
        # o(2h+2) > o(2h+1): ... >= lambda_h >= |l_{h+1}|
        return pe[h - 1] >= ce[h - 1] >= abs(pe[h])
    # o(2h+1) > o(2h): l_h >= lambda_h >= -l_h
    return pe[h - 1] >= ce[h - 1] >= -pe[h - 1]


def validate_branch_pair(parent: Weight, child: Weight, child_sig: AlgebraSignature) -> bool:
    """Betweenness conditions for a parent osp(m+1|n) weight and a child osp(m|n) weight."""
    parent_sig = AlgebraSignature(child_sig.m + 1, child_sig.n)
    _shape_check(parent, child, parent_sig, child_sig)
    for p, c in zip(parent.odd, child.odd):
        if c not in (p, p - 1):
            return False
    return _even_interleave(parent, child, child_sig)


def _even_candidates(parent: Weight, child_sig: AlgebraSignature) -> list[tuple[Fraction, ...]]:
    pe = parent.even
    h = child_sig.h
    if h == 0:
        return [()]
    ranges = []
    for i in range(h):
        top = pe[i]
        if i < h - 1:
            low = pe[i + 1]
        elif child_sig.m_odd:
            low = abs(pe[h])
        else:
            low = -pe[h - 1]
        count = int(top - low) + 1 if top >= low else 0
        ranges.append([top - j for j in range(count)])
    return list(product(*ranges))


def branch_enumerate(parent: Weight, parent_sig: AlgebraSignature) -> list[Weight]:
    """All child weights passing betweenness and child dominance, sorted, each once.

    These are admissible candidates; occurrence in the restriction is not checked.
    """
    if parent_sig.m < 1:
        raise ValueError("the parent needs m >= 1")
    parent.check_shape(parent_sig)
    if validate_dominant(parent, parent_sig) == "invalid":
        raise InvalidWeight(f"{parent} is not dominant for {parent_sig}")
    child_sig = AlgebraSignature(parent_sig.m - 1, parent_sig.n)
    odd_choices = [(p, p - 1) for p in parent.odd]
    found = set()
    for even in _even_candidates(parent, child_sig):
        for odd in product(*odd_choices):
            w = Weight(even, odd)
            if validate_dominant(w, child_sig) == "invalid":
                continue
            if validate_branch_pair(parent, w, child_sig):
                found.add(w)
    return sorted(found, key=lambda w: (w.even, w.odd))


def split_odd(parent: Weight, child: Weight, child_sig: AlgebraSignature) -> tuple[tuple[GradedIndex, ...], tuple[GradedIndex, ...]]:
    """I1 and its complement among the odd indices."""
    I1, I1bar = [], []
    n = child_sig.n
    for mu, (p, c) in enumerate(zip(parent.odd, child.odd), start=1):
        if p == c + 1:
            I1.append(Odd(mu))
            I1bar.append(Odd(n + 1 - mu))
        else:
            I1.append(Odd(n + 1 - mu))
            I1bar.append(Odd(mu))
    return tuple(sorted(I1)), tuple(sorted(I1bar))


def formal_context(
    parent: Weight,
    child: Weight,
    child_sig: AlgebraSignature,
    I1: tuple[GradedIndex, ...],
    middle_root: str = "formula",
) -> BranchContext:
    """A context without any validation; used for deformations off the dominant lattice."""
    parent_sig = AlgebraSignature(child_sig.m + 1, child_sig.n)
    _shape_check(parent, child, parent_sig, child_sig)
    I1 = tuple(sorted(I1))
    I1bar = tuple(sorted(p for p in child_sig.odd_indices if p not in I1))
    beta = child_labelled_parent_roots(parent, child_sig, middle_root=middle_root)
    alpha = characteristic_roots(child, child_sig, middle_root=middle_root).alpha
    return BranchContext(
        parent_sig, child_sig, parent, child, beta, alpha, child_sig.even_indices, I1, I1bar, middle_root
    )


def index_sets(
    parent: Weight, child: Weight, child_sig: AlgebraSignature, middle_root: str = "formula"
) -> BranchContext:
    if not validate_branch_pair(parent, child, child_sig):
        raise InvalidBranch(f"{child} is not admissible under {parent}")
    I1, _ = split_odd(parent, child, child_sig)
    return formal_context(parent, child, child_sig, I1, middle_root=middle_root)


def dominant_weights(sig: AlgebraSignature, max_label: int) -> list[Weight]:
    """Dominant weights with |labels| <= max_label; even labels step by 1/2, odd labels are integers."""
    steps = [Fraction(j, 2) for j in range(-2 * max_label, 2 * max_label + 1)]
    odd_range = range(0, max_label + 1)
    out = []
    for even in product(steps, repeat=sig.h):
        for odd in product(odd_range, repeat=sig.k):
            w = Weight(even, odd)
            if validate_dominant(w, sig) != "invalid":
                out.append(w)
    return sorted(out, key=lambda w: (w.even, w.odd))


def branching_grid(child_sig: AlgebraSignature, max_label: int, middle_root: str = "formula") -> list[BranchContext]:
    """Every admissible (parent, child) context for parents with labels bounded by max_label."""
    parent_sig = AlgebraSignature(child_sig.m + 1, child_sig.n)
    out = []
    for parent in dominant_weights(parent_sig, max_label):
        for child in branch_enumerate(parent, parent_sig):
            out.append(index_sets(parent, child, child_sig, middle_root=middle_root))
    return out
