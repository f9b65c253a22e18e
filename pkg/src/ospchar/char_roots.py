"""Extended labels and characteristic roots alpha_p of irreducible osp(m|n) modules.

Two rules for the middle root alpha_{h+1} (odd m) are available:

``"formula"``  alpha_{h+1} = (m - n - 2)/2, the value obtained from the
               unified formula with the extended label 1/2 (default).
``"casimir"``  alpha_{h+1} = (m - n - 1)/2, the value given by the shifted
               Casimir difference, which is what the realized characteristic
               matrices satisfy.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .algebra_core import (
    EXTRA,
    AlgebraSignature,
    Convention,
    Even,
    GradedIndex,
    Odd,
    Weight,
    casimir_eigenvalue,
    index_weight,
)

MIDDLE_RULES = ("formula", "casimir")


@dataclass(frozen=True)
class ExtendedLabels:
    sig: AlgebraSignature
    labels: dict[GradedIndex, Fraction]

    def __getitem__(self, p: GradedIndex) -> Fraction:
        return self.labels[p]

    @property
    def even(self) -> tuple[Fraction, ...]:
        return tuple(self.labels[p] for p in self.sig.even_indices)

    @property
    def odd(self) -> tuple[Fraction, ...]:
        return tuple(self.labels[p] for p in self.sig.odd_indices)


@dataclass(frozen=True)
class CharRoots:
    sig: AlgebraSignature
    alpha: dict[GradedIndex, Fraction]

    def __getitem__(self, p: GradedIndex) -> Fraction:
        return self.alpha[p]

    @property
    def alpha_even(self) -> tuple[Fraction, ...]:
        return tuple(self.alpha[p] for p in self.sig.even_indices)

    @property
    def alpha_odd(self) -> tuple[Fraction, ...]:
        return tuple(self.alpha[p] for p in self.sig.odd_indices)

    def values(self) -> list[Fraction]:
        return [self.alpha[p] for p in self.sig.indices]


def extended_labels(weight: Weight, sig: AlgebraSignature) -> ExtendedLabels:
    """Labels for all m+n indices.

    Lambda_{bar i} = 1 - Lambda_i, Lambda_{h+1} = 1/2 (odd m) and
    Lambda_{bar mu} = m - 1 - Lambda_mu, chosen so that one pair of affine
    formulas gives every root.
    """
    weight.check_shape(sig)
    m, n, h, k = sig.m, sig.n, sig.h, sig.k
    labels: dict[GradedIndex, Fraction] = {}
    for i in range(1, h + 1):
        labels[Even(i)] = weight.even[i - 1]
        labels[Even(m + 1 - i)] = 1 - weight.even[i - 1]
    if sig.m_odd:
        labels[Even(h + 1)] = Fraction(1, 2)
    for mu in range(1, k + 1):
        labels[Odd(mu)] = weight.odd[mu - 1]
        labels[Odd(n + 1 - mu)] = m - 1 - weight.odd[mu - 1]
    return ExtendedLabels(sig, {p: labels[p] for p in sig.indices})


def _check_rule(middle_root: str) -> None:
    if middle_root not in MIDDLE_RULES:
        raise ValueError(f"middle_root must be one of {MIDDLE_RULES}, got {middle_root!r}")


def characteristic_roots(weight: Weight, sig: AlgebraSignature, middle_root: str = "formula") -> CharRoots:
    """alpha_i = Lambda_i + m - i - n/2 - 1 and alpha_mu = -Lambda_mu + m - n + mu - 1 on extended labels."""
    _check_rule(middle_root)
    ext = extended_labels(weight, sig)
    m, n = sig.m, sig.n
    alpha: dict[GradedIndex, Fraction] = {}
    for p in sig.indices:
        lab = ext[p]
        if p.parity:
            alpha[p] = -lab + m - n + p.label - 1
        else:
            alpha[p] = lab + m - p.label - Fraction(n, 2) - 1
    if sig.m_odd and middle_root == "casimir":
        alpha[Even(sig.h + 1)] = Fraction(m - n - 1, 2)
    return CharRoots(sig, alpha)


def case_split_roots(weight: Weight, sig: AlgebraSignature) -> CharRoots:
    """The same roots written separately for i, bar i, h+1, mu and bar mu."""
    weight.check_shape(sig)
    m, n, h, k = sig.m, sig.n, sig.h, sig.k
    half_n = Fraction(n, 2)
    alpha: dict[GradedIndex, Fraction] = {}
    for i in range(1, h + 1):
        lam = weight.even[i - 1]
        alpha[Even(i)] = lam + m - i - half_n - 1
        alpha[Even(m + 1 - i)] = -lam + i - half_n - 1
    if sig.m_odd:
        alpha[Even(h + 1)] = Fraction(m - n - 2, 2)
    for mu in range(1, k + 1):
        lam = weight.odd[mu - 1]
        alpha[Odd(mu)] = -lam + m - n + mu - 1
        alpha[Odd(n + 1 - mu)] = lam - mu + 1
    return CharRoots(sig, {p: alpha[p] for p in sig.indices})


def casimir_difference_roots(
    weight: Weight, sig: AlgebraSignature, convention: Convention = Convention.CANONICAL
) -> CharRoots:
    """alpha_p = -1/2 [chi(Lambda - eps_p) - chi(delta_1) - chi(Lambda)]."""
    chi = lambda w: casimir_eigenvalue(w, sig, convention)  # noqa: E731
    base = chi(weight) + chi(Weight.delta(sig, 1))
    alpha = {p: -Fraction(1, 2) * (chi(weight - index_weight(p, sig)) - base) for p in sig.indices}
    return CharRoots(sig, alpha)


def parent_roots(weight: Weight, parent: AlgebraSignature, middle_root: str = "formula") -> CharRoots:
    """Roots beta_p of an osp(m+1|n) module: the same formulas with m+1 in place of m."""
    return characteristic_roots(weight, parent, middle_root=middle_root)


def parent_label_map(child: AlgebraSignature) -> dict[GradedIndex, GradedIndex]:
    """Map each parent index (osp(m+1|n) flat labels) to the child label of its root.

    Parent roots are labelled like the child roots they sit next to, plus the
    extra label 0.  For even child m the parent's zero-weight root gets label 0.
    For odd child m the parent has roots for +eps_{h+1} and -eps_{h+1}; the
    first gets label 0, the second the child's middle label h+1.
    """
    h = child.h
    parent = AlgebraSignature(child.m + 1, child.n)
    out: dict[GradedIndex, GradedIndex] = {}
    for p in parent.indices:
        if p.parity:
            out[p] = p
        elif p.label <= h:
            out[p] = p
        elif p.label == h + 1:
            out[p] = EXTRA
        else:
            out[p] = Even(p.label - 1)
    return out


def child_labelled_parent_roots(
    weight: Weight, child: AlgebraSignature, middle_root: str = "formula"
) -> dict[GradedIndex, Fraction]:
    parent = AlgebraSignature(child.m + 1, child.n)
    roots = parent_roots(weight, parent, middle_root=middle_root)
    labels = parent_label_map(child)
    by_label = {labels[p]: roots[p] for p in parent.indices}
    order = [EXTRA] + list(child.indices)
    return {q: by_label[q] for q in order}


def degeneracy_report(roots: CharRoots | dict[GradedIndex, Fraction]) -> list[tuple[GradedIndex, GradedIndex]]:
    alpha = roots.alpha if isinstance(roots, CharRoots) else roots
    keys = list(alpha)
    return [(p, q) for p, q in combinations(keys, 2) if alpha[p] == alpha[q]]
