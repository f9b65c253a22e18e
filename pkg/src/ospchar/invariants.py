"""Closed forms for the branching invariants C_q, gamma_ps, gamma_p, mu_t and omega_{s,t}.

Every invariant is a signed product of affine factors in the labels.  Each
formula builds that product as a ``Term`` whose factors carry a value at the
context and a slope along a deformation direction.  Direct evaluation raises
``PoleError`` on a vanishing denominator.  Limit evaluation deforms
Lambda -> Lambda + t*eta, so every factor is c0 + c1*t, and reads off the
leading coefficient after cancelling powers of t.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from .algebra_core import EXTRA, GradedIndex, Weight
from .branching import BranchContext, formal_context
from .errors import DegenerateDirection, InvalidIndex, PoleError


@dataclass(frozen=True)
class Affine:
    """c0 + c1 * t."""

    c0: Fraction
    c1: Fraction = Fraction(0)

    def __add__(self, other) -> "Affine":
        if isinstance(other, Affine):
            return Affine(self.c0 + other.c0, self.c1 + other.c1)
        return Affine(self.c0 + other, self.c1)

    def __sub__(self, other) -> "Affine":
        if isinstance(other, Affine):
            return Affine(self.c0 - other.c0, self.c1 - other.c1)
        return Affine(self.c0 - other, self.c1)


@dataclass(frozen=True)
class Factor:
    value: Affine
    label: str


@dataclass
class Term:
    sign: int = 1
    num: list[Factor] = field(default_factory=list)
    den: list[Factor] = field(default_factory=list)

    def evaluate(self) -> Fraction:
        for f in self.den:
            if f.value.c0 == 0:
                left, _, right = f.label.partition(" - ")
                raise PoleError(f"vanishing denominator {f.label} = 0", (left, right))
        out = Fraction(self.sign)
        for f in self.num:
            out *= f.value.c0
        for f in self.den:
            out /= f.value.c0
        return out

    def limit(self) -> Fraction:
        order = 0
        lead = Fraction(self.sign)
        zero_num = False
        for f in self.num:
            c0, c1 = f.value.c0, f.value.c1
            if c0:
                lead *= c0
            elif c1:
                lead *= c1
                order += 1
            else:
                zero_num = True
        for f in self.den:
            c0, c1 = f.value.c0, f.value.c1
            if c0:
                lead /= c0
            elif c1:
                lead /= c1
                order -= 1
            else:
                raise DegenerateDirection(f"{f.label} vanishes identically along the deformation")
        if zero_num or order > 0:
            return Fraction(0)
        if order < 0:
            raise PoleError(f"pole of order {-order} survives the limit")
        return lead

    def __mul__(self, other: "Term") -> "Term":
        return Term(self.sign * other.sign, self.num + other.num, self.den + other.den).cancelled()

    def cancelled(self) -> "Term":
        """Drop factors whose affine value occurs in both numerator and denominator."""
        num = list(self.num)
        den = []
        for f in self.den:
            hit = next((j for j, g in enumerate(num) if g.value == f.value), None)
            if hit is None:
                den.append(f)
            else:
                num.pop(hit)
        return Term(self.sign, num, den)

    def laurent(self, depth: int) -> tuple[int, list[Fraction]] | None:
        """Expansion t^order * (f_0 + f_1 t + ... + f_depth t^depth) about t = 0.

        Returns None when a numerator factor vanishes identically.
        """
        order = 0
        series = [Fraction(self.sign)] + [Fraction(0)] * depth

        def times(coeffs: list[Fraction]) -> None:
            nonlocal series
            out = [Fraction(0)] * (depth + 1)
            for a, x in enumerate(series):
                if x:
                    for b, y in enumerate(coeffs[: depth + 1 - a]):
                        out[a + b] += x * y
            series = out

        for f in self.num:
            c0, c1 = f.value.c0, f.value.c1
            if c0:
                times([c0, c1])
            elif c1:
                order += 1
                times([c1])
            else:
                return None
        for f in self.den:
            c0, c1 = f.value.c0, f.value.c1
            if c0:
                ratio = -c1 / c0
                times([ratio**e / c0 for e in range(depth + 1)])
            elif c1:
                order -= 1
                times([1 / c1])
            else:
                raise DegenerateDirection(f"{f.label} vanishes identically along the deformation")
        return order, series

    def pole_order(self) -> int:
        zeros_num = sum(1 for f in self.num if not f.value.c0)
        zeros_den = sum(1 for f in self.den if not f.value.c0)
        return max(zeros_den - zeros_num, 0)


def sum_limit(terms: list[Term]) -> Fraction:
    """Value at t = 0 of a sum of terms.

    Poles of individual terms may cancel in the sum, so each term is expanded
    as a Laurent series about t = 0 deep enough to see every pole; all
    negative powers must cancel.
    """
    terms = [t.cancelled() for t in terms]
    depth = max((t.pole_order() for t in terms), default=0)
    coeffs = [Fraction(0)] * (depth + 1)  # coefficient of t^{e - depth}
    for t in terms:
        expansion = t.laurent(depth)
        if expansion is None:
            continue
        order, series = expansion
        for a, x in enumerate(series):
            e = order + a
            if e <= 0 and e >= -depth:
                coeffs[e + depth] += x
    if any(coeffs[:depth]):
        raise PoleError("poles do not cancel in the sum")
    return coeffs[depth]


def term(formula: str, ctx: BranchContext, *indices: GradedIndex, limit: bool = False, direction=None) -> Term:
    """The factored closed form; with ``limit`` the factors carry slopes along the deformation."""
    return _term(formula, ctx, indices, limit, direction)


class _Roots:
    """beta, alpha and derived shifted roots as Affine values."""

    def __init__(self, ctx: BranchContext, moved: BranchContext | None = None):
        self.ctx = ctx
        self.beta = {q: self._aff(ctx.beta[q], moved.beta[q] if moved else None) for q in ctx.beta}
        self.alpha = {p: self._aff(ctx.alpha[p], moved.alpha[p] if moved else None) for p in ctx.alpha}

    @staticmethod
    def _aff(v0: Fraction, v1: Fraction | None) -> Affine:
        return Affine(v0, Fraction(0) if v1 is None else v1 - v0)

    def a(self, r: GradedIndex) -> Affine:
        return self.alpha[r] + (r.sign - self.ctx.delta_middle(r))


def _b(q: GradedIndex) -> str:
    return f"beta[{q.key()}]"


def _al(p: GradedIndex) -> str:
    return f"alpha[{p.key()}]"


def _require(ctx: BranchContext, p: GradedIndex, allowed: tuple[GradedIndex, ...], what: str) -> None:
    if p not in allowed:
        raise InvalidIndex(f"{what} is defined for indices in {[x.key() for x in allowed]}, got {p.key()}")


# term builders


def c_term(ctx: BranchContext, q: GradedIndex, R: _Roots | None = None) -> Term:
    """C_q = prod_{r in I} (beta_q - a_r) / prod_{k != q in I~} (beta_q - beta_k)."""
    _require(ctx, q, ctx.Itilde, "C_q")
    R = R or _Roots(ctx)
    t = Term()
    for r in ctx.I:
        t.num.append(Factor(R.beta[q] - R.a(r), f"{_b(q)} - a[{r.key()}]"))
    for k in ctx.Itilde:
        if k != q:
            t.den.append(Factor(R.beta[q] - R.beta[k], f"{_b(q)} - {_b(k)}"))
    return t


def gamma_p_term(ctx: BranchContext, p: GradedIndex, R: _Roots | None = None) -> Term:
    """gamma_p = (-1)^{|I|} prod_{q in I~}(beta_q - a_p) / prod_{r != p in I}(a_p - a_r)."""
    _require(ctx, p, ctx.I, "gamma_p")
    R = R or _Roots(ctx)
    t = Term(sign=(-1) ** len(ctx.I))
    for r in ctx.I:
        if r != p:
            t.den.append(Factor(R.a(p) - R.a(r), f"a[{p.key()}] - a[{r.key()}]"))
    for q in ctx.Itilde:
        t.num.append(Factor(R.beta[q] - R.a(p), f"{_b(q)} - a[{p.key()}]"))
    return t


def gamma_ps_term(ctx: BranchContext, p: GradedIndex, s: GradedIndex, R: _Roots | None = None) -> Term:
    _require(ctx, s, ctx.Itilde, "gamma_ps")
    R = R or _Roots(ctx)
    t = gamma_p_term(ctx, p, R)
    t.den.append(Factor(R.beta[s] - R.a(p), f"{_b(s)} - a[{p.key()}]"))
    return t


def mu_term(ctx: BranchContext, t_idx: GradedIndex, R: _Roots | None = None) -> Term:
    """mu_t = (-1)^{|I|} prod_{r in I~}(beta_r - alpha_t) / prod_{s != t in I}(alpha_t - a_s - delta_{s, bar t})."""
    _require(ctx, t_idx, ctx.I, "mu_t")
    R = R or _Roots(ctx)
    tbar = ctx.bar(t_idx)
    out = Term(sign=(-1) ** len(ctx.I))
    for s in ctx.I:
        if s != t_idx:
            shift = 1 if s == tbar else 0
            out.den.append(Factor(R.alpha[t_idx] - R.a(s) - shift, f"{_al(t_idx)} - a[{s.key()}]"))
    for r in ctx.Itilde:
        out.num.append(Factor(R.beta[r] - R.alpha[t_idx], f"{_b(r)} - {_al(t_idx)}"))
    return out


def omega_term(ctx: BranchContext, s: GradedIndex, t_idx: GradedIndex, R: _Roots | None = None) -> Term:
    """omega_{s,t} = C_s mu_t / (beta_s - alpha_t) / (beta_s - a_t) [ * (beta_s - a_tbar') / (beta_s - a_tbar) ].

    The factor beta_s - alpha_t of mu_t is cancelled against the explicit
    denominator, so the product carries no removable singularity there.  The
    bracketed pair occurs only when bar t lies in I and differs from t.
    """
    _require(ctx, s, ctx.Itilde, "omega")
    _require(ctx, t_idx, ctx.I, "omega")
    R = R or _Roots(ctx)
    c = c_term(ctx, s, R)
    mu = mu_term(ctx, t_idx, R)
    skip = f"{_b(s)} - {_al(t_idx)}"
    num = [f for f in mu.num if f.label != skip]
    assert len(num) == len(mu.num) - 1
    out = Term(sign=c.sign * mu.sign, num=c.num + num, den=c.den + mu.den)
    shift = t_idx.sign - ctx.delta_middle(t_idx)
    out.den.append(Factor(R.beta[s] - R.alpha[t_idx] - shift, f"{_b(s)} - a[{t_idx.key()}]"))
    tbar = ctx.bar(t_idx)
    if tbar != t_idx and tbar in ctx.I:
        out.den.append(Factor(R.beta[s] - R.alpha[tbar] - shift, f"{_b(s)} - {_al(tbar)} - {shift}"))
        out.num.append(Factor(R.beta[s] - R.alpha[tbar] - 2 * shift, f"{_b(s)} - {_al(tbar)} - {2 * shift}"))
    return out


_BUILDERS: dict[str, Callable[..., Term]] = {
    "C": c_term,
    "gamma_p": gamma_p_term,
    "gamma_ps": gamma_ps_term,
    "mu": mu_term,
    "omega": omega_term,
}


# deformation


def default_direction(ctx: BranchContext) -> tuple[Weight, Weight]:
    """Distinct powers of 3 per label slot, shared between parent and child.

    Parent and child get the same shift in each shared slot, so the I1 pattern
    and structural coincidences such as beta_q = alpha_q (q in I1) survive,
    while accidental collisions between different slots are separated.
    """
    h, k = ctx.child_sig.h, ctx.child_sig.k
    ph = ctx.parent_sig.h
    even = [Fraction(3**i) for i in range(1, ph + 1)]
    odd = [Fraction(3 ** (ph + mu)) for mu in range(1, k + 1)]
    return Weight(even, odd), Weight(even[:h], odd)


def deform(ctx: BranchContext, direction: tuple[Weight, Weight] | None = None) -> BranchContext:
    """The formal context at t = 1 along ``direction`` with the same I1."""
    eta_parent, eta_child = direction or default_direction(ctx)
    if eta_parent.odd != eta_child.odd:
        raise ValueError("parent and child odd directions must agree to keep I1 fixed")
    return formal_context(
        ctx.parent + eta_parent,
        ctx.child + eta_child,
        ctx.child_sig,
        ctx.I1,
        middle_root=ctx.middle_root,
    )


def _term(formula: str, ctx: BranchContext, indices: tuple, limit: bool, direction) -> Term:
    try:
        builder = _BUILDERS[formula]
    except KeyError:
        raise ValueError(f"unknown formula {formula!r}; choose from {sorted(_BUILDERS)}") from None
    return builder(ctx, *indices, R=_roots_for(ctx, limit, direction))


_LAST: list = [None, None, None, None]  # ctx, limit, direction, roots


def _roots_for(ctx: BranchContext, limit: bool, direction) -> _Roots:
    # table and grid code evaluate many formulas on one context in a row
    if _LAST[0] is ctx and _LAST[1] == limit and _LAST[2] == direction:
        return _LAST[3]
    R = _Roots(ctx, deform(ctx, direction)) if limit else _Roots(ctx)
    _LAST[:] = [ctx, limit, direction, R]
    return R


def evaluate(formula: str, ctx: BranchContext, *indices: GradedIndex) -> Fraction:
    return _term(formula, ctx, indices, False, None).evaluate()


def evaluate_with_limit(
    formula: str,
    ctx: BranchContext,
    *indices: GradedIndex,
    direction: tuple[Weight, Weight] | None = None,
) -> Fraction:
    """Value at t = 0 of the invariant along Lambda + t*eta after cancelling common factors."""
    return _term(formula, ctx, indices, True, direction).limit()


def _dispatch(formula: str, ctx: BranchContext, indices: tuple, limit: bool) -> Fraction:
    if limit:
        return evaluate_with_limit(formula, ctx, *indices)
    return evaluate(formula, ctx, *indices)


def c_invariant(ctx: BranchContext, q: GradedIndex, limit: bool = False) -> Fraction:
    return _dispatch("C", ctx, (q,), limit)


def gamma_p(ctx: BranchContext, p: GradedIndex, limit: bool = False) -> Fraction:
    return _dispatch("gamma_p", ctx, (p,), limit)


def gamma_ps(ctx: BranchContext, p: GradedIndex, s: GradedIndex, limit: bool = False) -> Fraction:
    return _dispatch("gamma_ps", ctx, (p, s), limit)


def mu_t(ctx: BranchContext, t: GradedIndex, limit: bool = False) -> Fraction:
    return _dispatch("mu", ctx, (t,), limit)


def omega(ctx: BranchContext, s: GradedIndex, t: GradedIndex, limit: bool = False) -> Fraction:
    return _dispatch("omega", ctx, (s, t), limit)


@dataclass
class InvariantTable:
    """All invariants of one context; entries that hit a pole are ``None`` with a note in ``poles``."""

    C: dict[GradedIndex, Fraction | None]
    gamma_p: dict[GradedIndex, Fraction | None]
    gamma_ps: dict[tuple[GradedIndex, GradedIndex], Fraction | None]
    mu: dict[GradedIndex, Fraction | None]
    omega: dict[tuple[GradedIndex, GradedIndex], Fraction | None]
    poles: dict[str, str] = field(default_factory=dict)


def invariant_table(ctx: BranchContext, limit: bool = False) -> InvariantTable:
    poles: dict[str, str] = {}

    def safe(name: str, formula: str, *idx: GradedIndex) -> Fraction | None:
        try:
            return _dispatch(formula, ctx, idx, limit)
        except (PoleError, DegenerateDirection) as exc:
            poles[name] = str(exc)
            return None

    def key(*idx: GradedIndex) -> str:
        return ",".join(i.key() for i in idx)

    C = {q: safe(f"C[{key(q)}]", "C", q) for q in ctx.Itilde}
    gp = {p: safe(f"gamma_p[{key(p)}]", "gamma_p", p) for p in ctx.I}
    gps = {(p, s): safe(f"gamma_ps[{key(p, s)}]", "gamma_ps", p, s) for p in ctx.I for s in ctx.Itilde}
    mu = {t: safe(f"mu[{key(t)}]", "mu", t) for t in ctx.I}
    om = {(s, t): safe(f"omega[{key(s, t)}]", "omega", s, t) for s in ctx.Itilde for t in ctx.I}
    return InvariantTable(C, gp, gps, mu, om, poles)


__all__ = [
    "Affine",
    "sum_limit",
    "term",
    "Factor",
    "InvariantTable",
    "Term",
    "c_invariant",
    "default_direction",
    "deform",
    "evaluate",
    "evaluate_with_limit",
    "gamma_p",
    "gamma_ps",
    "invariant_table",
    "mu_t",
    "omega",
    "EXTRA",
]
