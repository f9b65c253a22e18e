"""Independent checks: exact linear solves, minimal polynomials and operator-level invariants.

Nothing here calls the closed forms in ``invariants`` except to compare
against them in ``operator_invariant_check``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm
from typing import Sequence

import numpy as np

from .algebra_core import AlgebraSignature, GradedIndex, Weight
from .branching import BranchContext, index_sets
from .char_roots import characteristic_roots, child_labelled_parent_roots, degeneracy_report
from .errors import PoleError, SingularSystem
from .matrix_rep import (
    ParentEmbedding,
    characteristic_matrix,
    embed_child_operator,
    lagrange_projections,
    parent_projections,
    restrict_module,
    root_product,
)
from .supermatrix import SuperMatrix, block_matrix, get_block

# exact linear algebra


def bareiss_solve(A: Sequence[Sequence[Fraction | int]], b: Sequence[Fraction | int]) -> list[Fraction]:
    """Solve a square system by fraction-free elimination over the integers.

    Each row is first scaled to integers; pivots are the first nonzero entry.
    """
    n = len(A)
    if any(len(row) != n for row in A) or len(b) != n:
        raise ValueError("bareiss_solve needs a square system")
    M: list[list[int]] = []
    for row, rhs in zip(A, b):
        vals = [Fraction(x) for x in row] + [Fraction(rhs)]
        scale = lcm(*(v.denominator for v in vals))
        M.append([int(v * scale) for v in vals])
    prev = 1
    for k in range(n):
        pivot = next((i for i in range(k, n) if M[i][k] != 0), None)
        if pivot is None:
            raise SingularSystem(f"no pivot in column {k}")
        M[k], M[pivot] = M[pivot], M[k]
        for i in range(k + 1, n):
            for j in range(k + 1, n + 1):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) // prev
            M[i][k] = 0
        prev = M[k][k]
    x = [Fraction(0)] * n
    for i in range(n - 1, -1, -1):
        acc = Fraction(M[i][n]) - sum((M[i][j] * x[j] for j in range(i + 1, n)), Fraction(0))
        x[i] = acc / M[i][i]
    return x


@dataclass
class ExactLinearSystem:
    matrix: list[list[Fraction]]
    rhs: list[Fraction]
    unknowns: tuple = ()
    solution: list[Fraction] | None = None
    singular: bool = False

    def solve(self) -> "ExactLinearSystem":
        try:
            self.solution = bareiss_solve(self.matrix, self.rhs)
        except SingularSystem:
            self.singular = True
            raise
        return self

    def residual(self) -> list[Fraction]:
        if self.solution is None:
            raise ValueError("system not solved")
        return [
            sum((a * x for a, x in zip(row, self.solution)), Fraction(0)) - r
            for row, r in zip(self.matrix, self.rhs)
        ]

    def as_dict(self) -> dict:
        return dict(zip(self.unknowns, self.solution or []))


def _shifted(ctx: BranchContext, r: GradedIndex) -> Fraction:
    # alpha_r + (-1)^{(r)} - delta_{r,h+1}, recomputed locally
    mid = ctx.child_sig.middle
    return ctx.alpha[r] + (-1 if r.parity else 1) - (1 if r == mid else 0)


def c_system(ctx: BranchContext) -> ExactLinearSystem:
    """sum_q C_q / (beta_q - a_s) = 0 (s in I), sum_q C_q = 1, with denominators cleared."""
    Q = ctx.Itilde
    rows, rhs = [], []
    for s in ctx.I:
        a_s = _shifted(ctx, s)
        row = []
        for q in Q:
            prod = Fraction(1)
            for k in Q:
                if k != q:
                    prod *= ctx.beta[k] - a_s
            row.append(prod)
        rows.append(row)
        rhs.append(Fraction(0))
    rows.append([Fraction(1)] * len(Q))
    rhs.append(Fraction(1))
    return ExactLinearSystem(rows, rhs, Q)


def solve_c_system(ctx: BranchContext) -> dict[GradedIndex, Fraction]:
    return c_system(ctx).solve().as_dict()


def gamma_system(ctx: BranchContext, p: GradedIndex, C: dict[GradedIndex, Fraction] | None = None) -> ExactLinearSystem:
    """sum_s gamma_ps C_s / (beta_s - a_r) = delta_pr (r in I), sum_s gamma_ps C_s = 0."""
    if p not in ctx.I:
        raise ValueError(f"{p.key()} is not in I")
    C = C if C is not None else solve_c_system(ctx)
    S = ctx.Itilde
    rows, rhs = [], []
    for r in ctx.I:
        a_r = _shifted(ctx, r)
        row = []
        for s in S:
            gap = ctx.beta[s] - a_r
            if gap == 0:
                raise SingularSystem(f"beta[{s.key()}] = a[{r.key()}]")
            row.append(C[s] / gap)
        rows.append(row)
        rhs.append(Fraction(1 if r == p else 0))
    rows.append([C[s] for s in S])
    rhs.append(Fraction(0))
    return ExactLinearSystem(rows, rhs, S)


def solve_gamma_system(ctx: BranchContext, p: GradedIndex, C: dict[GradedIndex, Fraction] | None = None) -> dict[GradedIndex, Fraction]:
    return gamma_system(ctx, p, C).solve().as_dict()


# polynomials (coefficient lists, lowest degree first)


def poly_from_roots(roots: Sequence[Fraction]) -> list[Fraction]:
    out = [Fraction(1)]
    for r in roots:
        nxt = [Fraction(0)] * (len(out) + 1)
        for i, c in enumerate(out):
            nxt[i + 1] += c
            nxt[i] -= r * c
        out = nxt
    return out


def poly_divmod(num: Sequence[Fraction], den: Sequence[Fraction]) -> tuple[list[Fraction], list[Fraction]]:
    num = [Fraction(c) for c in num]
    den = [Fraction(c) for c in den]
    while den and den[-1] == 0:
        den.pop()
    if not den:
        raise ZeroDivisionError("division by the zero polynomial")
    quot = [Fraction(0)] * max(len(num) - len(den) + 1, 1)
    rem = list(num)
    while len(rem) >= len(den) and any(rem):
        shift = len(rem) - len(den)
        coeff = rem[-1] / den[-1]
        quot[shift] = coeff
        for i, c in enumerate(den):
            rem[shift + i] -= coeff * c
        rem.pop()
    while rem and rem[-1] == 0:
        rem.pop()
    return quot, rem


def poly_str(coeffs: Sequence[Fraction], var: str = "x") -> str:
    terms = []
    for d in range(len(coeffs) - 1, -1, -1):
        c = coeffs[d]
        if not c:
            continue
        mono = "" if d == 0 else (var if d == 1 else f"{var}^{d}")
        if mono and c in (1, -1):
            text = ("-" if c < 0 else "") + mono
        else:
            text = f"{c}{'*' + mono if mono else ''}"
        terms.append(text)
    return " + ".join(terms).replace("+ -", "- ") or "0"


def minimal_polynomial(X: SuperMatrix) -> list[Fraction]:
    """Monic generator of {f : f(X) = 0}, found as the first linear dependence among I, X, X^2, ...

    The flattened powers are reduced against an echelon basis while tracking
    their expression in terms of the powers, so the dependence gives the
    coefficients directly.
    """
    if not X.is_rational():
        raise ValueError("minimal_polynomial needs a rational matrix")
    size = X.size
    basis: list[tuple[int, list[Fraction], list[Fraction]]] = []  # (pivot, vector, combo)
    power = SuperMatrix.identity(X.grading)
    for d in range(size + 1):
        part = power.parts[0]
        vec = [Fraction(0)] * (size * size) if part is None else [Fraction(int(v), power.den) for v in part.ravel()]
        combo = [Fraction(0)] * (d + 1)
        combo[d] = Fraction(1)
        for piv, bvec, bcombo in basis:
            c = vec[piv]
            if c:
                vec = [v - c * w for v, w in zip(vec, bvec)]
                for i, w in enumerate(bcombo):
                    combo[i] -= c * w
        piv = next((i for i, v in enumerate(vec) if v), None)
        if piv is None:
            return combo  # combo[d] == 1 and sum combo_i X^i == 0
        scale = vec[piv]
        basis.append((piv, [v / scale for v in vec], [c / scale for c in combo]))
        power = power @ X
    raise AssertionError("Cayley-Hamilton bound exceeded")


# operator-level checks on the parent defining module


@dataclass
class OperatorCheck:
    name: str
    constituent: str
    index: str
    status: str  # "match", "mismatch", "skipped", "vacuous"
    expected: str = ""
    observed: str = ""
    detail: str = ""

    @property
    def ok(self) -> bool:
        return self.status != "mismatch"


@dataclass
class OperatorReport:
    parent_sig: AlgebraSignature
    middle_root: str
    checks: list[OperatorCheck] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)

    def count(self, status: str) -> int:
        return sum(1 for c in self.checks if c.status == status)


def _ratio(X: SuperMatrix, P: SuperMatrix) -> Fraction | None | str:
    """c with X = c P; None if P = 0 (then X must be 0); "none" if no such c."""
    if P.is_zero():
        return None if X.is_zero() else "none"
    rows, cols = np.nonzero(P.parts[0] if P.parts[0] is not None else P._support())
    a, b = int(rows[0]), int(cols[0])
    c = X[a, b] / P[a, b]
    return c if X == P.scale(c) else "none"


def _restrict_blocks(X: SuperMatrix, outer: int, inner: int, positions: Sequence[int]) -> SuperMatrix:
    idx = [a * inner + w for a in range(outer) for w in positions]
    return X.submatrix(idx)


def operator_invariant_check(emb: ParentEmbedding, middle_root: str = "formula") -> OperatorReport:
    """Compare realized shift-operator contractions on the parent defining module with the closed forms.

    Per child constituent Lambda of W = C^{m+1+n} and each t in I:
      gamma_t   from sum_q phi[t]_q (-1)^{(q)} psi[t]^q restricted to Lambda
      mu_t      from (-1)^{(p)} psi[t]^p phi[t]_q = mu_t P[t]_pq on Lambda
      idempotent  psi[t] gamma_t^{-1} phi[t] = P[t] on Lambda
      C_s       from Q[s]^0_0 on Lambda, omega_{s,t} from P[t] Q[s] P[t] = omega P[t]
    Constituents with coinciding roots and a parent with coinciding roots are skipped.
    """
    from . import invariants as inv
    from .matrix_rep import shift_components

    child, parent = emb.child, emb.parent
    report = OperatorReport(parent, middle_root)
    W = emb.module
    D = W.dim
    parent_weight = Weight.delta(parent, 1)
    tensor_grading = [(a + w) % 2 for a in child.grading for w in W.grading]

    # per-constituent projections; None marks a degenerate constituent
    per_c: list[dict[GradedIndex, SuperMatrix] | None] = []
    for c in emb.constituents:
        roots = characteristic_roots(c.weight, child, middle_root=middle_root).alpha
        label = str(c.weight)
        sub = restrict_module(W, c.positions)
        A = characteristic_matrix(sub)
        if degeneracy_report(roots):
            pairs = ", ".join(f"{p.key()}={q.key()}" for p, q in degeneracy_report(roots))
            report.checks.append(OperatorCheck("identity", label, "-", "skipped", detail=f"degenerate roots {pairs}"))
            per_c.append(None)
            continue
        holds = root_product(A, list(roots.values())).is_zero()
        report.checks.append(OperatorCheck("identity", label, "-", "match" if holds else "mismatch",
                                           detail="prod (A - alpha_p) = 0" if holds else "prod (A - alpha_p) != 0"))
        per_c.append(lagrange_projections(A, roots))

    full: dict[GradedIndex, SuperMatrix] = {}
    for t in child.indices:
        acc = SuperMatrix.zeros(tensor_grading)
        for c, projs in zip(emb.constituents, per_c):
            if projs is not None:
                pos = [a * D + w for a in range(child.dim) for w in c.positions]
                acc = acc + projs[t].embed(pos, tensor_grading)
        full[t] = acc

    beta = child_labelled_parent_roots(parent_weight, child, middle_root=middle_root)
    Qs = None if degeneracy_report(beta) else parent_projections(emb, parent_weight, middle_root)

    available = [p is not None for p in per_c]
    for ci, c in enumerate(emb.constituents):
        label = str(c.weight)
        others = [j for j in range(len(emb.constituents)) if j != ci]
        ctx = index_sets(parent_weight, c.weight, child, middle_root=middle_root)
        if Qs is None:
            report.checks.append(OperatorCheck("C", label, "*", "skipped", detail="parent roots degenerate"))
        else:
            for s in ctx.Itilde:
                block = get_block(Qs[s], 0, 0, W.grading).submatrix(list(c.positions))
                _compare(report, "C", label, s.key(), block.scalar_value(), lambda: inv.c_invariant(ctx, s))
        for t in ctx.I:
            key = t.key()
            sh = shift_components(emb, t, middle_root, projections=full)
            G = SuperMatrix.zeros(W.grading)
            for q in child.indices:
                G = G + (sh.phi[q] @ sh.psi[q]).scale(q.sign)
            if all(available[j] for j in others):
                _compare(report, "gamma_p", label, key, G.submatrix(list(c.positions)).scalar_value(),
                         lambda: inv.gamma_p(ctx, t))
            else:
                report.checks.append(OperatorCheck("gamma_p", label, key, "skipped", detail="target constituent degenerate"))
            if not available[ci]:
                report.checks.append(OperatorCheck("mu", label, key, "skipped", detail="constituent degenerate"))
                continue
            X = block_matrix(
                [[(sh.psi[p] @ sh.phi[q]).scale(p.sign) for q in child.indices] for p in child.indices],
                tensor_grading,
            )
            Xc = _restrict_blocks(X, child.dim, D, c.positions)
            Pc = _restrict_blocks(full[t], child.dim, D, c.positions)
            mu_obs = _ratio(Xc, Pc)
            if mu_obs is None:
                report.checks.append(OperatorCheck("mu", label, key, "vacuous", detail="P[t] vanishes on constituent"))
            else:
                _compare(report, "mu", label, key, None if mu_obs == "none" else mu_obs, lambda: inv.mu_t(ctx, t))
            # idempotence needs gamma_t on the intermediate constituent
            if mu_obs not in (None, "none") and mu_obs != 0 and len(others) == 1 and available[others[0]]:
                g_mid = G.submatrix(list(emb.constituents[others[0]].positions)).scalar_value()
                ok = g_mid not in (None, 0) and Xc.scale(1 / g_mid) == Pc
                report.checks.append(OperatorCheck("idempotent", label, key, "match" if ok else "mismatch",
                                                   detail="psi[t] gamma_t^-1 phi[t] = P[t]"))
            if Qs is None:
                continue
            Pe = embed_child_operator(emb, full[t])
            for s in ctx.Itilde:
                Z = Pe @ Qs[s] @ Pe
                parent_dim = parent.dim
                om = _ratio(_restrict_blocks(Z, parent_dim, D, c.positions), _restrict_blocks(Pe, parent_dim, D, c.positions))
                if om is None:
                    report.checks.append(OperatorCheck("omega", label, f"{s.key()},{key}", "vacuous", detail="P[t] vanishes"))
                    continue
                _compare(report, "omega", label, f"{s.key()},{key}", None if om == "none" else om,
                         lambda: inv.omega(ctx, s, t))
    return report


def _compare(report: OperatorReport, name: str, label: str, key: str, observed, expected_fn) -> None:
    try:
        expected = expected_fn()
    except PoleError as exc:
        report.checks.append(OperatorCheck(name, label, key, "skipped", observed=str(observed), detail=f"closed form pole: {exc}"))
        return
    if observed is None:
        report.checks.append(OperatorCheck(name, label, key, "mismatch", str(expected), "not a scalar"))
        return
    status = "match" if observed == expected else "mismatch"
    report.checks.append(OperatorCheck(name, label, key, status, str(expected), str(observed)))
