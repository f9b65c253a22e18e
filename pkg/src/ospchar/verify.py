"""Identity suites behind ``ospchar verify``.

Each suite returns a list of ``Check`` records.  A check either passes, fails,
or is skipped (a degenerate context where the statement is not testable).
"""

from __future__ import annotations

import time
from dataclasses import asdict, dataclass, field
from fractions import Fraction

from . import invariants as inv
from . import matrix_rep as mr
from . import oracle
from .algebra_core import AlgebraSignature, Convention, Weight, casimir_eigenvalue
from .branching import branching_grid
from .char_roots import characteristic_roots
from .errors import DegenerateDirection, PoleError, SingularSystem
from .scalars import ExtScalar
from .supermatrix import SuperMatrix

SUITES = ("structure", "metric", "casimir", "identity", "invariants", "oracle")


@dataclass
class Check:
    suite: str
    name: str
    status: str  # "pass", "fail", "skip"
    detail: str = ""

    def as_dict(self) -> dict:
        return asdict(self)


@dataclass
class VerifyReport:
    sig: AlgebraSignature
    middle_root: str
    checks: list[Check] = field(default_factory=list)
    seconds: dict[str, float] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(c.status != "fail" for c in self.checks)

    def summary(self) -> dict[str, dict[str, int]]:
        out: dict[str, dict[str, int]] = {}
        for c in self.checks:
            row = out.setdefault(c.suite, {"pass": 0, "fail": 0, "skip": 0})
            row[c.status] += 1
        return out


def _status(ok: bool) -> str:
    return "pass" if ok else "fail"


def structure_suite(sig: AlgebraSignature, middle_root: str = "formula") -> list[Check]:
    out = []
    for basis in ("racah", "cartan-weyl"):
        rep = mr.check_relations(sig, basis)
        detail = f"{rep.checked} quadruples"
        if rep.failures:
            detail += f", {len(rep.failures)} failing, first {[p.key() for p in rep.failures[0]]}"
        out.append(Check("structure", f"relations[{basis}]", _status(rep.ok), detail))
    return out


def metric_suite(sig: AlgebraSignature, middle_root: str = "formula") -> list[Check]:
    g = mr.metric(sig)
    one = SuperMatrix.identity(sig.grading)
    out = [
        Check("metric", "g^2 = gamma", _status(g @ g == mr.grading_matrix(sig))),
        Check("metric", "g^t = g^-1", _status(g.transpose() @ g == one)),
    ]
    bad = [key for key, x in mr.racah_generators(sig).items() if not (mr.supertranspose(x) @ g + g @ x).is_zero()]
    out.append(Check("metric", "x^T g + g x = 0", _status(not bad), f"{len(bad)} generators fail" if bad else ""))
    M = mr.cw_transform(sig)
    out.append(Check("metric", "M^dagger M = 1", _status(M.adjoint() @ M == one)))
    m = sig.m
    zero, unit = ExtScalar(0), ExtScalar(1)

    def col_sum(X, i: int, j: int, rows: bool) -> ExtScalar:
        total = zero
        for k in range(m):
            total = total + (X[m - 1 - i, k] * X[j, k] if rows else X[k, m - 1 - i] * X[k, j])
        return total

    Minv = M.adjoint()
    cols = all(col_sum(M, i, j, False) == (unit if i == j else zero) for i in range(m) for j in range(m))
    rows = all(col_sum(Minv, i, j, True) == (unit if i == j else zero) for i in range(m) for j in range(m))
    out.append(Check("metric", "M[k,bar i] M[k,j] = delta", _status(cols)))
    out.append(Check("metric", "Minv[bar i,k] Minv[j,k] = delta", _status(rows)))
    return out


def casimir_suite(sig: AlgebraSignature, middle_root: str = "formula") -> list[Check]:
    one = SuperMatrix.identity(sig.grading)
    vec = Weight.delta(sig, 1)
    I1 = mr.casimir_matrix(1, sig)
    I2 = mr.casimir_matrix(2, sig)
    target = 2 * (sig.m - sig.n - 1)
    out = [
        Check("casimir", "I_1 = 0", _status(I1.is_zero())),
        Check("casimir", f"I_2 = {target} * 1", _status(I2 == one.scale(target))),
        Check("casimir", "chi(delta_1) = m - n - 1", _status(casimir_eigenvalue(vec, sig) == sig.m - sig.n - 1)),
    ]
    if sig.m == 2:
        # the vector module has highest weight delta_1 (canonical) and eps (distinguished)
        canonical = casimir_eigenvalue(vec, sig, Convention.CANONICAL)
        distinguished = casimir_eigenvalue(Weight.epsilon(sig, 1), sig, Convention.DISTINGUISHED)
        same = canonical == distinguished == 1 - sig.n
        out.append(Check("casimir", "vector Casimir convention independent", _status(same),
                         f"canonical {canonical}, distinguished {distinguished}"))
    return out


def identity_suite(sig: AlgebraSignature, middle_root: str = "formula") -> list[Check]:
    A = mr.characteristic_matrix(mr.defining_module(sig))
    roots = characteristic_roots(Weight.delta(sig, 1), sig, middle_root=middle_root).values()
    holds = mr.root_product(A, roots).is_zero()
    mp = oracle.minimal_polynomial(A)
    _, rem = oracle.poly_divmod(oracle.poly_from_roots(roots), mp)
    shown = ", ".join(str(r) for r in roots)
    return [
        Check("identity", "prod (A - alpha_p) = 0", _status(holds), f"roots {shown}"),
        Check("identity", "minpoly(A) | prod (x - alpha_p)", _status(not any(rem)), oracle.poly_str(mp)),
    ]


def _grid(sig: AlgebraSignature, middle_root: str, max_label: int):
    return branching_grid(sig, max_label, middle_root=middle_root)


def _total(direct, terms) -> Fraction:
    try:
        return direct()
    except PoleError:
        return inv.sum_limit(terms())


def invariants_suite(sig: AlgebraSignature, middle_root: str = "formula", max_label: int = 2) -> list[Check]:
    """Sum rules over every branching context below ``max_label``."""
    bad_c, bad_g, bad_w, skipped = [], [], [], 0
    ctxs = _grid(sig, middle_root, max_label)
    for ctx in ctxs:
        tag = f"{ctx.parent}>{ctx.child}"
        try:
            sC = _total(
                lambda: sum(inv.c_invariant(ctx, q) for q in ctx.Itilde),
                lambda: [inv.term("C", ctx, q, limit=True) for q in ctx.Itilde],
            )
            if sC != 1:
                bad_c.append(tag)
            for p in ctx.I:
                g = _total(
                    lambda: sum(inv.gamma_ps(ctx, p, s) * inv.c_invariant(ctx, s) for s in ctx.Itilde),
                    lambda: [inv.term("gamma_ps", ctx, p, s, limit=True) * inv.term("C", ctx, s, limit=True) for s in ctx.Itilde],
                )
                if g != 0:
                    bad_g.append(f"{tag} p={p.key()}")
        except (PoleError, DegenerateDirection):
            skipped += 1
        for t in ctx.I:
            try:
                if sum(inv.omega(ctx, s, t) for s in ctx.Itilde) != 1:
                    bad_w.append(f"{tag} t={t.key()}")
            except PoleError:
                pass
    n = f"{len(ctxs)} contexts"
    return [
        Check("invariants", "sum_q C_q = 1", _status(not bad_c), n + (f", failing {bad_c[:3]}" if bad_c else "")),
        Check("invariants", "sum_s gamma_ps C_s = 0", _status(not bad_g), n + (f", failing {bad_g[:3]}" if bad_g else "")),
        Check("invariants", "sum_s omega_st = 1", _status(not bad_w), n + (f", failing {bad_w[:3]}" if bad_w else "")),
        Check("invariants", "limit sums defined", "skip" if skipped else "pass", f"{skipped} contexts without a limit"),
    ]


def oracle_suite(sig: AlgebraSignature, middle_root: str = "formula", max_label: int = 2) -> list[Check]:
    """Closed forms against exact linear solves on the grid, then operator-level checks."""
    compared, skipped, bad = 0, 0, []
    for ctx in _grid(sig, middle_root, max_label):
        tag = f"{ctx.parent}>{ctx.child}"
        try:
            closed = {q: inv.c_invariant(ctx, q) for q in ctx.Itilde}
            solved = oracle.solve_c_system(ctx)
        except (PoleError, SingularSystem):
            skipped += 1
            continue
        compared += 1
        if closed != solved:
            bad.append(f"{tag} C")
            continue
        for p in ctx.I:
            try:
                cl = {s: inv.gamma_ps(ctx, p, s) for s in ctx.Itilde}
                so = oracle.solve_gamma_system(ctx, p, solved)
            except (PoleError, SingularSystem):
                continue
            if cl != so:
                bad.append(f"{tag} gamma p={p.key()}")
    out = [
        Check("oracle", "closed form = linear solve", _status(not bad),
              f"{compared} compared, {skipped} degenerate" + (f", failing {bad[:3]}" if bad else ""))
    ]
    report = oracle.operator_invariant_check(mr.embed_parent(sig), middle_root=middle_root)
    for c in report.checks:
        status = {"match": "pass", "mismatch": "fail"}.get(c.status, "skip")
        detail = c.detail or (f"expected {c.expected}, observed {c.observed}" if c.expected else "")
        out.append(Check("oracle", f"operator {c.name}[{c.index}] on {c.constituent}", status, detail))
    return out


_RUNNERS = {
    "structure": structure_suite,
    "metric": metric_suite,
    "casimir": casimir_suite,
    "identity": identity_suite,
    "invariants": invariants_suite,
    "oracle": oracle_suite,
}


def run_suites(sig: AlgebraSignature, suite: str = "all", middle_root: str = "formula") -> VerifyReport:
    """``suite`` is one name from SUITES or "all".  For the branching suites ``sig`` is the child algebra."""
    names = SUITES if suite == "all" else (suite,)
    for name in names:
        if name not in _RUNNERS:
            raise ValueError(f"unknown suite {name!r}; choose from {list(SUITES) + ['all']}")
    report = VerifyReport(sig, middle_root)
    for name in names:
        start = time.perf_counter()
        report.checks.extend(_RUNNERS[name](sig, middle_root))
        report.seconds[name] = time.perf_counter() - start
    return report
