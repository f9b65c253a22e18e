"""Exact matrices for the defining representation of osp(m|n) and objects built on it.

Generators, the metric and the Cartan-Weyl change of basis act on C^{m+n},
with basis ordered as in ``AlgebraSignature.indices``.  A ``RealizedModule``
holds the images of all generators on some module W.  The characteristic
matrix of W lives on C^{m+n} (x) W, with basis index ``a * dim(W) + w``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import product
from math import lcm
from typing import Mapping, Sequence

import numpy as np

from .algebra_core import (
    EXTRA,
    AlgebraSignature,
    Even,
    GradedIndex,
    Odd,
    Weight,
    bar,
    theta,
    tilde,
)
from .errors import PoleError
from .scalars import MUL_TABLE, ExtScalar
from .supermatrix import SuperMatrix, block_matrix, get_block

Pair = tuple[GradedIndex, GradedIndex]


# metric, grading and generators


@lru_cache(maxsize=None)
def metric(sig: AlgebraSignature) -> SuperMatrix:
    """g = I_m (+) g_1 with (g_1)_{mu nu} = theta_mu delta_{nu, bar mu}."""
    pos = sig.position
    g = np.zeros((sig.dim, sig.dim), dtype=object)
    for p in sig.indices:
        if p.parity:
            g[pos[p], pos[bar(p, sig)]] = theta(p, sig)
        else:
            g[pos[p], pos[p]] = 1
    return SuperMatrix([g], 1, sig.grading)


@lru_cache(maxsize=None)
def grading_matrix(sig: AlgebraSignature) -> SuperMatrix:
    """The grading automorphism gamma = diag(I_m, -I_n)."""
    d = np.diag([-1 if g else 1 for g in sig.grading]).astype(object)
    return SuperMatrix([d], 1, sig.grading)


def racah_generator(p: GradedIndex, q: GradedIndex, sig: AlgebraSignature) -> SuperMatrix:
    """pi(sigma^p_q) = E_pq - (-1)^{(p)((p)+(q))} theta_p theta_q E_{q~ p~}."""
    return racah_generators(sig)[(p, q)]


def _racah(p: GradedIndex, q: GradedIndex, sig: AlgebraSignature) -> SuperMatrix:
    pos = sig.position
    sign = (-1) ** (p.parity * (p.parity + q.parity)) * theta(p, sig) * theta(q, sig)
    arr = np.zeros((sig.dim, sig.dim), dtype=object)
    arr[pos[p], pos[q]] += 1
    arr[pos[tilde(q, sig)], pos[tilde(p, sig)]] -= sign
    return SuperMatrix([arr], 1, sig.grading)


@lru_cache(maxsize=None)
def racah_generators(sig: AlgebraSignature) -> dict[Pair, SuperMatrix]:
    return {(p, q): _racah(p, q, sig) for p in sig.indices for q in sig.indices}


def lower_generator(p: GradedIndex, q: GradedIndex, sig: AlgebraSignature) -> SuperMatrix:
    """sigma_pq = g_pr E_rq - (-1)^{(p)(q)} g_qr E_rp."""
    pos = sig.position
    g = metric(sig)
    arr = np.zeros((sig.dim, sig.dim), dtype=object)
    sign = (-1) ** (p.parity * q.parity)
    for r in sig.indices:
        arr[pos[r], pos[q]] += int(g[pos[p], pos[r]])
        arr[pos[r], pos[p]] -= sign * int(g[pos[q], pos[r]])
    return SuperMatrix([arr], 1, sig.grading)


@lru_cache(maxsize=None)
def cw_transform(sig: AlgebraSignature) -> SuperMatrix:
    """The unitary M whose conjugation takes Racah to Cartan-Weyl generators.

    Even block: columns j and m+1-j mix rows 2j-1, 2j with entries 1/sqrt2 and
    -+i/sqrt2; for odd m the middle column is e_m.  Odd block: identity.
    """
    m = sig.m
    half_r2 = ExtScalar(0, 0, Fraction(1, 2))  # 1/sqrt2
    half_ir2 = ExtScalar(0, 0, 0, Fraction(1, 2))  # i/sqrt2
    zero = ExtScalar()
    rows = [[zero] * sig.dim for _ in range(sig.dim)]
    for j in range(1, sig.h + 1):
        a, b = 2 * j - 2, 2 * j - 1  # zero-based rows 2j-1, 2j
        c, cbar = j - 1, m - j  # zero-based columns j, m+1-j
        rows[a][c] = half_r2
        rows[a][cbar] = half_r2
        rows[b][c] = -half_ir2
        rows[b][cbar] = half_ir2
    if sig.m_odd:
        rows[m - 1][sig.h] = ExtScalar(1)
    for a in range(m, sig.dim):
        rows[a][a] = ExtScalar(1)
    return SuperMatrix.from_entries(rows, sig.grading)


@lru_cache(maxsize=None)
def cw_generators(sig: AlgebraSignature) -> dict[Pair, SuperMatrix]:
    """pi(S^p_q) = sum (M^-1)_{p p'} M_{q' q} pi(sigma^{p'}_{q'})."""
    M = cw_transform(sig)
    Minv = M.adjoint()
    sig_gens = racah_generators(sig)
    idx = sig.indices
    out: dict[Pair, SuperMatrix] = {}
    for a, p in enumerate(idx):
        left = [(pp, Minv[a, c]) for c, pp in enumerate(idx) if Minv[a, c]]
        for b, q in enumerate(idx):
            right = [(qq, M[c, b]) for c, qq in enumerate(idx) if M[c, b]]
            acc = SuperMatrix.zeros(sig.grading)
            for pp, u in left:
                for qq, v in right:
                    acc = acc + sig_gens[(pp, qq)].scale(ExtScalar.coerce(u) * v)
            out[(p, q)] = acc
    return out


def cw_generator(p: GradedIndex, q: GradedIndex, sig: AlgebraSignature) -> SuperMatrix:
    return cw_generators(sig)[(p, q)]


def supertranspose(X: SuperMatrix) -> SuperMatrix:
    return X.supertranspose()


def super_adjoint(X: SuperMatrix) -> SuperMatrix:
    return X.super_adjoint()


# realized modules


@dataclass(frozen=True)
class RealizedModule:
    """Images rho(sigma^p_q) of all generators on a module W with basis grading ``grading``."""

    sig: AlgebraSignature
    grading: tuple[int, ...]
    generators: Mapping[Pair, SuperMatrix] = field(repr=False)
    basis: str = "racah"

    @property
    def dim(self) -> int:
        return len(self.grading)


def defining_module(sig: AlgebraSignature, basis: str = "racah") -> RealizedModule:
    if basis == "racah":
        gens = racah_generators(sig)
    elif basis == "cartan-weyl":
        gens = cw_generators(sig)
    else:
        raise ValueError(f"unknown basis {basis!r}")
    return RealizedModule(sig, sig.grading, gens, basis)


def tensor_square(sig: AlgebraSignature) -> RealizedModule:
    """V (x) V with rho(x) = x (x) 1 + gamma^{(x)} (x) x."""
    gens = racah_generators(sig)
    one = SuperMatrix.identity(sig.grading)
    gam = grading_matrix(sig)
    out = {}
    for (p, q), x in gens.items():
        left = gam if (p.parity + q.parity) % 2 else one
        out[(p, q)] = x.kron(one) + left.kron(x)
    grading = tuple((a + b) % 2 for a in sig.grading for b in sig.grading)
    return RealizedModule(sig, grading, out)


def restrict_module(module: RealizedModule, positions: Sequence[int]) -> RealizedModule:
    """Submodule spanned by the given basis vectors (assumed invariant)."""
    gens = {key: x.submatrix(positions) for key, x in module.generators.items()}
    grading = tuple(module.grading[a] for a in positions)
    return RealizedModule(module.sig, grading, gens, module.basis)


def characteristic_matrix(module: RealizedModule) -> SuperMatrix:
    """A with operator blocks A_pq = (-1)^{(p)} rho(sigma^p_q) on C^{m+n} (x) W."""
    sig = module.sig
    blocks = [
        [module.generators[(p, q)].scale(p.sign) for q in sig.indices] for p in sig.indices
    ]
    grading = [(a + w) % 2 for a in sig.grading for w in module.grading]
    return block_matrix(blocks, grading)


def casimir_matrix(N: int, sig: AlgebraSignature, module: RealizedModule | None = None) -> SuperMatrix:
    """I_N = str(sigma-hat^N) = sum_p (-1)^{(p)} (A^N)_{pp}, realized on W."""
    if N < 1:
        raise ValueError("N must be positive")
    module = module or defining_module(sig)
    A = characteristic_matrix(module)
    AN = A**N
    total = SuperMatrix.zeros(module.grading)
    for a, p in enumerate(sig.indices):
        total = total + get_block(AN, a, a, module.grading).scale(p.sign)
    return total


def root_product(A: SuperMatrix, roots: Sequence[Fraction]) -> SuperMatrix:
    out = SuperMatrix.identity(A.grading)
    for r in roots:
        out = out @ A.shift(r)
    return out


def lagrange_projections(
    A: SuperMatrix, roots: Mapping[GradedIndex, Fraction], which: Sequence[GradedIndex] | None = None
) -> dict[GradedIndex, SuperMatrix]:
    """P[r] = prod_{q != r} (A - alpha_q) / (alpha_r - alpha_q) for each requested r."""
    keys = list(roots)
    which = keys if which is None else list(which)
    for r in which:
        for q in keys:
            if q != r and roots[q] == roots[r]:
                raise PoleError(
                    f"degenerate roots alpha[{r.key()}] = alpha[{q.key()}] = {roots[r]}",
                    (f"alpha[{r.key()}]", f"alpha[{q.key()}]"),
                )
    factors = [A.shift(roots[q]) for q in keys]
    prefix = [SuperMatrix.identity(A.grading)]
    for f in factors:
        prefix.append(prefix[-1] @ f)
    suffix = [SuperMatrix.identity(A.grading)]
    for f in reversed(factors):
        suffix.append(f @ suffix[-1])
    suffix.reverse()
    out = {}
    for r in which:
        a = keys.index(r)
        denom = Fraction(1)
        for q in keys:
            if q != r:
                denom *= roots[r] - roots[q]
        out[r] = (prefix[a] @ suffix[a + 1]).scale(1 / denom)
    return out


def projection(module: RealizedModule, weight: Weight, r: GradedIndex, middle_root: str = "formula") -> SuperMatrix:
    from .char_roots import characteristic_roots

    roots = characteristic_roots(weight, module.sig, middle_root=middle_root).alpha
    return lagrange_projections(characteristic_matrix(module), roots, [r])[r]


# parent embedding and vector operators


@dataclass(frozen=True)
class Constituent:
    weight: Weight
    positions: tuple[int, ...]


@dataclass(frozen=True)
class ParentEmbedding:
    """osp(m|n) inside osp(m+1|n): the extra even index 0 is parent Even(1).

    Child Even(i) is parent Even(i+1) and odd indices are shared, so the extra
    index sits at position 0 of the parent defining space.
    """

    child: AlgebraSignature
    parent: AlgebraSignature
    index_map: Mapping[GradedIndex, GradedIndex] = field(repr=False)
    psi: Mapping[GradedIndex, SuperMatrix] = field(repr=False)
    phi: Mapping[GradedIndex, SuperMatrix] = field(repr=False)
    module: RealizedModule = field(repr=False)
    constituents: tuple[Constituent, ...] = field(repr=False)

    def parent_index(self, p: GradedIndex) -> GradedIndex:
        return self.index_map[p]


def embed_parent(child: AlgebraSignature) -> ParentEmbedding:
    parent = AlgebraSignature(child.m + 1, child.n)
    index_map = {EXTRA: Even(1)}
    for p in child.indices:
        index_map[p] = Even(p.label + 1) if p.is_even else p
    pgens = racah_generators(parent)
    zero_idx = index_map[EXTRA]
    psi = {p: pgens[(index_map[p], zero_idx)] for p in child.indices}
    phi = {p: pgens[(zero_idx, index_map[p])] for p in child.indices}
    gens = {(p, q): pgens[(index_map[p], index_map[q])] for p in child.indices for q in child.indices}
    module = RealizedModule(child, parent.grading, gens)
    vector = Constituent(Weight.delta(child, 1), tuple(range(1, parent.dim)))
    trivial = Constituent(Weight.zero(child), (0,))
    return ParentEmbedding(child, parent, index_map, psi, phi, module, (vector, trivial))


def _module_roots(emb: ParentEmbedding, middle_root: str) -> list[dict[GradedIndex, Fraction]]:
    from .char_roots import characteristic_roots

    return [characteristic_roots(c.weight, emb.child, middle_root=middle_root).alpha for c in emb.constituents]


def constituent_projections(
    emb: ParentEmbedding, middle_root: str = "formula"
) -> dict[GradedIndex, SuperMatrix]:
    """P[t] on C^{m+n} (x) W, block diagonal over the child constituents of W."""
    sig = emb.child
    W = emb.module
    out = {t: SuperMatrix.zeros([(a + w) % 2 for a in sig.grading for w in W.grading]) for t in sig.indices}
    for c, roots in zip(emb.constituents, _module_roots(emb, middle_root)):
        sub = restrict_module(W, c.positions)
        projs = lagrange_projections(characteristic_matrix(sub), roots)
        big_positions = [a * W.dim + w for a in range(sig.dim) for w in c.positions]
        for t, P in projs.items():
            out[t] = out[t] + P.embed(big_positions, out[t].grading)
    return out


@dataclass(frozen=True)
class ShiftComponents:
    psi: dict[GradedIndex, SuperMatrix]
    phi: dict[GradedIndex, SuperMatrix]
    projection: SuperMatrix


def shift_components(
    emb: ParentEmbedding,
    t: GradedIndex,
    middle_root: str = "formula",
    projections: Mapping[GradedIndex, SuperMatrix] | None = None,
) -> ShiftComponents:
    """psi[t]^r = (-1)^{(r)} P[t]_rs (-1)^{(s)} psi^s and phi[t]_r = phi_s P[t]_sr."""
    sig = emb.child
    projections = projections or constituent_projections(emb, middle_root)
    P = projections[t]
    wg = emb.module.grading
    idx = sig.indices
    blocks = {(r, s): get_block(P, a, b, wg) for a, r in enumerate(idx) for b, s in enumerate(idx)}
    psi, phi = {}, {}
    for r in idx:
        acc = SuperMatrix.zeros(wg)
        acc2 = SuperMatrix.zeros(wg)
        for s in idx:
            acc = acc + (blocks[(r, s)] @ emb.psi[s]).scale(r.sign * s.sign)
            acc2 = acc2 + emb.phi[s] @ blocks[(s, r)]
        psi[r] = acc
        phi[r] = acc2
    return ShiftComponents(psi, phi, P)


def parent_projections(
    emb: ParentEmbedding, weight: Weight, middle_root: str = "formula"
) -> dict[GradedIndex, SuperMatrix]:
    """Q[s] for the parent defining module, keyed by child labels (0 for the extra root)."""
    from .char_roots import characteristic_roots, parent_label_map

    roots = characteristic_roots(weight, emb.parent, middle_root=middle_root).alpha
    labels = parent_label_map(emb.child)
    keyed = {labels[p]: roots[p] for p in emb.parent.indices}
    A = characteristic_matrix(defining_module(emb.parent))
    order = [labels[p] for p in emb.parent.indices]
    return lagrange_projections(A, {k: keyed[k] for k in order})


def embed_child_operator(emb: ParentEmbedding, X: SuperMatrix) -> SuperMatrix:
    """Place an operator on C^{m+n} (x) W into C^{m+1+n} (x) W (zero on the extra index)."""
    D = emb.module.dim
    pos = emb.parent.position
    positions = [pos[emb.index_map[p]] * D + w for p in emb.child.indices for w in range(D)]
    grading = [(a + w) % 2 for a in emb.parent.grading for w in emb.module.grading]
    return X.embed(positions, grading)


# structure-constant checks on stacked integer arrays


def _stack(gens: Mapping[Pair, SuperMatrix], idx: Sequence[GradedIndex]) -> tuple[np.ndarray, int]:
    den = lcm(*(x.den for x in gens.values()))
    N, D = len(idx), next(iter(gens.values())).size
    G = np.zeros((4, N, N, D, D), dtype=np.int64)
    for a, p in enumerate(idx):
        for b, q in enumerate(idx):
            parts, d = gens[(p, q)].to_int_parts()
            G[:, a, b] = parts * (den // d)
    return G, den


@dataclass(frozen=True)
class RelationReport:
    basis: str
    sig: AlgebraSignature
    checked: int
    failures: tuple[tuple[GradedIndex, ...], ...]

    @property
    def ok(self) -> bool:
        return not self.failures


def check_relations(sig: AlgebraSignature, basis: str = "racah") -> RelationReport:
    """Graded commutators of all generator pairs against the closed structure constants.

    Racah basis uses the tilde involution, Cartan-Weyl basis the bar involution;
    otherwise the relations are identical.
    """
    if basis == "racah":
        gens, inv = racah_generators(sig), tilde
    elif basis == "cartan-weyl":
        gens, inv = cw_generators(sig), bar
    else:
        raise ValueError(f"unknown basis {basis!r}")
    idx = sig.indices
    N = len(idx)
    G, den = _stack(gens, idx)
    # XY[c, p, q, r, s] = component c of X_pq @ X_rs
    XY = np.zeros((4, N, N, N, N) + G.shape[-2:], dtype=np.int64)
    present = [c for c in range(4) if G[c].any()]
    for x, y in product(present, present):
        target, sign = MUL_TABLE[(x, y)]
        XY[target] += sign * np.einsum("pqij,rsjk->pqrsik", G[x], G[y])
    YX = XY.transpose(0, 3, 4, 1, 2, 5, 6)
    par = np.array([p.parity for p in idx])
    pq = (par[:, None] + par[None, :]) % 2
    gsign = 1 - 2 * ((pq[:, :, None, None] * pq[None, None, :, :]) % 2)
    lhs = XY - gsign[None, :, :, :, :, None, None] * YX
    pos = {p: a for a, p in enumerate(idx)}
    inv_pos = [pos[inv(p, sig)] for p in idx]
    th = [theta(p, sig) for p in idx]
    failures = []
    for a, b, c, d in product(range(N), repeat=4):
        s = gsign[a, b, c, d]
        coeff = (-1) ** (par[a] * pq[a, b]) * th[a] * th[b]
        rhs = np.zeros(G.shape[:1] + G.shape[-2:], dtype=np.int64)
        if c == b:
            rhs += G[:, a, d]
        if a == d:
            rhs -= s * G[:, c, b]
        if c == inv_pos[a]:
            rhs -= coeff * G[:, inv_pos[b], d]
        if inv_pos[b] == d:
            rhs += coeff * s * G[:, c, inv_pos[a]]
        # lhs carries den^2, rhs carries den
        if not np.array_equal(lhs[:, a, b, c, d], rhs * den):
            failures.append((idx[a], idx[b], idx[c], idx[d]))
    return RelationReport(basis, sig, N**4, tuple(failures))
