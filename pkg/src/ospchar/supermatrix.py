"""Dense exact matrices over Q(i, sqrt 2) carrying a Z2 grading of their basis.

A matrix is stored as up to four integer arrays (coefficients of 1, i, sqrt2,
i sqrt2) over one positive common denominator.  Absent components are ``None``,
so rational matrices cost a single object-dtype array.  Values are kept in
lowest terms, which makes structural equality the same as value equality.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Sequence

import numpy as np

from .scalars import MUL_TABLE, ExtScalar

def _obj(a) -> np.ndarray:
    return np.array(a, dtype=object)


class SuperMatrix:
    __slots__ = ("parts", "den", "grading")

    def __init__(self, parts: Sequence[np.ndarray | None], den: int, grading: Sequence[int]):
        grading = tuple(int(g) for g in grading)
        size = len(grading)
        fixed: list[np.ndarray | None] = []
        for part in parts:
            if part is None or not part.any():
                fixed.append(None)
                continue
            if part.shape != (size, size):
                raise ValueError(f"component shape {part.shape} does not match grading size {size}")
            fixed.append(part if part.dtype == object else part.astype(object))
        fixed += [None] * (4 - len(fixed))
        if den == 0:
            raise ZeroDivisionError("zero denominator")
        if den < 0:
            den = -den
            fixed = [None if p is None else -p for p in fixed]
        if all(p is None for p in fixed):
            den = 1
        elif den != 1:
            g = den
            for p in fixed:
                if p is not None:
                    g = gcd(g, int(np.gcd.reduce(p.ravel())))
                    if g == 1:
                        break
            if g != 1:
                den //= g
                fixed = [None if p is None else p // g for p in fixed]
        self.parts = tuple(fixed)
        self.den = den
        self.grading = grading

    # construction

    @classmethod
    def zeros(cls, grading: Sequence[int]) -> "SuperMatrix":
        return cls([], 1, grading)

    @classmethod
    def identity(cls, grading: Sequence[int]) -> "SuperMatrix":
        size = len(grading)
        eye = _obj(np.zeros((size, size), dtype=object))
        for a in range(size):
            eye[a, a] = 1
        return cls([eye], 1, grading)

    @classmethod
    def from_int(cls, array, grading: Sequence[int], den: int = 1) -> "SuperMatrix":
        arr = _obj(array)
        arr = np.vectorize(int, otypes=[object])(arr) if arr.size else arr
        return cls([arr], den, grading)

    @classmethod
    def from_entries(cls, rows: Iterable[Iterable], grading: Sequence[int]) -> "SuperMatrix":
        """Build from nested rows of ints, Fractions or ExtScalars."""
        scalars = [[ExtScalar.coerce(x) for x in row] for row in rows]
        size = len(grading)
        if len(scalars) != size or any(len(r) != size for r in scalars):
            raise ValueError("entries do not match the grading size")
        den = 1
        for row in scalars:
            for x in row:
                for v in x.parts:
                    den = lcm(den, v.denominator)
        parts = []
        for c in range(4):
            arr = np.zeros((size, size), dtype=object)
            for a, row in enumerate(scalars):
                for b, x in enumerate(row):
                    v = x.parts[c]
                    arr[a, b] = v.numerator * (den // v.denominator)
            parts.append(arr)
        return cls(parts, den, grading)

    @classmethod
    def unit(cls, a: int, b: int, grading: Sequence[int]) -> "SuperMatrix":
        size = len(grading)
        arr = np.zeros((size, size), dtype=object)
        arr[a, b] = 1
        return cls([arr], 1, grading)

    # basic properties

    @property
    def size(self) -> int:
        return len(self.grading)

    @property
    def shape(self) -> tuple[int, int]:
        return (self.size, self.size)

    def is_zero(self) -> bool:
        return all(p is None for p in self.parts)

    def is_rational(self) -> bool:
        return all(p is None for p in self.parts[1:])

    def _support(self) -> np.ndarray:
        mask = np.zeros(self.shape, dtype=bool)
        for p in self.parts:
            if p is not None:
                mask |= p != 0
        return mask

    @property
    def parity(self) -> int | None:
        """0 (even), 1 (odd) or None (inhomogeneous).  The zero matrix counts as even."""
        g = np.array(self.grading, dtype=np.int64)
        rows, cols = np.nonzero(self._support())
        if rows.size == 0:
            return 0
        found = set(((g[rows] + g[cols]) % 2).tolist())
        return found.pop() if len(found) == 1 else None

    def __getitem__(self, key: tuple[int, int]) -> Fraction | ExtScalar:
        a, b = key
        values = [Fraction(0) if p is None else Fraction(int(p[a, b]), self.den) for p in self.parts]
        if not any(values[1:]):
            return values[0]
        return ExtScalar(*values)

    def entries(self) -> list[list[Fraction | ExtScalar]]:
        return [[self[a, b] for b in range(self.size)] for a in range(self.size)]

    def to_int_parts(self) -> tuple[np.ndarray, int]:
        """Integer components as one (4, N, N) int64 array, with the common denominator."""
        out = np.zeros((4,) + self.shape, dtype=np.int64)
        for c, p in enumerate(self.parts):
            if p is not None:
                out[c] = p.astype(np.int64)
                if not np.array_equal(out[c].astype(object), p):
                    raise OverflowError("entries exceed int64")
        return out, self.den

    # arithmetic

    def _compatible(self, other: "SuperMatrix") -> None:
        if self.grading != other.grading:
            raise ValueError("matrices have different gradings")

    def __add__(self, other: "SuperMatrix") -> "SuperMatrix":
        if not isinstance(other, SuperMatrix):
            return NotImplemented
        self._compatible(other)
        den = lcm(self.den, other.den)
        fa, fb = den // self.den, den // other.den
        parts = []
        for p, q in zip(self.parts, other.parts):
            if p is None and q is None:
                parts.append(None)
            elif q is None:
                parts.append(p * fa)
            elif p is None:
                parts.append(q * fb)
            else:
                parts.append(p * fa + q * fb)
        return SuperMatrix(parts, den, self.grading)

    def __neg__(self) -> "SuperMatrix":
        return SuperMatrix([None if p is None else -p for p in self.parts], self.den, self.grading)

    def __sub__(self, other: "SuperMatrix") -> "SuperMatrix":
        return self + (-other)

    def scale(self, c: int | Fraction | ExtScalar) -> "SuperMatrix":
        if isinstance(c, ExtScalar) and not c.is_rational():
            den = lcm(*(v.denominator for v in c.parts))
            out = [None] * 4
            for y, v in enumerate(c.parts):
                if not v:
                    continue
                coeff = v.numerator * (den // v.denominator)
                for x, p in enumerate(self.parts):
                    if p is None:
                        continue
                    target, sign = MUL_TABLE[(x, y)]
                    term = p * (sign * coeff)
                    out[target] = term if out[target] is None else out[target] + term
            return SuperMatrix(out, self.den * den, self.grading)
        c = Fraction(c.a) if isinstance(c, ExtScalar) else Fraction(c)
        return SuperMatrix(
            [None if p is None else p * c.numerator for p in self.parts],
            self.den * c.denominator,
            self.grading,
        )

    def __mul__(self, c):
        if isinstance(c, SuperMatrix):
            return NotImplemented
        return self.scale(c)

    __rmul__ = __mul__

    def __matmul__(self, other: "SuperMatrix") -> "SuperMatrix":
        if not isinstance(other, SuperMatrix):
            return NotImplemented
        self._compatible(other)
        out: list[np.ndarray | None] = [None] * 4
        for x, p in enumerate(self.parts):
            if p is None:
                continue
            for y, q in enumerate(other.parts):
                if q is None:
                    continue
                target, sign = MUL_TABLE[(x, y)]
                term = p.dot(q)
                if sign != 1:
                    term = term * sign
                out[target] = term if out[target] is None else out[target] + term
        return SuperMatrix(out, self.den * other.den, self.grading)

    def __pow__(self, exponent: int) -> "SuperMatrix":
        if exponent < 0:
            raise ValueError("negative powers are not supported")
        result = SuperMatrix.identity(self.grading)
        base = self
        while exponent:
            if exponent & 1:
                result = result @ base
            exponent >>= 1
            if exponent:
                base = base @ base
        return result

    def shift(self, c: int | Fraction) -> "SuperMatrix":
        """self - c * identity."""
        return self - SuperMatrix.identity(self.grading).scale(c)

    def __eq__(self, other) -> bool:
        if not isinstance(other, SuperMatrix):
            return NotImplemented
        if self.grading != other.grading or self.den != other.den:
            return False
        for p, q in zip(self.parts, other.parts):
            if (p is None) != (q is None):
                return False
            if p is not None and not np.array_equal(p, q):
                return False
        return True

    __hash__ = None  # mutable numpy storage

    def commutator(self, other: "SuperMatrix") -> "SuperMatrix":
        """Graded commutator [X, Y] = XY - (-1)^{(X)(Y)} YX for homogeneous X, Y."""
        px, py = self.parity, other.parity
        if px is None or py is None:
            raise ValueError("graded commutator needs homogeneous matrices")
        sign = -1 if px * py else 1
        return self @ other - (other @ self).scale(sign)

    # transposes

    def conjugate(self) -> "SuperMatrix":
        p0, p1, p2, p3 = self.parts
        return SuperMatrix(
            [p0, None if p1 is None else -p1, p2, None if p3 is None else -p3],
            self.den,
            self.grading,
        )

    def transpose(self) -> "SuperMatrix":
        return SuperMatrix([None if p is None else p.T.copy() for p in self.parts], self.den, self.grading)

    def supertranspose(self) -> "SuperMatrix":
        """(X^T)_{pq} = (-1)^{(X)(q)} X_{qp}."""
        par = self.parity
        if par is None:
            raise ValueError("supertranspose needs a homogeneous matrix")
        t = self.transpose()
        if par == 0:
            return t
        signs = np.array([-1 if g else 1 for g in self.grading], dtype=object)
        return SuperMatrix([None if p is None else p * signs[None, :] for p in t.parts], t.den, t.grading)

    def super_adjoint(self) -> "SuperMatrix":
        return self.conjugate().supertranspose()

    def adjoint(self) -> "SuperMatrix":
        return self.conjugate().transpose()

    # reductions and slicing

    def trace(self) -> Fraction | ExtScalar:
        values = [Fraction(0) if p is None else Fraction(int(np.trace(p)), self.den) for p in self.parts]
        return values[0] if not any(values[1:]) else ExtScalar(*values)

    def supertrace(self) -> Fraction | ExtScalar:
        signs = np.array([-1 if g else 1 for g in self.grading], dtype=object)
        values = [
            Fraction(0) if p is None else Fraction(int((np.diagonal(p) * signs).sum()), self.den)
            for p in self.parts
        ]
        return values[0] if not any(values[1:]) else ExtScalar(*values)

    def submatrix(self, rows: Sequence[int], cols: Sequence[int] | None = None) -> "SuperMatrix":
        """Restriction to a square selection of rows and columns (cols default to rows)."""
        cols = rows if cols is None else cols
        if len(rows) != len(cols):
            raise ValueError("submatrix must be square")
        r, c = np.array(rows, dtype=np.int64), np.array(cols, dtype=np.int64)
        grading = [self.grading[a] for a in rows]
        return SuperMatrix(
            [None if p is None else p[np.ix_(r, c)] for p in self.parts], self.den, grading
        )

    def embed(self, positions: Sequence[int], grading: Sequence[int]) -> "SuperMatrix":
        """Place this matrix at ``positions`` inside a larger zero matrix."""
        size = len(grading)
        pos = np.array(positions, dtype=np.int64)
        parts = []
        for p in self.parts:
            if p is None:
                parts.append(None)
                continue
            big = np.zeros((size, size), dtype=object)
            big[np.ix_(pos, pos)] = p
            parts.append(big)
        return SuperMatrix(parts, self.den, grading)

    def kron(self, other: "SuperMatrix") -> "SuperMatrix":
        """Plain Kronecker product; the basis a (x) b gets grading g_a + g_b."""
        out: list[np.ndarray | None] = [None] * 4
        for x, p in enumerate(self.parts):
            if p is None:
                continue
            for y, q in enumerate(other.parts):
                if q is None:
                    continue
                target, sign = MUL_TABLE[(x, y)]
                term = np.kron(p, q) * sign
                out[target] = term if out[target] is None else out[target] + term
        grading = [(a + b) % 2 for a in self.grading for b in other.grading]
        return SuperMatrix(out, self.den * other.den, grading)

    def scalar_value(self) -> Fraction | ExtScalar | None:
        """c if the matrix equals c times the identity, else None."""
        if self.size == 0:
            return Fraction(0)
        c = self[0, 0]
        return c if self == SuperMatrix.identity(self.grading).scale(c) else None

    def __repr__(self) -> str:
        return f"SuperMatrix(size={self.size}, parity={self.parity}, den={self.den})"


def block_matrix(blocks: Sequence[Sequence[SuperMatrix]], grading: Sequence[int]) -> SuperMatrix:
    """Assemble a matrix from a square grid of equally sized square blocks.

    The result lives on C^{len(blocks)} (x) W, with basis index a * dim(W) + w.
    """
    rows = len(blocks)
    inner = blocks[0][0].size
    size = rows * inner
    den = 1
    for row in blocks:
        for blk in row:
            den = lcm(den, blk.den)
    out: list[np.ndarray | None] = [None] * 4
    for a, row in enumerate(blocks):
        for b, blk in enumerate(row):
            factor = den // blk.den
            for c, p in enumerate(blk.parts):
                if p is None:
                    continue
                if out[c] is None:
                    out[c] = np.zeros((size, size), dtype=object)
                out[c][a * inner : (a + 1) * inner, b * inner : (b + 1) * inner] = p * factor
    return SuperMatrix(out, den, grading)


def get_block(X: SuperMatrix, a: int, b: int, inner_grading: Sequence[int]) -> SuperMatrix:
    """Block (a, b) of a matrix on C^r (x) W, returned as a matrix on W."""
    inner = len(inner_grading)
    parts = [None if p is None else p[a * inner : (a + 1) * inner, b * inner : (b + 1) * inner] for p in X.parts]
    return SuperMatrix(parts, X.den, inner_grading)
