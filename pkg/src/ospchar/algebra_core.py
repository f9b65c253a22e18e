"""Index bookkeeping, weights, the invariant form and Casimir eigenvalues for osp(m|n).

Indices are ``GradedIndex`` values: even labels run over 1..m, odd labels over
1..n.  An even index with label 0 is reserved for the extra index that the
parent algebra osp(m+1|n) adds on top of osp(m|n).
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence

from .errors import InvalidIndex, InvalidWeight

Number = int | Fraction


@dataclass(frozen=True)
class AlgebraSignature:
    m: int
    n: int

    def __post_init__(self) -> None:
        if not isinstance(self.m, int) or not isinstance(self.n, int):
            raise TypeError("m and n must be integers")
        if self.m < 0:
            raise ValueError(f"m must be non-negative, got {self.m}")
        if self.n < 2 or self.n % 2:
            raise ValueError(f"n must be a positive even integer, got {self.n}")

    @property
    def h(self) -> int:
        return self.m // 2

    @property
    def k(self) -> int:
        return self.n // 2

    @property
    def m_odd(self) -> bool:
        return self.m % 2 == 1

    @property
    def dim(self) -> int:
        return self.m + self.n

    @cached_property
    def indices(self) -> tuple["GradedIndex", ...]:
        """All indices in flat order: even 1..m, then odd 1..n."""
        return tuple(Even(i) for i in range(1, self.m + 1)) + tuple(
            Odd(mu) for mu in range(1, self.n + 1)
        )

    @cached_property
    def even_indices(self) -> tuple["GradedIndex", ...]:
        return self.indices[: self.m]

    @cached_property
    def odd_indices(self) -> tuple["GradedIndex", ...]:
        return self.indices[self.m :]

    @cached_property
    def position(self) -> dict["GradedIndex", int]:
        return {p: a for a, p in enumerate(self.indices)}

    @cached_property
    def grading(self) -> tuple[int, ...]:
        return tuple(p.parity for p in self.indices)

    @property
    def middle(self) -> "GradedIndex | None":
        """The self-opposite even index h+1 when m is odd."""
        return Even(self.h + 1) if self.m_odd else None

    def __str__(self) -> str:
        return f"osp({self.m}|{self.n})"


@dataclass(frozen=True, order=True)
class GradedIndex:
    parity: int
    label: int

    def __post_init__(self) -> None:
        if self.parity not in (0, 1):
            raise InvalidIndex(f"parity must be 0 or 1, got {self.parity}")
        if self.label < 0 or (self.parity == 1 and self.label == 0):
            raise InvalidIndex(f"bad label {self.label}")

    @property
    def is_even(self) -> bool:
        return self.parity == 0

    @property
    def is_extra(self) -> bool:
        return self.parity == 0 and self.label == 0

    @property
    def sign(self) -> int:
        """(-1)^{(p)}"""
        return -1 if self.parity else 1

    def key(self) -> str:
        if self.is_extra:
            return "0"
        return f"{'O' if self.parity else 'E'}{self.label}"

    @classmethod
    def from_key(cls, key: str) -> "GradedIndex":
        if key == "0":
            return EXTRA
        match = re.fullmatch(r"([EO])(\d+)", key)
        if match is None:
            raise InvalidIndex(f"cannot parse index key {key!r}")
        return cls(1 if match.group(1) == "O" else 0, int(match.group(2)))

    def __repr__(self) -> str:
        return self.key()


def Even(i: int) -> GradedIndex:
    return GradedIndex(0, i)


def Odd(mu: int) -> GradedIndex:
    return GradedIndex(1, mu)


EXTRA = GradedIndex(0, 0)


def check_index(p: GradedIndex, sig: AlgebraSignature) -> None:
    bound = sig.n if p.parity else sig.m
    if not 1 <= p.label <= bound:
        raise InvalidIndex(f"index {p.key()} out of range for {sig}")


def parity(p: GradedIndex, sig: AlgebraSignature | None = None) -> int:
    if sig is not None:
        check_index(p, sig)
    return p.parity


def theta(p: GradedIndex, sig: AlgebraSignature) -> int:
    check_index(p, sig)
    if p.parity and p.label > sig.k:
        return -1
    return 1


def bar(p: GradedIndex, sig: AlgebraSignature) -> GradedIndex:
    check_index(p, sig)
    if p.parity:
        return Odd(sig.n + 1 - p.label)
    return Even(sig.m + 1 - p.label)


def tilde(p: GradedIndex, sig: AlgebraSignature) -> GradedIndex:
    check_index(p, sig)
    return bar(p, sig) if p.parity else p


class Convention(enum.Enum):
    CANONICAL = "canonical"
    DISTINGUISHED = "distinguished"

    def check(self, sig: AlgebraSignature) -> None:
        if self is Convention.DISTINGUISHED and sig.m != 2:
            raise ValueError("the distinguished convention is only defined for m = 2")


def _frac(x: Number | str) -> Fraction:
    if isinstance(x, float):
        raise TypeError("floats are not accepted; use Fraction or a 'p/q' string")
    return Fraction(x)


@dataclass(frozen=True)
class Weight:
    """Coefficients of eps_1..eps_h (``even``) and delta_1..delta_k (``odd``)."""

    even: tuple[Fraction, ...]
    odd: tuple[Fraction, ...]

    def __init__(self, even: Iterable[Number | str] = (), odd: Iterable[Number | str] = ()):
        object.__setattr__(self, "even", tuple(_frac(x) for x in even))
        object.__setattr__(self, "odd", tuple(_frac(x) for x in odd))

    @classmethod
    def zero(cls, sig: AlgebraSignature) -> "Weight":
        return cls([0] * sig.h, [0] * sig.k)

    @classmethod
    def epsilon(cls, sig: AlgebraSignature, i: int) -> "Weight":
        even = [0] * sig.h
        even[i - 1] = 1
        return cls(even, [0] * sig.k)

    @classmethod
    def delta(cls, sig: AlgebraSignature, mu: int) -> "Weight":
        odd = [0] * sig.k
        odd[mu - 1] = 1
        return cls([0] * sig.h, odd)

    def fits(self, sig: AlgebraSignature) -> bool:
        return len(self.even) == sig.h and len(self.odd) == sig.k

    def check_shape(self, sig: AlgebraSignature) -> None:
        if not self.fits(sig):
            raise InvalidWeight(
                f"weight has shape ({len(self.even)}, {len(self.odd)}), "
                f"{sig} needs ({sig.h}, {sig.k})"
            )

    def _check_same(self, other: "Weight") -> None:
        if len(self.even) != len(other.even) or len(self.odd) != len(other.odd):
            raise InvalidWeight("weights of different shapes")

    def __add__(self, other: "Weight") -> "Weight":
        self._check_same(other)
        return Weight(
            [a + b for a, b in zip(self.even, other.even)],
            [a + b for a, b in zip(self.odd, other.odd)],
        )

    def __sub__(self, other: "Weight") -> "Weight":
        return self + (-1) * other

    def __rmul__(self, c: Number) -> "Weight":
        c = _frac(c)
        return Weight([c * a for a in self.even], [c * a for a in self.odd])

    def __neg__(self) -> "Weight":
        return (-1) * self

    def to_text(self) -> str:
        return format_weight(self)

    def __str__(self) -> str:
        return format_weight(self)


def format_weight(w: Weight) -> str:
    return "even:{};odd:{}".format(
        ",".join(str(x) for x in w.even), ",".join(str(x) for x in w.odd)
    )


def parse_weight(text: str) -> Weight:
    """Parse ``"even:a,b;odd:c,d"``; either section may be omitted or empty."""
    parts: dict[str, list[Fraction]] = {"even": [], "odd": []}
    seen = set()
    for chunk in text.strip().split(";"):
        chunk = chunk.strip()
        if not chunk:
            continue
        name, sep, body = chunk.partition(":")
        name = name.strip()
        if not sep or name not in parts or name in seen:
            raise InvalidWeight(f"cannot parse weight {text!r}")
        seen.add(name)
        items = [s.strip() for s in body.split(",") if s.strip()]
        try:
            parts[name] = [Fraction(s) for s in items]
        except ValueError as exc:
            raise InvalidWeight(f"bad label in {text!r}: {exc}") from None
    return Weight(parts["even"], parts["odd"])


def bilinear_form(u: Weight, v: Weight) -> Fraction:
    """(eps_i, eps_j) = delta_ij, (delta_mu, delta_nu) = -delta_mu_nu, mixed terms vanish."""
    u._check_same(v)
    return sum((a * b for a, b in zip(u.even, v.even)), Fraction(0)) - sum(
        (a * b for a, b in zip(u.odd, v.odd)), Fraction(0)
    )


def rho(sig: AlgebraSignature, convention: Convention = Convention.CANONICAL) -> Weight:
    convention.check(sig)
    m, n = sig.m, sig.n
    odd = [Fraction(n - 2 * mu + 2, 2) for mu in range(1, sig.k + 1)]
    if convention is Convention.DISTINGUISHED:
        return Weight([Fraction(-n, 2)], odd)
    even = [Fraction(m - 2 * i, 2) for i in range(1, sig.h + 1)]
    return Weight(even, [x - Fraction(m, 2) for x in odd])


def positive_roots(
    sig: AlgebraSignature, convention: Convention = Convention.CANONICAL
) -> tuple[list[Weight], list[Weight]]:
    """Even and odd positive roots, listed with multiplicity one each."""
    convention.check(sig)
    h, k = sig.h, sig.k
    eps = [Weight.epsilon(sig, i) for i in range(1, h + 1)]
    dlt = [Weight.delta(sig, mu) for mu in range(1, k + 1)]
    even: list[Weight] = []
    for a in range(k):
        even.append(2 * dlt[a])
        for b in range(a + 1, k):
            even += [dlt[a] + dlt[b], dlt[a] - dlt[b]]
    odd: list[Weight] = []
    if convention is Convention.DISTINGUISHED:
        for d in dlt:
            odd += [eps[0] + d, eps[0] - d]
        return even, odd
    for i in range(h):
        for j in range(i + 1, h):
            even += [eps[i] + eps[j], eps[i] - eps[j]]
        if sig.m_odd:
            even.append(eps[i])
    # eps_1..eps_m with eps_{bar i} = -eps_i and the middle one zero
    all_eps = eps + ([Weight.zero(sig)] if sig.m_odd else []) + [-e for e in reversed(eps)]
    for e in all_eps:
        for d in dlt:
            odd.append(e + d)
    return even, odd


def half_sum(roots: Sequence[Weight], sig: AlgebraSignature) -> Weight:
    total = Weight.zero(sig)
    for r in roots:
        total = total + r
    return Fraction(1, 2) * total


def grading_level(p: GradedIndex, sig: AlgebraSignature) -> int:
    """gl(k) level: +1 for odd mu <= k, -1 for odd mu > k, 0 for even indices.

    The generator S^p_q sits in L_{level(p) - level(q)}.
    """
    check_index(p, sig)
    if not p.parity:
        return 0
    return 1 if p.label <= sig.k else -1


def index_weight(p: GradedIndex, sig: AlgebraSignature) -> Weight:
    """eps_p: the weight carried by basis vector p of the defining module."""
    check_index(p, sig)
    if p.parity:
        if p.label <= sig.k:
            return Weight.delta(sig, p.label)
        return -Weight.delta(sig, sig.n + 1 - p.label)
    if p.label <= sig.h:
        return Weight.epsilon(sig, p.label)
    if sig.m_odd and p.label == sig.h + 1:
        return Weight.zero(sig)
    return -Weight.epsilon(sig, sig.m + 1 - p.label)


def _is_int(x: Fraction) -> bool:
    return x.denominator == 1


def _is_half_odd(x: Fraction) -> bool:
    return x.denominator == 2


def validate_dominant(weight: Weight, sig: AlgebraSignature) -> str:
    """Classify a highest weight as ``tensor``, ``spinor``, ``generic`` or ``invalid``.

    ``generic`` only occurs for m = 2, where the single even label may be any
    rational; it marks labels that are neither integral nor half-odd.
    """
    weight.check_shape(sig)
    odd = weight.odd
    if not all(_is_int(x) for x in odd) or any(x < 0 for x in odd):
        return "invalid"
    if any(odd[a] < odd[a + 1] for a in range(len(odd) - 1)):
        return "invalid"
    even = weight.even
    if sig.m <= 1:
        return "tensor"
    if sig.m == 2:
        lam = even[0]
        if _is_int(lam):
            return "tensor"
        return "spinor" if _is_half_odd(lam) else "generic"
    if all(_is_int(x) for x in even):
        kind = "tensor"
    elif all(_is_half_odd(x) for x in even):
        kind = "spinor"
    else:
        return "invalid"
    if any(even[i] < even[i + 1] for i in range(len(even) - 2)):
        return "invalid"
    last = even[-1]
    if sig.m_odd:
        if len(even) >= 2 and even[-2] < last:
            return "invalid"
        if last < 0:
            return "invalid"
    elif len(even) >= 2 and even[-2] < abs(last):
        return "invalid"
    return kind


def casimir_eigenvalue(
    weight: Weight, sig: AlgebraSignature, convention: Convention = Convention.CANONICAL
) -> Fraction:
    """(Lambda, Lambda + 2 rho)."""
    weight.check_shape(sig)
    r = rho(sig, convention)
    return bilinear_form(weight, weight + 2 * r)
