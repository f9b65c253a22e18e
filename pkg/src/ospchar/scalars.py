"""Exact scalars in Q(i, sqrt 2), written a + b i + c sqrt2 + d i sqrt2."""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

# basis order: 1, i, r2, i*r2.  _MUL[(x, y)] = (target, coefficient)
MUL_TABLE: dict[tuple[int, int], tuple[int, int]] = {
    (0, 0): (0, 1), (0, 1): (1, 1), (0, 2): (2, 1), (0, 3): (3, 1),
    (1, 0): (1, 1), (1, 1): (0, -1), (1, 2): (3, 1), (1, 3): (2, -1),
    (2, 0): (2, 1), (2, 1): (3, 1), (2, 2): (0, 2), (2, 3): (1, 2),
    (3, 0): (3, 1), (3, 1): (2, -1), (3, 2): (1, 2), (3, 3): (0, -2),
}  # fmt: skip

_SUFFIX = ("", "i", "√2", "i√2")


@dataclass(frozen=True)
class ExtScalar:
    a: Fraction = Fraction(0)
    b: Fraction = Fraction(0)
    c: Fraction = Fraction(0)
    d: Fraction = Fraction(0)

    def __post_init__(self) -> None:
        for name in "abcd":
            value = getattr(self, name)
            if isinstance(value, float):
                raise TypeError("floats are not accepted")
            object.__setattr__(self, name, Fraction(value))

    @classmethod
    def coerce(cls, x: "ExtScalar | Fraction | int") -> "ExtScalar":
        return x if isinstance(x, ExtScalar) else cls(Fraction(x))

    @property
    def parts(self) -> tuple[Fraction, Fraction, Fraction, Fraction]:
        return (self.a, self.b, self.c, self.d)

    def is_rational(self) -> bool:
        return self.b == self.c == self.d == 0

    def to_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return self.a

    def __add__(self, other):
        o = ExtScalar.coerce(other)
        return ExtScalar(*(x + y for x, y in zip(self.parts, o.parts)))

    __radd__ = __add__

    def __neg__(self) -> "ExtScalar":
        return ExtScalar(-self.a, -self.b, -self.c, -self.d)

    def __sub__(self, other):
        return self + (-ExtScalar.coerce(other))

    def __rsub__(self, other):
        return ExtScalar.coerce(other) - self

    def __mul__(self, other):
        o = ExtScalar.coerce(other)
        out = [Fraction(0)] * 4
        for x, u in enumerate(self.parts):
            if not u:
                continue
            for y, v in enumerate(o.parts):
                if v:
                    target, coeff = MUL_TABLE[(x, y)]
                    out[target] += coeff * u * v
        return ExtScalar(*out)

    __rmul__ = __mul__

    def conjugate(self) -> "ExtScalar":
        return ExtScalar(self.a, -self.b, self.c, -self.d)

    def abs2(self) -> tuple[Fraction, Fraction]:
        """x * conj(x) = r + s sqrt2, returned as (r, s)."""
        z = self * self.conjugate()
        return z.a, z.c

    def norm(self) -> Fraction:
        """Absolute norm down to Q; multiplicative and zero only at zero."""
        r, s = self.abs2()
        return r * r - 2 * s * s

    def inverse(self) -> "ExtScalar":
        nrm = self.norm()
        if nrm == 0:
            raise ZeroDivisionError("inverse of zero")
        r, s = self.abs2()
        return self.conjugate() * ExtScalar(r / nrm, 0, -s / nrm, 0)

    def __truediv__(self, other):
        return self * ExtScalar.coerce(other).inverse()

    def __rtruediv__(self, other):
        return ExtScalar.coerce(other) * self.inverse()

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and self.a == other
        if not isinstance(other, ExtScalar):
            return NotImplemented
        return self.parts == other.parts

    def __hash__(self) -> int:
        if self.is_rational():
            return hash(self.a)
        return hash(self.parts)

    def __bool__(self) -> bool:
        return any(self.parts)

    def __str__(self) -> str:
        return format_scalar(self)

    def __repr__(self) -> str:
        return f"ExtScalar({format_scalar(self)!r})"


I = ExtScalar(0, 1)
SQRT2 = ExtScalar(0, 0, 1)


def format_scalar(x: "ExtScalar | Fraction | int") -> str:
    """Compact exact string: zero terms dropped, e.g. ``"1/2-1/2i√2"``; zero is ``"0"``."""
    x = ExtScalar.coerce(x)
    out = ""
    for value, suffix in zip(x.parts, _SUFFIX):
        if not value:
            continue
        text = str(value)
        if suffix and value in (1, -1):
            text = text[:-1]  # "1" -> "", "-1" -> "-"
        if out and not text.startswith("-"):
            text = "+" + text
        out += text + suffix
    return out or "0"


_TERM = re.compile(r"([+-]?)(\d+(?:/\d+)?)?(i√2|√2|i)?")


def parse_scalar(text: str) -> ExtScalar:
    """Inverse of ``format_scalar``; also accepts the four-term form with zeros."""
    s = text.replace(" ", "")
    if not s:
        raise ValueError("empty scalar")
    parts = [Fraction(0)] * 4
    pos = 0
    while pos < len(s):
        match = _TERM.match(s, pos)
        if match is None or match.end() == pos or not (match.group(2) or match.group(3)):
            raise ValueError(f"cannot parse scalar {text!r}")
        sign = -1 if match.group(1) == "-" else 1
        if pos > 0 and not match.group(1):
            raise ValueError(f"cannot parse scalar {text!r}")
        coeff = Fraction(match.group(2)) if match.group(2) else Fraction(1)
        parts[_SUFFIX.index(match.group(3) or "")] += sign * coeff
        pos = match.end()
    return ExtScalar(*parts)
