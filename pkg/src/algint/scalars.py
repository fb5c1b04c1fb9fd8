"""Exact scalar fields: rationals, Gaussian rationals and cyclotomic fields.

Rationals are plain :class:`fractions.Fraction`.  Gaussian rationals are the
cyclotomic field of order 4, so both non-rational fields share the
:class:`Cyclotomic` element type; the :class:`Field` descriptor only changes
how elements are parsed and printed.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Union


class FieldError(ValueError):
    """Raised on scalar parse failures or when elements of two fields meet."""


# ---------------------------------------------------------------------------
# polynomial helpers (coefficient lists, lowest degree first)

def _trim(p):
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return p


def _poly_divmod(a, b):
    a = _trim(a)
    b = _trim(b)
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 1)
    r = [Fraction(x) for x in a]
    lead = Fraction(b[-1])
    while len(r) >= len(b) and r:
        shift = len(r) - len(b)
        c = r[-1] / lead
        q[shift] = c
        for i, bc in enumerate(b):
            r[shift + i] -= c * bc
        r = _trim(r)
    return _trim(q), r


def _poly_mul(a, b):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    out[i + j] += x * y
    return out


def _poly_sub(a, b):
    n = max(len(a), len(b))
    a = list(a) + [0] * (n - len(a))
    b = list(b) + [0] * (n - len(b))
    return _trim([x - y for x, y in zip(a, b)])


def _divisors(n):
    return [d for d in range(1, n + 1) if n % d == 0]


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple[int, ...]:
    """Coefficients of the n-th cyclotomic polynomial, lowest degree first.

    Computed by dividing x^n - 1 by every Phi_d with d a proper divisor of n.
    """
    if n < 1:
        raise ValueError("cyclotomic order must be >= 1")
    num = [Fraction(-1)] + [Fraction(0)] * (n - 1) + [Fraction(1)]
    for d in _divisors(n)[:-1]:
        num, rem = _poly_divmod(num, cyclotomic_polynomial(d))
        assert not rem
    assert all(c.denominator == 1 for c in num)
    return tuple(int(c) for c in num)


def euler_phi(n: int) -> int:
    return len(cyclotomic_polynomial(n)) - 1


# ---------------------------------------------------------------------------
# cyclotomic elements

class Cyclotomic:
    """An element of Q(zeta_n), stored reduced modulo Phi_n.

    ``coeffs[k]`` is the coefficient of zeta_n**k; the tuple always has
    length ``euler_phi(n)``.
    """

    __slots__ = ("n", "coeffs")

    def __init__(self, n: int, coeffs=()):
        modulus = cyclotomic_polynomial(n)
        deg = len(modulus) - 1
        poly = [c if type(c) is Fraction else Fraction(c) for c in coeffs]
        # Phi_n is monic, so reduction needs no division
        for top in range(len(poly) - 1, deg - 1, -1):
            c = poly[top]
            if c:
                base = top - deg
                for i in range(deg):
                    m = modulus[i]
                    if m:
                        poly[base + i] -= c * m
        del poly[deg:]
        poly.extend([Fraction(0)] * (deg - len(poly)))
        self.n = n
        self.coeffs = tuple(poly)

    @classmethod
    def _raw(cls, n: int, coeffs: tuple) -> "Cyclotomic":
        """Trusted constructor: ``coeffs`` are reduced Fractions of full length."""
        out = object.__new__(cls)
        out.n = n
        out.coeffs = coeffs
        return out

    @classmethod
    def zeta(cls, n: int, power: int = 1) -> "Cyclotomic":
        power %= n
        return cls(n, [0] * power + [1])

    # -- coercion --------------------------------------------------------

    def _other(self, other):
        if isinstance(other, Cyclotomic):
            if other.n != self.n:
                raise FieldError(
                    f"cannot mix cyclotomic orders {self.n} and {other.n}")
            return other
        if isinstance(other, (int, Fraction)):
            return Cyclotomic(self.n, [other])
        return NotImplemented

    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    # -- arithmetic ------------------------------------------------------

    def __add__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return other
        return Cyclotomic._raw(self.n, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        return Cyclotomic._raw(self.n, tuple(-a for a in self.coeffs))

    def __sub__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return other
        return Cyclotomic._raw(self.n, tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __rsub__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return other
        return other - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return Cyclotomic._raw(self.n, tuple(a * other for a in self.coeffs))
        other = self._other(other)
        if other is NotImplemented:
            return other
        if other.is_rational():
            c = other.coeffs[0]
            return Cyclotomic._raw(self.n, tuple(a * c for a in self.coeffs))
        if self.is_rational():
            c = self.coeffs[0]
            return Cyclotomic._raw(self.n, tuple(c * b for b in other.coeffs))
        return Cyclotomic(self.n, _poly_mul(self.coeffs, other.coeffs))

    __rmul__ = __mul__

    def inverse(self) -> "Cyclotomic":
        a = _trim(self.coeffs)
        if not a:
            raise ZeroDivisionError("inverse of zero in cyclotomic field")
        # extended Euclid: s*a + t*m = g, with g a nonzero constant
        m = [Fraction(c) for c in cyclotomic_polynomial(self.n)]
        r0, r1 = m, a
        s0, s1 = [], [Fraction(1)]
        while len(_trim(r1)) > 1:
            q, r = _poly_divmod(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, _poly_sub(s0, _poly_mul(q, s1))
        g = _trim(r1)
        return Cyclotomic(self.n, [c / g[0] for c in s1])

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return Cyclotomic(self.n, [a / other for a in self.coeffs])
        other = self._other(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return other
        return other * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        out = Cyclotomic(self.n, [1])
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def conjugate(self) -> "Cyclotomic":
        """Complex conjugation, i.e. the automorphism zeta -> zeta**-1."""
        poly = [Fraction(0)] * self.n
        for k, c in enumerate(self.coeffs):
            poly[(-k) % self.n] += c
        return Cyclotomic(self.n, poly)

    # -- comparison ------------------------------------------------------

    def __bool__(self):
        return any(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, Cyclotomic):
            return self.n == other.n and self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and self.coeffs[0] == other
        return NotImplemented

    def __hash__(self):
        if self.is_rational():
            return hash(self.coeffs[0])
        return hash((self.n, self.coeffs))

    def __repr__(self):
        return f"Cyclotomic({self.n}, {[str(c) for c in self.coeffs]})"


Scalar = Union[Fraction, Cyclotomic]


def _fmt_fraction(x: Fraction) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _parse_fraction(s: str) -> Fraction:
    s = s.strip()
    if not re.fullmatch(r"[+-]?\d+(/\d+)?", s):
        raise FieldError(f"not a rational literal: {s!r}")
    try:
        return Fraction(s)
    except (ValueError, ZeroDivisionError) as exc:
        raise FieldError(f"not a rational literal: {s!r}") from exc


# ---------------------------------------------------------------------------
# field descriptor

@dataclass(frozen=True)
class Field:
    """Which exact field an algebra is defined over.

    ``kind`` is ``"rational"``, ``"gaussian"`` or ``"cyclotomic"``; ``order``
    is the cyclotomic order (4 for Gaussian rationals, 1 for rationals).
    """

    kind: str = "rational"
    order: int = 1

    def __post_init__(self):
        if self.kind not in ("rational", "gaussian", "cyclotomic"):
            raise FieldError(f"unknown field kind {self.kind!r}")
        if self.kind == "rational" and self.order != 1:
            raise FieldError("rational field has order 1")
        if self.kind == "gaussian" and self.order != 4:
            raise FieldError("gaussian field has order 4")
        if self.kind == "cyclotomic" and self.order < 1:
            raise FieldError("cyclotomic order must be >= 1")

    @classmethod
    def rational(cls) -> "Field":
        return cls("rational", 1)

    @classmethod
    def gaussian(cls) -> "Field":
        return cls("gaussian", 4)

    @classmethod
    def cyclotomic(cls, n: int) -> "Field":
        return cls("cyclotomic", n)

    @classmethod
    def from_name(cls, name: str) -> "Field":
        name = name.strip()
        if name == "rational":
            return cls.rational()
        if name == "gaussian":
            return cls.gaussian()
        m = re.fullmatch(r"cyclotomic:(\d+)", name)
        if m:
            return cls.cyclotomic(int(m.group(1)))
        raise FieldError(f"unknown field descriptor {name!r}")

    @property
    def name(self) -> str:
        if self.kind == "cyclotomic":
            return f"cyclotomic:{self.order}"
        return self.kind

    # -- elements --------------------------------------------------------

    def zero(self) -> Scalar:
        return self.coerce(0)

    def one(self) -> Scalar:
        return self.coerce(1)

    def zeta(self, power: int = 1) -> Scalar:
        """Primitive root of unity generating the field (i for gaussian)."""
        if self.kind == "rational":
            raise FieldError("the rational field has no generator")
        return Cyclotomic.zeta(self.order, power)

    def coerce(self, x) -> Scalar:
        """Bring ``x`` into this field; strings are parsed."""
        if isinstance(x, str):
            return self.parse(x)
        if isinstance(x, bool):
            raise FieldError("booleans are not scalars")
        if self.kind == "rational":
            if isinstance(x, Cyclotomic):
                if not x.is_rational():
                    raise FieldError(f"{x!r} is not rational")
                return x.coeffs[0]
            if isinstance(x, (int, Fraction)):
                return Fraction(x)
            raise FieldError(f"cannot coerce {x!r} to a rational")
        if isinstance(x, Cyclotomic):
            if x.n != self.order:
                raise FieldError(f"element of order {x.n} in field {self.name}")
            return x
        if isinstance(x, (int, Fraction)):
            return Cyclotomic(self.order, [x])
        raise FieldError(f"cannot coerce {x!r} to {self.name}")

    def contains(self, x) -> bool:
        if self.kind == "rational":
            return isinstance(x, Fraction)
        return isinstance(x, Cyclotomic) and x.n == self.order

    def conj(self, x: Scalar) -> Scalar:
        if self.kind == "rational":
            return x
        return x.conjugate()

    # -- text ------------------------------------------------------------

    def parse(self, s: str) -> Scalar:
        s = s.strip()
        if not s:
            raise FieldError("empty scalar literal")
        if self.kind == "rational":
            return _parse_fraction(s)
        if s.startswith("["):
            if not s.endswith("]"):
                raise FieldError(f"unterminated coefficient list {s!r}")
            body = s[1:-1].strip()
            parts = [p for p in body.split(",")] if body else []
            coeffs = [_parse_fraction(p) for p in parts]
            return Cyclotomic(self.order, coeffs)
        if self.kind == "gaussian":
            return self._parse_gaussian(s)
        return Cyclotomic(self.order, [_parse_fraction(s)])

    def _parse_gaussian(self, s: str) -> Cyclotomic:
        t = s.replace(" ", "")
        if not t.endswith("i"):
            return Cyclotomic(4, [_parse_fraction(t)])
        body = t[:-1]
        split = max(body.rfind("+"), body.rfind("-"))
        if split > 0:
            re_part, im_part = body[:split], body[split:]
        else:
            re_part, im_part = "0", body
        if im_part in ("", "+"):
            im = Fraction(1)
        elif im_part == "-":
            im = Fraction(-1)
        else:
            im = _parse_fraction(im_part)
        return Cyclotomic(4, [_parse_fraction(re_part), im])

    def format(self, x: Scalar) -> str:
        x = self.coerce(x)
        if self.kind == "rational":
            return _fmt_fraction(x)
        if self.kind == "gaussian":
            re_part, im_part = x.coeffs
            if im_part == 0:
                return _fmt_fraction(re_part)
            im = _fmt_fraction(abs(im_part))
            if re_part == 0:
                return f"{'-' if im_part < 0 else ''}{im} i"
            sign = "-" if im_part < 0 else "+"
            return f"{_fmt_fraction(re_part)}{sign}{im} i"
        coeffs = _trim(x.coeffs) or [Fraction(0)]
        if len(coeffs) == 1:
            return _fmt_fraction(coeffs[0])
        return "[" + ",".join(_fmt_fraction(c) for c in coeffs) + "]"


RATIONAL = Field.rational()
GAUSSIAN = Field.gaussian()


def field_of(name_or_field) -> Field:
    if isinstance(name_or_field, Field):
        return name_or_field
    return Field.from_name(name_or_field)
