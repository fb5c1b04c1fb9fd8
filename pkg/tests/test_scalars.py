import cmath
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st

from algint.scalars import (GAUSSIAN, RATIONAL, Cyclotomic, Field, FieldError,
                            cyclotomic_polynomial, euler_phi)


def numeric_cyclotomic(n):
    """prod (x - zeta) over primitive n-th roots, expanded numerically."""
    roots = [cmath.exp(2j * cmath.pi * k / n) for k in range(1, n + 1)
             if np.gcd(k, n) == 1]
    coeffs = np.poly(roots)[::-1]
    return tuple(int(round(c.real)) for c in coeffs)


@pytest.mark.parametrize("n", range(1, 25))
def test_cyclotomic_polynomial_matches_root_product(n):
    assert cyclotomic_polynomial(n) == numeric_cyclotomic(n)


def test_known_cyclotomics():
    assert cyclotomic_polynomial(4) == (1, 0, 1)
    assert cyclotomic_polynomial(6) == (1, -1, 1)
    assert euler_phi(12) == 4


def to_complex(x: Cyclotomic) -> complex:
    z = cmath.exp(2j * cmath.pi / x.n)
    return sum(float(c) * z ** k for k, c in enumerate(x.coeffs))


fractions = st.fractions(min_value=-20, max_value=20, max_denominator=12)


def cyclo(n):
    return st.lists(fractions, min_size=euler_phi(n), max_size=euler_phi(n)).map(
        lambda cs: Cyclotomic(n, cs))


@pytest.mark.parametrize("n", [3, 4, 5, 8, 12])
@given(data=st.data())
def test_cyclotomic_ops_match_complex_numbers(n, data):
    a, b = data.draw(cyclo(n)), data.draw(cyclo(n))
    assert abs(to_complex(a + b) - (to_complex(a) + to_complex(b))) < 1e-9
    assert abs(to_complex(a * b) - to_complex(a) * to_complex(b)) < 1e-6
    assert abs(to_complex(a.conjugate()) - to_complex(a).conjugate()) < 1e-9
    if a:
        assert a * a.inverse() == 1
        assert abs(to_complex(b / a) - to_complex(b) / to_complex(a)) < 1e-6


@pytest.mark.parametrize("n", [3, 5, 7])
@given(data=st.data())
def test_field_axioms(n, data):
    a, b, c = (data.draw(cyclo(n)) for _ in range(3))
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a * b == b * a
    assert a - a == 0


def test_zeta_has_order_n():
    for n in (2, 3, 5, 6, 10):
        z = Cyclotomic.zeta(n)
        assert z ** n == 1
        assert all(z ** k != 1 for k in range(1, n))


def test_mixing_orders_is_an_error():
    with pytest.raises(FieldError):
        Cyclotomic.zeta(3) + Cyclotomic.zeta(5)


def test_equality_with_rationals_and_hash():
    x = Cyclotomic(5, [Fraction(3, 2)])
    assert x == Fraction(3, 2)
    assert hash(x) == hash(Fraction(3, 2))


@pytest.mark.parametrize("text,re,im", [
    ("1", 1, 0), ("-1/2", Fraction(-1, 2), 0), ("i", 0, 1), ("-i", 0, -1),
    ("3/4i", 0, Fraction(3, 4)), ("1+2i", 1, 2), ("1/2-3/4 i", Fraction(1, 2), Fraction(-3, 4)),
    ("-1/3+5/7 i", Fraction(-1, 3), Fraction(5, 7)),
])
def test_gaussian_parse(text, re, im):
    x = GAUSSIAN.parse(text)
    assert x.coeffs == (Fraction(re), Fraction(im))


@given(fractions, fractions)
def test_gaussian_format_roundtrip(re, im):
    x = Cyclotomic(4, [re, im])
    assert GAUSSIAN.parse(GAUSSIAN.format(x)) == x


@given(st.lists(fractions, min_size=1, max_size=8))
def test_cyclotomic_format_roundtrip(cs):
    F = Field.cyclotomic(7)
    x = Cyclotomic(7, cs)
    s = F.format(x)
    assert F.parse(s) == x
    assert F.format(F.parse(s)) == s


@given(fractions)
def test_rational_format_roundtrip(x):
    assert RATIONAL.parse(RATIONAL.format(x)) == x


@pytest.mark.parametrize("bad", ["", "1.5", "a", "1/0", "[1,2", "2/-3"])
def test_parse_failures(bad):
    with pytest.raises(FieldError):
        Field.cyclotomic(5).parse(bad) if bad.startswith("[") else RATIONAL.parse(bad)


def test_field_names():
    for name in ("rational", "gaussian", "cyclotomic:5"):
        assert Field.from_name(name).name == name
    with pytest.raises(FieldError):
        Field.from_name("real")


def test_rational_field_rejects_irrationals():
    with pytest.raises(FieldError):
        RATIONAL.coerce(Cyclotomic.zeta(3))
    with pytest.raises(FieldError):
        Field.cyclotomic(3).coerce(Cyclotomic.zeta(5))
