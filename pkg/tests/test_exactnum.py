from __future__ import annotations

from math import gcd

import pytest
from gmpy2 import mpq
from hypothesis import given

from ginvlab.errors import DivisionByZero, InvalidScalar
from ginvlab.exactnum import (
    I_UNIT,
    ONE,
    ZERO,
    GaussianRational,
    add,
    conj,
    format_scalar,
    inv,
    mul,
    neg,
    parse_scalar,
    sub,
)
from strategies import gaussians, nonzero_gaussians

G = GaussianRational


def test_add_examples():
    assert add(G(mpq(1, 2)), G(mpq(1, 3))) == G(mpq(5, 6))
    x = G(mpq(-7, 3), 2)
    assert add(x, ZERO) == x
    assert add(G(1, 1), G(1, -1)) == G(2, 0)


def test_field_examples():
    assert mul(G(1, 1), G(1, -1)) == G(2, 0)
    assert inv(G(2)) == G(mpq(1, 2))
    assert conj(G(mpq(3, 4), -2)) == G(mpq(3, 4), 2)
    assert sub(G(1), G(0, 1)) == G(1, -1)
    assert neg(G(1, -1)) == G(-1, 1)
    assert I_UNIT * I_UNIT == -ONE


def test_inverse_of_zero_raises():
    with pytest.raises(DivisionByZero):
        inv(ZERO)
    with pytest.raises(ZeroDivisionError):
        ONE / ZERO


def test_canonical_fields():
    x = G(mpq(6, -4), mpq(10, 5))
    assert (x.re_num, x.re_den, x.im_num, x.im_den) == (-3, 2, 2, 1)
    assert (ZERO.re_num, ZERO.re_den) == (0, 1)


@pytest.mark.parametrize("text,value", [
    ("3", G(3)),
    ("-1/2", G(mpq(-1, 2))),
    ("1/2+3/4 i", G(mpq(1, 2), mpq(3, 4))),
    ("1/2 - 3/4i", G(mpq(1, 2), mpq(-3, 4))),
    (" 2 i ", G(0, 2)),
    ("-i", G(0, -1)),
    ("i", G(0, 1)),
    ("4/8", G(mpq(1, 2))),
])
def test_parse(text, value):
    assert parse_scalar(text) == value


@pytest.mark.parametrize("bad", ["", "x", "1/0", "1//2", "1+", "1.5", "i i", "2/3+"])
def test_parse_rejects(bad):
    with pytest.raises(InvalidScalar):
        parse_scalar(bad)


@given(gaussians)
def test_format_roundtrip(x):
    assert parse_scalar(format_scalar(x)) == x


@given(gaussians, gaussians, gaussians)
def test_field_axioms(x, y, z):
    assert (x + y) + z == x + (y + z)
    assert (x * y) * z == x * (y * z)
    assert x * (y + z) == x * y + x * z
    assert x + y == y + x and x * y == y * x
    assert x - x == ZERO


@given(nonzero_gaussians)
def test_multiplicative_inverse(x):
    assert x * x.inv() == ONE


@given(gaussians, gaussians)
def test_conjugation(x, y):
    assert x.conj().conj() == x
    assert (x * y).conj() == x.conj() * y.conj()
    assert (x * x.conj()).is_real and (x * x.conj()).re == x.abs2()


@given(gaussians, gaussians)
def test_lowest_terms_after_ops(x, y):
    for z in (x + y, x * y, x - y):
        assert gcd(z.re_num, z.re_den) == 1 and z.re_den > 0
        assert gcd(z.im_num, z.im_den) == 1 and z.im_den > 0
