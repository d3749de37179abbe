"""Exact Gaussian rationals: complex numbers a + b*i with a, b rational.

Both parts are gmpy2 ``mpq`` values, which are always kept in lowest terms
with a positive denominator, so structural equality is exact equality.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Union

from gmpy2 import mpq, mpz

from .errors import DivisionByZero, InvalidScalar

ZERO_Q = mpq(0)
ONE_Q = mpq(1)

Scalarish = Union["GaussianRational", int, Fraction, str]


def to_mpq(x) -> mpq:
    if isinstance(x, str):
        return _parse_rational(x)
    if isinstance(x, float):
        raise InvalidScalar("floats are not accepted; pass an exact rational")
    return mpq(x)


class GaussianRational:
    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = re if type(re) is type(ZERO_Q) else to_mpq(re)
        self.im = im if type(im) is type(ZERO_Q) else to_mpq(im)

    # fraction views of the canonical form
    @property
    def re_num(self) -> int:
        return int(self.re.numerator)

    @property
    def re_den(self) -> int:
        return int(self.re.denominator)

    @property
    def im_num(self) -> int:
        return int(self.im.numerator)

    @property
    def im_den(self) -> int:
        return int(self.im.denominator)

    @classmethod
    def coerce(cls, x: Scalarish) -> GaussianRational:
        if isinstance(x, GaussianRational):
            return x
        if isinstance(x, str):
            return parse_scalar(x)
        if isinstance(x, complex):
            raise InvalidScalar("complex floats are not accepted")
        return cls(to_mpq(x), ZERO_Q)

    def is_zero(self) -> bool:
        return not self.re and not self.im

    def is_real(self) -> bool:
        return not self.im

    def __bool__(self) -> bool:
        return not self.is_zero()

    def __eq__(self, other) -> bool:
        if isinstance(other, GaussianRational):
            return self.re == other.re and self.im == other.im
        if isinstance(other, (int, Fraction)) or type(other) is type(ZERO_Q):
            return not self.im and self.re == other
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.re, self.im))

    def __add__(self, other):
        o = _coerce_or_none(other)
        if o is None:
            return NotImplemented
        return GaussianRational(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other):
        o = _coerce_or_none(other)
        if o is None:
            return NotImplemented
        return GaussianRational(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        o = _coerce_or_none(other)
        if o is None:
            return NotImplemented
        return o - self

    def __neg__(self) -> GaussianRational:
        return GaussianRational(-self.re, -self.im)

    def __mul__(self, other):
        o = _coerce_or_none(other)
        if o is None:
            return NotImplemented
        a, b, c, d = self.re, self.im, o.re, o.im
        return GaussianRational(a * c - b * d, a * d + b * c)

    __rmul__ = __mul__

    def inv(self) -> GaussianRational:
        n = self.re * self.re + self.im * self.im
        if not n:
            raise DivisionByZero("inverse of zero")
        return GaussianRational(self.re / n, -self.im / n)

    def __truediv__(self, other):
        o = _coerce_or_none(other)
        if o is None:
            return NotImplemented
        return self * o.inv()

    def __rtruediv__(self, other):
        o = _coerce_or_none(other)
        if o is None:
            return NotImplemented
        return o * self.inv()

    def conj(self) -> GaussianRational:
        return GaussianRational(self.re, -self.im)

    def abs2(self) -> mpq:
        return self.re * self.re + self.im * self.im

    def __repr__(self) -> str:
        return f"GaussianRational({format_scalar(self)!r})"

    def __str__(self) -> str:
        return format_scalar(self)


def _coerce_or_none(x) -> GaussianRational | None:
    if isinstance(x, GaussianRational):
        return x
    if isinstance(x, (int, Fraction)) or type(x) is type(ZERO_Q) or type(x) is type(mpz(0)):
        return GaussianRational(mpq(x), ZERO_Q)
    return None


ZERO = GaussianRational(0, 0)
ONE = GaussianRational(1, 0)
I_UNIT = GaussianRational(0, 1)


def add(a: GaussianRational, b: GaussianRational) -> GaussianRational:
    return a + b


def sub(a: GaussianRational, b: GaussianRational) -> GaussianRational:
    return a - b


def mul(a: GaussianRational, b: GaussianRational) -> GaussianRational:
    return a * b


def neg(a: GaussianRational) -> GaussianRational:
    return -a


def inv(a: GaussianRational) -> GaussianRational:
    return a.inv()


def conj(a: GaussianRational) -> GaussianRational:
    return a.conj()


# text form: "p/q", "p/q+r/s i", "p/q-r/s i", integers allowed, whitespace ignored

_RAT = r"[+-]?\d+(?:/\d+)?"
_RAT_RE = re.compile(rf"^{_RAT}$")
_SCALAR_RE = re.compile(
    rf"^(?:(?P<re>{_RAT})(?=$|[+-]))?(?:(?P<im>[+-]?(?:\d+(?:/\d+)?)?)\*?i)?$"
)


def _parse_rational(text: str) -> mpq:
    t = "".join(text.split())
    if not _RAT_RE.match(t):
        raise InvalidScalar(f"not a rational: {text!r}")
    if "/" in t:
        p, q = t.split("/")
        if int(q) == 0:
            raise InvalidScalar(f"zero denominator in {text!r}")
        return mpq(int(p), int(q))
    return mpq(int(t))


def parse_scalar(text: str) -> GaussianRational:
    if not isinstance(text, str):
        raise InvalidScalar(f"scalar must be a string, got {type(text).__name__}")
    t = "".join(text.split())
    if not t:
        raise InvalidScalar("empty scalar")
    m = _SCALAR_RE.match(t)
    if not m or (m.group("re") is None and m.group("im") is None):
        raise InvalidScalar(f"malformed scalar: {text!r}")
    re_part = _parse_rational(m.group("re")) if m.group("re") is not None else ZERO_Q
    im_txt = m.group("im")
    if im_txt is None:
        im_part = ZERO_Q
    elif im_txt in ("", "+"):
        im_part = ONE_Q
    elif im_txt == "-":
        im_part = -ONE_Q
    else:
        im_part = _parse_rational(im_txt)
    return GaussianRational(re_part, im_part)


def _fmt_q(q: mpq) -> str:
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def format_scalar(x: GaussianRational) -> str:
    if not x.im:
        return _fmt_q(x.re)
    sign = "-" if x.im < 0 else "+"
    return f"{_fmt_q(x.re)}{sign}{_fmt_q(abs(x.im))} i"
