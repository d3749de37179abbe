"""Moore-Penrose inverse, the seven parameterized generalized-inverse
families, and exact membership tests."""

from __future__ import annotations

import random
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache

from gmpy2 import mpq

from .errors import CharacterizationMismatch, DimensionMismatch, IdentityViolated
from .matrix import (
    Matrix,
    ctranspose,
    full_rank_factorization,
    inverse,
    matmul,
    madd,
    msub,
    range_equal,
    range_subset,
    rank,
)


class GInvClass(Enum):
    G1 = "1"
    G12 = "12"
    G13 = "13"
    G14 = "14"
    G123 = "123"
    G124 = "124"
    G134 = "134"
    MP = "mp"

    @property
    def equations(self) -> frozenset[int]:
        return _EQUATIONS[self]

    @property
    def label(self) -> str:
        if self is GInvClass.MP:
            return "dagger"
        return "(" + ",".join(self.value) + ")"

    def includes(self, other: GInvClass) -> bool:
        """Set inclusion {X^(self)} contains {X^(other)} for every X."""
        return self.equations <= other.equations

    @classmethod
    def parse(cls, text: str) -> GInvClass:
        t = text.strip().lower().replace(",", "").replace("(", "").replace(")", "")
        t = t.lstrip("g")
        if t in ("mp", "dagger", "1234", "+"):
            return cls.MP
        for c in cls:
            if c.value == t:
                return c
        raise ValueError(f"unknown class {text!r}")


_EQUATIONS = {
    GInvClass.G1: frozenset({1}),
    GInvClass.G12: frozenset({1, 2}),
    GInvClass.G13: frozenset({1, 3}),
    GInvClass.G14: frozenset({1, 4}),
    GInvClass.G123: frozenset({1, 2, 3}),
    GInvClass.G124: frozenset({1, 2, 4}),
    GInvClass.G134: frozenset({1, 3, 4}),
    GInvClass.MP: frozenset({1, 2, 3, 4}),
}

ALL_CLASSES = tuple(GInvClass)


@dataclass(frozen=True)
class GInvParams:
    u: Matrix | None = None
    u1: Matrix | None = None
    u2: Matrix | None = None

    def get(self, name: str, n: int, m: int) -> Matrix:
        x = getattr(self, name)
        if x is None:
            return Matrix.zeros(n, m)
        if x.shape != (n, m):
            raise DimensionMismatch(f"parameter {name} must be {n}x{m}, got {x.rows}x{x.cols}")
        return x


def _is_hermitian(x: Matrix) -> bool:
    return x == ctranspose(x)


def penrose_flags(g: Matrix, a: Matrix) -> tuple[bool, bool, bool, bool]:
    if g.shape != (a.cols, a.rows):
        raise DimensionMismatch(f"candidate must be {a.cols}x{a.rows}, got {g.rows}x{g.cols}")
    ag = matmul(a, g)
    ga = matmul(g, a)
    return (
        matmul(ag, a) == a,
        matmul(ga, g) == g,
        _is_hermitian(ag),
        _is_hermitian(ga),
    )


def _pinv_unchecked(a: Matrix) -> Matrix:
    m, n = a.shape
    f, g = full_rank_factorization(a)
    if f.cols == 0:
        return Matrix.zeros(n, m)
    fh, gh = ctranspose(f), ctranspose(g)
    return matmul(matmul(gh, inverse(matmul(g, gh))), matmul(inverse(matmul(fh, f)), fh))


@lru_cache(maxsize=8192)
def pinv(a: Matrix) -> Matrix:
    """Exact Moore-Penrose inverse via a full-rank factorization."""
    x = _pinv_unchecked(a)
    if not all(penrose_flags(x, a)):
        raise IdentityViolated("computed pseudoinverse fails a Penrose equation")
    return x


@lru_cache(maxsize=8192)
def proj_left(a: Matrix) -> Matrix:
    """E_A = I - A A^dagger."""
    return msub(Matrix.identity(a.rows), matmul(a, pinv(a)))


@lru_cache(maxsize=8192)
def proj_right(a: Matrix) -> Matrix:
    """F_A = I - A^dagger A."""
    return msub(Matrix.identity(a.cols), matmul(pinv(a), a))


class _Ctx:
    """Quantities reused by every membership test against one matrix."""

    __slots__ = ("a", "ah", "aha", "aah", "r")

    def __init__(self, a: Matrix):
        self.a = a
        self.ah = ctranspose(a)
        self.aha = matmul(self.ah, a)
        self.aah = matmul(a, self.ah)
        self.r = rank(a)


@lru_cache(maxsize=8192)
def _ctx(a: Matrix) -> _Ctx:
    return _Ctx(a)


def make_ginverse(a: Matrix, cls: GInvClass, p: GInvParams | None = None) -> Matrix:
    p = p or GInvParams()
    m, n = a.shape
    if cls is GInvClass.MP:
        return pinv(a)
    ad = pinv(a)
    e, f = proj_left(a), proj_right(a)
    if cls is GInvClass.G1:
        return madd(madd(ad, matmul(f, p.get("u1", n, m))), matmul(p.get("u2", n, m), e))
    if cls is GInvClass.G12:
        left = madd(ad, matmul(f, p.get("u1", n, m)))
        right = madd(ad, matmul(p.get("u2", n, m), e))
        return matmul(matmul(left, a), right)
    u = p.get("u", n, m)
    if cls is GInvClass.G13:
        return madd(ad, matmul(f, u))
    if cls is GInvClass.G14:
        return madd(ad, matmul(u, e))
    if cls is GInvClass.G123:
        return madd(ad, matmul(matmul(f, u), matmul(a, ad)))
    if cls is GInvClass.G124:
        return madd(ad, matmul(matmul(ad, a), matmul(u, e)))
    if cls is GInvClass.G134:
        return madd(ad, matmul(matmul(f, u), e))
    raise ValueError(cls)


def random_rational(rng: random.Random) -> mpq:
    return mpq(rng.randint(-9, 9), rng.choice((1, 2, 3)))


def random_params(rng: random.Random, n: int, m: int, complex_: bool = False) -> GInvParams:
    def draw() -> Matrix:
        re = [random_rational(rng) for _ in range(n * m)]
        im = [random_rational(rng) for _ in range(n * m)] if complex_ else None
        return Matrix.from_parts(n, m, re, im)

    return GInvParams(u=draw(), u1=draw(), u2=draw())


def sample_ginverse(a: Matrix, cls: GInvClass, seed: int) -> Matrix:
    if cls is GInvClass.MP:
        return pinv(a)
    rng = random.Random(seed)
    return make_ginverse(a, cls, random_params(rng, a.cols, a.rows, complex_=not a.is_real))


def _derive(p1: bool, p2: bool, p3: bool, p4: bool) -> dict[GInvClass, bool]:
    flags = {1: p1, 2: p2, 3: p3, 4: p4}
    return {c: all(flags[k] for k in c.equations) for c in ALL_CLASSES}


def membership_profile(g: Matrix, a: Matrix) -> dict[GInvClass, bool]:
    """Verdict for all eight classes at once, each decided twice.

    The Penrose-equation route and the closed characterization route
    (AGA = A, A*AG = A*, GAA* = A*, rank equality) must agree for every class.
    """
    p1, p2, p3, p4 = penrose_flags(g, a)
    direct = _derive(p1, p2, p3, p4)
    ctx = _ctx(a)
    c1 = p1  # AGA = A is literally the first equation
    c3 = matmul(ctx.aha, g) == ctx.ah
    c4 = matmul(g, ctx.aah) == ctx.ah
    cr = rank(g) == ctx.r
    alt = {
        GInvClass.G1: c1,
        GInvClass.G12: c1 and cr,
        GInvClass.G13: c3,
        GInvClass.G14: c4,
        GInvClass.G123: c3 and cr,
        GInvClass.G124: c4 and cr,
        GInvClass.G134: c3 and c4,
        GInvClass.MP: c3 and c4 and cr,
    }
    for c in ALL_CLASSES:
        if direct[c] != alt[c]:
            raise CharacterizationMismatch(
                f"class {c.label}: Penrose test says {direct[c]}, characterization says {alt[c]}")
    return direct


def is_member(g: Matrix, a: Matrix, cls: GInvClass) -> bool:
    return membership_profile(g, a)[cls]


def is_ep(a: Matrix) -> bool:
    if a.rows != a.cols:
        raise DimensionMismatch("EP test needs a square matrix")
    ah = ctranspose(a)
    return range_subset(ah, a) and range_subset(a, ah)


def dagger_identities_check(a: Matrix) -> dict[str, bool]:
    """Evaluate the standard pseudoinverse identities on one matrix."""
    ad = pinv(a)
    ah = ctranspose(a)
    aad = matmul(a, ad)
    ada = matmul(ad, a)
    ahd = pinv(ah)
    aah = matmul(a, ah)
    aha = matmul(ah, a)
    r = rank(a)
    out = {
        "dagger_of_adjoint": ctranspose(ad) == ahd,
        "dagger_involution": pinv(ad) == a,
        "left_projector_forms": matmul(ahd, ah) == ctranspose(aad) == aad,
        "right_projector_forms": matmul(ah, ahd) == ctranspose(ada) == ada,
        "range_A_eq_range_AAh": range_equal(a, aah),
        "range_A_eq_range_AAhA": range_equal(a, matmul(aah, a)),
        "range_A_eq_range_AAd": range_equal(a, aad),
        "range_A_eq_range_Ad_adjoint": range_equal(a, ctranspose(ad)),
        "range_Ah_eq_range_AhA": range_equal(ah, aha),
        "range_Ah_eq_range_AhAAh": range_equal(ah, matmul(aha, ah)),
        "range_Ah_eq_range_Ad": range_equal(ah, ad),
        "range_Ah_eq_range_AdA": range_equal(ah, ada),
        "rank_chain": len({r, rank(ah), rank(ad), rank(aah), rank(aha), rank(aad), rank(ada)}) == 1,
    }
    return out
