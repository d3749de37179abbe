"""Seeded generation of triples (A, B, C) for sweeps.

A and C are products of unit lower and unit upper triangular matrices with
small rational noise, so they are nonsingular by construction. B has a
prescribed rank through a product of factors. Range-aligned variants make
R(A*AB) = R(B) and/or R(CC*B*) = R(B*) hold by building every matrix in
bases adapted to the ranges of B.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from enum import Enum

from gmpy2 import mpq

from ..ginverse import random_rational
from ..matrix import Matrix, block2x2, ctranspose, matmul, mprod, rank
from .triple import TripleInstance

# rational points on the unit circle
_PYTHAGOREAN = ((3, 4, 5), (5, 12, 13), (8, 15, 17), (7, 24, 25), (20, 21, 29))


class Stratum(Enum):
    ZERO = "zero"            # B = 0
    FULL_ROW = "full_row"    # r(B) = m < n
    FULL_COL = "full_col"    # r(B) = n < m
    SQUARE = "square"        # r(B) = m = n
    DEFICIENT = "deficient"  # 0 < r(B) < min(m, n)


class Alignment(Enum):
    NONE = "none"
    LEFT = "left"    # R(A*AB) = R(B)
    RIGHT = "right"  # R(CC*B*) = R(B*)
    BOTH = "both"


_SHAPES = {
    Stratum.ZERO: ((2, 2), (3, 2), (2, 3), (3, 3), (4, 3)),
    Stratum.FULL_ROW: ((1, 2), (2, 3), (3, 4), (1, 3), (2, 4)),
    Stratum.FULL_COL: ((2, 1), (3, 2), (4, 3), (3, 1), (4, 2)),
    Stratum.SQUARE: ((1, 1), (2, 2), (3, 3)),
    Stratum.DEFICIENT: ((2, 2), (3, 3), (3, 2), (2, 3), (4, 3), (3, 4), (4, 4)),
}


def _noise(rng: random.Random, complex_: bool) -> tuple[mpq, mpq]:
    re = random_rational(rng)
    im = random_rational(rng) if complex_ and rng.random() < 0.5 else mpq(0)
    return re, im


def random_matrix(rng: random.Random, rows: int, cols: int, complex_: bool = False) -> Matrix:
    pairs = [_noise(rng, complex_) for _ in range(rows * cols)]
    return Matrix.from_parts(rows, cols, [p[0] for p in pairs],
                             [p[1] for p in pairs] if complex_ else None)


def random_nonsingular(rng: random.Random, k: int, complex_: bool = False) -> Matrix:
    """L U with L unit lower and U unit upper triangular."""
    def tri(lower: bool) -> Matrix:
        re, im = [], []
        for i in range(k):
            for j in range(k):
                if i == j:
                    re.append(mpq(1))
                    im.append(mpq(0))
                elif (i > j) == lower:
                    a, b = _noise(rng, complex_)
                    re.append(a)
                    im.append(b)
                else:
                    re.append(mpq(0))
                    im.append(mpq(0))
        return Matrix.from_parts(k, k, re, im if complex_ else None)

    return matmul(tri(True), tri(False))


def random_rank(rng: random.Random, rows: int, cols: int, r: int, complex_: bool = False) -> Matrix:
    """A rows x cols matrix of rank exactly r."""
    if r == 0:
        return Matrix.zeros(rows, cols)
    while True:
        b = matmul(random_matrix(rng, rows, r, complex_), random_matrix(rng, r, cols, complex_))
        if rank(b) == r:
            return b


def rational_unitary(rng: random.Random, k: int, complex_: bool = False, steps: int | None = None) -> Matrix:
    """Product of plane rotations whose cosine and sine come from
    Pythagorean triples; exactly unitary with rational (or Gaussian
    rational) entries."""
    u = Matrix.identity(k)
    if k == 1:
        if complex_ and rng.random() < 0.5:
            return Matrix.from_parts(1, 1, [0], [rng.choice((1, -1))])
        return Matrix.from_parts(1, 1, [rng.choice((1, -1))])
    if k == 0:
        return u
    for _ in range(steps if steps is not None else 2 * k):
        p, q = rng.sample(range(k), 2)
        x, y, h = rng.choice(_PYTHAGOREAN)
        c, s = mpq(x, h) * rng.choice((1, -1)), mpq(y, h) * rng.choice((1, -1))
        re = [mpq(1) if i == j else mpq(0) for i in range(k) for j in range(k)]
        im = [mpq(0)] * (k * k)
        use_i = complex_ and rng.random() < 0.5
        # [[c, -conj(s)], [s, c]] with s real or purely imaginary
        re[p * k + p] = c
        re[q * k + q] = c
        if use_i:
            im[q * k + p] = s
            im[p * k + q] = s
        else:
            re[q * k + p] = s
            re[p * k + q] = -s
        u = matmul(Matrix.from_parts(k, k, re, im), u)
    return u


def is_unitary(u: Matrix) -> bool:
    return matmul(ctranspose(u), u) == Matrix.identity(u.cols)


def _blockdiag(x: Matrix, y: Matrix) -> Matrix:
    return block2x2(x, Matrix.zeros(x.rows, y.cols), Matrix.zeros(y.rows, x.cols), y)


def _aligned_factor(rng: random.Random, k: int, r: int, complex_: bool) -> Matrix:
    """Nonsingular blockdiag(K1, K2) with K1 of order r."""
    if r == 0 or r == k:
        return random_nonsingular(rng, k, complex_)
    return _blockdiag(random_nonsingular(rng, r, complex_), random_nonsingular(rng, k - r, complex_))


@dataclass(frozen=True)
class InstanceSpec:
    stratum: Stratum
    m: int
    n: int
    r: int
    alignment: Alignment
    complex_: bool


def generate_instance(rng: random.Random, spec: InstanceSpec) -> TripleInstance:
    m, n, r, cx = spec.m, spec.n, spec.r, spec.complex_
    al = spec.alignment
    if al is Alignment.NONE:
        return TripleInstance(random_nonsingular(rng, m, cx), random_rank(rng, m, n, r, cx),
                              random_nonsingular(rng, n, cx))
    # B = P diag(B11, 0) R* with P, R unitary and B11 nonsingular r x r
    p = rational_unitary(rng, m, cx)
    q = rational_unitary(rng, n, cx)
    if r == 0:
        b = Matrix.zeros(m, n)
    else:
        core = Matrix.zeros(m, n)
        b11 = random_nonsingular(rng, r, cx)
        core = _embed(core, b11)
        b = mprod(p, core, ctranspose(q))
    if al in (Alignment.LEFT, Alignment.BOTH):
        a = mprod(rational_unitary(rng, m, cx), _aligned_factor(rng, m, r, cx), ctranspose(p))
    else:
        a = random_nonsingular(rng, m, cx)
    if al in (Alignment.RIGHT, Alignment.BOTH):
        c = mprod(q, _aligned_factor(rng, n, r, cx), rational_unitary(rng, n, cx))
    else:
        c = random_nonsingular(rng, n, cx)
    return TripleInstance(a, b, c)


def _embed(z: Matrix, top_left: Matrix) -> Matrix:
    re, im = list(z.re), list(z.im or (mpq(0),) * (z.rows * z.cols))
    t_im = top_left.im or (mpq(0),) * (top_left.rows * top_left.cols)
    for i in range(top_left.rows):
        for j in range(top_left.cols):
            re[i * z.cols + j] = top_left.re[i * top_left.cols + j]
            im[i * z.cols + j] = t_im[i * top_left.cols + j]
    return Matrix.from_parts(z.rows, z.cols, re, im)


def _rank_for(rng: random.Random, stratum: Stratum, m: int, n: int) -> int:
    if stratum is Stratum.ZERO:
        return 0
    if stratum is Stratum.DEFICIENT:
        return rng.randint(1, min(m, n) - 1)
    return min(m, n)


def stratified_specs(count: int, seed: int = 0, complex_every: int = 6) -> list[InstanceSpec]:
    """``count`` instance descriptions cycling through the rank strata and the
    alignment variants, with every ``complex_every``-th instance complex."""
    rng = random.Random(seed)
    strata = list(Stratum)
    aligns = list(Alignment)
    out = []
    for i in range(count):
        st = strata[i % len(strata)]
        al = aligns[(i // len(strata)) % len(aligns)]
        m, n = rng.choice(_SHAPES[st])
        out.append(InstanceSpec(st, m, n, _rank_for(rng, st, m, n), al,
                                complex_every > 0 and i % complex_every == complex_every - 1))
    return out


def stratified_instances(count: int, seed: int = 0, complex_every: int = 6) -> list[tuple[InstanceSpec, TripleInstance]]:
    out = []
    for i, spec in enumerate(stratified_specs(count, seed, complex_every)):
        rng = random.Random(f"{seed}:{i}")
        out.append((spec, generate_instance(rng, spec)))
    return out
