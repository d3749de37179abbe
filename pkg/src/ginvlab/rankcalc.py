"""Rank formulas involving generalized inverses, extremal ranks, and the
solvability / holds-for-all predicates for C X B = D over a class of X."""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass

from .errors import DimensionMismatch, IdentityViolated, UnsupportedClass
from .ginverse import GInvClass, GInvParams, make_ginverse, pinv, proj_left, proj_right, sample_ginverse
from .matrix import (
    Matrix,
    block,
    ctranspose,
    full_rank_factorization,
    inverse,
    hblock,
    madd,
    matmul,
    mprod,
    msub,
    range_subset,
    rank,
    submatrix,
    vblock,
)


@dataclass(frozen=True)
class ExtremalRank:
    max_value: int
    min_value: int


@dataclass(frozen=True)
class SolvabilityVerdict:
    exists_some: bool
    holds_for_all: bool


def _z(r: int, c: int) -> Matrix:
    return Matrix.zeros(r, c)


def _eye(n: int) -> Matrix:
    return Matrix.identity(n)


def rank_rowblock_identity(a: Matrix, b: Matrix, g1seed: int, c: Matrix | None = None) -> bool:
    """r[A, B] = r(A) + r(B - A A1 B) and, when C is given,
    r[A; C] = r(A) + r(C - C A1 A), for the sampled {1}-inverse A1."""
    if a.rows != b.rows:
        raise DimensionMismatch("row block needs equal row counts")
    g = sample_ginverse(a, GInvClass.G1, g1seed)
    ra = rank(a)
    ok = rank(hblock([a, b])) == ra + rank(msub(b, mprod(a, g, b)))
    if c is not None:
        if c.cols != a.cols:
            raise DimensionMismatch("column block needs equal column counts")
        ok = ok and rank(vblock([a, c])) == ra + rank(msub(c, mprod(c, g, a)))
    return ok


def rank_product(a: Matrix, b: Matrix, seeds: tuple[int, int]) -> int:
    """r(AB) = r(A) + r(B) - n + r[(I_n - B B1)(I_p - A1 A)] for sampled A1, B1."""
    if a.cols != b.rows:
        raise DimensionMismatch(f"cannot multiply {a.shape} by {b.shape}")
    n = a.cols
    a1 = sample_ginverse(a, GInvClass.G1, seeds[0])
    b1 = sample_ginverse(b, GInvClass.G1, seeds[1])
    # I_n - B B1 is n x n and I - A1 A is n x n; both live on the shared index
    left = msub(_eye(n), matmul(b, b1))
    right = msub(_eye(n), matmul(a1, a))
    value = rank(a) + rank(b) - n + rank(matmul(left, right))
    direct = rank(matmul(a, b))
    if value != direct:
        raise IdentityViolated(f"product rank formula gave {value}, direct rank is {direct}")
    return value


def rank_triple_product(a: Matrix, b: Matrix, c: Matrix, seeds: tuple[int, int]) -> int:
    """r(ABC) = r(AB) + r(BC) - r(B) + r[(I - BC (BC)1) B (I - (AB)1 AB)]."""
    if a.cols != b.rows or b.cols != c.rows:
        raise DimensionMismatch("triple product is not chain-conformable")
    ab = matmul(a, b)
    bc = matmul(b, c)
    ab1 = sample_ginverse(ab, GInvClass.G1, seeds[0])
    bc1 = sample_ginverse(bc, GInvClass.G1, seeds[1])
    left = msub(_eye(b.rows), matmul(bc, bc1))
    right = msub(_eye(b.cols), matmul(ab1, ab))
    value = rank(ab) + rank(bc) - rank(b) + rank(mprod(left, b, right))
    direct = rank(mprod(a, b, c))
    if value != direct:
        raise IdentityViolated(f"triple product rank formula gave {value}, direct rank is {direct}")
    return value


def _check_abcd(a: Matrix, b: Matrix, c: Matrix, d: Matrix) -> None:
    m, n = a.shape
    if b.rows != m or c.cols != n or d.rows != c.rows or d.cols != b.cols:
        raise DimensionMismatch(
            f"need A m x n, B m x k, C l x n, D l x k; got {a.shape}, {b.shape}, {c.shape}, {d.shape}")


def extremal_rank_schur(a: Matrix, b: Matrix, c: Matrix, d: Matrix) -> ExtremalRank:
    """Max and min of r(D - C X B) over {1,2}-inverses X of A."""
    _check_abcd(a, b, c, d)
    m, n = a.shape
    l, k = d.shape
    ra, rd = rank(a), rank(d)
    r_cd = rank(hblock([c, d]))
    r_bd = rank(vblock([b, d]))
    r_full = rank(block([[a, b], [c, d]]))
    hi = min(ra + rd, r_cd, r_bd, r_full - ra)
    r1 = (r_full
          - rank(block([[a, _z(m, n), b], [_z(l, n), c, d]]))
          - rank(block([[a, _z(m, k)], [_z(m, n), b], [c, d]])))
    r2 = rd - rank(block([[a, _z(m, k)], [c, d]])) - rank(block([[a, b], [_z(l, n), d]]))
    lo = r_bd + r_cd + ra + max(r1, r2)
    return ExtremalRank(hi, lo)


def extremal_rank_sandwich(a: Matrix, b: Matrix, c: Matrix) -> ExtremalRank:
    """Max and min of r(X B Y) over X in {A^(1,2)}, Y in {C^(1,2)}."""
    if a.rows != b.rows or c.cols != b.cols:
        raise DimensionMismatch("need A m x n, B m x q, C p x q")
    ra, rb, rc = rank(a), rank(b), rank(c)
    hi = min(ra, rb, rc)
    lo = max(0, ra + rb + rc - rank(hblock([a, b])) - rank(hblock([ctranspose(b), ctranspose(c)])))
    return ExtremalRank(hi, lo)


def solvability_g1(a: Matrix, b: Matrix, c: Matrix, d: Matrix) -> SolvabilityVerdict:
    """Whether C X B = D for some / for every {1}-inverse X of A."""
    _check_abcd(a, b, c, d)
    ra = rank(a)
    r_full = rank(block([[a, b], [c, d]]))
    exists = (range_subset(d, c)
              and range_subset(ctranspose(d), ctranspose(b))
              and r_full == rank(vblock([a, c])) + rank(hblock([a, b])) - ra)
    every = hblock([c, d]).is_zero() or vblock([b, d]).is_zero() or r_full == ra
    return SolvabilityVerdict(exists, every)


def forall_identity(cls: GInvClass, a: Matrix, b: Matrix, c: Matrix, d: Matrix) -> bool:
    """Whether C X B = D holds for every X in the given class of A."""
    _check_abcd(a, b, c, d)
    if cls is GInvClass.G1:
        raise UnsupportedClass("use solvability_g1 for the {1} class")
    ra = rank(a)
    ah = ctranspose(a)
    aha = matmul(ah, a)
    aah = matmul(a, ah)
    cd_zero = hblock([c, d]).is_zero()
    bd_zero = vblock([b, d]).is_zero()

    def r_left() -> int:  # [[A*A, A*B], [C, D]]
        return rank(block([[aha, matmul(ah, b)], [c, d]]))

    def r_right() -> int:  # [[AA*, B], [CA*, D]]
        return rank(block([[aah, b], [matmul(c, ah), d]]))

    if cls is GInvClass.G12:
        return (a.is_zero() and d.is_zero()) or cd_zero or bd_zero \
            or rank(block([[a, b], [c, d]])) == ra
    if cls is GInvClass.G13:
        return bd_zero or r_left() == ra
    if cls is GInvClass.G14:
        return cd_zero or r_right() == ra
    if cls is GInvClass.G123:
        return vblock([matmul(ah, b), d]).is_zero() or r_left() == ra
    if cls is GInvClass.G124:
        return hblock([matmul(c, ah), d]).is_zero() or r_right() == ra
    if cls is GInvClass.G134:
        return r_left() == ra or r_right() == ra
    if cls is GInvClass.MP:
        return rank(block([[mprod(ah, a, ah), matmul(ah, b)], [matmul(c, ah), d]])) == ra
    raise UnsupportedClass(str(cls))


def mp_identity_direct(a: Matrix, b: Matrix, c: Matrix, d: Matrix) -> bool:
    """Direct evaluation of C A^dagger B = D, used to cross-check the rank form."""
    return mprod(c, pinv(a), b) == d


def _complete_basis_cols(p: Matrix) -> Matrix:
    """Append unit columns so that [P, extra] is square and nonsingular
    (P must have full column rank)."""
    n = p.rows
    cur = p
    for j in range(n):
        if cur.cols == n:
            break
        e = Matrix.from_parts(n, 1, [1 if i == j else 0 for i in range(n)])
        trial = hblock([cur, e])
        if rank(trial) == trial.cols:
            cur = trial
    return cur


def min_rank_affine(d0: Matrix, p: Matrix, q: Matrix) -> tuple[Matrix, int]:
    """A parameter U minimizing r(D0 - P U Q), together with that rank.

    Factor P = P1 P2 and Q = Q1 Q2 (full rank), so P U Q = P1 W Q2 with W free.
    In a basis adapted to P1 and Q2 the problem is the minimal-rank completion
    of a 2x2 block matrix with a free corner, solved by X = B D^dagger C.
    """
    l, k = d0.shape
    if p.rows != l or q.cols != k:
        raise DimensionMismatch("min_rank_affine needs D0 l x k, P l x n, Q m x k, U n x m")
    n, m = p.cols, q.rows
    p1, p2 = full_rank_factorization(p)
    q1, q2 = full_rank_factorization(q)
    a, b = p1.cols, q2.rows
    if a == 0 or b == 0:
        return Matrix.zeros(n, m), rank(d0)
    s = _complete_basis_cols(p1)
    t = ctranspose(_complete_basis_cols(ctranspose(q2)))
    kk = mprod(inverse(s), d0, inverse(t))
    k11 = submatrix(kk, range(a), range(b))
    k12 = submatrix(kk, range(a), range(b, k))
    k21 = submatrix(kk, range(a, l), range(b))
    k22 = submatrix(kk, range(a, l), range(b, k))
    x = mprod(k12, pinv(k22), k21) if (k12.cols and k21.rows) else Matrix.zeros(a, b)
    w = msub(k11, x)
    u = mprod(pinv(p2), w, pinv(q1))
    return u, rank(msub(d0, mprod(p, u, q)))


def structured_grid(n: int, m: int, limit: int = 81, seed: int = 0) -> list[Matrix]:
    """{-1,0,1}-valued n x m parameter matrices: all of them when there are at
    most ``limit``, otherwise zero, every signed unit matrix, and a seeded
    selection of the rest."""
    vals = (-1, 0, 1)
    size = n * m
    if 3 ** size <= limit:
        return [Matrix.from_parts(n, m, list(t)) for t in itertools.product(vals, repeat=size)]
    out = [Matrix.zeros(n, m)]
    for k in range(size):
        for s in (1, -1):
            e = [0] * size
            e[k] = s
            out.append(Matrix.from_parts(n, m, e))
    rng = random.Random(seed)
    while len(out) < limit:
        out.append(Matrix.from_parts(n, m, [rng.choice(vals) for _ in range(size)]))
    return out


def search_min_schur(a: Matrix, b: Matrix, c: Matrix, d: Matrix, limit: int = 81) -> tuple[int, Matrix]:
    """Smallest r(D - C X B) found over X in {A^(1,2)}.

    One parameter block of the {1,2} family runs over a {-1,0,1} grid while
    the other is chosen optimally by ``min_rank_affine``; both orders are tried.
    Returns the best rank and an attaining X.
    """
    _check_abcd(a, b, c, d)
    m, n = a.shape
    ad, e, f = pinv(a), proj_left(a), proj_right(a)
    aad = matmul(a, ad)
    best = None
    best_x = None
    for g in structured_grid(n, m, limit):
        # U2 fixed: X = (A^dagger + F U1) S with S = A A^dagger + A U2 E
        s = madd(aad, mprod(a, g, e))
        d0 = msub(d, mprod(c, ad, s, b))
        u1, r = min_rank_affine(d0, matmul(c, f), matmul(s, b))
        if best is None or r < best:
            best, best_x = r, make_ginverse(a, GInvClass.G12, GInvParams(u1=u1, u2=g))
        # U1 fixed: X = L A A^dagger + L A U2 E with L = A^dagger + F U1
        lmat = madd(ad, matmul(f, g))
        d0 = msub(d, mprod(c, lmat, aad, b))
        u2, r = min_rank_affine(d0, mprod(c, lmat, a), matmul(e, b))
        if r < best:
            best, best_x = r, make_ginverse(a, GInvClass.G12, GInvParams(u1=g, u2=u2))
    return best, best_x


def search_min_sandwich(a: Matrix, b: Matrix, c: Matrix, limit: int = 81) -> tuple[int, tuple[Matrix, Matrix]]:
    """Smallest r(X B Y) found over X in {A^(1,2)}, Y in {C^(1,2)}.

    Three of the four parameter blocks run over the grid (sharing one grid
    matrix per side) and the fourth is chosen optimally, for each of the four
    choices of which block is solved for.
    """
    if a.rows != b.rows or c.cols != b.cols:
        raise DimensionMismatch("need A m x n, B m x q, C p x q")
    m, n = a.shape
    p, q = c.shape
    ad, ea, fa = pinv(a), proj_left(a), proj_right(a)
    cd, ec, fc = pinv(c), proj_left(c), proj_right(c)
    best = None
    best_xy = None

    def consider(r, x, y):
        nonlocal best, best_xy
        if best is None or r < best:
            best, best_xy = r, (x, y)

    grid_a = structured_grid(n, m, limit)
    grid_c = structured_grid(q, p, limit, seed=1)
    for ga, gc in zip(grid_a, grid_c * (len(grid_a) // max(len(grid_c), 1) + 1)):
        y = make_ginverse(c, GInvClass.G12, GInvParams(u1=gc, u2=gc))
        x = make_ginverse(a, GInvClass.G12, GInvParams(u1=ga, u2=ga))
        # X = (A^dagger + F_A U1) S_A, solve for U1 with Y fixed
        s_a = madd(matmul(a, ad), mprod(a, ga, ea))
        u1, r = min_rank_affine(-(mprod(ad, s_a, b, y)), fa, mprod(s_a, b, y))
        consider(r, make_ginverse(a, GInvClass.G12, GInvParams(u1=u1, u2=ga)), y)
        # X = L_A A A^dagger + L_A A U2 E_A, solve for U2 with Y fixed
        l_a = madd(ad, matmul(fa, ga))
        u2, r = min_rank_affine(-(mprod(l_a, a, ad, b, y)), matmul(l_a, a), mprod(ea, b, y))
        consider(r, make_ginverse(a, GInvClass.G12, GInvParams(u1=ga, u2=u2)), y)
        # same two moves on the right factor with X fixed
        s_c = madd(matmul(c, cd), mprod(c, gc, ec))
        v1, r = min_rank_affine(-(mprod(x, b, cd, s_c)), mprod(x, b, fc), s_c)
        consider(r, x, make_ginverse(c, GInvClass.G12, GInvParams(u1=v1, u2=gc)))
        l_c = madd(cd, matmul(fc, gc))
        v2, r = min_rank_affine(-(mprod(x, b, l_c, c, cd)), mprod(x, b, l_c, c), ec)
        consider(r, x, make_ginverse(c, GInvClass.G12, GInvParams(u1=gc, u2=v2)))
    return best, best_xy

