from __future__ import annotations

import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from ginvlab.errors import DimensionMismatch, UnsupportedClass
from ginvlab.ginverse import ALL_CLASSES, GInvClass, is_member, pinv, sample_ginverse
from ginvlab.matrix import Matrix, block, hblock, matmul, mprod, msub, rank, vblock
from ginvlab.rankcalc import (
    extremal_rank_sandwich,
    extremal_rank_schur,
    forall_identity,
    min_rank_affine,
    mp_identity_direct,
    rank_product,
    rank_rowblock_identity,
    rank_triple_product,
    search_min_sandwich,
    search_min_schur,
    solvability_g1,
    structured_grid,
)
from rankcases import KINDS, abcd
from strategies import M, ranked_matrices, seeded_matrix, seeded_rank

I = Matrix.identity
Z = Matrix.zeros


def test_rowblock_examples():
    b = M([[1, 2], [3, 4], [5, 6]])
    assert rank_rowblock_identity(I(3), b, 0)
    assert rank_rowblock_identity(M([[1, 2], [2, 4]]), Z(2, 3), 0)
    rng = random.Random(2)
    a = seeded_rank(rng, 3, 3, 2)
    bb = seeded_matrix(rng, 3, 2)
    cc = seeded_matrix(rng, 2, 3)
    assert all(rank_rowblock_identity(a, bb, s, cc) for s in range(50))
    with pytest.raises(DimensionMismatch):
        rank_rowblock_identity(I(2), I(3), 0)


def test_product_rank_examples():
    assert rank_product(I(3), I(3), (1, 2)) == 3
    assert rank_product(M([[1, 2]]), Z(2, 2), (1, 2)) == 0
    assert rank_product(M([[1, 0], [0, 0]]), M([[0, 0], [0, 1]]), (1, 2)) == 0
    assert rank_triple_product(I(2), I(2), I(2), (0, 0)) == 2
    assert rank_triple_product(I(2), Z(2, 3), I(3), (0, 0)) == 0
    rng = random.Random(4)
    a, b, c = (seeded_rank(rng, 3, 3, rng.randint(1, 3)) for _ in range(3))
    direct = rank(mprod(a, b, c))
    assert all(rank_triple_product(a, b, c, (s, s + 1)) == direct for s in range(50))
    with pytest.raises(DimensionMismatch):
        rank_product(I(2), I(3), (0, 0))


def test_schur_extremes_examples():
    c, d = M([[1, 1]]), M([[5]])
    e = extremal_rank_schur(I(2), M([[1], [2]]), c, d)
    assert e.max_value == e.min_value == rank(msub(d, mprod(c, M([[1], [2]]))))
    e = extremal_rank_schur(M([[1, 0], [0, 0]]), Z(2, 2), Z(2, 2), M([[1, 2], [2, 4]]))
    assert e.max_value == e.min_value == 1


def test_sandwich_extremes_examples():
    e = extremal_rank_sandwich(M([[1, 0], [0, 1]]), Z(2, 2), I(2))
    assert (e.max_value, e.min_value) == (0, 0)
    b = M([[1, 2], [2, 4]])
    e = extremal_rank_sandwich(I(2), b, I(2))
    assert (e.max_value, e.min_value) == (1, 1)


def _random_abcd(rng):
    m, n, l, k = (rng.randint(1, 3) for _ in range(4))
    a = seeded_rank(rng, m, n, rng.randint(0, min(m, n)))
    b = seeded_rank(rng, m, k, rng.randint(0, min(m, k)))
    c = seeded_rank(rng, l, n, rng.randint(0, min(l, n)))
    d = seeded_rank(rng, l, k, rng.randint(0, min(l, k)))
    return a, b, c, d


def test_schur_bounds_sampled_and_attained():
    rng = random.Random(10)
    for _ in range(15):
        a, b, c, d = _random_abcd(rng)
        e = extremal_rank_schur(a, b, c, d)
        seen = set()
        for s in range(60):
            x = sample_ginverse(a, GInvClass.G12, s)
            seen.add(rank(msub(d, mprod(c, x, b))))
        assert e.min_value <= min(seen) and max(seen) <= e.max_value
        assert e.max_value in seen
        best, x = search_min_schur(a, b, c, d)
        assert is_member(x, a, GInvClass.G12)
        assert best == rank(msub(d, mprod(c, x, b))) == e.min_value


def test_sandwich_bounds_sampled_and_attained():
    rng = random.Random(11)
    for _ in range(15):
        m, n, q, p = (rng.randint(1, 3) for _ in range(4))
        a = seeded_rank(rng, m, n, rng.randint(0, min(m, n)))
        b = seeded_rank(rng, m, q, rng.randint(0, min(m, q)))
        c = seeded_rank(rng, p, q, rng.randint(0, min(p, q)))
        e = extremal_rank_sandwich(a, b, c)
        seen = {rank(mprod(sample_ginverse(a, GInvClass.G12, s), b, sample_ginverse(c, GInvClass.G12, s + 7)))
                for s in range(60)}
        assert e.min_value <= min(seen) and max(seen) <= e.max_value
        assert e.max_value in seen
        best, (x, y) = search_min_sandwich(a, b, c)
        assert is_member(x, a, GInvClass.G12) and is_member(y, c, GInvClass.G12)
        assert best == rank(mprod(x, b, y)) == e.min_value


def test_min_rank_affine_matches_closed_form():
    rng = random.Random(12)
    for _ in range(60):
        l, k, n, m = (rng.randint(1, 3) for _ in range(4))
        d0 = seeded_rank(rng, l, k, rng.randint(0, min(l, k)))
        p = seeded_rank(rng, l, n, rng.randint(0, min(l, n)))
        q = seeded_rank(rng, m, k, rng.randint(0, min(m, k)))
        u, r = min_rank_affine(d0, p, q)
        assert r == rank(msub(d0, mprod(p, u, q)))
        closed = rank(hblock([d0, p])) + rank(vblock([d0, q])) - rank(block([[d0, p], [q, Z(m, n)]]))
        assert r == closed


def test_structured_grid():
    g = structured_grid(2, 2)
    assert len(g) == 81 and len(set(g)) == 81
    g = structured_grid(3, 3, limit=40)
    assert len(g) == 40 and g[0].is_zero()


def test_solvability_examples():
    rng = random.Random(13)
    a = seeded_rank(rng, 3, 3, 2)
    b, c = seeded_matrix(rng, 3, 2), seeded_matrix(rng, 2, 3)
    assert solvability_g1(a, b, c, mprod(c, pinv(a), b)).exists_some
    v = solvability_g1(a, b, Z(2, 3), Z(2, 2))
    assert v.holds_for_all and v.exists_some


def test_forall_examples():
    rng = random.Random(14)
    a = seeded_rank(rng, 3, 2, 1)
    b, c = seeded_matrix(rng, 3, 2), seeded_matrix(rng, 2, 2)
    assert forall_identity(GInvClass.MP, a, b, c, mprod(c, pinv(a), b))
    assert mp_identity_direct(a, b, c, mprod(c, pinv(a), b))
    assert forall_identity(GInvClass.G13, a, Z(3, 2), c, Z(2, 2))
    with pytest.raises(UnsupportedClass):
        forall_identity(GInvClass.G1, a, b, c, Z(2, 2))
    with pytest.raises(DimensionMismatch):
        forall_identity(GInvClass.G13, a, b, c, Z(3, 3))


def _counterexample(cls, a, b, c, d, samples):
    for s in range(samples):
        if mprod(c, sample_ginverse(a, cls, s), b) != d:
            return True
    return False


@pytest.mark.parametrize("cls", ALL_CLASSES)
def test_forall_predicates_agree_with_sampling(cls):
    rng = random.Random(hash(cls.value) & 0xFFFF)
    inconclusive = false_count = 0
    for i in range(28):
        a, b, c, d = abcd(rng, KINDS[i % len(KINDS)])
        if cls is GInvClass.G1:
            v = solvability_g1(a, b, c, d)
            verdict = v.holds_for_all
            assert v.exists_some or not verdict
        else:
            verdict = forall_identity(cls, a, b, c, d)
        found = _counterexample(cls, a, b, c, d, 60)
        if verdict:
            assert not found
        else:
            false_count += 1
            inconclusive += not found
    assert inconclusive == 0 or inconclusive < 0.05 * false_count


@given(ranked_matrices(4, 4, complex_=False), st.integers(0, 2**31))
def test_rank_formulas_hold_for_every_sample(a, seed):
    rng = random.Random(seed)
    k, q = rng.randint(1, 3), rng.randint(1, 3)
    b = seeded_rank(rng, a.cols, k, rng.randint(0, min(a.cols, k)))
    c = seeded_rank(rng, k, q, 1)
    rank_product(a, b, (seed, seed + 1))
    rank_triple_product(a, b, c, (seed, seed + 2))
    assert rank_rowblock_identity(a, seeded_matrix(rng, a.rows, 2), seed)
    assert rank(matmul(a, b)) <= min(rank(a), rank(b))
