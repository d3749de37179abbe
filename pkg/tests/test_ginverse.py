from __future__ import annotations

import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from ginvlab.errors import DimensionMismatch
from ginvlab.ginverse import (
    ALL_CLASSES,
    GInvClass,
    GInvParams,
    dagger_identities_check,
    is_ep,
    is_member,
    make_ginverse,
    membership_profile,
    penrose_flags,
    pinv,
    proj_left,
    proj_right,
    random_params,
    sample_ginverse,
)
from ginvlab.matrix import Matrix, ctranspose, matmul, mprod, rank
from strategies import M, ranked_matrices, seeded_any, seeded_rank

I = Matrix.identity
PARAM_CLASSES = [c for c in ALL_CLASSES if c is not GInvClass.MP]


def test_pinv_examples():
    assert pinv(I(3)) == I(3)
    assert pinv(Matrix.zeros(2, 3)) == Matrix.zeros(3, 2)
    assert pinv(M([[1, 1], [1, 1]])) == M([["1/4", "1/4"], ["1/4", "1/4"]])
    assert pinv(M([["i"]])) == M([["-i"]])


def test_projector_examples():
    assert proj_left(I(2)).is_zero()
    assert proj_left(Matrix.zeros(2, 3)) == I(2)
    assert proj_right(M([[1, 0], [0, 0]])) == M([[0, 0], [0, 1]])


def test_make_ginverse_examples():
    a = M([[1, 2, 0], [2, 4, 1]])
    assert make_ginverse(a, GInvClass.MP, GInvParams()) == pinv(a)
    assert make_ginverse(a, GInvClass.G1, GInvParams(u1=Matrix.zeros(3, 2), u2=Matrix.zeros(3, 2))) == pinv(a)
    g = make_ginverse(M([[1, 0], [0, 0]]), GInvClass.G13, GInvParams(u=M([[0, 0], [1, 0]])))
    assert g == M([[1, 0], [1, 0]])
    assert is_member(g, M([[1, 0], [0, 0]]), GInvClass.G13)


def test_make_ginverse_rejects_bad_params():
    with pytest.raises(DimensionMismatch):
        make_ginverse(M([[1, 0], [0, 0]]), GInvClass.G13, GInvParams(u=I(3)))


def test_membership_examples():
    a = M([[1, 2], [3, 4], [0, 1]])
    assert all(is_member(pinv(a), a, c) for c in ALL_CLASSES)
    assert not is_member(Matrix.zeros(2, 3), a, GInvClass.G1)
    assert is_member(M([[1, 0], [1, 0]]), M([[1, 0], [0, 0]]), GInvClass.G13)


def test_ep_examples():
    assert is_ep(M([[2, "1+i"], ["1-i", 3]]))
    assert is_ep(I(3))
    assert not is_ep(M([[0, 1], [0, 0]]))
    with pytest.raises(DimensionMismatch):
        is_ep(M([[1, 2]]))


def test_sample_determinism_and_mp():
    a = seeded_rank(random.Random(3), 3, 4, 2)
    for c in ALL_CLASSES:
        assert sample_ginverse(a, c, 17) == sample_ginverse(a, c, 17)
    assert all(sample_ginverse(a, GInvClass.MP, s) == pinv(a) for s in range(5))
    for s in range(100):
        for c in PARAM_CLASSES:
            assert is_member(sample_ginverse(a, c, s), a, c)


def test_dagger_identities_fixed():
    assert all(dagger_identities_check(I(3)).values())
    assert all(dagger_identities_check(Matrix.zeros(2, 3)).values())


def test_dagger_identities_random():
    rng = random.Random(8)
    for _ in range(200):
        a = seeded_any(rng, 5)
        report = dagger_identities_check(a)
        assert all(report.values()), report


def test_class_order():
    assert GInvClass.G1.includes(GInvClass.G134)
    assert GInvClass.G12.includes(GInvClass.G123)
    assert GInvClass.G13.includes(GInvClass.MP)
    assert not GInvClass.G13.includes(GInvClass.G14)
    assert GInvClass.parse("1,3,4") is GInvClass.G134
    assert GInvClass.parse("mp") is GInvClass.MP


@given(ranked_matrices(5, 5))
def test_pinv_penrose(a):
    assert penrose_flags(pinv(a), a) == (True, True, True, True)


@given(ranked_matrices(4, 4), st.integers(0, 2**32), st.sampled_from(PARAM_CLASSES))
def test_family_membership_and_chains(a, seed, cls):
    g = sample_ginverse(a, cls, seed)
    prof = membership_profile(g, a)
    flags = penrose_flags(g, a)
    for k in cls.equations:
        assert flags[k - 1]
    # every class containing this one accepts the sample
    for other in ALL_CLASSES:
        if other.includes(cls):
            assert prof[other]


@given(ranked_matrices(4, 4), st.integers(0, 2**32))
def test_dualities(a, seed):
    ah = ctranspose(a)
    pairs = [(GInvClass.G13, GInvClass.G14), (GInvClass.G14, GInvClass.G13),
             (GInvClass.G123, GInvClass.G124), (GInvClass.G124, GInvClass.G123)]
    for src, dst in pairs:
        g = sample_ginverse(a, src, seed)
        assert is_member(ctranspose(g), ah, dst)


@given(ranked_matrices(4, 4), st.integers(0, 2**32))
def test_rank_equalities(a, seed):
    for c in (GInvClass.G12, GInvClass.G123, GInvClass.G124, GInvClass.MP):
        assert rank(sample_ginverse(a, c, seed)) == rank(a)


@given(ranked_matrices(4, 4), st.integers(0, 2**32))
def test_product_identities(a, seed):
    aad, ada = matmul(a, pinv(a)), matmul(pinv(a), a)
    for c in (GInvClass.G13, GInvClass.G123, GInvClass.G134):
        assert matmul(a, sample_ginverse(a, c, seed)) == aad
    for c in (GInvClass.G14, GInvClass.G124, GInvClass.G134):
        assert matmul(sample_ginverse(a, c, seed), a) == ada


def test_rank_extremes():
    a = seeded_rank(random.Random(5), 3, 4, 1)
    lo, hi = rank(a), min(a.shape)
    for c in (GInvClass.G1, GInvClass.G13, GInvClass.G14, GInvClass.G134):
        ranks = {rank(sample_ginverse(a, c, s)) for s in range(200)}
        assert min(ranks) >= lo and max(ranks) <= hi
        assert hi in ranks
        assert rank(make_ginverse(a, c, GInvParams())) == lo


def test_complex_parameters_for_complex_input():
    a = M([["i", 1], [1, "-i"]])
    g = sample_ginverse(a, GInvClass.G1, 4)
    assert not g.is_real
    assert is_member(g, a, GInvClass.G1)
    p = random_params(random.Random(1), 2, 2, complex_=True)
    assert p.u.shape == (2, 2)
    assert mprod(a, g, a) == a
