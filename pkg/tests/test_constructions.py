from __future__ import annotations

import random

import pytest

from ginvlab.errors import DimensionMismatch
from ginvlab.ginverse import GInvClass, is_member
from ginvlab.matrix import Matrix, inverse, matmul, mprod
from ginvlab.rol.constructions import (
    THREE_FACTOR_TEMPLATES,
    TWO_FACTOR_TEMPLATES,
    condition_evidence,
    huang_condition_three_12,
    huang_condition_two_12,
    huang_construction_three,
    huang_construction_three_12,
    huang_construction_two,
    huang_construction_two_12,
    mixed_rol_candidates_three,
    mixed_rol_candidates_two,
)
from strategies import M, seeded_rank

I = Matrix.identity


def _pair(rng):
    m, n, k = (rng.randint(1, 4) for _ in range(3))
    return (seeded_rank(rng, m, n, rng.randint(0, min(m, n)), complex_=rng.random() < 0.2),
            seeded_rank(rng, n, k, rng.randint(0, min(n, k))))


def _triple(rng):
    m, n, p, q = (rng.randint(1, 3) for _ in range(4))
    return (seeded_rank(rng, m, n, rng.randint(0, min(m, n))),
            seeded_rank(rng, n, p, rng.randint(0, min(n, p)), complex_=rng.random() < 0.2),
            seeded_rank(rng, p, q, rng.randint(0, min(p, q))))


def test_template_counts():
    assert len(TWO_FACTOR_TEMPLATES) == 9
    assert len(THREE_FACTOR_TEMPLATES) == 23
    assert len({n for n, _ in THREE_FACTOR_TEMPLATES}) == 23


@pytest.mark.parametrize("cls", [GInvClass.G1, GInvClass.G12])
def test_two_factor_templates_land_in_class(cls):
    rng = random.Random(20)
    for i in range(15):
        a, b = _pair(rng)
        ab = matmul(a, b)
        for con in mixed_rol_candidates_two(a, b, cls, seed=i):
            assert is_member(con.matrix, ab, cls), con.name


@pytest.mark.parametrize("cls", [GInvClass.G1, GInvClass.G12])
def test_three_factor_templates_land_in_class(cls):
    rng = random.Random(21)
    for i in range(10):
        a, b, c = _triple(rng)
        abc = mprod(a, b, c)
        for con in mixed_rol_candidates_three(a, b, c, cls, seed=i):
            assert is_member(con.matrix, abc, cls), con.name


def test_templates_reject_other_classes_and_shapes():
    with pytest.raises(ValueError):
        mixed_rol_candidates_two(I(2), I(2), GInvClass.G13)
    with pytest.raises(DimensionMismatch):
        mixed_rol_candidates_two(I(2), I(3), GInvClass.G1)
    with pytest.raises(DimensionMismatch):
        mixed_rol_candidates_three(I(2), I(2), I(3), GInvClass.G1)


def test_corrected_constructions_always_inner():
    rng = random.Random(22)
    for i in range(20):
        a, b = _pair(rng)
        assert huang_construction_two(a, b, seed=i)[1]
        x, y, z = _triple(rng)
        assert huang_construction_three(x, y, z, seed=i)[1]


def test_condition_examples():
    assert huang_condition_two_12(I(2), I(2))
    assert not huang_condition_two_12(M([[1, 0], [0, 0]]), I(2))
    assert huang_condition_three_12(I(2), I(2), I(2))
    assert not huang_condition_three_12(M([[1, 0], [0, 0]]), I(2), M([[0, 0], [0, 1]]))


def test_reflexive_construction_under_condition():
    rng = random.Random(23)
    hits = 0
    for i in range(30):
        a, b = _pair(rng)
        if huang_condition_two_12(a, b):
            hits += 1
            assert all(huang_construction_two_12(a, b, seed=s)[1] for s in range(5))
        x, y, z = _triple(rng)
        if huang_condition_three_12(x, y, z):
            assert all(huang_construction_three_12(x, y, z, seed=s)[1] for s in range(5))
    assert hits > 0


def test_reflexive_construction_can_fail_without_condition():
    a, b = M([[1, 0], [0, 0]]), I(2)
    ev = condition_evidence(lambda s: huang_construction_two_12(a, b, s), range(20))
    assert ev["tried"] == 20
    # the candidate is always a {1}-inverse even when it is not reflexive
    g, _ = huang_construction_two_12(a, b, seed=0)
    assert is_member(g, a, GInvClass.G1)


def test_deterministic_in_seed():
    a, b = M([[1, 2], [2, 4]]), M([[1, 0], [1, 1]])
    assert huang_construction_two(a, b, seed=5)[0] == huang_construction_two(a, b, seed=5)[0]
    names = [c.name for c in mixed_rol_candidates_two(a, b, GInvClass.G1, 3)]
    mats = [c.matrix for c in mixed_rol_candidates_two(a, b, GInvClass.G1, 3)]
    assert mats == [c.matrix for c in mixed_rol_candidates_two(a, b, GInvClass.G1, 3)]
    assert len(names) == 9


def test_nonsingular_and_identity_reductions():
    a, b = M([[1, 2], [0, 1]]), M([[2, 1], [1, 1]])
    for s in range(5):
        assert huang_construction_two(a, b, seed=s)[0] == inverse(matmul(a, b))
        assert huang_construction_three(a, b, a, seed=s)[0] == inverse(mprod(a, b, a))
    for cls in (GInvClass.G1, GInvClass.G12):
        assert all(c.matrix == I(2) for c in mixed_rol_candidates_two(I(2), I(2), cls, 3))
        assert all(c.matrix == I(2) for c in mixed_rol_candidates_three(I(2), I(2), I(2), cls, 3))


def test_zero_middle_factor_is_vacuous():
    z = Matrix.zeros(2, 2)
    assert huang_construction_two(I(2), z, seed=1)[1]
    assert huang_construction_three(I(2), z, I(2), seed=1)[1]
    assert huang_condition_three_12(I(2), z, I(2))
    for con in mixed_rol_candidates_two(M([[1, 2], [3, 4]]), z, GInvClass.G1, 2):
        assert is_member(con.matrix, z, GInvClass.G1)
