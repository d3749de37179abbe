"""Acceptance criteria. Each test prints one PASS/FAIL line with its
measurements, then asserts."""

from __future__ import annotations

import random
import time

import pytest
from gmpy2 import mpq

from ginvlab import cli
from ginvlab.exactnum import GaussianRational
from ginvlab.ginverse import (
    ALL_CLASSES,
    GInvClass,
    make_ginverse,
    membership_profile,
    penrose_flags,
    pinv,
    random_params,
    sample_ginverse,
)
from ginvlab.matrix import Matrix, madd, matmul, mprod, msub, rank
from ginvlab.rankcalc import (
    extremal_rank_sandwich,
    extremal_rank_schur,
    forall_identity,
    rank_product,
    rank_rowblock_identity,
    rank_triple_product,
    search_min_sandwich,
    search_min_schur,
    solvability_g1,
)
from ginvlab.rol.constructions import (
    huang_construction_three,
    huang_construction_two,
    mixed_rol_candidates_three,
    mixed_rol_candidates_two,
)
from ginvlab.rol.applications import (
    _factorizations_hold,
    case64_characterizations,
    idempotent_rol,
    sum_pinv_via_block,
    unitary_pinv_identity,
)
from ginvlab.rol.generate import rational_unitary, stratified_instances
from rankcases import KINDS, abcd
from strategies import seeded_idempotent, seeded_matrix, seeded_rank

pytestmark = pytest.mark.slow


def _report(capsys, n: int, ok: bool, title: str, detail: str) -> None:
    with capsys.disabled():
        print(f"\n[acceptance {n:2d}] {'PASS' if ok else 'FAIL'}  {title}: {detail}")


def _random_any(rng: random.Random, max_dim: int, complex_prob: float = 0.5) -> Matrix:
    m, n = rng.randint(1, max_dim), rng.randint(1, max_dim)
    return seeded_rank(rng, m, n, rng.randint(0, min(m, n)), rng.random() < complex_prob)


def test_01_penrose_exactness(capsys):
    rng = random.Random(101)
    mats = [_random_any(rng, 5, 0.7) for _ in range(500)]
    t0 = time.perf_counter()
    bad = sum(1 for a in mats if not all(penrose_flags(pinv(a), a)))
    dt = time.perf_counter() - t0
    ok = bad == 0 and dt < 30
    _report(capsys, 1, ok, "Penrose exactness", f"500 matrices, {bad} failures, {dt:.1f}s (< 30s)")
    assert ok


def test_02_family_soundness(capsys):
    rng = random.Random(102)
    classes = [c for c in ALL_CLASSES if c is not GInvClass.MP]
    failures = 0
    for cls in classes:
        for _ in range(100):
            a = _random_any(rng, 4, 0.3)
            g = make_ginverse(a, cls, random_params(rng, a.cols, a.rows, complex_=not a.is_real))
            # membership_profile decides each class by both routes and raises on disagreement
            failures += not membership_profile(g, a)[cls]
    ok = failures == 0
    _report(capsys, 2, ok, "Family soundness", f"7 classes x 100 pairs, {failures} failures, 0 disagreements")
    assert ok


def test_03_rank_formulas(capsys):
    rng = random.Random(103)
    identity_fail = 0
    for _ in range(100):
        m, n, k, q = (rng.randint(1, 4) for _ in range(4))
        a = seeded_rank(rng, m, n, rng.randint(0, min(m, n)))
        b = seeded_rank(rng, n, k, rng.randint(0, min(n, k)))
        c = seeded_rank(rng, k, q, rng.randint(0, min(k, q)))
        side = seeded_matrix(rng, m, rng.randint(1, 3))
        ab, abc = rank(matmul(a, b)), rank(mprod(a, b, c))
        for s in range(20):
            identity_fail += not rank_rowblock_identity(a, side, s)
            identity_fail += rank_product(a, b, (s, s + 100)) != ab
            identity_fail += rank_triple_product(a, b, c, (s, s + 200)) != abc

    out_of_range = missed_max = missed_min = small = 0
    for kind in ("schur", "sandwich"):
        for _ in range(25):
            if kind == "schur":
                m, n, l, k = (rng.randint(1, 3) for _ in range(4))
                a = seeded_rank(rng, m, n, rng.randint(0, min(m, n)))
                b, c, d = seeded_rank(rng, m, k, rng.randint(0, min(m, k))), \
                    seeded_rank(rng, l, n, rng.randint(0, min(l, n))), seeded_matrix(rng, l, k)
                e = extremal_rank_schur(a, b, c, d)
                ranks = [rank(msub(d, mprod(c, sample_ginverse(a, GInvClass.G12, s), b))) for s in range(20)]
                best, _ = search_min_schur(a, b, c, d)
            else:
                m, n, q, p = (rng.randint(1, 3) for _ in range(4))
                a = seeded_rank(rng, m, n, rng.randint(0, min(m, n)))
                b = seeded_rank(rng, m, q, rng.randint(0, min(m, q)))
                c = seeded_rank(rng, p, q, rng.randint(0, min(p, q)))
                e = extremal_rank_sandwich(a, b, c)
                ranks = [rank(mprod(sample_ginverse(a, GInvClass.G12, s), b,
                                    sample_ginverse(c, GInvClass.G12, s + 50))) for s in range(20)]
                best, _ = search_min_sandwich(a, b, c)
            out_of_range += sum(not (e.min_value <= r <= e.max_value) for r in ranks)
            missed_max += e.max_value not in ranks
            small += 1
            missed_min += best != e.min_value
    ok = identity_fail == 0 and out_of_range == 0 and missed_max == 0 and missed_min == 0
    _report(capsys, 3, ok, "Rank formulas",
            f"100x20 identity checks, {identity_fail} failures; 1000 extremal samples, "
            f"{out_of_range} out of range; max missed {missed_max}; min missed {missed_min} of {small}")
    assert ok


def test_04_predicates_vs_sampling(capsys):
    disagreements = inconclusive = false_total = 0
    per_class = []
    for cls in ALL_CLASSES:
        rng = random.Random(f"104:{cls.value}")
        c_false = c_inc = 0
        for i in range(100):
            a, b, c, d = abcd(rng, KINDS[i % len(KINDS)])
            if cls is GInvClass.G1:
                verdict = solvability_g1(a, b, c, d).holds_for_all
            else:
                verdict = forall_identity(cls, a, b, c, d)
            # the MP class has one member, so one sample is exhaustive
            found = any(mprod(c, sample_ginverse(a, cls, s), b) != d
                        for s in range(1 if cls is GInvClass.MP else 500))
            if verdict and found:
                disagreements += 1
            elif not verdict:
                c_false += 1
                c_inc += not found
        per_class.append(f"{cls.label}:{c_inc}/{c_false}")
        false_total += c_false
        inconclusive += c_inc
        assert c_inc == 0 or c_inc < 0.05 * c_false
    ok = disagreements == 0 and (inconclusive == 0 or inconclusive < 0.05 * false_total)
    _report(capsys, 4, ok, "Class predicates vs sampling",
            f"8x100 instances, {disagreements} disagreements, inconclusive/false {' '.join(per_class)}")
    assert ok


def test_05_unconditional_constructions(capsys):
    rng = random.Random(105)
    failures = checks = 0
    for _ in range(50):
        m, n, k = (rng.randint(1, 4) for _ in range(3))
        a = seeded_rank(rng, m, n, rng.randint(0, min(m, n)), rng.random() < 0.2)
        b = seeded_rank(rng, n, k, rng.randint(0, min(n, k)))
        p, q = rng.randint(1, 3), rng.randint(1, 3)
        x = seeded_rank(rng, m, p, rng.randint(0, min(m, p)))
        y = seeded_rank(rng, p, q, rng.randint(0, min(p, q)), rng.random() < 0.2)
        z = seeded_rank(rng, q, n, rng.randint(0, min(q, n)))
        ab, xyz = matmul(a, b), mprod(x, y, z)
        for s in range(10):
            cls = GInvClass.G1 if s % 2 == 0 else GInvClass.G12
            for con in mixed_rol_candidates_two(a, b, cls, s):
                failures += not membership_profile(con.matrix, ab)[cls]
                checks += 1
            for con in mixed_rol_candidates_three(x, y, z, cls, s):
                failures += not membership_profile(con.matrix, xyz)[cls]
                checks += 1
            failures += not huang_construction_two(a, b, seed=s)[1]
            failures += not huang_construction_three(x, y, z, seed=s)[1]
            checks += 2
    ok = failures == 0
    _report(capsys, 5, ok, "Unconditional constructions",
            f"50 instances x 10 seeds, {checks} membership checks, {failures} failures")
    assert ok


def test_06_survey_sweep(capsys):
    t0 = time.perf_counter()
    code = cli.run(["sweep", "--count", "100", "--budget", "64", "--seed", "0", "--out", "/dev/null"])
    dt = time.perf_counter() - t0
    ok = code == 0 and dt < 300
    _report(capsys, 6, ok, "Reverse-order survey sweep",
            f"100 stratified instances, budget 64, exit code {code}, {dt:.0f}s (< 300s)")
    assert ok


def test_07_case64(capsys):
    mismatches = holds = 0
    for _, inst in stratified_instances(200, seed=107):
        ch = case64_characterizations(inst)
        mismatches += len(set(ch.values())) != 1
        holds += ch["rol"]
    ok = mismatches == 0
    _report(capsys, 7, ok, "MP reverse order law characterizations",
            f"200 triples ({holds} with the law holding), {mismatches} mismatches")
    assert ok


def test_08_unitary_similarity(capsys):
    rng = random.Random(108)
    failures = 0
    for i in range(50):
        k = rng.randint(1, 4)
        u = rational_unitary(rng, k, complex_=i % 3 == 2)
        b = seeded_rank(rng, k, k, rng.randint(0, k), rng.random() < 0.3)
        failures += not unitary_pinv_identity(u, b)
    ok = failures == 0
    _report(capsys, 8, ok, "Unitary similarity", f"50 instances, {failures} failures")
    assert ok


def test_09_sum_pinv(capsys):
    rng = random.Random(109)
    failures = 0
    for _ in range(200):
        m, n = rng.randint(1, 3), rng.randint(1, 3)
        cx = rng.random() < 0.3
        a = seeded_rank(rng, m, n, rng.randint(0, min(m, n)), cx)
        b = seeded_rank(rng, m, n, rng.randint(0, min(m, n)), cx)
        failures += sum_pinv_via_block(a, b) != pinv(madd(a, b))
    ok = failures == 0
    _report(capsys, 9, ok, "Pseudoinverse of a sum via block matrix", f"200 pairs, {failures} failures")
    assert ok


def test_10_idempotent_factorization(capsys):
    rng = random.Random(110)
    scalars = [(mpq(1), mpq(1)), (mpq(2), mpq(3)), (mpq(-1, 2), mpq(5)), (mpq(1, 3), mpq(-3)),
               (GaussianRational(1, 1), mpq(2))]
    failures = alt_holds = 0
    for i in range(100):
        k = rng.randint(1, 4)
        a = seeded_idempotent(rng, k, rng.randint(0, k), complex_=i % 5 == 4)
        b = seeded_idempotent(rng, k, rng.randint(0, k))
        for al, be in scalars:
            al, be = GaussianRational.coerce(al), GaussianRational.coerce(be)
            lam = al * be * ((1 + al) * (1 + be)).inv()
            failures += not _factorizations_hold(a, b, al, be, lam)
            den = (1 - al) * (1 - be)
            if not den.is_zero():
                alt_holds += _factorizations_hold(a, b, al, be, al * be * den.inv())
    rep = idempotent_rol(seeded_idempotent(rng, 3, 2), seeded_idempotent(rng, 3, 1), 2, 3, budget=8)
    ok = failures == 0 and rep.factorization
    _report(capsys, 10, ok, "Idempotent factorization",
            f"100 pairs x 5 scalar pairs with lambda = ab/((1+a)(1+b)), {failures} failures "
            f"(the (1-a)(1-b) form held in {alt_holds} cases)")
    assert ok
