"""Consequences of the triple-product classification: similarity-type
products A B A^-1, the block form of a sum, idempotent factorizations and
the equivalent forms of the Moore-Penrose reverse order law."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from ..errors import DimensionMismatch, IdentityViolated, InvalidScalar, NotIdempotent, UnknownCase
from ..exactnum import ONE, GaussianRational
from ..ginverse import ALL_CLASSES, GInvClass, is_ep, membership_profile, pinv, sample_ginverse
from ..matrix import (
    Matrix,
    block2x2,
    ctranspose,
    hblock,
    inverse,
    madd,
    matmul,
    mprod,
    msub,
    range_equal,
    rank,
    scale,
    vblock,
)
from .catalog import SetRelation
from .constructions import derive_seed
from .survey import DEFAULT_BUDGET, CaseReport, SampleBank, Verdict, empirical_case
from .triple import TripleInstance

MP = GInvClass.MP
_CLS = {c.value: c for c in ALL_CLASSES}
_REL = {
    "=": SetRelation.EQUAL,
    "sup": SetRelation.SUPERSET,
    "sub": SetRelation.SUBSET,
    "cap": SetRelation.INTERSECT,
}

# ---- products A B A^-1

# Relations between {M^(L)} and {A B^(R) A^-1} for M = A B A^-1, as printed,
# grouped by the condition they are equivalent to. "L ni" means {M^(L)}
# contains A B^dagger A^-1; "mp in R" means M^dagger lies in {A B^(R) A^-1}.
_COVARIANCE_TABLE = {
    "a": """1 = 1; 1 sup 12; 1 sup 13; 1 sup 14; 1 sup 123; 1 sup 124; 1 sup 134; 1 ni;
        12 sub 1; 12 = 12; 12 cap 13; 12 cap 14; 12 sup 123; 12 sup 124; 12 cap 134; 12 ni;
        13 sub 1; 13 cap 12; 13 cap 13; 13 cap 14; 13 cap 124; 14 sub 1;
        14 cap 12; 14 cap 13; 14 cap 14; 14 cap 123;
        123 sub 1; 123 sub 12; 123 cap 14; 123 cap 124;
        124 sub 1; 124 sub 12; 124 cap 13; 124 cap 123;
        134 sub 1; 134 cap 12; mp in 1; mp in 12""",
    "b": """1 sub 12; 1 = 12; 1 sub 123; 1 = 123; 1 sub 124; 1 = 124;
        12 sup 1; 12 = 1; 12 sup 13; 12 = 13; 12 sup 14; 12 = 14;
        12 sup 134; 12 = 134; 13 = 12; 13 sub 124; 13 = 124; 14 sub 12;
        14 = 12; 14 sub 123; 14 = 123; 123 sup 1; 123 = 1; 123 sup 14;
        123 = 14; 123 sup 134; 123 sub 134; 124 sup 1; 124 = 1; 124 sup 13;
        124 = 13; 124 sup 134; 124 = 134; 134 sub 12; 134 = 12; 134 sub 123;
        134 = 123; 134 sub 124; 134 = 124""",
    "c": """1 sub 13; 1 = 13; 1 sub 14; 1 = 14; 1 sub 134; 1 = 134;
        12 sub 13; 12 sub 14; 12 sub 123; 12 = 123; 12 sub 124; 12 = 124;
        12 sub 134; 13 sup 1; 13 = 1; 13 sup 12; 13 sup 14; 13 sub 14;
        13 = 14; 13 sup 124; 14 sup 1; 13 = 1; 14 sup 12; 14 sup 13;
        14 sub 13; 14 = 13; 14 sup 123; 123 sup 12; 123 = 12; 123 sub 14;
        123 sup 124; 123 sub 124; 123 = 124; 123 sub 134; 124 sup 12; 124 = 12;
        124 sub 13; 124 sup 123; 124 sub 123; 124 = 123; 124 sub 134; 134 sup 1;
        134 = 1; 134 sup 12; 134 sup 13; 134 = 13; 134 sup 14; 134 = 14;
        134 sup 123; 134 sup 124""",
    "d": """13 sup 13; 13 sub 13; 13 = 13; 13 cap 123; 13 = 123; 13 cap 134;
        13 = 134; 13 ni; 123 cap 13; 123 = 13; 123 cap 123; 123 = 123;
        123 cap 134; 123 ni; 134 cap 13; 134 sub 13; 134 cap 123; mp in 13; mp in 123""",
    "e": """14 sup 14; 14 sub 14; 14 = 14; 14 cap 124; 14 = 124; 14 cap 134;
        14 = 134; 14 ni; 124 cap 14; 124 = 14; 124 cap 124; 124 = 124;
        124 cap 134; 124 ni; 134 cap 14; 134 sub 14; 134 cap 124; mp in 14; mp in 124""",
    "f": "134 cap 134; 134 = 134; 134 ni; mp in 134; mp = mp",
}


def _range_left(a: Matrix, b: Matrix) -> bool:
    return range_equal(mprod(ctranspose(a), a, b), b)


def _range_right(a: Matrix, b: Matrix) -> bool:
    bh = ctranspose(b)
    return range_equal(mprod(ctranspose(a), a, bh), bh)


COVARIANCE_CONDITIONS: dict[str, tuple[str, Callable[[Matrix, Matrix], bool]]] = {
    "a": ("always", lambda a, b: True),
    "b": ("r(B) = m", lambda a, b: rank(b) == b.rows),
    "c": ("B = 0 or r(B) = m", lambda a, b: b.is_zero() or rank(b) == b.rows),
    "d": ("R(A*AB) = R(B)", _range_left),
    "e": ("R(A*AB*) = R(B*)", _range_right),
    "f": ("R(A*AB) = R(B) and R(A*AB*) = R(B*)", lambda a, b: _range_left(a, b) and _range_right(a, b)),
}


@dataclass(frozen=True)
class CovarianceEntry:
    entry_id: str
    lhs: GInvClass
    rhs: GInvClass
    relation: SetRelation
    block: str


def _parse_item(block: str, i: int, item: str) -> CovarianceEntry:
    parts = item.split()
    if parts[-1] == "ni":
        lhs, rhs, rel = _CLS[parts[0]], MP, SetRelation.CONTAINS_DAGGER
    elif parts[1] == "in":
        lhs, rhs, rel = MP, _CLS[parts[2]], SetRelation.CONTAINS_DAGGER
    else:
        lhs, rhs, rel = _CLS[parts[0]], _CLS[parts[2]], _REL[parts[1]]
    return CovarianceEntry(f"{block}{i}", lhs, rhs, rel, block)


COVARIANCE_ENTRIES: tuple[CovarianceEntry, ...] = tuple(
    _parse_item(block, i + 1, item.strip())
    for block, text in _COVARIANCE_TABLE.items()
    for i, item in enumerate(text.split(";"))
)
COVARIANCE_BY_ID = {e.entry_id: e for e in COVARIANCE_ENTRIES}

# Listed entries that fail on explicit instances. Each is kept as printed and
# flagged; A = I, B = diag(1, 0) refutes the equalities between classes of
# different orders, and the two unconditional intersections are empty
# whenever the range condition of the matching block fails.
COVARIANCE_NOTES = {
    "a19": "intersection is empty unless R(A*AB) = R(B)",
    "a25": "intersection is empty unless R(A*AB*) = R(B*)",
    "d5": "equality between classes of different orders; fails for A = I, B = diag(1, 0)",
    "d7": "equality between classes of different orders; fails for A = I, B = diag(1, 0)",
    "d10": "equality between classes of different orders; fails for A = I, B = diag(1, 0)",
    "e5": "equality between classes of different orders; fails for A = I, B = diag(1, 0)",
    "e7": "equality between classes of different orders; fails for A = I, B = diag(1, 0)",
    "e10": "equality between classes of different orders; fails for A = I, B = diag(1, 0)",
}


def covariance_instance(a: Matrix, b: Matrix) -> TripleInstance:
    if a.rows != a.cols or b.shape != a.shape:
        raise DimensionMismatch("A and B must be square of the same order")
    return TripleInstance(a, b, inverse(a))


def covariance_lookup(lhs: GInvClass, rhs: GInvClass, rel: SetRelation) -> CovarianceEntry:
    for e in COVARIANCE_ENTRIES:
        if e.lhs is lhs and e.rhs is rhs and e.relation is rel:
            return e
    raise UnknownCase(f"no listed relation {rel.title} between M^{lhs.label} and A B^{rhs.label} A^-1")


def _run_entry(inst: TripleInstance, e: CovarianceEntry, bank: SampleBank) -> CaseReport:
    text, test = COVARIANCE_CONDITIONS[e.block]
    rep = CaseReport(e.entry_id, e.lhs, e.rhs, e.relation, analytic=test(inst.a, inst.b),
                     empirical=Verdict.INCONCLUSIVE, condition=text)
    rep.empirical = empirical_case(inst, e.lhs, e.rhs, e.relation, bank=bank, report=rep)
    return rep


def covariance_case(a: Matrix, b: Matrix, lhs: GInvClass, rhs: GInvClass, rel: SetRelation,
                    budget: int = DEFAULT_BUDGET, seed: int = 0) -> CaseReport:
    """One listed relation for M = A B A^-1, with its printed condition and
    the sampled verdict."""
    inst = covariance_instance(a, b)
    return _run_entry(inst, covariance_lookup(lhs, rhs, rel), SampleBank(inst, budget, seed))


def covariance_survey(a: Matrix, b: Matrix, budget: int = DEFAULT_BUDGET, seed: int = 0,
                      blocks: str = "abcdef") -> list[CaseReport]:
    inst = covariance_instance(a, b)
    bank = SampleBank(inst, budget, seed)
    return [_run_entry(inst, e, bank) for e in COVARIANCE_ENTRIES if e.block in blocks]


def unitary_pinv_identity(a: Matrix, b: Matrix) -> bool:
    """(A B A*)^dagger == A B^dagger A*."""
    ah = ctranspose(a)
    return pinv(mprod(a, b, ah)) == mprod(a, pinv(b), ah)


def covariance_unitary(a: Matrix, b: Matrix, budget: int = DEFAULT_BUDGET, seed: int = 0) -> list[CaseReport]:
    """The eight equalities {(ABA*)^(L)} = {A B^(L) A*} for A*A = I, each
    checked in both directions by sampling; the MP one is checked exactly."""
    unitary = matmul(ctranspose(a), a) == Matrix.identity(a.cols)
    inst = covariance_instance(a, b)
    out = []
    for i, cls in enumerate(ALL_CLASSES):
        rep = CaseReport(f"g{i + 1}", cls, cls, SetRelation.EQUAL, analytic=unitary,
                         empirical=Verdict.INCONCLUSIVE, condition="A*A = I")
        if cls is MP:
            ok = unitary_pinv_identity(a, b) if unitary else inst.m_pinv == inst.reversed_pinv
            rep.exact = ok
            rep.empirical = Verdict.CONFIRMED_TRUE if ok else Verdict.CONFIRMED_FALSE
        else:
            rep.empirical = empirical_case(inst, cls, cls, SetRelation.EQUAL, budget=budget,
                                           seed=seed, report=rep)
        out.append(rep)
    return out


# ---- sums through a 2x2 block matrix


def _stack_identity(k: int, horizontal: bool) -> Matrix:
    i = Matrix.identity(k)
    return hblock([i, i]) if horizontal else vblock([i, i])


def _compress(x: Matrix, m: int, n: int) -> Matrix:
    """1/2 [I_n, I_n] X [I_m; I_m]."""
    return scale(GaussianRational(1, 0) / 2, mprod(_stack_identity(n, True), x, _stack_identity(m, False)))


def sum_block(a: Matrix, b: Matrix) -> Matrix:
    if a.shape != b.shape:
        raise DimensionMismatch("A and B must have the same shape")
    return block2x2(a, b, b, a)


def sum_pinv_via_block(a: Matrix, b: Matrix) -> Matrix:
    """(A + B)^dagger computed as 1/2 [I, I] N^dagger [I; I] with
    N = [[A, B], [B, A]]; checked against the direct pseudoinverse."""
    m, n = a.shape
    g = _compress(pinv(sum_block(a, b)), m, n)
    if g != pinv(madd(a, b)):
        raise IdentityViolated("block formula for the pseudoinverse of a sum disagrees")
    return g


def _hadamard(k: int) -> Matrix:
    i = Matrix.identity(k)
    return block2x2(i, i, i, -i)


def sum_set_equalities(a: Matrix, b: Matrix, budget: int = 8, seed: int = 0) -> dict[GInvClass, bool]:
    """Sampled check of {(A+B)^(L)} = {1/2 [I, I] N^(L) [I; I]} for every class.

    Containment one way samples N^(L) and compresses. The other way lifts a
    sampled G in {(A+B)^(L)} to 1/2 H_n diag(G, (A-B)^dagger) H_m, a member
    of {N^(L)} that compresses back to G.
    """
    m, n = a.shape
    n_blk = sum_block(a, b)
    s, d = madd(a, b), msub(a, b)
    d_pinv = pinv(d)
    half = GaussianRational(1, 0) / 2
    hn, hm = _hadamard(n), _hadamard(m)
    out = {}
    for cls in ALL_CLASSES:
        ok = True
        count = 1 if cls is MP else budget
        for i in range(count):
            x = sample_ginverse(n_blk, cls, derive_seed(seed, "N", cls.value, i))
            if not membership_profile(_compress(x, m, n), s)[cls]:
                ok = False
                break
            g = sample_ginverse(s, cls, derive_seed(seed, "S", cls.value, i))
            diag = block2x2(g, Matrix.zeros(n, m), Matrix.zeros(n, m), d_pinv)
            lift = scale(half, mprod(hn, diag, hm))
            if not membership_profile(lift, n_blk)[cls] or _compress(lift, m, n) != g:
                ok = False
                break
        out[cls] = ok
    return out


# ---- idempotent factorizations


@dataclass
class IdempotentReport:
    lam: GaussianRational
    lam_alt: GaussianRational | None  # alpha beta (1-alpha)^-1 (1-beta)^-1, None if undefined
    factorization: bool  # both factorizations with lam
    factorization_alt: bool | None  # the same with lam_alt
    set_equality: CaseReport
    mp_rol: bool  # (I - lam AB)^dagger == (I + bB) K^dagger (I + aA)
    mp_conditions_printed: bool
    mp_conditions_derived: bool

    def to_obj(self) -> dict:
        from ..exactnum import format_scalar
        return {
            "lambda": format_scalar(self.lam),
            "lambda_alt": None if self.lam_alt is None else format_scalar(self.lam_alt),
            "factorization": self.factorization,
            "factorization_alt": self.factorization_alt,
            "set_equality": self.set_equality.to_obj(),
            "mp_rol": self.mp_rol,
            "mp_conditions_printed": self.mp_conditions_printed,
            "mp_conditions_derived": self.mp_conditions_derived,
        }


def _factorizations_hold(a: Matrix, b: Matrix, alpha, beta, lam) -> bool:
    i = Matrix.identity(a.rows)
    k = madd(madd(i, scale(alpha, a)), scale(beta, b))
    p = madd(i, scale(alpha, a))
    q = madd(i, scale(beta, b))
    left = mprod(p, msub(i, scale(lam, matmul(a, b))), q)
    right = mprod(q, msub(i, scale(lam, matmul(b, a))), p)
    return k == left and k == right


def idempotent_rol(a: Matrix, b: Matrix, alpha, beta, budget: int = DEFAULT_BUDGET,
                   seed: int = 0) -> IdempotentReport:
    """For idempotents A, B: I + aA + bB = (I + aA)(I - lam AB)(I + bB), and
    the {1}-inverse and Moore-Penrose reverse order laws that follow."""
    alpha, beta = GaussianRational.coerce(alpha), GaussianRational.coerce(beta)
    if a.rows != a.cols or b.shape != a.shape:
        raise DimensionMismatch("A and B must be square of the same order")
    if matmul(a, a) != a:
        raise NotIdempotent("A is not idempotent")
    if matmul(b, b) != b:
        raise NotIdempotent("B is not idempotent")
    for name, v in (("alpha", alpha), ("beta", beta)):
        if v.is_zero() or (v + ONE).is_zero():
            raise InvalidScalar(f"{name} must differ from 0 and -1")
    ab = alpha * beta
    lam = ab * ((ONE + alpha) * (ONE + beta)).inv()
    alt_den = (ONE - alpha) * (ONE - beta)
    lam_alt = None if alt_den.is_zero() else ab * alt_den.inv()

    i = Matrix.identity(a.rows)
    p = madd(i, scale(alpha, a))
    q = madd(i, scale(beta, b))
    k = madd(p, scale(beta, b))
    inst = TripleInstance(inverse(p), k, inverse(q))
    m = msub(i, scale(lam, matmul(a, b)))
    fact = _factorizations_hold(a, b, alpha, beta, lam)
    if fact and inst.m_product != m:
        raise IdentityViolated("triple product does not reproduce I - lam AB")

    rep = CaseReport("idempotent", GInvClass.G1, GInvClass.G1, SetRelation.EQUAL,
                     analytic=fact, empirical=Verdict.INCONCLUSIVE, condition="always")
    rep.empirical = empirical_case(inst, GInvClass.G1, GInvClass.G1, SetRelation.EQUAL,
                                   budget=budget, seed=seed, report=rep)
    kh = ctranspose(k)
    printed = (range_equal(mprod(q, ctranspose(q), k), k)
               and range_equal(mprod(ctranspose(p), p, kh), kh))
    derived = (range_equal(mprod(p, ctranspose(p), k), k)
               and range_equal(mprod(ctranspose(q), q, kh), kh))
    return IdempotentReport(
        lam=lam,
        lam_alt=lam_alt,
        factorization=fact,
        factorization_alt=None if lam_alt is None else _factorizations_hold(a, b, alpha, beta, lam_alt),
        set_equality=rep,
        mp_rol=pinv(inst.m_product) == mprod(q, pinv(k), p),
        mp_conditions_printed=printed,
        mp_conditions_derived=derived,
    )


# ---- equivalent forms of the Moore-Penrose reverse order law


def case64_characterizations(inst: TripleInstance) -> dict[str, bool]:
    """Every stated equivalent of M^dagger = C^-1 B^dagger A^-1, evaluated
    exactly, together with the identity itself under the key "rol"."""
    a, b, c, m = inst.a, inst.b, inst.c, inst.m_product
    ah, bh, ch, mh = ctranspose(a), ctranspose(b), ctranspose(c), ctranspose(m)
    aha_b = mprod(ah, a, b)
    b_cch = mprod(b, c, ch)
    bp = pinv(b)
    return {
        "rol": inst.m_pinv == inst.reversed_pinv,
        "ranges_b": inst.facts.range_a and inst.facts.range_c,
        "ranges_m": (range_equal(mprod(a, ah, m), m)
                     and range_equal(mprod(ch, c, mh), mh)),
        "projectors": (matmul(aha_b, pinv(aha_b)) == matmul(b, bp)
                       and matmul(pinv(b_cch), b_cch) == matmul(bp, b)),
        "ep_b": is_ep(mprod(ah, a, b, bh)) and is_ep(mprod(bh, b, c, ch)),
        "ep_m": is_ep(mprod(a, ah, m, mh)) and is_ep(mprod(mh, m, ch, c)),
    }



