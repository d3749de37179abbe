"""Analytic and sampled verdicts for the classified set relations on one
triple, and the survey driver that cross-checks them."""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum

from ..errors import IdentityViolated, TheoremViolation, UnknownCase
from ..ginverse import GInvClass, membership_profile, pinv, sample_ginverse
from ..matrix import (
    Matrix,
    ctranspose,
    kron,
    matmul,
    matrix_to_obj,
    mprod,
    solve_any,
    transpose,
    unvec,
    vec,
    vblock,
)
from .catalog import CELL_BY_ID, CELLS, Cell, SetRelation, cells_for
from .constructions import derive_seed
from .triple import TripleInstance

DEFAULT_BUDGET = 64

MP = GInvClass.MP


class Verdict(Enum):
    CONFIRMED_TRUE = "ConfirmedTrue"
    CONFIRMED_FALSE = "ConfirmedFalse"
    CONSISTENT_TRUE = "ConsistentTrue"
    INCONCLUSIVE = "Inconclusive"


@dataclass
class Evidence:
    role: str  # "counterexample" or "witness"
    seed: int | None
    matrix: Matrix  # on the product side, i.e. a candidate inverse of M

    def to_obj(self) -> dict:
        return {"role": self.role, "seed": self.seed, "matrix": matrix_to_obj(self.matrix)}


@dataclass
class CaseReport:
    case_id: str
    lhs_class: GInvClass
    rhs_class: GInvClass
    relation: SetRelation
    analytic: bool
    empirical: Verdict
    witnesses: list[Evidence] = field(default_factory=list)
    seeds: list[int] = field(default_factory=list)
    exact: bool | None = None
    condition: str = ""
    passing_samples: int = 0

    @property
    def witness_count(self) -> int:
        return len(self.witnesses) if self.witnesses else self.passing_samples

    @property
    def violation(self) -> bool:
        """The sampled evidence contradicts the analytic verdict outright."""
        if self.analytic:
            return self.empirical is Verdict.CONFIRMED_FALSE
        return self.empirical is Verdict.CONFIRMED_TRUE

    @property
    def exact_disagreement(self) -> bool:
        return self.exact is not None and self.exact != self.analytic

    def to_obj(self, with_witnesses: bool = False) -> dict:
        out = {
            "case_id": self.case_id,
            "lhs_class": self.lhs_class.value,
            "rhs_class": self.rhs_class.value,
            "relation": self.relation.title,
            "analytic": self.analytic,
            "empirical": self.empirical.value,
            "witness_count": self.witness_count,
            "seeds": list(self.seeds),
            "exact": self.exact,
            "condition": self.condition,
        }
        if with_witnesses:
            out["witnesses"] = [w.to_obj() for w in self.witnesses]
        return out


# ---- analytic side


def _cell_for(lhs: GInvClass, rhs: GInvClass, rel: SetRelation) -> Cell:
    found = cells_for(lhs, rhs, rel)
    if not found:
        raise UnknownCase(f"no classified cell relates M^{lhs.label} and B^{rhs.label} by {rel.title}")
    return found[0]


def analytic_case(inst: TripleInstance, lhs: GInvClass, rhs: GInvClass, rel: SetRelation) -> bool:
    """The printed necessary-and-sufficient condition for one cell.

    When two printed cells assert the same relation for the same pair, the
    first one in table order is used; ``analytic_cell`` evaluates either.
    """
    return _cell_for(lhs, rhs, rel).condition(inst.facts)


def analytic_cell(inst: TripleInstance, case_id: str) -> bool:
    if case_id not in CELL_BY_ID:
        raise UnknownCase(f"unknown case id {case_id!r}")
    return CELL_BY_ID[case_id].condition(inst.facts)


# ---- sampled side


@dataclass
class _Sample:
    seed: int | None
    m_side: Matrix  # candidate for M
    b_side: Matrix  # the same candidate mapped to B: C X A
    _m_prof: dict | None = None
    _b_prof: dict | None = None


class SampleBank:
    """Seeded class members of B and of M for one instance, with their
    membership profiles on the other side computed once and shared by
    every cell that needs them."""

    def __init__(self, inst: TripleInstance, budget: int, seed: int = 0):
        if budget < 1:
            raise ValueError("budget must be at least 1")
        self.inst = inst
        self.budget = budget
        self.seed = seed
        self._b: dict[GInvClass, list[_Sample]] = {}
        self._m: dict[GInvClass, list[_Sample]] = {}
        self._exact: dict[tuple[GInvClass, GInvClass], Matrix | None] = {}

    def _seed(self, side: str, cls: GInvClass, i: int) -> int:
        return derive_seed(self.seed, self.inst.digest, side, cls.value, i)

    def b_members(self, cls: GInvClass) -> list[_Sample]:
        """Members G of {B^(cls)}, each carried to C^-1 G A^-1."""
        if cls not in self._b:
            count = 1 if cls is MP else self.budget
            out = []
            for i in range(count):
                s = self._seed("B", cls, i)
                g = sample_ginverse(self.inst.b, cls, s)
                out.append(_Sample(None if cls is MP else s, self.inst.to_m_side(g), g))
            self._b[cls] = out
        return self._b[cls]

    def m_members(self, cls: GInvClass) -> list[_Sample]:
        """Members X of {M^(cls)}, each carried to C X A."""
        if cls not in self._m:
            count = 1 if cls is MP else self.budget
            out = []
            for i in range(count):
                s = self._seed("M", cls, i)
                x = sample_ginverse(self.inst.m_product, cls, s)
                out.append(_Sample(None if cls is MP else s, x, self.inst.to_b_side(x)))
            self._m[cls] = out
        return self._m[cls]

    def m_profile(self, s: _Sample) -> dict:
        if s._m_prof is None:
            s._m_prof = membership_profile(s.m_side, self.inst.m_product)
        return s._m_prof

    def b_profile(self, s: _Sample) -> dict:
        if s._b_prof is None:
            s._b_prof = membership_profile(s.b_side, self.inst.b)
        return s._b_prof

    def exact_witness(self, lhs: GInvClass, rhs: GInvClass) -> Matrix | None:
        key = (lhs, rhs)
        if key not in self._exact:
            self._exact[key] = exact_intersection_witness(self.inst, lhs, rhs)
        return self._exact[key]


def _linear_constraints(inst: TripleInstance, lhs: GInvClass, rhs: GInvClass):
    """Pairs (P, Q, R) meaning P G Q = R, for G on the B side.

    X = C^-1 G A^-1 lies in {M^(lhs)} exactly when G satisfies the rewritten
    equations B G B = B, (B*A*AB) G = B*A*A, G (BCC*B*) = CC*B*; the reflexivity
    requirement GBG = G is handled afterwards.
    """
    a, b, c = inst.a, inst.b, inst.c
    m, n = b.shape
    bh = ctranspose(b)
    im_, in_ = Matrix.identity(m), Matrix.identity(n)
    out = [(b, b, b)]
    if 3 in rhs.equations:
        out.append((matmul(bh, b), im_, bh))
    if 4 in rhs.equations:
        out.append((in_, matmul(b, bh), bh))
    if 3 in lhs.equations:
        aha = matmul(ctranspose(a), a)
        out.append((mprod(bh, aha, b), im_, matmul(bh, aha)))
    if 4 in lhs.equations:
        cch_bh = mprod(c, ctranspose(c), bh)
        out.append((in_, matmul(b, cch_bh), cch_bh))
    return out


def exact_intersection_witness(inst: TripleInstance, lhs: GInvClass, rhs: GInvClass) -> Matrix | None:
    """A common member G of {B^(rhs)} and {C M^(lhs) A}, or None when the
    intersection is provably empty.

    All Penrose conditions other than reflexivity are linear in G, so they are
    solved exactly; if reflexivity (GBG = G) is required on either side, G is replaced
    by G B G, which keeps every linear condition and has rank r(B).
    """
    b = inst.b
    if lhs is MP or rhs is MP:
        cands = []
        if rhs is MP:
            cands.append(pinv(b))
        if lhs is MP:
            cands.append(inst.to_b_side(inst.m_pinv))
        for g in cands:
            if membership_profile(g, b)[rhs] and membership_profile(inst.to_m_side(g), inst.m_product)[lhs]:
                return g
        return None
    n, m = b.cols, b.rows
    coefs, rhss = [], []
    for p, q, r in _linear_constraints(inst, lhs, rhs):
        coefs.append(kron(transpose(q), p))
        rhss.append(vec(r))
    sol = solve_any(vblock(coefs), vblock(rhss))
    if sol is None:
        return None
    g = unvec(sol, n, m)
    if 2 in lhs.equations or 2 in rhs.equations:
        g = mprod(g, b, g)
    if not (membership_profile(g, b)[rhs]
            and membership_profile(inst.to_m_side(g), inst.m_product)[lhs]):
        raise IdentityViolated("exact intersection witness failed verification")
    return g


def _superset(bank: SampleBank, lhs: GInvClass, rhs: GInvClass, rep: CaseReport) -> tuple[bool, bool]:
    """{M^(lhs)} contains {C^-1 B^(rhs) A^-1}. Returns (falsified, exhaustive)."""
    for s in bank.b_members(rhs):
        if s.seed is not None:
            rep.seeds.append(s.seed)
        if not bank.m_profile(s)[lhs]:
            rep.witnesses.append(Evidence("counterexample", s.seed, s.m_side))
            return True, False
        rep.passing_samples += 1
    return False, rhs is MP


def _subset(bank: SampleBank, lhs: GInvClass, rhs: GInvClass, rep: CaseReport) -> tuple[bool, bool]:
    """{M^(lhs)} is contained in {C^-1 B^(rhs) A^-1}, tested as C X A in {B^(rhs)}."""
    for s in bank.m_members(lhs):
        if s.seed is not None:
            rep.seeds.append(s.seed)
        if not bank.b_profile(s)[rhs]:
            rep.witnesses.append(Evidence("counterexample", s.seed, s.m_side))
            return True, False
        rep.passing_samples += 1
    return False, lhs is MP


def _intersect(bank: SampleBank, lhs: GInvClass, rhs: GInvClass, rep: CaseReport) -> bool:
    inst = bank.inst
    # canonical candidates first
    cands = [(None, inst.reversed_pinv, pinv(inst.b)), (None, inst.m_pinv, inst.to_b_side(inst.m_pinv))]
    for seed, x, g in cands:
        if membership_profile(x, inst.m_product)[lhs] and membership_profile(g, inst.b)[rhs]:
            rep.witnesses.append(Evidence("witness", seed, x))
            return True
    # samples of the right-hand set that were already drawn for other cells
    for s in bank._b.get(rhs, []):
        if bank.m_profile(s)[lhs]:
            rep.witnesses.append(Evidence("witness", s.seed, s.m_side))
            return True
    g = bank.exact_witness(lhs, rhs)
    if g is not None:
        rep.witnesses.append(Evidence("witness", None, inst.to_m_side(g)))
        return True
    rep.exact = False
    return False


def _contains_dagger(bank: SampleBank, lhs: GInvClass, rhs: GInvClass, rep: CaseReport) -> bool:
    inst = bank.inst
    if rhs is MP:
        x = inst.reversed_pinv
        ok = membership_profile(x, inst.m_product)[lhs]
    else:
        x = inst.m_pinv
        ok = membership_profile(inst.to_b_side(x), inst.b)[rhs]
    rep.witnesses.append(Evidence("witness" if ok else "counterexample", None, x))
    return ok


def empirical_case(inst: TripleInstance, lhs: GInvClass, rhs: GInvClass, rel: SetRelation,
                   budget: int = DEFAULT_BUDGET, seed: int = 0,
                   bank: SampleBank | None = None, report: CaseReport | None = None) -> Verdict:
    bank = bank or SampleBank(inst, budget, seed)
    rep = report or CaseReport("", lhs, rhs, rel, False, Verdict.INCONCLUSIVE)
    if rel is SetRelation.CONTAINS_DAGGER:
        if lhs is not MP and rhs is not MP:
            raise UnknownCase("the dagger relation needs an MP side")
        ok = _contains_dagger(bank, lhs, rhs, rep)
        rep.exact = ok
        return Verdict.CONFIRMED_TRUE if ok else Verdict.CONFIRMED_FALSE
    if rel is SetRelation.INTERSECT:
        if _intersect(bank, lhs, rhs, rep):
            rep.exact = True
            return Verdict.CONFIRMED_TRUE
        return Verdict.INCONCLUSIVE
    exhaustive = True
    if rel in (SetRelation.SUPERSET, SetRelation.EQUAL):
        bad, exh = _superset(bank, lhs, rhs, rep)
        if bad:
            rep.exact = False
            return Verdict.CONFIRMED_FALSE
        exhaustive = exhaustive and exh
    if rel in (SetRelation.SUBSET, SetRelation.EQUAL):
        bad, exh = _subset(bank, lhs, rhs, rep)
        if bad:
            rep.exact = False
            return Verdict.CONFIRMED_FALSE
        exhaustive = exhaustive and exh
    if exhaustive:
        rep.exact = True
        return Verdict.CONFIRMED_TRUE
    return Verdict.CONSISTENT_TRUE


def run_cell(inst: TripleInstance, cell: Cell, rel: SetRelation, bank: SampleBank) -> CaseReport:
    rep = CaseReport(cell.case_id, cell.lhs, cell.rhs, rel,
                     analytic=cell.condition(inst.facts), empirical=Verdict.INCONCLUSIVE,
                     condition=cell.condition.text)
    rep.empirical = empirical_case(inst, cell.lhs, cell.rhs, rel, bank=bank, report=rep)
    return rep


def _violation_evidence(inst: TripleInstance, rep: CaseReport) -> dict:
    return {
        "a": matrix_to_obj(inst.a),
        "b": matrix_to_obj(inst.b),
        "c": matrix_to_obj(inst.c),
        "report": rep.to_obj(with_witnesses=True),
    }


def survey(inst: TripleInstance, budget: int = DEFAULT_BUDGET, seed: int = 0,
           raise_on_violation: bool = True, cells: list[Cell] | None = None) -> list[CaseReport]:
    """Every classified cell and relation on one instance, in table order."""
    bank = SampleBank(inst, budget, seed)
    reports = []
    for cell in (cells if cells is not None else CELLS):
        for rel in cell.relations:
            rep = run_cell(inst, cell, rel, bank)
            if rep.violation and raise_on_violation:
                raise TheoremViolation(
                    f"case {rep.case_id} {rel.title}: analytic {rep.analytic}, "
                    f"sampled {rep.empirical.value}", _violation_evidence(inst, rep))
            reports.append(rep)
    return reports


def find_violations(inst: TripleInstance, reports: list[CaseReport]) -> list[dict]:
    return [_violation_evidence(inst, r) for r in reports if r.violation]

