"""Catalog of the classified relations between {(ABC)^(i..j)} and
{C^-1 B^(k..l) A^-1} for nonsingular A (m x m), C (n x n) and B (m x n).

Each cell names the class on the product side (lhs), the class on the B side
(rhs), the relations it asserts, and the condition under which they hold.
Labels are kept exactly as stated in the classification, including the
irregular ones, which carry a ``note``.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Callable

from ..ginverse import GInvClass

G1, G12, G13, G14 = GInvClass.G1, GInvClass.G12, GInvClass.G13, GInvClass.G14
G123, G124, G134, MP = GInvClass.G123, GInvClass.G124, GInvClass.G134, GInvClass.MP


class SetRelation(Enum):
    INTERSECT = "cap"
    SUPERSET = "supseteq"
    SUBSET = "subseteq"
    EQUAL = "eq"
    CONTAINS_DAGGER = "dagger"

    @property
    def title(self) -> str:
        return _REL_TITLES[self]

    @classmethod
    def parse(cls, text: str) -> SetRelation:
        t = text.strip().lower()
        for r in cls:
            if t in (r.value, r.name.lower(), r.title.lower()):
                return r
        raise ValueError(f"unknown relation {text!r}")


_REL_TITLES = {
    SetRelation.INTERSECT: "IntersectNonempty",
    SetRelation.SUPERSET: "Superset",
    SetRelation.SUBSET: "Subset",
    SetRelation.EQUAL: "Equal",
    SetRelation.CONTAINS_DAGGER: "ContainsDagger",
}


@dataclass(frozen=True)
class Facts:
    """The instance quantities every cell condition is built from."""

    m: int
    n: int
    rank_b: int
    range_a: bool  # R(A*AB) = R(B)
    range_c: bool  # R(CC*B*) = R(B*)

    @property
    def b_zero(self) -> bool:
        return self.rank_b == 0

    @property
    def rm(self) -> bool:
        return self.rank_b == self.m

    @property
    def rn(self) -> bool:
        return self.rank_b == self.n

    @property
    def rmin(self) -> bool:
        return self.rank_b == min(self.m, self.n)

    @property
    def rmn(self) -> bool:
        return self.rank_b == self.m == self.n


@dataclass(frozen=True)
class Condition:
    text: str
    test: Callable[[Facts], bool]

    def __call__(self, f: Facts) -> bool:
        return bool(self.test(f))


def _c(text: str, fn: Callable[[Facts], bool]) -> Condition:
    return Condition(text, fn)


ALWAYS = _c("always", lambda f: True)
B0 = _c("B = 0", lambda f: f.b_zero)
RM = _c("r(B) = m", lambda f: f.rm)
RN = _c("r(B) = n", lambda f: f.rn)
RMIN = _c("r(B) = min{m,n}", lambda f: f.rmin)
RM_OR_RN = _c("r(B) = m or r(B) = n", lambda f: f.rm or f.rn)
B0_OR_RM = _c("B = 0 or r(B) = m", lambda f: f.b_zero or f.rm)
B0_OR_RN = _c("B = 0 or r(B) = n", lambda f: f.b_zero or f.rn)
B0_OR_RMN = _c("B = 0 or r(B) = m = n", lambda f: f.b_zero or f.rmn)
RMN = _c("r(B) = m = n", lambda f: f.rmn)
RA = _c("R(A*AB) = R(B)", lambda f: f.range_a)
RC = _c("R(CC*B*) = R(B*)", lambda f: f.range_c)
RA_RC = _c("R(A*AB) = R(B) and R(CC*B*) = R(B*)", lambda f: f.range_a and f.range_c)
RA_RMIN = _c("R(A*AB) = R(B) and r(B) = min{m,n}", lambda f: f.range_a and f.rmin)
RC_RMIN = _c("R(CC*B*) = R(B*) and r(B) = min{m,n}", lambda f: f.range_c and f.rmin)
RA_RN = _c("R(A*AB) = R(B) and r(B) = n", lambda f: f.range_a and f.rn)
RC_RM = _c("R(CC*B*) = R(B*) and r(B) = m", lambda f: f.range_c and f.rm)
B0_OR_RA_RN = _c("B = 0 or (R(A*AB) = R(B) and r(B) = n)", lambda f: f.b_zero or (f.range_a and f.rn))
B0_OR_RC_RM = _c("B = 0 or (R(CC*B*) = R(B*) and r(B) = m)", lambda f: f.b_zero or (f.range_c and f.rm))


@dataclass(frozen=True)
class Cell:
    case_id: str
    lhs: GInvClass
    rhs: GInvClass
    relations: tuple[SetRelation, ...]
    condition: Condition
    note: str = ""

    @property
    def group(self) -> int:
        return int("".join(ch for ch in self.case_id if ch.isdigit()))


I, SUP, SUB, EQ, DAG = (SetRelation.INTERSECT, SetRelation.SUPERSET, SetRelation.SUBSET,
                        SetRelation.EQUAL, SetRelation.CONTAINS_DAGGER)


def _cell(case_id, lhs, rhs, rels, cond, note="") -> Cell:
    return Cell(case_id, lhs, rhs, tuple(rels), cond, note)


CELLS: tuple[Cell, ...] = (
    _cell("1", G1, G1, [EQ], ALWAYS),
    _cell("2a", G1, G12, [SUP], ALWAYS),
    _cell("2b", G1, G12, [SUB, EQ], RMIN),
    _cell("3a", G1, G13, [SUP], ALWAYS),
    _cell("3b", G1, G13, [SUB, EQ], B0_OR_RM),
    _cell("4a", G1, G14, [SUP], ALWAYS),
    _cell("4b", G1, G14, [SUB, EQ], B0_OR_RN),
    _cell("5a", G1, G123, [SUP], ALWAYS),
    _cell("5b", G1, G123, [SUB, EQ], RM),
    _cell("6a", G1, G124, [SUP], ALWAYS),
    _cell("6b", G1, G124, [SUB, EQ], RN),
    _cell("7a", G1, G134, [SUP], ALWAYS),
    _cell("7b", G1, G134, [SUB, EQ], B0_OR_RMN),
    _cell("8", G1, MP, [DAG], ALWAYS),
    _cell("9a", G12, G1, [SUB], ALWAYS),
    _cell("9b", G12, G1, [SUP, EQ], RM_OR_RN),
    _cell("10", G12, G12, [EQ], ALWAYS),
    _cell("11a", G12, G13, [I], ALWAYS),
    _cell("11b", G12, G13, [SUP], RM_OR_RN),
    _cell("11c", G12, G13, [SUB], B0_OR_RM),
    _cell("11d", G12, G13, [EQ], RM),
    _cell("12a", G12, G14, [I], ALWAYS),
    _cell("12b", G12, G14, [SUP], RM_OR_RN),
    _cell("12c", G12, G14, [SUB], B0_OR_RN),
    _cell("12d", G12, G14, [EQ], RN),
    _cell("13a", G12, G123, [SUP], ALWAYS),
    _cell("13b", G12, G123, [SUB, EQ], B0_OR_RM),
    _cell("14a", G12, G124, [SUP], ALWAYS),
    _cell("14c", G12, G124, [SUB, EQ], B0_OR_RN,
          note="printed label 14c; the group has no 14b"),
    _cell("15a", G12, G134, [I], ALWAYS),
    _cell("15b", G12, G134, [SUP], RM_OR_RN),
    _cell("15c", G12, G134, [SUB], B0_OR_RMN),
    _cell("15d", G12, G134, [EQ], RMN),
    _cell("16", G12, MP, [DAG], ALWAYS),
    _cell("17a", G13, G1, [SUB], ALWAYS),
    _cell("17b", G13, G1, [SUP, EQ], B0_OR_RM),
    _cell("18a", G13, G12, [I], ALWAYS),
    _cell("18b", G13, G12, [SUP], B0_OR_RM),
    _cell("18c", G13, G12, [SUB], RM_OR_RN),
    _cell("18d", G13, G12, [EQ], RM),
    _cell("19a", G13, G13, [I], ALWAYS,
          note="printed as unconditional; exact linear-algebra check shows the "
               "intersection is empty unless R(A*AB) = R(B)"),
    _cell("19b", G13, G13, [SUP, SUB, EQ], RA),
    _cell("20a", G13, G14, [I], ALWAYS),
    _cell("20b", G13, G14, [SUP], B0_OR_RM),
    _cell("20c", G13, G14, [SUB], B0_OR_RN),
    _cell("20d", G13, G14, [EQ], B0_OR_RMN),
    _cell("21a", G13, G123, [I, SUP], RA),
    _cell("21b", G13, G123, [SUB, EQ], RA_RMIN),
    _cell("22a", G13, G124, [I], ALWAYS),
    _cell("22b", G13, G124, [SUP], B0_OR_RM),
    _cell("22c", G13, G124, [SUB], RN),
    _cell("22d", G13, G124, [EQ], RMN),
    _cell("23a", G13, G134, [I, SUP], RA),
    _cell("23b", G13, G134, [SUB, EQ], B0_OR_RA_RN,
          note="printed with a stray '!= empty' after the inclusion; read as subset and equality"),
    _cell("24", G13, MP, [DAG], RA),
    _cell("25a", G14, G1, [SUB], ALWAYS),
    _cell("25b", G14, G1, [SUP, EQ], B0_OR_RN,
          note="printed middle term names the (1,3) class; the group concerns the (1,4) class"),
    _cell("26a", G14, G12, [I], ALWAYS),
    _cell("26b", G14, G12, [SUP], B0_OR_RN),
    _cell("26c", G14, G12, [SUB], RM_OR_RN),
    _cell("26d", G14, G12, [EQ], RN),
    _cell("27a", G14, G13, [I], ALWAYS),
    _cell("27b", G14, G13, [SUP], B0_OR_RN),
    _cell("27c", G14, G13, [SUB], B0_OR_RM),
    _cell("27d", G14, G13, [EQ], B0_OR_RMN),
    _cell("28a", G14, G14, [I], ALWAYS,
          note="printed as unconditional; exact linear-algebra check shows the "
               "intersection is empty unless R(CC*B*) = R(B*)"),
    _cell("28b", G14, G14, [SUP, SUB, EQ], RC),
    _cell("29a", G14, G123, [I], ALWAYS),
    _cell("29b", G14, G123, [SUP], B0_OR_RN),
    _cell("29c", G14, G123, [SUB], RM),
    _cell("29d", G14, G123, [EQ], RMN),
    _cell("30a", G14, G124, [I, SUP], RC),
    _cell("30b", G14, G124, [SUB, EQ], RC_RMIN),
    _cell("31a", G14, G134, [I, SUP], RC),
    _cell("31b", G14, G134, [SUB, EQ], B0_OR_RC_RM),
    _cell("32", G14, MP, [DAG], RC),
    _cell("33a", G123, G1, [SUB], ALWAYS),
    _cell("33b", G123, G1, [SUP, EQ], RM),
    _cell("34a", G123, G12, [SUB], ALWAYS),
    _cell("34b", G123, G12, [SUP, EQ], B0_OR_RM),
    _cell("35a", G123, G13, [I, SUB], RA),
    _cell("35b", G123, G13, [SUP, EQ], RA_RMIN),
    _cell("36a", G123, G14, [I], ALWAYS),
    _cell("36b", G123, G14, [SUP], RM),
    _cell("36c", G123, G14, [SUB], B0_OR_RN),
    _cell("36d", G123, G14, [EQ], RMN),
    _cell("37", G123, G123, [I, EQ], RA),
    _cell("38a", G123, G124, [I], ALWAYS),
    _cell("38b", G123, G124, [SUP], B0_OR_RM),
    _cell("38c", G123, G124, [SUB], B0_OR_RN),
    _cell("38d", G123, G124, [EQ], B0_OR_RMN),
    _cell("39a", G123, G134, [I], RA),
    _cell("39b", G123, G134, [SUP], RA_RMIN),
    _cell("39c", G123, G134, [SUB], B0_OR_RA_RN),
    _cell("39d", G123, G134, [SUB], RA_RN,
          note="second inclusion line of the group, with a condition that drops 'B = 0'; "
               "kept as printed (the analogous slot elsewhere is an equality)"),
    _cell("40", G123, MP, [DAG], RA),
    _cell("41a", G124, G1, [SUB], ALWAYS),
    _cell("41b", G124, G1, [SUP, EQ], RN),
    _cell("42a", G124, G12, [SUB], ALWAYS),
    _cell("42b", G124, G12, [SUP, EQ], B0_OR_RN),
    _cell("43a", G124, G13, [I], ALWAYS),
    _cell("43b", G124, G13, [SUP], RN),
    _cell("43c", G124, G13, [SUB], B0_OR_RM),
    _cell("43d", G124, G13, [EQ], RMN),
    _cell("44a", G124, G14, [I, SUB], RC),
    _cell("44b", G124, G14, [SUP, EQ], RC_RMIN),
    _cell("45a", G124, G123, [I], ALWAYS),
    _cell("45b", G124, G123, [SUP], B0_OR_RN),
    _cell("45c", G124, G123, [SUB], B0_OR_RM),
    _cell("45d", G124, G123, [EQ], B0_OR_RMN),
    _cell("46", G124, G124, [I, EQ], RC),
    _cell("47a", G124, G134, [I], RC),
    _cell("47b", G124, G134, [SUP], RC_RMIN),
    _cell("47c", G124, G134, [SUB], B0_OR_RC_RM),
    _cell("47d", G124, G134, [EQ], RC_RM),
    _cell("48", G124, MP, [DAG], RC),
    _cell("49a", G134, G1, [SUB], ALWAYS),
    _cell("49b", G134, G1, [SUP, EQ], B0_OR_RMN),
    _cell("50a", G134, G12, [I], ALWAYS,
          note="printed without the word 'holds'; read as unconditional"),
    _cell("50b", G134, G12, [SUP], B0_OR_RMN),
    _cell("50c", G134, G12, [SUB], RM_OR_RN),
    _cell("50d", G134, G12, [EQ], RMN),
    _cell("51a", G134, G13, [I, SUB], RA),
    _cell("51b", G134, G13, [SUP, EQ], B0_OR_RA_RN),
    _cell("52a", G134, G14, [I, SUB], RC),
    _cell("52b", G134, G14, [SUP, EQ], B0_OR_RC_RM),
    _cell("53a", G134, G123, [I], RA),
    _cell("53b", G134, G123, [SUP], B0_OR_RA_RN),
    _cell("53c", G134, G123, [SUB], RA_RMIN),
    _cell("53d", G134, G123, [EQ], RA_RN),
    _cell("54a", G134, G124, [I], RC),
    _cell("54b", G134, G124, [SUP], B0_OR_RC_RM),
    _cell("54c", G134, G124, [SUB], RC_RMIN),
    _cell("54d", G134, G124, [EQ], RC_RM),
    _cell("55", G134, G134, [I, EQ], RA_RC),
    _cell("56", G134, MP, [DAG], RA_RC),
    _cell("57", MP, G1, [DAG], ALWAYS),
    _cell("58", MP, G12, [DAG], ALWAYS),
    _cell("59", MP, G13, [DAG], RA),
    _cell("60", MP, G14, [DAG], RC),
    _cell("61", MP, G123, [DAG], RA),
    _cell("62", MP, G124, [DAG], RC),
    _cell("63", MP, G134, [DAG], RA_RC),
    _cell("64", MP, MP, [EQ], RA_RC),
)

CELL_BY_ID = {c.case_id: c for c in CELLS}


def cells_for(lhs: GInvClass, rhs: GInvClass, rel: SetRelation) -> list[Cell]:
    return [c for c in CELLS if c.lhs is lhs and c.rhs is rhs and rel in c.relations]


def flagged_cells() -> list[Cell]:
    return [c for c in CELLS if c.note]
