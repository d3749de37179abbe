"""Mixed reverse-order constructions for products of two and three matrices.

Each template is a matrix expression in the factors, their conjugate
transposes, and generalized inverses of sub-products. Every inner inverse is
drawn by ``sample_ginverse``; a symbol that occurs twice in a template (for
example the B^(1) in B^(1)(A^(1)ABB^(1))^(1)A^(1)) is drawn once and reused.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass
from typing import Callable

from ..errors import DimensionMismatch
from ..ginverse import GInvClass, is_member, sample_ginverse
from ..matrix import Matrix, ctranspose, matmul, mprod, msub, rank


def derive_seed(*parts) -> int:
    h = hashlib.sha256("|".join(str(p) for p in parts).encode()).digest()
    return int.from_bytes(h[:8], "big")


class InnerInverses:
    """Draws inner generalized inverses of one class, one per symbol."""

    def __init__(self, cls: GInvClass, seed: int):
        self.cls = cls
        self.seed = seed
        self._cache: dict[str, Matrix] = {}

    def __call__(self, key: str, x: Matrix) -> Matrix:
        if key not in self._cache:
            self._cache[key] = sample_ginverse(x, self.cls, derive_seed(self.seed, key))
        return self._cache[key]


@dataclass(frozen=True)
class Construction:
    name: str
    matrix: Matrix


def _h(x: Matrix) -> Matrix:
    return ctranspose(x)


TwoTemplate = Callable[[Matrix, Matrix, InnerInverses], Matrix]

# name -> g(A, B, inv) producing a candidate inverse of AB
TWO_FACTOR_TEMPLATES: list[tuple[str, TwoTemplate]] = [
    ("(A'AB)'A'", lambda a, b, g: matmul(g("ab1", mprod(g("a", a), a, b)), g("a", a))),
    ("B'(ABB')'", lambda a, b, g: matmul(g("b", b), g("ab2", mprod(a, b, g("b", b))))),
    ("(A*AB)'A*", lambda a, b, g: matmul(g("ab3", mprod(_h(a), a, b)), _h(a))),
    ("B*(ABB*)'", lambda a, b, g: matmul(_h(b), g("ab4", mprod(a, b, _h(b))))),
    ("(AA*AB)'AA*", lambda a, b, g: matmul(g("ab5", mprod(a, _h(a), a, b)), matmul(a, _h(a)))),
    ("B*B(ABB*B)'", lambda a, b, g: matmul(matmul(_h(b), b), g("ab6", mprod(a, b, _h(b), b)))),
    ("B'(A'ABB')'A'", lambda a, b, g: mprod(
        g("b", b), g("ab7", mprod(g("a", a), a, b, g("b", b))), g("a", a))),
    ("B*(A*ABB*)'A*", lambda a, b, g: mprod(_h(b), g("ab8", mprod(_h(a), a, b, _h(b))), _h(a))),
    ("B*B(AA*ABB*B)'AA*", lambda a, b, g: mprod(
        _h(b), b, g("ab9", mprod(a, _h(a), a, b, _h(b), b)), a, _h(a))),
]


def _check_two(a: Matrix, b: Matrix) -> None:
    if a.cols != b.rows:
        raise DimensionMismatch(f"cannot multiply {a.shape} by {b.shape}")


def _check_three(a: Matrix, b: Matrix, c: Matrix) -> None:
    if a.cols != b.rows or b.cols != c.rows:
        raise DimensionMismatch("factors are not chain-conformable")


def _require_12(cls: GInvClass) -> None:
    if cls not in (GInvClass.G1, GInvClass.G12):
        raise ValueError("mixed constructions are defined for the {1} and {1,2} classes")


def mixed_rol_candidates_two(a: Matrix, b: Matrix, cls: GInvClass, seed: int = 0) -> list[Construction]:
    """Every two-factor template instantiated with inner inverses of class cls."""
    _check_two(a, b)
    _require_12(cls)
    inv = InnerInverses(cls, seed)
    return [Construction(name, fn(a, b, inv)) for name, fn in TWO_FACTOR_TEMPLATES]


ThreeTemplate = Callable[[Matrix, Matrix, Matrix, InnerInverses], Matrix]


def _three_templates() -> list[tuple[str, ThreeTemplate]]:
    def m_of(a, b, c):
        return mprod(a, b, c)

    def left_right(p_of, q_of, star: bool, key: str):
        """Q^ [P^ M Q^]' P^ with ^ either an inner inverse or conjugate transpose."""
        def fn(a, b, c, g):
            m = m_of(a, b, c)
            p = p_of(a, b, c, g)
            q = q_of(a, b, c, g)
            pl = _h(p) if star else g(key + "P", p)
            qr = _h(q) if star else g(key + "Q", q)
            return mprod(qr, g(key + "W", mprod(pl, m, qr)), pl)
        return fn

    def left_only(p_of, star: bool, key: str):
        """[P^ M]' P^."""
        def fn(a, b, c, g):
            m = m_of(a, b, c)
            p = p_of(a, b, c, g)
            pl = _h(p) if star else g(key + "P", p)
            return matmul(g(key + "W", matmul(pl, m)), pl)
        return fn

    def right_only(q_of, star: bool, key: str):
        """Q^ [M Q^]'."""
        def fn(a, b, c, g):
            m = m_of(a, b, c)
            q = q_of(a, b, c, g)
            qr = _h(q) if star else g(key + "Q", q)
            return matmul(qr, g(key + "W", matmul(m, qr)))
        return fn

    A = lambda a, b, c, g: a  # noqa: E731
    C = lambda a, b, c, g: c  # noqa: E731
    AB = lambda a, b, c, g: matmul(a, b)  # noqa: E731
    BC = lambda a, b, c, g: matmul(b, c)  # noqa: E731
    ABB1 = lambda a, b, c, g: mprod(a, b, g("b", b))  # noqa: E731
    B1BC = lambda a, b, c, g: mprod(g("b", b), b, c)  # noqa: E731
    ABBh = lambda a, b, c, g: mprod(a, b, _h(b))  # noqa: E731
    BhBC = lambda a, b, c, g: mprod(_h(b), b, c)  # noqa: E731

    def aah_m(a, b, c, g):
        return matmul(g("t5W", mprod(a, _h(a), a, b, c)), matmul(a, _h(a)))

    def m_chc(a, b, c, g):
        return matmul(matmul(_h(c), c), g("t6W", mprod(a, b, c, _h(c), c)))

    def chc_aah(a, b, c, g):
        return mprod(_h(c), c, g("t17W", mprod(a, _h(a), a, b, c, _h(c), c)), a, _h(a))

    return [
        ("(A'M)'A'", left_only(A, False, "t1")),
        ("C'(MC')'", right_only(C, False, "t2")),
        ("(A*M)'A*", left_only(A, True, "t3")),
        ("C*(MC*)'", right_only(C, True, "t4")),
        ("(AA*M)'AA*", aah_m),
        ("C*C(MC*C)'", m_chc),
        ("C'(A'MC')'A'", left_right(A, C, False, "t7")),
        ("C*(A*MC*)'A*", left_right(A, C, True, "t8")),
        ("[(AB)'M]'(AB)'", left_only(AB, False, "t9")),
        ("(BC)'[M(BC)']'", right_only(BC, False, "t10")),
        ("[(AB)*M]'(AB)*", left_only(AB, True, "t11")),
        ("(BC)*[M(BC)*]'", right_only(BC, True, "t12")),
        ("[(ABB')'M]'(ABB')'", left_only(ABB1, False, "t13")),
        ("(B'BC)'[M(B'BC)']'", right_only(B1BC, False, "t14")),
        ("[(ABB*)'M]'(ABB*)'", left_only(ABBh, False, "t15")),
        ("(B*BC)'[M(B*BC)']'", right_only(BhBC, False, "t16")),
        ("C*C(AA*MC*C)'AA*", chc_aah),
        ("(BC)'[(AB)'M(BC)']'(AB)'", left_right(AB, BC, False, "t18")),
        ("(BC)*[(AB)*M(BC)*]'(AB)*", left_right(AB, BC, True, "t19")),
        ("(B'BC)'[(ABB')'M(B'BC)']'(ABB')'", left_right(ABB1, B1BC, False, "t20")),
        ("(B*BC)'[(ABB*)'M(B*BC)']'(ABB*)'", left_right(ABBh, BhBC, False, "t21")),
        ("(B'BC)*[(ABB')*M(B'BC)*]'(ABB')*", left_right(ABB1, B1BC, True, "t22")),
        ("(B*BC)*[(ABB*)*M(B*BC)*]'(ABB*)*", left_right(ABBh, BhBC, True, "t23")),
    ]


THREE_FACTOR_TEMPLATES = _three_templates()


def mixed_rol_candidates_three(a: Matrix, b: Matrix, c: Matrix, cls: GInvClass,
                               seed: int = 0) -> list[Construction]:
    """Every three-factor template instantiated with inner inverses of class cls.

    In the names, ' marks an inner inverse of the chosen class and * a
    conjugate transpose.
    """
    _check_three(a, b, c)
    _require_12(cls)
    inv = InnerInverses(cls, seed)
    return [Construction(name, fn(a, b, c, inv)) for name, fn in THREE_FACTOR_TEMPLATES]


def _eye(n: int) -> Matrix:
    return Matrix.identity(n)


def _corrected_two(a: Matrix, b: Matrix, cls: GInvClass, seed: int) -> Matrix:
    """B^ A^ - B^ P (Q P)^ Q A^ with P = I - A^ A, Q = I - B B^."""
    g = InnerInverses(cls, seed)
    n = a.cols
    a1, b1 = g("a", a), g("b", b)
    p = msub(_eye(n), matmul(a1, a))
    q = msub(_eye(n), matmul(b, b1))
    corr = mprod(b1, p, g("qp", matmul(q, p)), q, a1)
    return msub(matmul(b1, a1), corr)


def _corrected_three(a: Matrix, b: Matrix, c: Matrix, cls: GInvClass, seed: int) -> Matrix:
    """(BC)^ B (AB)^ - (BC)^ B P (Q B P)^ Q B (AB)^ with
    P = I_p - (AB)^ AB and Q = I_n - BC (BC)^."""
    g = InnerInverses(cls, seed)
    ab, bc = matmul(a, b), matmul(b, c)
    ab1, bc1 = g("ab", ab), g("bc", bc)
    p = msub(_eye(b.cols), matmul(ab1, ab))
    q = msub(_eye(b.rows), matmul(bc, bc1))
    corr = mprod(bc1, b, p, g("qbp", mprod(q, b, p)), q, b, ab1)
    return msub(mprod(bc1, b, ab1), corr)


def huang_construction_two(a: Matrix, b: Matrix, cls: GInvClass = GInvClass.G1,
                           seed: int = 0) -> tuple[Matrix, bool]:
    """Corrected reverse-order candidate built from inner inverses of class
    cls (G1 or G12), with its membership in the same class for AB. With G1
    it always lands in {(AB)^(1)}."""
    _check_two(a, b)
    _require_12(cls)
    g = _corrected_two(a, b, cls, seed)
    return g, is_member(g, matmul(a, b), cls)


def huang_construction_two_12(a: Matrix, b: Matrix, seed: int = 0) -> tuple[Matrix, bool]:
    return huang_construction_two(a, b, GInvClass.G12, seed)


def huang_condition_two_12(a: Matrix, b: Matrix) -> bool:
    """r(AB) = r(A) = r(B): the {1,2} construction always lands in {(AB)^(1,2)}."""
    _check_two(a, b)
    r = rank(matmul(a, b))
    return r == rank(a) == rank(b)


def huang_construction_three(a: Matrix, b: Matrix, c: Matrix, cls: GInvClass = GInvClass.G1,
                             seed: int = 0) -> tuple[Matrix, bool]:
    _check_three(a, b, c)
    _require_12(cls)
    g = _corrected_three(a, b, c, cls, seed)
    return g, is_member(g, mprod(a, b, c), cls)


def huang_construction_three_12(a: Matrix, b: Matrix, c: Matrix, seed: int = 0) -> tuple[Matrix, bool]:
    return huang_construction_three(a, b, c, GInvClass.G12, seed)


def huang_condition_three_12(a: Matrix, b: Matrix, c: Matrix) -> bool:
    """r(ABC) = r(AB) = r(BC)."""
    _check_three(a, b, c)
    r = rank(mprod(a, b, c))
    return r == rank(matmul(a, b)) == rank(matmul(b, c))


def condition_evidence(build: Callable[[int], tuple[Matrix, bool]], seeds: range) -> dict:
    """Run a construction over seeds and summarize membership outcomes."""
    fails = [s for s in seeds if not build(s)[1]]
    return {"tried": len(seeds), "failures": len(fails), "first_failure_seed": fails[0] if fails else None}
