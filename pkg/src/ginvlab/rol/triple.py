"""Triples (A, B, C) with A and C nonsingular and cached derived data."""

from __future__ import annotations

import hashlib
from functools import cached_property

from ..errors import DimensionMismatch, SingularMatrix
from ..ginverse import pinv
from ..matrix import Matrix, ctranspose, inverse, mprod, range_equal, rank
from .catalog import Facts


class TripleInstance:
    def __init__(self, a: Matrix, b: Matrix, c: Matrix):
        m, n = b.shape
        if a.shape != (m, m):
            raise DimensionMismatch(f"A must be {m}x{m}, got {a.rows}x{a.cols}")
        if c.shape != (n, n):
            raise DimensionMismatch(f"C must be {n}x{n}, got {c.rows}x{c.cols}")
        if rank(a) != m:
            raise SingularMatrix("A must be nonsingular")
        if rank(c) != n:
            raise SingularMatrix("C must be nonsingular")
        self.a, self.b, self.c = a, b, c
        self.m_product = mprod(a, b, c)
        self.rank_b = rank(b)
        if rank(self.m_product) != self.rank_b:
            raise AssertionError("r(ABC) must equal r(B) for nonsingular A and C")

    @property
    def m(self) -> int:
        return self.b.rows

    @property
    def n(self) -> int:
        return self.b.cols

    @cached_property
    def a_inv(self) -> Matrix:
        return inverse(self.a)

    @cached_property
    def c_inv(self) -> Matrix:
        return inverse(self.c)

    @cached_property
    def facts(self) -> Facts:
        a, b, c = self.a, self.b, self.c
        aha_b = mprod(ctranspose(a), a, b)
        cch_bh = mprod(c, ctranspose(c), ctranspose(b))
        return Facts(
            m=self.m,
            n=self.n,
            rank_b=self.rank_b,
            range_a=range_equal(aha_b, b),
            range_c=range_equal(cch_bh, ctranspose(b)),
        )

    @cached_property
    def digest(self) -> str:
        h = hashlib.sha256()
        for x in (self.a, self.b, self.c):
            h.update(repr(x.to_strings()).encode())
        return h.hexdigest()[:16]

    def to_b_side(self, x: Matrix) -> Matrix:
        """X -> C X A, mapping a candidate for M to a candidate for B."""
        return mprod(self.c, x, self.a)

    def to_m_side(self, g: Matrix) -> Matrix:
        """G -> C^-1 G A^-1."""
        return mprod(self.c_inv, g, self.a_inv)

    @cached_property
    def m_pinv(self) -> Matrix:
        return pinv(self.m_product)

    @cached_property
    def reversed_pinv(self) -> Matrix:
        """C^-1 B^dagger A^-1."""
        return self.to_m_side(pinv(self.b))

    def __repr__(self) -> str:
        return f"TripleInstance(m={self.m}, n={self.n}, r(B)={self.rank_b}, id={self.digest})"


def reduction_identities_hold(inst: TripleInstance, samples_b: list[Matrix], samples_m: list[Matrix]) -> bool:
    """M C^-1 G A^-1 M = M for {1}-inverses G of B, and B C X A B = B for
    {1}-inverses X of M."""
    mm, b = inst.m_product, inst.b
    for g in samples_b:
        if mprod(mm, inst.to_m_side(g), mm) != mm:
            return False
    for x in samples_m:
        if mprod(b, inst.to_b_side(x), b) != b:
            return False
    return True

