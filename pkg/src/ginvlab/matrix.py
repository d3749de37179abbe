"""Dense immutable matrices over the Gaussian rationals.

Entries are stored row-major as two parallel tuples of ``mpq`` (real and
imaginary parts). A matrix whose imaginary parts are all zero keeps
``im = None`` so purely real work skips the complex arithmetic.
"""

from __future__ import annotations

import json
from operator import mul as _mul
from typing import Iterable, Sequence

from gmpy2 import mpq

from .errors import DimensionMismatch, ParseError, SingularMatrix, InvalidScalar
from .exactnum import GaussianRational, format_scalar, parse_scalar

_Z = mpq(0)
_ONE = mpq(1)
_MPQ = type(_Z)


def _q(x) -> mpq:
    return x if type(x) is _MPQ else mpq(x)


class Matrix:
    __slots__ = ("rows", "cols", "re", "im", "_hash")

    def __init__(self, rows: int, cols: int, entries: Iterable = ()):
        if rows < 0 or cols < 0:
            raise DimensionMismatch("negative dimension")
        re_l: list = []
        im_l: list = []
        for x in entries:
            g = GaussianRational.coerce(x)
            re_l.append(g.re)
            im_l.append(g.im)
        if len(re_l) != rows * cols:
            raise DimensionMismatch(f"expected {rows * cols} entries, got {len(re_l)}")
        self.rows = rows
        self.cols = cols
        self.re = tuple(re_l)
        self.im = tuple(im_l) if any(im_l) else None
        self._hash = None

    @classmethod
    def _raw(cls, rows: int, cols: int, re: tuple, im: tuple | None) -> Matrix:
        m = object.__new__(cls)
        m.rows = rows
        m.cols = cols
        m.re = re
        m.im = im if (im is not None and any(im)) else None
        m._hash = None
        return m

    # ---- constructors
    @classmethod
    def from_rows(cls, rows: Sequence[Sequence]) -> Matrix:
        rows = list(rows)
        r = len(rows)
        c = len(rows[0]) if r else 0
        flat = []
        for row in rows:
            if len(row) != c:
                raise DimensionMismatch("ragged rows")
            flat.extend(row)
        return cls(r, c, flat)

    @classmethod
    def zeros(cls, rows: int, cols: int) -> Matrix:
        return cls._raw(rows, cols, (_Z,) * (rows * cols), None)

    @classmethod
    def identity(cls, n: int) -> Matrix:
        re = [_Z] * (n * n)
        for i in range(n):
            re[i * n + i] = _ONE
        return cls._raw(n, n, tuple(re), None)

    @classmethod
    def from_parts(cls, rows: int, cols: int, re: Sequence, im: Sequence | None = None) -> Matrix:
        if len(re) != rows * cols or (im is not None and len(im) != rows * cols):
            raise DimensionMismatch("part length does not match shape")
        return cls._raw(rows, cols, tuple(_q(x) for x in re),
                        None if im is None else tuple(_q(x) for x in im))

    # ---- basic views
    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    @property
    def is_real(self) -> bool:
        return self.im is None

    def _im(self) -> tuple:
        return self.im if self.im is not None else (_Z,) * (self.rows * self.cols)

    @property
    def entries(self) -> tuple[GaussianRational, ...]:
        im = self._im()
        return tuple(GaussianRational(a, b) for a, b in zip(self.re, im))

    def __getitem__(self, ij: tuple[int, int]) -> GaussianRational:
        i, j = ij
        if not (0 <= i < self.rows and 0 <= j < self.cols):
            raise IndexError(ij)
        k = i * self.cols + j
        return GaussianRational(self.re[k], self.im[k] if self.im is not None else _Z)

    def tolist(self) -> list[list[GaussianRational]]:
        e = self.entries
        return [list(e[i * self.cols:(i + 1) * self.cols]) for i in range(self.rows)]

    def is_zero(self) -> bool:
        return self.im is None and not any(self.re)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Matrix):
            return NotImplemented
        return (self.rows == other.rows and self.cols == other.cols
                and self.re == other.re and self.im == other.im)

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.rows, self.cols, self.re, self.im))
        return self._hash

    def __repr__(self) -> str:
        return f"Matrix({self.rows}x{self.cols}, {self.to_strings()!r})"

    def to_strings(self) -> list[list[str]]:
        return [[format_scalar(x) for x in row] for row in self.tolist()]

    # ---- arithmetic
    def __add__(self, other: Matrix) -> Matrix:
        return madd(self, other)

    def __sub__(self, other: Matrix) -> Matrix:
        return msub(self, other)

    def __neg__(self) -> Matrix:
        return Matrix._raw(self.rows, self.cols, tuple(-x for x in self.re),
                           None if self.im is None else tuple(-x for x in self.im))

    def __matmul__(self, other: Matrix) -> Matrix:
        return matmul(self, other)

    @property
    def H(self) -> Matrix:
        return ctranspose(self)

    @property
    def T(self) -> Matrix:
        return transpose(self)


def _check_same(a: Matrix, b: Matrix) -> None:
    if a.rows != b.rows or a.cols != b.cols:
        raise DimensionMismatch(f"shapes {a.shape} and {b.shape} differ")


def madd(a: Matrix, b: Matrix) -> Matrix:
    _check_same(a, b)
    re = tuple(x + y for x, y in zip(a.re, b.re))
    if a.im is None and b.im is None:
        return Matrix._raw(a.rows, a.cols, re, None)
    return Matrix._raw(a.rows, a.cols, re, tuple(x + y for x, y in zip(a._im(), b._im())))


def msub(a: Matrix, b: Matrix) -> Matrix:
    _check_same(a, b)
    re = tuple(x - y for x, y in zip(a.re, b.re))
    if a.im is None and b.im is None:
        return Matrix._raw(a.rows, a.cols, re, None)
    return Matrix._raw(a.rows, a.cols, re, tuple(x - y for x, y in zip(a._im(), b._im())))


def scale(lam, a: Matrix) -> Matrix:
    g = GaussianRational.coerce(lam)
    if not g.im and a.im is None:
        return Matrix._raw(a.rows, a.cols, tuple(g.re * x for x in a.re), None)
    ai = a._im()
    re = tuple(g.re * x - g.im * y for x, y in zip(a.re, ai))
    im = tuple(g.re * y + g.im * x for x, y in zip(a.re, ai))
    return Matrix._raw(a.rows, a.cols, re, im)


def _real_product(are, bre, m, k, n):
    if k == 0:
        return [_Z] * (m * n)
    bcols = [bre[j::n] for j in range(n)]
    out = []
    for i in range(m):
        row = are[i * k:(i + 1) * k]
        for col in bcols:
            out.append(sum(map(_mul, row, col), _Z))
    return out


def matmul(a: Matrix, b: Matrix) -> Matrix:
    if a.cols != b.rows:
        raise DimensionMismatch(f"cannot multiply {a.shape} by {b.shape}")
    m, k, n = a.rows, a.cols, b.cols
    if a.im is None and b.im is None:
        return Matrix._raw(m, n, tuple(_real_product(a.re, b.re, m, k, n)), None)
    rr = _real_product(a.re, b.re, m, k, n)
    if a.im is None:
        ii = None
        ri = _real_product(a.re, b.im, m, k, n)
        ir = None
    elif b.im is None:
        ii = None
        ri = None
        ir = _real_product(a.im, b.re, m, k, n)
    else:
        ii = _real_product(a.im, b.im, m, k, n)
        ri = _real_product(a.re, b.im, m, k, n)
        ir = _real_product(a.im, b.re, m, k, n)
    re = tuple(rr) if ii is None else tuple(x - y for x, y in zip(rr, ii))
    if ri is None:
        im = tuple(ir)
    elif ir is None:
        im = tuple(ri)
    else:
        im = tuple(x + y for x, y in zip(ri, ir))
    return Matrix._raw(m, n, re, im)


def mprod(*ms: Matrix) -> Matrix:
    out = ms[0]
    for x in ms[1:]:
        out = matmul(out, x)
    return out


def transpose(a: Matrix) -> Matrix:
    m, n = a.rows, a.cols
    re = tuple(a.re[i * n + j] for j in range(n) for i in range(m))
    im = None if a.im is None else tuple(a.im[i * n + j] for j in range(n) for i in range(m))
    return Matrix._raw(n, m, re, im)


def ctranspose(a: Matrix) -> Matrix:
    m, n = a.rows, a.cols
    re = tuple(a.re[i * n + j] for j in range(n) for i in range(m))
    im = None if a.im is None else tuple(-a.im[i * n + j] for j in range(n) for i in range(m))
    return Matrix._raw(n, m, re, im)


# ---- elimination


def _rows_of(a: Matrix):
    n = a.cols
    re = [list(a.re[i * n:(i + 1) * n]) for i in range(a.rows)]
    if a.im is None:
        return re, None
    im = [list(a.im[i * n:(i + 1) * n]) for i in range(a.rows)]
    return re, im


def _eliminate(re, im, nrows, ncols, reduced: bool, stop_col: int | None = None):
    """In-place Gauss-Jordan. Pivot = first nonzero entry at or below the
    current row, scanning columns left to right. Returns pivot columns."""
    pivots = []
    r = 0
    last = ncols if stop_col is None else stop_col
    for c in range(last):
        if r >= nrows:
            break
        p = None
        if im is None:
            for i in range(r, nrows):
                if re[i][c]:
                    p = i
                    break
        else:
            for i in range(r, nrows):
                if re[i][c] or im[i][c]:
                    p = i
                    break
        if p is None:
            continue
        if p != r:
            re[p], re[r] = re[r], re[p]
            if im is not None:
                im[p], im[r] = im[r], im[p]
        prow = re[r]
        if im is None:
            piv = prow[c]
            if piv != _ONE:
                ipiv = _ONE / piv
                for j in range(c, ncols):
                    if prow[j]:
                        prow[j] = prow[j] * ipiv
            targets = range(nrows) if reduced else range(r + 1, nrows)
            for i in targets:
                if i == r:
                    continue
                row = re[i]
                f = row[c]
                if f:
                    for j in range(c, ncols):
                        pj = prow[j]
                        if pj:
                            row[j] = row[j] - f * pj
        else:
            pim = im[r]
            a, b = prow[c], pim[c]
            n2 = a * a + b * b
            ia, ib = a / n2, -b / n2
            for j in range(c, ncols):
                x, y = prow[j], pim[j]
                if x or y:
                    prow[j] = x * ia - y * ib
                    pim[j] = x * ib + y * ia
            targets = range(nrows) if reduced else range(r + 1, nrows)
            for i in targets:
                if i == r:
                    continue
                row, rim = re[i], im[i]
                fr, fi = row[c], rim[c]
                if fr or fi:
                    for j in range(c, ncols):
                        x, y = prow[j], pim[j]
                        if x or y:
                            row[j] = row[j] - (fr * x - fi * y)
                            rim[j] = rim[j] - (fr * y + fi * x)
        pivots.append(c)
        r += 1
    return pivots


def rref(a: Matrix) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form and pivot columns."""
    re, im = _rows_of(a)
    piv = _eliminate(re, im, a.rows, a.cols, reduced=True)
    fre = tuple(x for row in re for x in row)
    fim = None if im is None else tuple(x for row in im for x in row)
    return Matrix._raw(a.rows, a.cols, fre, fim), piv


def rank(a: Matrix) -> int:
    if a.rows == 0 or a.cols == 0:
        return 0
    if a.is_zero():
        return 0
    # eliminate along the shorter side
    if a.cols < a.rows:
        a = transpose(a)
    re, im = _rows_of(a)
    return len(_eliminate(re, im, a.rows, a.cols, reduced=False))


def range_subset(d: Matrix, c: Matrix) -> bool:
    """R(D) is contained in R(C)."""
    if d.rows != c.rows:
        raise DimensionMismatch("range_subset needs equal row counts")
    if d.is_zero():
        return True
    return rank(hblock([c, d])) == rank(c)


def range_equal(a: Matrix, b: Matrix) -> bool:
    if a.rows != b.rows:
        raise DimensionMismatch("range_equal needs equal row counts")
    ra, rb = rank(a), rank(b)
    if ra != rb:
        return False
    return rank(hblock([a, b])) == ra


def hblock(parts: Sequence[Matrix]) -> Matrix:
    parts = list(parts)
    if not parts:
        raise DimensionMismatch("empty block list")
    m = parts[0].rows
    if any(p.rows != m for p in parts):
        raise DimensionMismatch("hblock parts need equal row counts")
    n = sum(p.cols for p in parts)
    re: list = []
    im: list = []
    cplx = any(p.im is not None for p in parts)
    for i in range(m):
        for p in parts:
            re.extend(p.re[i * p.cols:(i + 1) * p.cols])
            if cplx:
                im.extend(p._im()[i * p.cols:(i + 1) * p.cols])
    return Matrix._raw(m, n, tuple(re), tuple(im) if cplx else None)


def vblock(parts: Sequence[Matrix]) -> Matrix:
    parts = list(parts)
    if not parts:
        raise DimensionMismatch("empty block list")
    n = parts[0].cols
    if any(p.cols != n for p in parts):
        raise DimensionMismatch("vblock parts need equal column counts")
    m = sum(p.rows for p in parts)
    cplx = any(p.im is not None for p in parts)
    re = tuple(x for p in parts for x in p.re)
    im = tuple(x for p in parts for x in p._im()) if cplx else None
    return Matrix._raw(m, n, re, im)


def block2x2(a: Matrix, b: Matrix, c: Matrix, d: Matrix) -> Matrix:
    return vblock([hblock([a, b]), hblock([c, d])])


def block(grid: Sequence[Sequence[Matrix]]) -> Matrix:
    return vblock([hblock(row) for row in grid])


def submatrix(a: Matrix, rows: Sequence[int], cols: Sequence[int]) -> Matrix:
    n = a.cols
    re = tuple(a.re[i * n + j] for i in rows for j in cols)
    im = None if a.im is None else tuple(a.im[i * n + j] for i in rows for j in cols)
    return Matrix._raw(len(rows), len(cols), re, im)


def full_rank_factorization(a: Matrix) -> tuple[Matrix, Matrix]:
    """A = F G with F the pivot columns of A and G the nonzero rows of rref(A)."""
    r_mat, piv = rref(a)
    r = len(piv)
    f = submatrix(a, range(a.rows), piv)
    g = submatrix(r_mat, range(r), range(a.cols))
    return f, g


def inverse(a: Matrix) -> Matrix:
    if a.rows != a.cols:
        raise DimensionMismatch("inverse of a non-square matrix")
    n = a.rows
    aug = hblock([a, Matrix.identity(n)])
    re, im = _rows_of(aug)
    piv = _eliminate(re, im, n, 2 * n, reduced=True, stop_col=n)
    if len(piv) != n:
        raise SingularMatrix(f"matrix has rank {len(piv)} < {n}")
    fre = tuple(x for row in re for x in row[n:])
    fim = None if im is None else tuple(x for row in im for x in row[n:])
    return Matrix._raw(n, n, fre, fim)


def is_nonsingular(a: Matrix) -> bool:
    return a.rows == a.cols and rank(a) == a.rows


def nullspace(a: Matrix) -> Matrix:
    """Columns form a basis of the null space of A (n x (n - r))."""
    r_mat, piv = rref(a)
    n = a.cols
    free = [j for j in range(n) if j not in piv]
    cols = []
    for fj in free:
        vre = [_Z] * n
        vim = [_Z] * n
        vre[fj] = _ONE
        for i, pj in enumerate(piv):
            k = i * n + fj
            vre[pj] = -r_mat.re[k]
            if r_mat.im is not None:
                vim[pj] = -r_mat.im[k]
        cols.append((vre, vim))
    re = tuple(cols[c][0][i] for i in range(n) for c in range(len(cols)))
    im = tuple(cols[c][1][i] for i in range(n) for c in range(len(cols)))
    return Matrix._raw(n, len(cols), re, im)


def solve_any(coef: Matrix, rhs: Matrix) -> Matrix | None:
    """Some solution X of coef X = rhs, or None when inconsistent."""
    if coef.rows != rhs.rows:
        raise DimensionMismatch("solve_any needs equal row counts")
    n = coef.cols
    k = rhs.cols
    aug = hblock([coef, rhs])
    re, im = _rows_of(aug)
    piv = _eliminate(re, im, coef.rows, n + k, reduced=True, stop_col=n)
    # inconsistent if any row past the pivots has a nonzero rhs
    for i in range(len(piv), coef.rows):
        if any(re[i][n:]) or (im is not None and any(im[i][n:])):
            return None
    xre = [[_Z] * k for _ in range(n)]
    xim = [[_Z] * k for _ in range(n)]
    for i, pj in enumerate(piv):
        xre[pj] = re[i][n:]
        if im is not None:
            xim[pj] = im[i][n:]
    return Matrix._raw(n, k, tuple(x for row in xre for x in row),
                       tuple(x for row in xim for x in row))


def kron(a: Matrix, b: Matrix) -> Matrix:
    m, n, p, q = a.rows, a.cols, b.rows, b.cols
    ae, be = a.entries, b.entries
    out = []
    for i in range(m):
        for k in range(p):
            for j in range(n):
                x = ae[i * n + j]
                for l in range(q):
                    out.append(x * be[k * q + l])
    return Matrix(m * p, n * q, out)


def vec(a: Matrix) -> Matrix:
    """Column-stacking vectorization."""
    return Matrix._raw(
        a.rows * a.cols, 1,
        tuple(a.re[i * a.cols + j] for j in range(a.cols) for i in range(a.rows)),
        None if a.im is None else tuple(a.im[i * a.cols + j] for j in range(a.cols) for i in range(a.rows)),
    )


def unvec(v: Matrix, rows: int, cols: int) -> Matrix:
    if v.rows != rows * cols or v.cols != 1:
        raise DimensionMismatch("unvec shape mismatch")
    re = tuple(v.re[j * rows + i] for i in range(rows) for j in range(cols))
    im = None if v.im is None else tuple(v.im[j * rows + i] for i in range(rows) for j in range(cols))
    return Matrix._raw(rows, cols, re, im)


# ---- file format


def matrix_to_obj(a: Matrix) -> dict:
    return {"rows": a.rows, "cols": a.cols, "data": a.to_strings()}


def matrix_from_obj(obj) -> Matrix:
    if not isinstance(obj, dict):
        raise ParseError("matrix must be a JSON object with rows, cols, data")
    for key in ("rows", "cols", "data"):
        if key not in obj:
            raise ParseError(f"missing field {key!r}")
    rows, cols, data = obj["rows"], obj["cols"], obj["data"]
    if not isinstance(rows, int) or not isinstance(cols, int) or rows < 0 or cols < 0:
        raise ParseError("rows and cols must be non-negative integers")
    if not isinstance(data, list) or len(data) != rows:
        raise ParseError(f"data must be a list of {rows} rows")
    flat = []
    for i, row in enumerate(data):
        if not isinstance(row, list) or len(row) != cols:
            raise ParseError(f"row {i} must have {cols} entries")
        for j, s in enumerate(row):
            if isinstance(s, int) and not isinstance(s, bool):
                s = str(s)
            if not isinstance(s, str):
                raise ParseError(f"entry at row {i}, col {j} is not a scalar string")
            try:
                flat.append(parse_scalar(s))
            except InvalidScalar as exc:
                raise ParseError(f"bad scalar at row {i}, col {j}: {exc}") from None
    return Matrix(rows, cols, flat)


def loads_matrix(text: str) -> Matrix:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON at line {exc.lineno}, col {exc.colno}: {exc.msg}") from None
    return matrix_from_obj(obj)


def dumps_matrix(a: Matrix) -> str:
    return json.dumps(matrix_to_obj(a))
