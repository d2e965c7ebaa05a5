"""Exact linear algebra over the Gaussian rationals Q(i).

Real values are carried as ``gmpy2.mpq``; values with a non-zero imaginary
part are ``Scalar`` instances.  Every arithmetic result is normalised so that
a ``Scalar`` never has ``im == 0``, which keeps purely rational matrices on
the fast ``mpq`` path.
"""

from __future__ import annotations

import re as _re
from fractions import Fraction
from typing import Iterable, Sequence

from gmpy2 import mpq

from .errors import ContainmentViolation, KindUnsupported, NotInSpan

ZERO = mpq(0)
ONE = mpq(1)


def _q(x) -> mpq:
    if isinstance(x, Fraction):
        return mpq(x.numerator, x.denominator)
    return mpq(x)


class Scalar:
    """Gaussian rational re + im*i with im != 0 (see ``gq``)."""

    __slots__ = ("re", "im")

    def __init__(self, re, im):
        self.re = _q(re)
        self.im = _q(im)

    # arithmetic -------------------------------------------------------
    def __add__(self, o):
        if isinstance(o, Scalar):
            return gq(self.re + o.re, self.im + o.im)
        return gq(self.re + o, self.im)

    __radd__ = __add__

    def __sub__(self, o):
        if isinstance(o, Scalar):
            return gq(self.re - o.re, self.im - o.im)
        return gq(self.re - o, self.im)

    def __rsub__(self, o):
        return gq(o - self.re, -self.im)

    def __neg__(self):
        return Scalar(-self.re, -self.im)

    def __mul__(self, o):
        if isinstance(o, Scalar):
            return gq(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)
        if not o:
            return ZERO
        return Scalar(self.re * o, self.im * o)

    __rmul__ = __mul__

    def __truediv__(self, o):
        if isinstance(o, Scalar):
            n = o.re * o.re + o.im * o.im
            return gq((self.re * o.re + self.im * o.im) / n, (self.im * o.re - self.re * o.im) / n)
        return Scalar(self.re / o, self.im / o)

    def __rtruediv__(self, o):
        n = self.re * self.re + self.im * self.im
        return gq(o * self.re / n, -o * self.im / n)

    def __bool__(self):
        return True

    def __eq__(self, o):
        if isinstance(o, Scalar):
            return self.re == o.re and self.im == o.im
        return False

    def __hash__(self):
        return hash((self.re, self.im))

    def conjugate(self):
        return Scalar(self.re, -self.im)

    def __repr__(self):
        return f"Scalar({fmt(self)!r})"


def gq(re, im=0):
    """Build a normalised Gaussian rational."""
    im = _q(im)
    if im == 0:
        return _q(re)
    return Scalar(re, im)


I = Scalar(0, 1)


def coerce(x):
    if isinstance(x, Scalar):
        return x
    if isinstance(x, complex):
        return gq(Fraction(x.real), Fraction(x.imag))
    if isinstance(x, str):
        return parse_scalar(x)
    return _q(x)


def conj(x):
    return x.conjugate() if isinstance(x, Scalar) else x


def real_part(x) -> mpq:
    return x.re if isinstance(x, Scalar) else x


def imag_part(x) -> mpq:
    return x.im if isinstance(x, Scalar) else ZERO


def is_real(x) -> bool:
    return not isinstance(x, Scalar)


def _fmt_q(q: mpq, signed: bool) -> str:
    s = f"{abs(q.numerator)}/{q.denominator}"
    if q < 0:
        return "-" + s
    return ("+" + s) if signed else s


def fmt(x) -> str:
    """Canonical text form ``+a/b+c/d*i`` (lowest terms, explicit signs)."""
    x = coerce(x)
    return _fmt_q(real_part(x), True) + _fmt_q(imag_part(x), True) + "*i"


def fmt_short(x) -> str:
    """Compact form: ``-3/2`` for rationals, the canonical form otherwise."""
    x = coerce(x)
    if isinstance(x, Scalar):
        return fmt(x)
    return str(x)


_RAT = r"[+-]?\d+(?:/\d+)?"
_FULL = _re.compile(rf"^\s*({_RAT})\s*([+-])\s*(\d+(?:/\d+)?)\s*\*\s*i\s*$")
_IMAG = _re.compile(r"^\s*([+-]?(?:\d+(?:/\d+)?)?)\s*\*?\s*i\s*$")


def _mpq(s: str) -> mpq:
    return mpq(s[1:] if s.startswith("+") else s)


def parse_scalar(s: str):
    s = s.strip()
    m = _FULL.match(s)
    if m:
        im = mpq(m.group(3))
        return gq(_mpq(m.group(1)), im if m.group(2) == "+" else -im)
    if _re.fullmatch(_RAT, s):
        return _mpq(s)
    m = _IMAG.match(s)
    if m:
        coef = m.group(1)
        if coef in (None, "", "+"):
            return I
        if coef == "-":
            return -I
        return gq(0, _mpq(coef))
    raise ValueError(f"not a Gaussian rational: {s!r}")


# ---------------------------------------------------------------------------
# matrices


class Mat:
    """Dense immutable matrix of Gaussian rationals."""

    __slots__ = ("rows", "cols", "_d")

    def __init__(self, rows: int, cols: int, data: Sequence[Sequence]):
        self.rows = rows
        self.cols = cols
        self._d = tuple(tuple(coerce(x) for x in r) for r in data)
        if len(self._d) != rows or any(len(r) != cols for r in self._d):
            raise ValueError("entries do not match the declared shape")

    @classmethod
    def _raw(cls, rows, cols, data):
        m = cls.__new__(cls)
        m.rows, m.cols = rows, cols
        m._d = tuple(tuple(r) for r in data)
        return m

    # constructors -----------------------------------------------------
    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], cols: int | None = None) -> "Mat":
        rows = list(rows)
        if cols is None:
            cols = len(rows[0]) if rows else 0
        return cls(len(rows), cols, rows)

    @classmethod
    def from_cols(cls, columns: Sequence[Sequence], rows: int | None = None) -> "Mat":
        columns = list(columns)
        if rows is None:
            rows = len(columns[0]) if columns else 0
        return cls(rows, len(columns), [[c[i] for c in columns] for i in range(rows)])

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "Mat":
        return cls._raw(rows, cols, [[ZERO] * cols for _ in range(rows)])

    @classmethod
    def identity(cls, n: int) -> "Mat":
        return cls._raw(n, n, [[ONE if i == j else ZERO for j in range(n)] for i in range(n)])

    @classmethod
    def diag(cls, entries: Sequence) -> "Mat":
        n = len(entries)
        return cls(n, n, [[entries[i] if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def vector(cls, entries: Sequence) -> "Mat":
        return cls(len(entries), 1, [[x] for x in entries])

    @classmethod
    def unit(cls, n: int, i: int) -> "Mat":
        return cls._raw(n, 1, [[ONE if k == i else ZERO] for k in range(n)])

    # access -----------------------------------------------------------
    def __getitem__(self, ij):
        i, j = ij
        return self._d[i][j]

    def row(self, i: int) -> tuple:
        return self._d[i]

    def col(self, j: int) -> tuple:
        return tuple(r[j] for r in self._d)

    def columns(self) -> list[tuple]:
        return [self.col(j) for j in range(self.cols)]

    def tolist(self) -> list[list]:
        return [list(r) for r in self._d]

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def select_cols(self, idx: Iterable[int]) -> "Mat":
        idx = list(idx)
        return Mat._raw(self.rows, len(idx), [[r[j] for j in idx] for r in self._d])

    def select_rows(self, idx: Iterable[int]) -> "Mat":
        idx = list(idx)
        return Mat._raw(len(idx), self.cols, [self._d[i] for i in idx])

    def block(self, r0: int, r1: int, c0: int, c1: int) -> "Mat":
        return Mat._raw(r1 - r0, c1 - c0, [r[c0:c1] for r in self._d[r0:r1]])

    # algebra ----------------------------------------------------------
    @property
    def T(self) -> "Mat":
        return Mat._raw(self.cols, self.rows, list(zip(*self._d)) if self.rows else [() for _ in range(self.cols)])

    def conj(self) -> "Mat":
        if self.is_real():
            return self
        return Mat._raw(self.rows, self.cols, [[conj(x) for x in r] for r in self._d])

    @property
    def H(self) -> "Mat":
        return self.conj().T

    def is_real(self) -> bool:
        return all(not isinstance(x, Scalar) for r in self._d for x in r)

    def is_zero(self) -> bool:
        return not any(x for r in self._d for x in r)

    def __matmul__(self, o: "Mat") -> "Mat":
        if self.cols != o.rows:
            raise ValueError(f"shape mismatch {self.shape} @ {o.shape}")
        ot = o.T._d
        out = []
        for r in self._d:
            nz = [(k, x) for k, x in enumerate(r) if x]
            row = []
            for c in ot:
                s = ZERO
                for k, x in nz:
                    y = c[k]
                    if y:
                        s = s + x * y
                row.append(s)
            out.append(row)
        return Mat._raw(self.rows, o.cols, out)

    def _zip(self, o, op):
        if self.shape != o.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {o.shape}")
        return Mat._raw(self.rows, self.cols, [[op(a, b) for a, b in zip(r, s)] for r, s in zip(self._d, o._d)])

    def __add__(self, o):
        return self._zip(o, lambda a, b: a + b)

    def __sub__(self, o):
        return self._zip(o, lambda a, b: a - b)

    def __neg__(self):
        return Mat._raw(self.rows, self.cols, [[-x for x in r] for r in self._d])

    def scale(self, c) -> "Mat":
        c = coerce(c)
        return Mat._raw(self.rows, self.cols, [[c * x for x in r] for r in self._d])

    def __eq__(self, o):
        return isinstance(o, Mat) and self.shape == o.shape and self._d == o._d

    def __hash__(self):
        return hash((self.shape, self._d))

    def __repr__(self):
        body = "; ".join(" ".join(_short(x) for x in r) for r in self._d)
        return f"Mat({self.rows}x{self.cols}: {body})"


def _short(x) -> str:
    if isinstance(x, Scalar):
        return f"({x.re}{'+' if x.im >= 0 else '-'}{abs(x.im)}i)"
    return str(x)


def hstack(mats: Sequence[Mat], rows: int | None = None) -> Mat:
    mats = list(mats)
    if not mats:
        return Mat.zeros(rows or 0, 0)
    r = mats[0].rows
    if any(m.rows != r for m in mats):
        raise ValueError("hstack row mismatch")
    return Mat._raw(r, sum(m.cols for m in mats), [sum((m._d[i] for m in mats), ()) for i in range(r)])


def vstack(mats: Sequence[Mat], cols: int | None = None) -> Mat:
    mats = list(mats)
    if not mats:
        return Mat.zeros(0, cols or 0)
    c = mats[0].cols
    if any(m.cols != c for m in mats):
        raise ValueError("vstack column mismatch")
    return Mat._raw(sum(m.rows for m in mats), c, [r for m in mats for r in m._d])


def block_diag(mats: Sequence[Mat]) -> Mat:
    R = sum(m.rows for m in mats)
    C = sum(m.cols for m in mats)
    out = [[ZERO] * C for _ in range(R)]
    r0 = c0 = 0
    for m in mats:
        for i in range(m.rows):
            out[r0 + i][c0:c0 + m.cols] = m._d[i]
        r0 += m.rows
        c0 += m.cols
    return Mat._raw(R, C, out)


# ---------------------------------------------------------------------------
# elimination


def _rref_rows(rows: list[list], ncols: int, limit: int | None = None):
    """Gauss-Jordan in place.  Returns pivot columns.  Skips zeros, so sparse
    inputs stay cheap.  ``limit`` stops pivot search after that column."""
    m = len(rows)
    piv = []
    r = 0
    stop = ncols if limit is None else limit
    for c in range(stop):
        if r == m:
            break
        p = None
        for i in range(r, m):
            if rows[i][c]:
                p = i
                break
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        row = rows[r]
        lead = row[c]
        if lead != 1:
            inv = ONE / lead
            row = [x * inv if x else x for x in row]
            rows[r] = row
        nz = [j for j in range(c, ncols) if row[j]]
        for i in range(m):
            if i != r:
                f = rows[i][c]
                if f:
                    ri = rows[i]
                    for j in nz:
                        ri[j] = ri[j] - f * row[j]
        piv.append(c)
        r += 1
    return piv


def rref(M: Mat) -> tuple[Mat, list[int]]:
    rows = [list(r) for r in M._d]
    piv = _rref_rows(rows, M.cols)
    return Mat._raw(M.rows, M.cols, rows), piv


def rank(M: Mat) -> int:
    if M.rows == 0 or M.cols == 0:
        return 0
    if M.rows > M.cols:
        M = M.T
    return len(_rref_rows([list(r) for r in M._d], M.cols))


def det(M: Mat):
    if M.rows != M.cols:
        raise ValueError("determinant of a non-square matrix")
    rows = [list(r) for r in M._d]
    n = M.rows
    d = ONE
    for c in range(n):
        p = next((i for i in range(c, n) if rows[i][c]), None)
        if p is None:
            return ZERO
        if p != c:
            rows[c], rows[p] = rows[p], rows[c]
            d = -d
        piv = rows[c][c]
        d = d * piv
        for i in range(c + 1, n):
            f = rows[i][c]
            if f:
                f = f / piv
                ri, rc = rows[i], rows[c]
                for j in range(c, n):
                    if rc[j]:
                        ri[j] = ri[j] - f * rc[j]
    return d


def solve(A: Mat, B: Mat) -> Mat:
    """A particular X with A X = B; raises NotInSpan when inconsistent."""
    if A.rows != B.rows:
        raise ValueError("solve: row mismatch")
    aug = [list(a) + list(b) for a, b in zip(A._d, B._d)]
    piv = _rref_rows(aug, A.cols + B.cols, limit=A.cols)
    rk = len(piv)
    for i in range(rk, A.rows):
        if any(aug[i][A.cols:]):
            raise NotInSpan("right-hand side not in the column span")
    X = [[ZERO] * B.cols for _ in range(A.cols)]
    for i, c in enumerate(piv):
        X[c] = aug[i][A.cols:]
    return Mat._raw(A.cols, B.cols, X)


def inverse(A: Mat) -> Mat:
    if A.rows != A.cols:
        raise ValueError("inverse of a non-square matrix")
    X = solve(A, Mat.identity(A.rows))
    if rank(A) != A.rows:
        raise NotInSpan("matrix is singular")
    return X


def _kernel_cols(M: Mat) -> list[list]:
    rows = [list(r) for r in M._d]
    piv = _rref_rows(rows, M.cols)
    free = [j for j in range(M.cols) if j not in set(piv)]
    out = []
    for f in free:
        v = [ZERO] * M.cols
        v[f] = ONE
        for i, c in enumerate(piv):
            x = rows[i][f]
            if x:
                v[c] = -x
        out.append(v)
    return out


# ---------------------------------------------------------------------------
# subspaces


class Subspace:
    """Column span of ``basis`` inside a space of dimension ``ambient_dim``.

    The basis columns are always linearly independent.
    """

    __slots__ = ("ambient_dim", "basis")

    def __init__(self, ambient_dim: int, basis: Mat | None = None, *, check: bool = True):
        if basis is None:
            basis = Mat.zeros(ambient_dim, 0)
        if basis.rows != ambient_dim:
            raise ValueError("basis rows must equal the ambient dimension")
        if check and basis.cols and rank(basis) != basis.cols:
            raise ValueError("basis columns are linearly dependent")
        self.ambient_dim = ambient_dim
        self.basis = basis

    @classmethod
    def span(cls, M: Mat) -> "Subspace":
        if M.cols == 0:
            return cls(M.rows)
        _, piv = rref(M)
        return cls(M.rows, M.select_cols(piv), check=False)

    @classmethod
    def zero(cls, n: int) -> "Subspace":
        return cls(n)

    @classmethod
    def full(cls, n: int) -> "Subspace":
        return cls(n, Mat.identity(n), check=False)

    @property
    def dim(self) -> int:
        return self.basis.cols

    def vectors(self) -> list[Mat]:
        return [self.basis.select_cols([j]) for j in range(self.dim)]

    def contains(self, other: "Subspace | Mat") -> bool:
        M = other.basis if isinstance(other, Subspace) else other
        if M.cols == 0:
            return True
        try:
            solve(self.basis, M)
            return True
        except NotInSpan:
            return False

    def coordinates(self, M: Mat) -> Mat:
        return solve(self.basis, M)

    def __add__(self, other: "Subspace") -> "Subspace":
        return Subspace.span(hstack([self.basis, other.basis]))

    def intersect(self, other: "Subspace") -> "Subspace":
        if self.dim == 0 or other.dim == 0:
            return Subspace(self.ambient_dim)
        K = kernel(hstack([self.basis, -other.basis]))
        if K.dim == 0:
            return Subspace(self.ambient_dim)
        coeff = K.basis.block(0, self.dim, 0, K.dim)
        return Subspace.span(self.basis @ coeff)

    def same_span(self, other: "Subspace") -> bool:
        return self.dim == other.dim and self.contains(other)

    def conj(self) -> "Subspace":
        return Subspace(self.ambient_dim, self.basis.conj(), check=False)

    def __repr__(self):
        return f"Subspace(dim={self.dim} in {self.ambient_dim})"


def kernel(M: Mat) -> Subspace:
    if M.is_zero():
        return Subspace.full(M.cols)
    cols = _kernel_cols(M)
    if not cols:
        return Subspace(M.cols)
    return Subspace(M.cols, Mat.from_cols(cols, M.cols), check=False)


def image(M: Mat) -> Subspace:
    return Subspace.span(M)


def rank_kernel_image(M: Mat) -> tuple[int, Subspace, Subspace]:
    im = image(M)
    return im.dim, kernel(M), im


def quotient_basis(V: Subspace, U: Subspace) -> Subspace:
    """Vectors of V completing a basis of U to one of V."""
    if V.ambient_dim != U.ambient_dim:
        raise ContainmentViolation("ambient dimensions differ")
    if not V.contains(U):
        raise ContainmentViolation("subspace is not contained in the ambient subspace")
    if U.dim == 0:
        return V
    _, piv = rref(hstack([U.basis, V.basis]))
    chosen = [c - U.dim for c in piv if c >= U.dim]
    return Subspace(V.ambient_dim, V.basis.select_cols(chosen), check=False)


# ---------------------------------------------------------------------------
# forms

SYMMETRIC = "symmetric-bilinear"
HERMITIAN = "hermitian-sesquilinear"
ANTISYMMETRIC = "antisymmetric-bilinear"
KINDS = (SYMMETRIC, HERMITIAN, ANTISYMMETRIC)


class Form:
    """Bilinear pairing x^T G y, or sesquilinear x^T G conj(y)."""

    __slots__ = ("gram", "kind")

    def __init__(self, gram: Mat, kind: str = SYMMETRIC):
        if kind not in KINDS:
            raise KindUnsupported(f"unknown form kind {kind!r}")
        if gram.rows != gram.cols:
            raise ValueError("gram must be square")
        if kind == SYMMETRIC and gram != gram.T:
            raise ValueError("gram is not symmetric")
        if kind == HERMITIAN and gram != gram.H:
            raise ValueError("gram is not hermitian")
        if kind == ANTISYMMETRIC and gram != -gram.T:
            raise ValueError("gram is not antisymmetric")
        self.gram = gram
        self.kind = kind

    @property
    def dim(self) -> int:
        return self.gram.rows

    def _right(self, B: Mat) -> Mat:
        return B.conj() if self.kind == HERMITIAN else B

    def pair(self, x: Mat, y: Mat) -> Mat:
        return x.T @ self.gram @ self._right(y)

    def restrict(self, W: Subspace) -> "Form":
        return Form(self.pair(W.basis, W.basis), self.kind)

    def is_nondegenerate(self) -> bool:
        return rank(self.gram) == self.dim


def orth_complement(f: Form, W: Subspace) -> Subspace:
    """{y : f(w, y) = 0 for all w in W}."""
    if W.dim == 0:
        return Subspace.full(f.dim)
    K = kernel(W.basis.T @ f.gram)
    return K.conj() if f.kind == HERMITIAN else K


def signature(f: Form, W: Subspace | None = None) -> tuple[int, int, int]:
    """(n_pos, n_neg, n_zero) by congruence diagonalisation."""
    if f.kind == ANTISYMMETRIC:
        raise KindUnsupported("signature is undefined for antisymmetric forms")
    if f.kind == SYMMETRIC and not f.gram.is_real():
        raise KindUnsupported("signature needs real entries for a symmetric form")
    G = f.restrict(W).gram if W is not None else f.gram
    A = [list(r) for r in G._d]
    pos = neg = zero = 0
    while A:
        n = len(A)
        p = next((i for i in range(n) if A[i][i]), None)
        if p is None:
            hit = next(((i, j) for i in range(n) for j in range(n) if A[i][j]), None)
            if hit is None:
                zero += n
                break
            i, j = hit
            # row_i += c row_j, col_i += conj(c) col_j makes A_ii = 2 Re(conj(c) A_ij)
            c = ONE if real_part(A[i][j]) else I
            A[i] = [a + c * b for a, b in zip(A[i], A[j])]
            cc = conj(c)
            for r in A:
                r[i] = r[i] + cc * r[j]
            p = i
        A[0], A[p] = A[p], A[0]
        for r in A:
            r[0], r[p] = r[p], r[0]
        d = A[0][0]
        if isinstance(d, Scalar):
            raise KindUnsupported("non-real diagonal entry: form is not hermitian")
        if d > 0:
            pos += 1
        else:
            neg += 1
        col = [r[0] for r in A[1:]]
        top = A[0][1:]
        A = [
            [x - (ci * tj) / d if ci and tj else x for x, tj in zip(r[1:], top)]
            for r, ci in zip(A[1:], col)
        ]
    return pos, neg, zero


def is_positive_definite(f: Form, W: Subspace | None = None) -> bool:
    p, _, _ = signature(f, W)
    return p == (W.dim if W is not None else f.dim)
