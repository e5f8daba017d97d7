"""Exact d x d matrix algebra over a finite field.

Determinant and inverse use Gaussian elimination with leftmost-nonzero
pivoting (fields are exact, the pivot rule is fixed only for determinism).
The characteristic polynomial has two independent paths: Faddeev-LeVerrier
when gcd(d!, p) = 1, and otherwise a memoized Laplace expansion of
det(tI - M) over the polynomial ring; the paths agree wherever both apply.
"""

from __future__ import annotations

from random import Random
from typing import Sequence

from .errors import CtxMismatch, DimMismatch, NotMonic, Singular
from .gf import FElem, FieldCtx
from .poly import Poly, irreducible_factors


class Mat:
    __slots__ = ("ctx", "n", "rows")

    def __init__(self, ctx: FieldCtx, rows: Sequence[Sequence]):
        grid = []
        for row in rows:
            r = []
            for c in row:
                if isinstance(c, FElem):
                    if c.ctx.key != ctx.key:
                        raise CtxMismatch(
                            f"entry from {c.ctx.spec()} in a {ctx.spec()} matrix")
                    r.append(c.idx)
                else:
                    r.append(int(c))
            grid.append(tuple(r))
        n = len(grid)
        if any(len(r) != n for r in grid):
            raise DimMismatch("matrix must be square")
        for r in grid:
            for c in r:
                if not 0 <= c < ctx.q:
                    raise ValueError(f"entry index {c} out of range for {ctx.spec()}")
        self.ctx = ctx
        self.n = n
        self.rows = tuple(grid)

    @classmethod
    def _raw(cls, ctx: FieldCtx, rows: tuple) -> "Mat":
        # internal fast path: entries are already validated indices
        m = cls.__new__(cls)
        m.ctx = ctx
        m.n = len(rows)
        m.rows = rows
        return m

    @classmethod
    def identity(cls, ctx: FieldCtx, n: int) -> "Mat":
        return cls._raw(ctx, tuple(tuple(1 if i == j else 0 for j in range(n))
                                   for i in range(n)))

    @classmethod
    def zero(cls, ctx: FieldCtx, n: int) -> "Mat":
        return cls._raw(ctx, ((0,) * n,) * n)

    def _check(self, other: "Mat") -> None:
        if self.ctx.key != other.ctx.key:
            raise CtxMismatch("matrices over different fields")
        if self.n != other.n:
            raise DimMismatch(f"{self.n} vs {other.n}")

    def __eq__(self, other) -> bool:
        return (isinstance(other, Mat) and self.ctx.key == other.ctx.key
                and self.rows == other.rows)

    def __hash__(self) -> int:
        return hash((self.ctx.key, self.rows))

    def __repr__(self) -> str:
        return f"Mat({self.ctx.spec()}, {[list(r) for r in self.rows]})"

    def __add__(self, other: "Mat") -> "Mat":
        self._check(other)
        add = self.ctx.add
        return Mat._raw(self.ctx, tuple(
            tuple(add(a, b) for a, b in zip(ra, rb))
            for ra, rb in zip(self.rows, other.rows)))

    def __sub__(self, other: "Mat") -> "Mat":
        self._check(other)
        sub = self.ctx.sub
        return Mat._raw(self.ctx, tuple(
            tuple(sub(a, b) for a, b in zip(ra, rb))
            for ra, rb in zip(self.rows, other.rows)))

    def __mul__(self, other: "Mat") -> "Mat":
        self._check(other)
        ctx = self.ctx
        n = self.n
        add, mul = ctx.add, ctx.mul
        cols = list(zip(*other.rows))
        out = []
        for i in range(n):
            row = self.rows[i]
            out_row = []
            for j in range(n):
                col = cols[j]
                acc = 0
                for k in range(n):
                    a = row[k]
                    if a:
                        acc = add(acc, mul(a, col[k]))
                out_row.append(acc)
            out.append(tuple(out_row))
        return Mat._raw(ctx, tuple(out))

    def scale(self, c: int) -> "Mat":
        mul = self.ctx.mul
        return Mat._raw(self.ctx,
                        tuple(tuple(mul(c, a) for a in row) for row in self.rows))

    def apply(self, vec: Sequence) -> tuple[int, ...]:
        """Matrix-vector product on index vectors."""
        v = tuple(c.idx if isinstance(c, FElem) else int(c) for c in vec)
        if len(v) != self.n:
            raise DimMismatch(f"vector length {len(v)} vs dimension {self.n}")
        ctx = self.ctx
        out = []
        for row in self.rows:
            acc = 0
            for a, x in zip(row, v):
                if a and x:
                    acc = ctx.add(acc, ctx.mul(a, x))
            out.append(acc)
        return tuple(out)

    def det(self) -> int:
        ctx = self.ctx
        n = self.n
        a = [list(r) for r in self.rows]
        det = 1
        for col in range(n):
            pivot = None
            for r in range(col, n):
                if a[r][col]:
                    pivot = r
                    break
            if pivot is None:
                return 0
            if pivot != col:
                a[col], a[pivot] = a[pivot], a[col]
                det = ctx.neg(det)
            det = ctx.mul(det, a[col][col])
            inv_p = ctx.inv(a[col][col])
            for r in range(col + 1, n):
                f = a[r][col]
                if f:
                    f = ctx.mul(f, inv_p)
                    for c in range(col, n):
                        a[r][c] = ctx.sub(a[r][c], ctx.mul(f, a[col][c]))
        return det

    def inv(self) -> "Mat":
        ctx = self.ctx
        n = self.n
        a = [list(r) + [1 if i == j else 0 for j in range(n)]
             for i, r in enumerate(self.rows)]
        for col in range(n):
            pivot = None
            for r in range(col, n):
                if a[r][col]:
                    pivot = r
                    break
            if pivot is None:
                raise Singular("matrix is singular")
            if pivot != col:
                a[col], a[pivot] = a[pivot], a[col]
            inv_p = ctx.inv(a[col][col])
            a[col] = [ctx.mul(inv_p, c) for c in a[col]]
            for r in range(n):
                if r != col and a[r][col]:
                    f = a[r][col]
                    a[r] = [ctx.sub(c, ctx.mul(f, pc))
                            for c, pc in zip(a[r], a[col])]
        return Mat(ctx, [row[n:] for row in a])

    def to_json(self) -> dict:
        return {"d": self.n, "field": self.ctx.spec(),
                "rows": [list(r) for r in self.rows]}

    @classmethod
    def from_json(cls, data: dict) -> "Mat":
        from .gf import parse_field_spec

        return cls(parse_field_spec(data["field"]), data["rows"])


# Functional aliases matching the operation names used elsewhere.
def m_mul(a: Mat, b: Mat) -> Mat:
    return a * b


def m_add(a: Mat, b: Mat) -> Mat:
    return a + b


def m_apply(m: Mat, v: Sequence) -> tuple[int, ...]:
    return m.apply(v)


def m_det(m: Mat) -> int:
    return m.det()


def m_inv(m: Mat) -> Mat:
    return m.inv()


# ---------------------------------------------------------------------------
# Characteristic and minimal polynomials, companion matrices
# ---------------------------------------------------------------------------

def _char_poly_faddeev(m: Mat) -> Poly:
    """Faddeev-LeVerrier recursion; needs 1..d invertible, i.e. p > d."""
    ctx = m.ctx
    d = m.n
    ident = Mat.identity(ctx, d)
    coeffs = [0] * (d + 1)
    coeffs[d] = 1
    aux = Mat.zero(ctx, d)
    c = 1
    for k in range(1, d + 1):
        aux = m * (aux + ident.scale(c))
        tr = 0
        for i in range(d):
            tr = ctx.add(tr, aux.rows[i][i])
        # c_k = -tr(M_k) / k
        c = ctx.mul(ctx.neg(tr), ctx.inv(ctx.from_int(k)))
        coeffs[d - k] = c
    return Poly(ctx, coeffs)


def _char_poly_expansion(m: Mat) -> Poly:
    """Laplace expansion of det(tI - M) over F_q[t], memoized on column subsets."""
    ctx = m.ctx
    d = m.n
    neg = ctx.neg
    add = ctx.add
    mul = ctx.mul
    # entries of tI - M as raw low-first coefficient lists
    ent = [[[neg(m.rows[i][j])] if i != j else [neg(m.rows[i][i]), 1]
            for j in range(d)] for i in range(d)]

    def padd(a, b):
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = add(out[i], c)
        return out

    def pmul(a, b):
        out = [0] * (len(a) + len(b) - 1)
        for i, ca in enumerate(a):
            if ca:
                for j, cb in enumerate(b):
                    if cb:
                        out[i + j] = add(out[i + j], mul(ca, cb))
        return out

    minors = {0: [1]}
    for mask in range(1, 1 << d):
        r = bin(mask).count("1") - 1
        acc = [0]
        pos = 0
        for j in range(d):
            if mask & (1 << j):
                term = pmul(ent[r][j], minors[mask ^ (1 << j)])
                if (r + pos) % 2:
                    term = [neg(c) for c in term]
                acc = padd(acc, term)
                pos += 1
        minors[mask] = acc
    full = minors[(1 << d) - 1]
    return Poly(ctx, full)


def char_poly(m: Mat) -> Poly:
    """Monic characteristic polynomial det(tI - M)."""
    if all(k % m.ctx.p for k in range(2, m.n + 1)):
        return _char_poly_faddeev(m)
    return _char_poly_expansion(m)


def min_poly(m: Mat) -> Poly:
    """Least-degree monic annihilator of M; divides char_poly(M).

    Found by testing monic divisors of the characteristic polynomial in
    increasing (degree, digits) order; the minimal polynomial shares every
    irreducible factor of the characteristic polynomial, which prunes the
    divisor lattice.
    """
    cp = char_poly(m)
    factors = irreducible_factors(cp)
    distinct: list[Poly] = []
    mult: list[int] = []
    for f in factors:
        if distinct and f == distinct[-1]:
            mult[-1] += 1
        else:
            distinct.append(f)
            mult.append(1)
    candidates = []

    def rec(i: int, cur: Poly):
        if i == len(distinct):
            candidates.append(cur)
            return
        term = distinct[i]
        acc = cur * term
        for _ in range(mult[i]):
            rec(i + 1, acc)
            acc = acc * term
            if acc.degree is not None and acc.degree > cp.degree:
                break

    rec(0, Poly.one(m.ctx))
    candidates.sort(key=Poly.sort_key)
    for cand in candidates:
        if eval_poly_at_matrix(cand, m) == Mat.zero(m.ctx, m.n):
            return cand
    raise RuntimeError("internal error: no annihilating divisor found")


def companion(h: Poly) -> Mat:
    """Companion matrix of a monic polynomial: superdiagonal ones and last
    row the negated coefficients."""
    if not h.is_monic:
        raise NotMonic("companion matrix needs a monic polynomial")
    k = h.degree
    if k is None or k < 1:
        raise NotMonic("companion matrix needs degree >= 1")
    ctx = h.ctx
    rows = [[0] * k for _ in range(k)]
    for i in range(k - 1):
        rows[i][i + 1] = 1
    for j in range(k):
        rows[k - 1][j] = ctx.neg(h.coeffs[j])
    return Mat(ctx, rows)


def eval_poly_at_matrix(h: Poly, m: Mat) -> Mat:
    """Horner evaluation of h at M, constant term times the identity."""
    if h.ctx.key != m.ctx.key:
        raise CtxMismatch("polynomial and matrix over different fields")
    ctx = m.ctx
    n = m.n
    add, mul = ctx.add, ctx.mul
    cols = list(zip(*m.rows))
    acc = [[0] * n for _ in range(n)]
    for c in reversed(h.coeffs):
        nxt = []
        for i in range(n):
            row = acc[i]
            out_row = []
            for j in range(n):
                col = cols[j]
                s = 0
                for k in range(n):
                    a = row[k]
                    if a:
                        s = add(s, mul(a, col[k]))
                out_row.append(s)
            nxt.append(out_row)
        acc = nxt
        if c:
            for i in range(n):
                acc[i][i] = add(acc[i][i], c)
    return Mat._raw(ctx, tuple(tuple(r) for r in acc))


# ---------------------------------------------------------------------------
# Seeded random matrices (verification plumbing)
# ---------------------------------------------------------------------------

def random_matrix(ctx: FieldCtx, n: int, rng: Random) -> Mat:
    return Mat(ctx, [[rng.randrange(ctx.q) for _ in range(n)] for _ in range(n)])


def random_invertible(ctx: FieldCtx, n: int, rng: Random) -> Mat:
    while True:
        m = random_matrix(ctx, n, rng)
        if m.det() != 0:
            return m


def conjugate(m: Mat, s: Mat) -> Mat:
    """Similarity conjugate S M S^{-1} (same characteristic polynomial)."""
    return s * m * s.inv()
