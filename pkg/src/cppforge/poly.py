"""Univariate polynomial algebra over a field context.

Polynomials are dense coefficient tuples, low degree first, with no trailing
zeros; the zero polynomial has an empty tuple and its ``degree`` is None (a
distinguished marker rather than a number).  Coefficients are canonical
element indices of the owning :class:`~cppforge.gf.FieldCtx`.

Besides ring arithmetic this module provides cyclotomic polynomials (via the
exact product recursion), deterministic irreducible factorization
(distinct-degree gcd splitting followed by equal-degree trial division), and
the text / JSON formats used by the CLI.
"""

from __future__ import annotations

from typing import Iterable

from .errors import CharacteristicDividesN, CtxMismatch, DivisionByZero
from .gf import FElem, FieldCtx


class Poly:
    __slots__ = ("ctx", "coeffs")

    def __init__(self, ctx: FieldCtx, coeffs: Iterable):
        cs = []
        for c in coeffs:
            if isinstance(c, FElem):
                if c.ctx.key != ctx.key:
                    raise CtxMismatch(
                        f"coefficient from {c.ctx.spec()} in a {ctx.spec()} polynomial")
                idx = c.idx
            else:
                idx = int(c)
            if not 0 <= idx < ctx.q:
                raise ValueError(f"coefficient index {idx} out of range for {ctx.spec()}")
            cs.append(idx)
        while cs and cs[-1] == 0:
            cs.pop()
        self.ctx = ctx
        self.coeffs = tuple(cs)

    # -- constructors --------------------------------------------------------

    @classmethod
    def zero(cls, ctx: FieldCtx) -> "Poly":
        return cls(ctx, ())

    @classmethod
    def one(cls, ctx: FieldCtx) -> "Poly":
        return cls(ctx, (1,))

    @classmethod
    def t(cls, ctx: FieldCtx) -> "Poly":
        return cls(ctx, (0, 1))

    @classmethod
    def monomial(cls, ctx: FieldCtx, deg: int, coeff: int = 1) -> "Poly":
        return cls(ctx, (0,) * deg + (coeff,))

    @classmethod
    def x_pow_n_minus_1(cls, ctx: FieldCtx, n: int) -> "Poly":
        cs = [0] * (n + 1)
        cs[0] = ctx.neg(1)
        cs[n] = 1
        return cls(ctx, cs)

    # -- structure -----------------------------------------------------------

    @property
    def degree(self):
        """Degree as an int, or None for the zero polynomial."""
        return len(self.coeffs) - 1 if self.coeffs else None

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == 1

    def _check(self, other: "Poly") -> None:
        if self.ctx.key != other.ctx.key:
            raise CtxMismatch(f"{self.ctx.spec()} vs {other.ctx.spec()}")

    def __eq__(self, other) -> bool:
        return (isinstance(other, Poly) and self.ctx.key == other.ctx.key
                and self.coeffs == other.coeffs)

    def __hash__(self) -> int:
        return hash((self.ctx.key, self.coeffs))

    def __repr__(self) -> str:
        return f"Poly({self.ctx.spec()}: {self.to_text()})"

    def sort_key(self):
        """Deterministic order: by degree, then coefficient digits high-first.

        For monic polynomials of equal degree this is exactly the order of
        the integer value sum(c_k * q^k).
        """
        return (len(self.coeffs), tuple(reversed(self.coeffs)))

    # -- arithmetic ----------------------------------------------------------

    def __add__(self, other: "Poly") -> "Poly":
        self._check(other)
        ctx = self.ctx
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = ctx.add(out[i], c)
        return Poly(ctx, out)

    def __sub__(self, other: "Poly") -> "Poly":
        return self + (-other)

    def __neg__(self) -> "Poly":
        ctx = self.ctx
        return Poly(ctx, [ctx.neg(c) for c in self.coeffs])

    def __mul__(self, other: "Poly") -> "Poly":
        self._check(other)
        ctx = self.ctx
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return Poly.zero(ctx)
        out = [0] * (len(a) + len(b) - 1)
        for i, ca in enumerate(a):
            if ca:
                for j, cb in enumerate(b):
                    if cb:
                        out[i + j] = ctx.add(out[i + j], ctx.mul(ca, cb))
        return Poly(ctx, out)

    def scale(self, c: int) -> "Poly":
        ctx = self.ctx
        return Poly(ctx, [ctx.mul(c, x) for x in self.coeffs])

    def __divmod__(self, other: "Poly") -> tuple["Poly", "Poly"]:
        self._check(other)
        ctx = self.ctx
        if other.is_zero:
            raise DivisionByZero("polynomial division by zero")
        r = list(self.coeffs)
        b = other.coeffs
        qlen = max(0, len(r) - len(b) + 1)
        q = [0] * qlen
        inv_lead = ctx.inv(b[-1])
        while len(r) >= len(b) and r:
            shift = len(r) - len(b)
            coef = ctx.mul(r[-1], inv_lead)
            q[shift] = coef
            for i, cb in enumerate(b):
                if cb:
                    r[shift + i] = ctx.sub(r[shift + i], ctx.mul(coef, cb))
            while r and r[-1] == 0:
                r.pop()
        return Poly(ctx, q), Poly(ctx, r)

    def __floordiv__(self, other: "Poly") -> "Poly":
        return divmod(self, other)[0]

    def __mod__(self, other: "Poly") -> "Poly":
        return divmod(self, other)[1]

    def __pow__(self, n: int) -> "Poly":
        result = Poly.one(self.ctx)
        acc = self
        while n:
            if n & 1:
                result = result * acc
            acc = acc * acc
            n >>= 1
        return result

    def pow_mod(self, e: int, modulus: "Poly") -> "Poly":
        result = Poly.one(self.ctx) % modulus
        acc = self % modulus
        while e:
            if e & 1:
                result = (result * acc) % modulus
            acc = (acc * acc) % modulus
            e >>= 1
        return result

    def monic(self) -> "Poly":
        if self.is_zero or self.is_monic:
            return self
        return self.scale(self.ctx.inv(self.coeffs[-1]))

    # -- evaluation ----------------------------------------------------------

    def eval_idx(self, x: int) -> int:
        ctx = self.ctx
        acc = 0
        for c in reversed(self.coeffs):
            acc = ctx.add(ctx.mul(acc, x), c)
        return acc

    def __call__(self, x) -> FElem:
        xi = x.idx if isinstance(x, FElem) else int(x)
        if isinstance(x, FElem) and x.ctx.key != self.ctx.key:
            raise CtxMismatch("evaluation point lives in a different field")
        return FElem(self.ctx, self.eval_idx(xi))

    # -- text and JSON formats ------------------------------------------------

    def to_text(self) -> str:
        """Canonical rendering ``c0+c1*t+c2*t^2`` (zero terms omitted)."""
        if self.is_zero:
            return "0"
        parts = []
        for k, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if k == 0:
                parts.append(str(c))
            elif k == 1:
                parts.append(f"{c}*t")
            else:
                parts.append(f"{c}*t^{k}")
        return "+".join(parts)

    def to_json(self) -> list[int]:
        return list(self.coeffs)


def eval_at(f: Poly, x) -> FElem:
    return f(x)


def parse_poly(text: str, ctx: FieldCtx) -> Poly:
    """Parse polynomial text; accepts either coefficient order and '-' signs.

    Integer literals are canonical element indices except that a leading
    minus maps an index through field negation, so ``t^2-t+1`` works over
    any context.
    """
    s = text.replace(" ", "").replace("**", "^")
    if s in ("0", ""):
        return Poly.zero(ctx)
    s = s.replace("-", "+-")
    if s.startswith("+"):
        s = s[1:]
    coeffs: dict[int, int] = {}
    for term in s.split("+"):
        if not term:
            continue
        neg = term.startswith("-")
        if neg:
            term = term[1:]
        if "t" in term:
            coef_s, _, rest = term.partition("t")
            coef = int(coef_s.rstrip("*")) if coef_s.rstrip("*") else 1
            if rest.startswith("^"):
                deg = int(rest[1:])
            elif rest == "":
                deg = 1
            else:
                raise ValueError(f"cannot parse term {term!r}")
        else:
            coef, deg = int(term), 0
        if not 0 <= coef < ctx.q:
            raise ValueError(f"coefficient index {coef} out of range")
        if neg:
            coef = ctx.neg(coef)
        coeffs[deg] = ctx.add(coeffs.get(deg, 0), coef)
    out = [0] * (max(coeffs) + 1)
    for deg, c in coeffs.items():
        out[deg] = c
    return Poly(ctx, out)


# ---------------------------------------------------------------------------
# GCD, divisibility
# ---------------------------------------------------------------------------

def gcd(a: Poly, b: Poly) -> Poly:
    """Monic greatest common divisor."""
    a._check(b)
    while not b.is_zero:
        a, b = b, a % b
    return a.monic()


def divides(a: Poly, b: Poly) -> bool:
    """True iff a | b (remainder of b by a is zero)."""
    if a.is_zero:
        raise DivisionByZero("zero polynomial divides nothing")
    return (b % a).is_zero


# ---------------------------------------------------------------------------
# Cyclotomic polynomials
# ---------------------------------------------------------------------------

_CYCLO_CACHE: dict = {}


def cyclotomic(n: int, ctx: FieldCtx) -> Poly:
    """The n-th cyclotomic polynomial Q_n over ctx.

    Computed by the product identity x^n - 1 = prod_{d | n} Q_d, peeling off
    the proper divisors by exact division.  Requires gcd(n, p) = 1.
    """
    if n < 1:
        raise ValueError("cyclotomic index must be positive")
    if n % ctx.p == 0:
        raise CharacteristicDividesN(
            f"characteristic {ctx.p} divides cyclotomic index {n}")
    key = (ctx.key, n)
    got = _CYCLO_CACHE.get(key)
    if got is not None:
        return got
    num = Poly.x_pow_n_minus_1(ctx, n)
    for d in range(1, n):
        if n % d == 0:
            q, r = divmod(num, cyclotomic(d, ctx))
            if not r.is_zero:
                raise RuntimeError(
                    f"internal error: inexact division in cyclotomic({n})")
            num = q
    _CYCLO_CACHE[key] = num
    return num


# ---------------------------------------------------------------------------
# Irreducibility and factorization
# ---------------------------------------------------------------------------

def is_irreducible(f: Poly) -> bool:
    """Distinct-degree gcd sieve; correct for arbitrary (not just squarefree) f."""
    deg = f.degree
    if deg is None or deg < 1:
        return False
    if deg == 1:
        return True
    f = f.monic()
    t = Poly.t(f.ctx)
    for k in range(1, deg // 2 + 1):
        tq = t.pow_mod(f.ctx.q ** k, f)
        g = gcd(f, tq - t)
        if g.degree and g.degree > 0:
            return False
    return True


def monic_polys(ctx: FieldCtx, deg: int):
    """All monic polynomials of the given degree in deterministic order.

    The order is by integer value sum(c_k * q^k): coefficient digits compared
    from the highest degree down.
    """
    q = ctx.q
    for v in range(q ** deg):
        cs = []
        for _ in range(deg):
            cs.append(v % q)
            v //= q
        yield Poly(ctx, cs + [1])


def irreducible_factors(f: Poly) -> list[Poly]:
    """Monic irreducible factors of f with multiplicity.

    Returns a flat list sorted by (degree, coefficient digits high-first);
    the product of the factors times the leading coefficient of f equals f.
    Distinct-degree splitting via gcd(f, t^(q^k) - t), then equal-degree
    splitting by exhaustive trial division over all monic candidates of the
    target degree; fully deterministic.
    """
    if f.is_zero:
        raise DivisionByZero("cannot factor the zero polynomial")
    ctx = f.ctx
    out: list[Poly] = []
    g = f.monic()
    t = Poly.t(ctx)
    k = 1
    while g.degree and g.degree > 0:
        if g.degree < 2 * k:
            out.append(g)
            break
        tq = t.pow_mod(ctx.q ** k, g)
        d = gcd(g, tq - t)
        if d.degree and d.degree > 0:
            if d.degree == k:
                irrs = [d]
            else:
                irrs = [u for u in monic_polys(ctx, k) if divides(u, d)]
            for u in irrs:
                while divides(u, g):
                    g = g // u
                    out.append(u)
        k += 1
    out.sort(key=Poly.sort_key)
    return out
