"""Dense-table maps on F_q^d: bijectivity, composition, cycle structure.

A vector (x_1, ..., x_d) over F_q is packed into the index
``sum(idx(x_i) * q^(i-1))``: x_1 is least significant.  Because element
indices are themselves base-p digit strings, the packed index is exactly the
base-p digit string of all m*d coordinates, which makes coordinatewise field
addition a digitwise base-p operation on packed indices (XOR when p = 2).

Tables are stored as immutable numpy int64 arrays of length q^d, hard-capped
at 2^20 entries.  Tables are immutable after construction; building a table
is single-threaded but independent tables can be built concurrently.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass

import numpy as np

from .errors import DimMismatch, NotBijective, SizeCap
from .gf import FieldCtx
from .linalg import Mat

TABLE_CAP = 1 << 20

_SPACES: dict = {}


class VecSpace:
    """Packed-index plumbing for F_q^d (memoized per context and dimension)."""

    def __init__(self, ctx: FieldCtx, d: int):
        self.ctx = ctx
        self.d = d
        self.n = ctx.q ** d
        if self.n > TABLE_CAP:
            raise SizeCap(f"q^d = {self.n} exceeds the {TABLE_CAP} table cap")
        self._dig = None
        self._arange = None

    @property
    def arange(self):
        if self._arange is None:
            a = np.arange(self.n, dtype=np.int64)
            a.flags.writeable = False
            self._arange = a
        return self._arange

    @property
    def dig(self):
        """(n, d) matrix of coordinate indices for every packed index."""
        if self._dig is None:
            q = self.ctx.q
            m = np.empty((self.n, self.d), dtype=np.int64)
            v = self.arange.copy()
            for j in range(self.d):
                m[:, j] = v % q
                v //= q
            m.flags.writeable = False
            self._dig = m
        return self._dig

    def pack(self, digits) -> np.ndarray:
        q = self.ctx.q
        acc = np.zeros(len(digits[0]) if isinstance(digits, list) else digits.shape[0],
                       dtype=np.int64)
        w = 1
        cols = digits if isinstance(digits, list) else [digits[:, j] for j in range(self.d)]
        for col in cols:
            acc += col * w
            w *= q
        return acc

    def pack_point(self, coords) -> int:
        q = self.ctx.q
        acc = 0
        for c in reversed(list(coords)):
            acc = acc * q + int(c)
        return acc

    def unpack_point(self, idx: int) -> tuple[int, ...]:
        q = self.ctx.q
        out = []
        for _ in range(self.d):
            out.append(idx % q)
            idx //= q
        return tuple(out)

    def vadd(self, a, b):
        """Coordinatewise field addition on packed indices (scalars or arrays)."""
        p = self.ctx.p
        if p == 2:
            return a ^ b
        total = self.ctx.m * self.d
        acc = (np.zeros_like(a) if isinstance(a, np.ndarray)
               else np.zeros_like(b) if isinstance(b, np.ndarray) else 0)
        w = 1
        for _ in range(total):
            acc = acc + (((a // w) % p + (b // w) % p) % p) * w
            w *= p
        return acc

    def vneg(self, a):
        p = self.ctx.p
        if p == 2:
            return a
        total = self.ctx.m * self.d
        acc = np.zeros_like(a) if isinstance(a, np.ndarray) else 0
        w = 1
        for _ in range(total):
            acc = acc + ((p - (a // w) % p) % p) * w
            w *= p
        return acc


def space(ctx: FieldCtx, d: int) -> VecSpace:
    key = (ctx.key, d)
    sp = _SPACES.get(key)
    if sp is None:
        sp = VecSpace(ctx, d)
        _SPACES[key] = sp
    return sp


@dataclass(frozen=True)
class CycleStructure:
    """Multiset of cycle lengths (>= 2) plus the fixed-point count."""

    fixed_points: int
    cycles: tuple[tuple[int, int], ...]  # sorted (length, count) pairs

    def total(self) -> int:
        return self.fixed_points + sum(l * c for l, c in self.cycles)

    def lengths(self) -> dict[int, int]:
        return dict(self.cycles)

    def to_json(self) -> dict:
        return {"fixed": self.fixed_points,
                "cycles": {str(l): c for l, c in self.cycles}}

    @classmethod
    def from_json(cls, data: dict) -> "CycleStructure":
        return cls(data["fixed"],
                   tuple(sorted((int(l), c) for l, c in data["cycles"].items())))


class PermTable:
    """A map F_q^d -> F_q^d as a dense table over packed indices."""

    __slots__ = ("ctx", "d", "table", "bijective")

    def __init__(self, ctx: FieldCtx, d: int, table, bijective=None):
        sp = space(ctx, d)
        arr = np.asarray(table, dtype=np.int64)
        if arr.shape != (sp.n,):
            raise DimMismatch(f"table length {arr.shape} != q^d = {sp.n}")
        if arr.size and (arr.min() < 0 or arr.max() >= sp.n):
            raise ValueError("table outputs out of range")
        if not arr.flags.owndata:
            arr = arr.copy()
        arr.flags.writeable = False
        self.ctx = ctx
        self.d = d
        self.table = arr
        if bijective is None:
            counts = np.bincount(arr, minlength=sp.n)
            bijective = bool((counts == 1).all())
        self.bijective = bijective

    # -- constructors ---------------------------------------------------------

    @classmethod
    def identity(cls, ctx: FieldCtx, d: int) -> "PermTable":
        sp = space(ctx, d)
        return cls(ctx, d, sp.arange, bijective=True)

    @classmethod
    def from_fn(cls, ctx: FieldCtx, d: int, rule) -> "PermTable":
        """Tabulate a coordinate rule (tuple of d indices -> sequence of d)."""
        sp = space(ctx, d)
        out = np.empty(sp.n, dtype=np.int64)
        for i in range(sp.n):
            out[i] = sp.pack_point(rule(sp.unpack_point(i)))
        return cls(ctx, d, out)

    @classmethod
    def from_matrix(cls, m: Mat, d: int | None = None) -> "PermTable":
        """Table of v -> Mv.  Bijective exactly when det(M) != 0."""
        ctx = m.ctx
        d = m.n if d is None else d
        if m.n != d:
            raise DimMismatch("matrix dimension must match d")
        sp = space(ctx, d)
        dig = sp.dig
        q = ctx.q
        out_cols = []
        for i in range(d):
            acc = None
            for j in range(d):
                a = m.rows[i][j]
                if a == 0:
                    continue
                lut = np.array([ctx.mul(a, x) for x in range(q)], dtype=np.int64)
                col = lut[dig[:, j]]
                acc = col if acc is None else _field_add_arrays(ctx, acc, col)
            out_cols.append(acc if acc is not None else np.zeros(sp.n, dtype=np.int64))
        return cls(ctx, d, sp.pack(out_cols))

    # -- protocol ---------------------------------------------------------------

    def __eq__(self, other) -> bool:
        return (isinstance(other, PermTable) and self.ctx.key == other.ctx.key
                and self.d == other.d and bool(np.array_equal(self.table, other.table)))

    def __hash__(self):
        return hash((self.ctx.key, self.d, self.table.tobytes()))

    def __repr__(self) -> str:
        return (f"PermTable({self.ctx.spec()}^{self.d}, n={self.table.size}, "
                f"bijective={self.bijective})")

    @property
    def n(self) -> int:
        return self.table.size

    def _check(self, other: "PermTable") -> None:
        if self.ctx.key != other.ctx.key or self.d != other.d:
            raise DimMismatch("tables over different spaces")

    def __call__(self, idx: int) -> int:
        return int(self.table[idx])

    # -- ops ---------------------------------------------------------------------

    def compose(self, other: "PermTable") -> "PermTable":
        """(self o other)(x) = self(other(x))."""
        self._check(other)
        bij = self.bijective and other.bijective or None
        return PermTable(self.ctx, self.d, self.table[other.table], bijective=bij)

    def invert(self) -> "PermTable":
        if not self.bijective:
            raise NotBijective("cannot invert a non-bijective table")
        inv = np.empty_like(self.table)
        inv[self.table] = space(self.ctx, self.d).arange
        return PermTable(self.ctx, self.d, inv, bijective=True)

    def add_pointwise(self, other: "PermTable") -> "PermTable":
        """x -> self(x) + other(x); bijectivity is recomputed eagerly."""
        self._check(other)
        sp = space(self.ctx, self.d)
        return PermTable(self.ctx, self.d, sp.vadd(self.table, other.table))

    def npower(self, n: int) -> "PermTable":
        """n-th composite power; negative n uses the inverse."""
        if n < 0:
            return self.invert().npower(-n)
        result = PermTable.identity(self.ctx, self.d)
        acc = self
        while n:
            if n & 1:
                result = result.compose(acc)
            acc = acc.compose(acc)
            n >>= 1
        return result

    def cycle_structure(self) -> CycleStructure:
        if not self.bijective:
            raise NotBijective("cycle structure needs a bijective table")
        tbl = self.table.tolist()
        n = len(tbl)
        seen = bytearray(n)
        fixed = 0
        lengths: Counter = Counter()
        for start in range(n):
            if seen[start]:
                continue
            length = 0
            x = start
            while not seen[x]:
                seen[x] = 1
                x = tbl[x]
                length += 1
            if length == 1:
                fixed += 1
            else:
                lengths[length] += 1
        return CycleStructure(fixed, tuple(sorted(lengths.items())))

    def find_cycle(self, predicate) -> list[int] | None:
        """First cycle (scanning from index 0) whose length satisfies predicate."""
        if not self.bijective:
            raise NotBijective("cycle scan needs a bijective table")
        tbl = self.table.tolist()
        n = len(tbl)
        seen = bytearray(n)
        for start in range(n):
            if seen[start]:
                continue
            orbit = [start]
            seen[start] = 1
            x = tbl[start]
            while x != start:
                seen[x] = 1
                orbit.append(x)
                x = tbl[x]
            if predicate(len(orbit)):
                return orbit
        return None

    def is_r_regular(self, r: int) -> bool:
        """All non-fixed cycles have length exactly r (fixed points ignored)."""
        cs = self.cycle_structure()
        return all(l == r for l, _ in cs.cycles)

    def is_cpp(self) -> bool:
        """Both the table and table + identity are bijections."""
        if not self.bijective:
            return False
        return self.add_pointwise(PermTable.identity(self.ctx, self.d)).bijective

    def is_additive(self, mode: str = "generator") -> bool:
        """Additivity f(x+y) = f(x)+f(y) for all x, y.

        ``generator`` checks y over an F_p spanning set (each base-p digit
        position), which suffices by induction on digit decompositions;
        ``exhaustive`` checks every pair.  Both modes agree.
        """
        sp = space(self.ctx, self.d)
        tbl = self.table
        if int(tbl[0]) != 0:
            return False
        if mode == "generator":
            total = self.ctx.m * self.d
            for k in range(total):
                b = self.ctx.p ** k
                lhs = tbl[sp.vadd(sp.arange, b)]
                rhs = sp.vadd(tbl, int(tbl[b]))
                if not np.array_equal(lhs, rhs):
                    return False
            return True
        if mode == "exhaustive":
            for y in range(sp.n):
                lhs = tbl[sp.vadd(sp.arange, y)]
                rhs = sp.vadd(tbl, int(tbl[y]))
                if not np.array_equal(lhs, rhs):
                    return False
            return True
        raise ValueError(f"unknown additivity mode {mode!r}")

    # -- serialization --------------------------------------------------------

    def to_json(self) -> dict:
        return {"field": self.ctx.spec(), "d": self.d,
                "table": self.table.tolist()}

    @classmethod
    def from_json(cls, data: dict) -> "PermTable":
        from .gf import parse_field_spec

        return cls(parse_field_spec(data["field"]), data["d"], data["table"])


def _field_add_arrays(ctx: FieldCtx, a, b):
    """Field addition on arrays of element indices (values < q)."""
    p = ctx.p
    if p == 2:
        return a ^ b
    acc = np.zeros_like(a)
    w = 1
    for _ in range(ctx.m):
        acc += (((a // w) % p + (b // w) % p) % p) * w
        w *= p
    return acc


# Functional aliases for the table operations.
def from_fn(ctx: FieldCtx, d: int, rule) -> PermTable:
    return PermTable.from_fn(ctx, d, rule)


def identity(ctx: FieldCtx, d: int) -> PermTable:
    return PermTable.identity(ctx, d)


def compose(f: PermTable, g: PermTable) -> PermTable:
    return f.compose(g)


def invert(f: PermTable) -> PermTable:
    return f.invert()


def add_pointwise(f: PermTable, g: PermTable) -> PermTable:
    return f.add_pointwise(g)


def npower(f: PermTable, n: int) -> PermTable:
    return f.npower(n)


def cycle_structure(f: PermTable) -> CycleStructure:
    return f.cycle_structure()


def is_r_regular(f: PermTable, r: int) -> bool:
    return f.is_r_regular(r)


def is_cpp(f: PermTable) -> bool:
    return f.is_cpp()


def is_additive(f: PermTable, mode: str = "generator") -> bool:
    return f.is_additive(mode)
