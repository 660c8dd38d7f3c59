"""Sparse exact matrices, field ranks and dense subspace helpers.

Prime fields and the rationals go through python-flint (``nmod_mat`` /
``fmpq_mat``) whenever a dense matrix is affordable; large sparse matrices are
reduced with a triangular column elimination that orders rows by weight.
GF(p^2) always uses the pure-Python path.
"""

from __future__ import annotations

import math
import random
from fractions import Fraction
from typing import Iterable, Sequence

import flint

from ..errors import NotAField, RingMismatch, SizeMismatch
from .rings import INTEGERS, PRIME_FIELD, RATIONALS, RingSpec

# Dense flint matrices are used below this many entries.
DENSE_LIMIT = 4_000_000


class SparseMatrix:
    """Immutable ``rows x cols`` matrix over one ring; zeros are never stored.

    Storage is column-major: ``self.columns[c]`` maps row -> raw value.
    """

    __slots__ = ("rows", "cols", "ring", "columns")

    def __init__(self, rows: int, cols: int, ring: RingSpec, entries=None):
        self.rows = rows
        self.cols = cols
        self.ring = ring
        columns: dict[int, dict[int, object]] = {}
        if entries:
            items = entries.items() if isinstance(entries, dict) else entries
            for (r, c), v in items:
                if not (0 <= r < rows and 0 <= c < cols):
                    raise IndexError(f"entry ({r}, {c}) outside {rows}x{cols}")
                v = ring.normalize(v)
                col = columns.setdefault(c, {})
                if r in col:
                    v = ring.add(col[r], v)
                if ring.is_zero(v):
                    col.pop(r, None)
                else:
                    col[r] = v
            columns = {c: col for c, col in columns.items() if col}
        self.columns = columns

    @classmethod
    def from_columns(cls, rows: int, cols: int, ring: RingSpec, columns: dict[int, dict[int, object]]):
        """Trusted constructor: columns already normalized, no zeros stored."""
        m = cls.__new__(cls)
        m.rows, m.cols, m.ring = rows, cols, ring
        m.columns = {c: col for c, col in columns.items() if col}
        return m

    @classmethod
    def from_dense(cls, ring: RingSpec, data: Sequence[Sequence]) -> SparseMatrix:
        rows = len(data)
        cols = len(data[0]) if rows else 0
        entries = {(r, c): v for r, row in enumerate(data) for c, v in enumerate(row)}
        return cls(rows, cols, ring, entries)

    @classmethod
    def zero(cls, rows: int, cols: int, ring: RingSpec) -> SparseMatrix:
        return cls(rows, cols, ring)

    def entries(self) -> Iterable[tuple[int, int, object]]:
        for c in sorted(self.columns):
            col = self.columns[c]
            for r in sorted(col):
                yield r, c, col[r]

    @property
    def nnz(self) -> int:
        return sum(len(col) for col in self.columns.values())

    def __getitem__(self, rc: tuple[int, int]):
        r, c = rc
        return self.columns.get(c, {}).get(r, self.ring.zero)

    def to_dense(self) -> list[list]:
        out = [[self.ring.zero] * self.cols for _ in range(self.rows)]
        for r, c, v in self.entries():
            out[r][c] = v
        return out

    def transpose(self) -> SparseMatrix:
        columns: dict[int, dict[int, object]] = {}
        for c, col in self.columns.items():
            for r, v in col.items():
                columns.setdefault(r, {})[c] = v
        return SparseMatrix.from_columns(self.cols, self.rows, self.ring, columns)

    def matmul(self, other: SparseMatrix) -> SparseMatrix:
        if self.ring != other.ring:
            raise RingMismatch(f"{self.ring} vs {other.ring}")
        if self.cols != other.rows:
            raise SizeMismatch(f"{self.rows}x{self.cols} @ {other.rows}x{other.cols}")
        ring = self.ring
        columns: dict[int, dict[int, object]] = {}
        for c, col in other.columns.items():
            acc: dict[int, object] = {}
            for k, b in col.items():
                for r, a in self.columns.get(k, {}).items():
                    acc[r] = ring.add(acc.get(r, ring.zero), ring.mul(a, b))
            columns[c] = {r: v for r, v in acc.items() if not ring.is_zero(v)}
        return SparseMatrix.from_columns(self.rows, other.cols, ring, columns)

    def is_zero(self) -> bool:
        return not self.columns

    def __eq__(self, other) -> bool:
        if not isinstance(other, SparseMatrix):
            return NotImplemented
        return (self.rows, self.cols, self.ring) == (other.rows, other.cols, other.ring) and self.columns == other.columns

    def __repr__(self) -> str:
        return f"SparseMatrix({self.rows}x{self.cols} over {self.ring}, nnz={self.nnz})"

    # JSON exchange ---------------------------------------------------------

    def to_json(self) -> dict:
        fmt = self.ring.format
        return {
            "rows": self.rows,
            "cols": self.cols,
            "ring": self.ring.to_json(),
            "entries": [[r, c, fmt(v)] for r, c, v in sorted(self.entries())],
        }

    @classmethod
    def from_json(cls, obj: dict) -> SparseMatrix:
        ring = RingSpec.from_json(obj["ring"])
        entries = {(int(r), int(c)): ring.parse_value(v) for r, c, v in obj["entries"]}
        return cls(int(obj["rows"]), int(obj["cols"]), ring, entries)


# ---------------------------------------------------------------------------
# flint conversion


def _to_flint(ring: RingSpec, rows: Sequence[Sequence], ncols: int):
    flat = [x for row in rows for x in row]
    if ring.kind == PRIME_FIELD:
        return flint.nmod_mat(len(rows), ncols, flat, ring.p)
    if ring.kind == RATIONALS:
        return flint.fmpq_mat(len(rows), ncols, [flint.fmpq(x.numerator, x.denominator) for x in flat])
    raise ValueError(f"no flint backend for {ring}")


def _from_flint(ring: RingSpec, value):
    if ring.kind == PRIME_FIELD:
        return int(value)
    return Fraction(int(value.p), int(value.q))


def _flint_ok(ring: RingSpec) -> bool:
    return ring.kind in (PRIME_FIELD, RATIONALS)


# ---------------------------------------------------------------------------
# dense helpers (vectors are lists of raw values)


def rref(ring: RingSpec, rows: Sequence[Sequence], ncols: int) -> tuple[list[list], list[int]]:
    """Reduced row echelon form; returns (nonzero rows, pivot columns)."""
    ring.require_field()
    if not rows or ncols == 0:
        return [], []
    if _flint_ok(ring):
        m, rk = _to_flint(ring, rows, ncols).rref()
        out, pivots = [], []
        for i in range(rk):
            row = [_from_flint(ring, m[i, j]) for j in range(ncols)]
            pivots.append(next(j for j, x in enumerate(row) if x != 0))
            out.append(row)
        return out, pivots
    return _rref_python(ring, [list(r) for r in rows], ncols)


def _rref_python(ring: RingSpec, m: list[list], ncols: int) -> tuple[list[list], list[int]]:
    pivots: list[int] = []
    r = 0
    nrows = len(m)
    for c in range(ncols):
        piv = next((i for i in range(r, nrows) if not ring.is_zero(m[i][c])), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = ring.inv(m[r][c])
        m[r] = [ring.mul(inv, x) for x in m[r]]
        for i in range(nrows):
            if i != r and not ring.is_zero(m[i][c]):
                f = m[i][c]
                m[i] = [ring.sub(a, ring.mul(f, b)) for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return m[:r], pivots


def rank_dense(ring: RingSpec, rows: Sequence[Sequence], ncols: int) -> int:
    ring.require_field()
    if not rows or ncols == 0:
        return 0
    if _flint_ok(ring):
        return _to_flint(ring, rows, ncols).rank()
    return len(_rref_python(ring, [list(r) for r in rows], ncols)[1])


def nullspace(ring: RingSpec, rows: Sequence[Sequence], ncols: int) -> list[list]:
    """Basis of {x : M x = 0} for the matrix with the given rows."""
    red, pivots = rref(ring, rows, ncols)
    pivset = set(pivots)
    basis = []
    for free in range(ncols):
        if free in pivset:
            continue
        v = [ring.zero] * ncols
        v[free] = ring.one
        for row, pc in zip(red, pivots):
            if not ring.is_zero(row[free]):
                v[pc] = ring.neg(row[free])
        basis.append(v)
    return basis


class Subspace:
    """Incrementally grown span of vectors of fixed length, kept in RREF."""

    def __init__(self, ring: RingSpec, length: int):
        ring.require_field()
        self.ring = ring
        self.length = length
        self.basis: list[list] = []
        self.pivots: list[int] = []

    @property
    def dim(self) -> int:
        return len(self.basis)

    def reduce(self, v: Sequence) -> list:
        ring = self.ring
        v = list(v)
        for row, pc in zip(self.basis, self.pivots):
            f = v[pc]
            if not ring.is_zero(f):
                v = [ring.sub(a, ring.mul(f, b)) for a, b in zip(v, row)]
        return v

    def contains(self, v: Sequence) -> bool:
        return all(self.ring.is_zero(x) for x in self.reduce(v))

    def add(self, vectors: Iterable[Sequence]) -> int:
        """Add vectors to the span; returns the increase in dimension."""
        before = self.dim
        rows = self.basis + [list(v) for v in vectors]
        self.basis, self.pivots = rref(self.ring, rows, self.length)
        return self.dim - before


# ---------------------------------------------------------------------------
# sparse ranks


def matrix_rank(m: SparseMatrix) -> int:
    """Exact rank over a field (Rationals, PrimeField or QuadExt)."""
    ring = m.ring
    if not ring.is_field:
        raise NotAField(f"matrix_rank needs a field, got {ring}")
    if m.is_zero():
        return 0
    if ring.kind == PRIME_FIELD and ring.p == 2:
        return _rank_gf2(list(m.columns.values()))
    if _flint_ok(ring) and m.rows * m.cols <= DENSE_LIMIT:
        return rank_dense(ring, m.to_dense(), m.cols)
    # Reduce the longer side against pivots of the shorter one.
    vectors = list(m.columns.values()) if m.cols >= m.rows else list(m.transpose().columns.values())
    if ring.kind == PRIME_FIELD:
        return _sparse_rank_modp(vectors, ring.p)
    if ring.kind == RATIONALS:
        return _sparse_rank_integer(vectors)
    return _sparse_rank_generic(vectors, ring)


def _weight_order(vectors: Sequence[dict]) -> dict[int, int]:
    # Sparse coordinates get the lowest keys so pivots land on them first.
    weight: dict[int, int] = {}
    for v in vectors:
        for k in v:
            weight[k] = weight.get(k, 0) + 1
    return {k: i for i, k in enumerate(sorted(weight, key=lambda k: (weight[k], k)))}


def _rank_gf2(vectors: Sequence[dict]) -> int:
    """Elimination over F_2 with vectors packed into Python ints."""
    order = _weight_order(vectors)
    pivots: dict[int, int] = {}
    for col in vectors:
        v = 0
        for k, x in col.items():
            if x % 2:
                v ^= 1 << order[k]
        while v:
            low = v & -v
            pv = pivots.get(low)
            if pv is None:
                pivots[low] = v
                break
            v ^= pv
    return len(pivots)


def _sparse_rank_modp(vectors: Sequence[dict], p: int) -> int:
    if p == 2:
        return _rank_gf2(vectors)
    order = _weight_order(vectors)
    pivots: dict[int, dict[int, int]] = {}
    for col in vectors:
        v = {order[k]: x % p for k, x in col.items() if x % p}
        while v:
            r = min(v)
            pv = pivots.get(r)
            if pv is None:
                inv = pow(v[r], -1, p)
                pivots[r] = {k: (x * inv) % p for k, x in v.items()}
                break
            c = v[r]
            for k, x in pv.items():
                nx = (v.get(k, 0) - c * x) % p
                if nx:
                    v[k] = nx
                else:
                    v.pop(k, None)
    return len(pivots)


def _sparse_rank_integer(vectors: Sequence[dict]) -> int:
    """Fraction-free elimination; exact rank over Q."""
    order = _weight_order(vectors)
    pivots: dict[int, dict[int, int]] = {}
    for col in vectors:
        den = 1
        for x in col.values():
            den = den * Fraction(x).denominator // math.gcd(den, Fraction(x).denominator)
        v = {order[k]: int(Fraction(x) * den) for k, x in col.items() if x != 0}
        while v:
            r = min(v)
            pv = pivots.get(r)
            if pv is None:
                g = 0
                for x in v.values():
                    g = math.gcd(g, x)
                if v[r] < 0:
                    g = -g
                pivots[r] = {k: x // g for k, x in v.items()}
                break
            a, b = pv[r], v[r]
            g = math.gcd(a, b)
            fa, fb = a // g, b // g
            nv = {k: fa * x for k, x in v.items()}
            for k, x in pv.items():
                nx = nv.get(k, 0) - fb * x
                if nx:
                    nv[k] = nx
                else:
                    nv.pop(k, None)
            g = 0
            for x in nv.values():
                g = math.gcd(g, x)
                if g == 1:
                    break
            v = {k: x // g for k, x in nv.items()} if g > 1 else nv
    return len(pivots)


def _sparse_rank_generic(vectors: Sequence[dict], ring: RingSpec) -> int:
    order = _weight_order(vectors)
    pivots: dict[int, dict] = {}
    for col in vectors:
        v = {order[k]: x for k, x in col.items() if not ring.is_zero(x)}
        while v:
            r = min(v)
            pv = pivots.get(r)
            if pv is None:
                inv = ring.inv(v[r])
                pivots[r] = {k: ring.mul(x, inv) for k, x in v.items()}
                break
            c = v[r]
            for k, x in pv.items():
                nx = ring.sub(v.get(k, ring.zero), ring.mul(c, x))
                if ring.is_zero(nx):
                    v.pop(k, None)
                else:
                    v[k] = nx
    return len(pivots)


def modular_rank(m: SparseMatrix, primes: int = 3, seed: int = 0) -> int:
    """Max of ranks modulo random 31-bit primes: a lower bound for the rank over Q
    that is exact with overwhelming probability. Used as a fast cross-check."""
    if m.ring.kind not in (RATIONALS, INTEGERS):
        raise RingMismatch("modular_rank is for integer/rational matrices")
    rng = random.Random(seed)
    best = 0
    for _ in range(primes):
        while True:
            p = rng.randrange(2**30, 2**31) | 1
            if flint.fmpz(p).is_prime():
                break
        vectors = []
        for col in m.columns.values():
            v = {}
            for r, x in col.items():
                x = Fraction(x)
                if x.denominator % p == 0:
                    break
                v[r] = (x.numerator * pow(x.denominator, -1, p)) % p
            else:
                vectors.append(v)
                continue
            break
        else:
            best = max(best, _sparse_rank_modp(vectors, p))
    return best
