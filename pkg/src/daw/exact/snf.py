"""Smith normal form of sparse integer matrices.

Elimination pivots on an entry of minimal absolute value (units first), which
keeps coefficient growth small on the very sparse, mostly +-1 boundary
matrices of bar complexes. Only invariant factors are produced; the unimodular
transforms are not tracked.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from ..errors import RingMismatch
from .linalg import SparseMatrix
from .rings import INTEGERS


@dataclass(frozen=True)
class SNFResult:
    invariant_factors: list[int] = field(default_factory=list)

    @property
    def rank(self) -> int:
        return len(self.invariant_factors)

    @property
    def torsion(self) -> list[int]:
        return [d for d in self.invariant_factors if d != 1]

    def to_json(self) -> dict:
        return {"invariant_factors": list(self.invariant_factors), "rank": self.rank}


def smith_normal_form(m: SparseMatrix) -> SNFResult:
    if m.ring.kind != INTEGERS:
        raise RingMismatch(f"smith_normal_form needs an integer matrix, got {m.ring}")
    rows: dict[int, dict[int, int]] = {}
    cols: dict[int, set[int]] = {}
    for c, col in m.columns.items():
        for r, v in col.items():
            rows.setdefault(r, {})[c] = int(v)
            cols.setdefault(c, set()).add(r)

    diagonal: list[int] = []
    # Cheap first pass: pivots that are units, in a fixed order.
    unit_queue = [(r, c) for r, row in rows.items() for c, v in row.items() if abs(v) == 1]
    for r, c in unit_queue:
        if r in rows and rows[r].get(c) in (1, -1):
            _eliminate_unit(rows, cols, r, c)
            diagonal.append(1)

    while rows:
        r, c = _min_pivot(rows)
        while True:
            a = rows[r][c]
            smaller = None
            # Reduce column c by row operations.
            for r2 in list(cols[c]):
                if r2 == r:
                    continue
                q = rows[r2][c] // a
                _add_row(rows, cols, r2, r, -q)
                rem = rows.get(r2, {}).get(c)
                if rem:
                    smaller = (r2, c)
            # Reduce row r by column operations.
            for c2 in list(rows[r]):
                if c2 == c:
                    continue
                q = rows[r][c2] // a
                _add_col(rows, cols, c2, c, -q)
                rem = rows[r].get(c2)
                if rem:
                    if smaller is None or abs(rem) < abs(rows[smaller[0]][smaller[1]]):
                        smaller = (r, c2)
            if smaller is None:
                break
            r, c = smaller
        diagonal.append(abs(rows[r][c]))
        _drop(rows, cols, r, c)

    return SNFResult(_invariant_chain(diagonal))


def _min_pivot(rows: dict[int, dict[int, int]]) -> tuple[int, int]:
    best = None
    for r, row in rows.items():
        for c, v in row.items():
            if best is None or abs(v) < best[0]:
                best = (abs(v), r, c)
                if best[0] == 1:
                    return r, c
    return best[1], best[2]


def _add_row(rows, cols, target: int, source: int, q: int) -> None:
    """row[target] += q * row[source]"""
    if q == 0:
        return
    t = rows[target]
    for c, v in rows[source].items():
        nv = t.get(c, 0) + q * v
        if nv:
            if c not in t:
                cols[c].add(target)
            t[c] = nv
        elif c in t:
            del t[c]
            cols[c].discard(target)
    if not t:
        del rows[target]


def _add_col(rows, cols, target: int, source: int, q: int) -> None:
    """col[target] += q * col[source]"""
    if q == 0:
        return
    tset = cols.setdefault(target, set())
    for r in list(cols[source]):
        row = rows[r]
        nv = row.get(target, 0) + q * row[source]
        if nv:
            row[target] = nv
            tset.add(r)
        elif target in row:
            del row[target]
            tset.discard(r)
    if not tset:
        del cols[target]


def _eliminate_unit(rows, cols, r: int, c: int) -> None:
    u = rows[r][c]
    for r2 in list(cols[c]):
        if r2 != r:
            _add_row(rows, cols, r2, r, -rows[r2][c] * u)
    # Column c now meets only row r, so clearing row r by column ops touches nothing else.
    _drop(rows, cols, r, c)


def _drop(rows, cols, r: int, c: int) -> None:
    for c2 in rows.pop(r):
        s = cols[c2]
        s.discard(r)
        if not s:
            del cols[c2]
    for r2 in cols.pop(c, ()):
        row = rows[r2]
        row.pop(c, None)
        if not row:
            del rows[r2]


def _invariant_chain(diagonal: list[int]) -> list[int]:
    ones = [d for d in diagonal if d == 1]
    rest = sorted(d for d in diagonal if d > 1)
    # (a, b) -> (gcd, lcm) until every entry divides the next.
    changed = True
    while changed:
        changed = False
        for i in range(len(rest)):
            for j in range(i + 1, len(rest)):
                a, b = rest[i], rest[j]
                if b % a:
                    g = math.gcd(a, b)
                    rest[i], rest[j] = g, a // g * b
                    changed = True
        rest.sort()
    return ones + [d for d in rest]
