"""Tor_*^A(1, 1) for augmented finite-dimensional algebras.

Two independent engines:

* ``bar``: the reduced bar complex Ā^{⊗q} with
  d(a_1⊗…⊗a_q) = Σ_{i=1}^{q-1} (-1)^i a_1⊗…⊗a_i a_{i+1}⊗…⊗a_q.
  Works over fields (ranks) and over the integers (Smith normal form).
* ``resolution``: a free resolution of the trivial left module built degree
  by degree from kernels, tensored down with the trivial right module.
  Field coefficients only; far smaller than the bar complex, so it handles
  the cases whose bar complexes have millions of basis tensors.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from .errors import CheckFailed, NotAField, RingMismatch, SizeCapExceeded
from .exact.linalg import SparseMatrix, Subspace, matrix_rank, nullspace, rank_dense
from .exact.rings import INTEGERS, PRIME_FIELD, QUAD_EXT, RingSpec
from .exact.snf import smith_normal_form
from .finite_algebra import AlgebraMap, Character, FiniteAlgebra

BAR_CAP = 200_000  # columns of a single bar boundary
AUTO_BAR_LIMIT = 20_000  # "auto" prefers the bar engine up to this many columns
SNF_LIMIT = 5_000  # rows and columns of an integer boundary
DD_FULL_CHECK = 20_000


# ---------------------------------------------------------------------------
# results


@dataclass
class TorResult:
    ring: RingSpec
    mode: str  # "field" | "integer"
    dims: list[int] = field(default_factory=list)
    invariants: list = field(default_factory=list)  # integer mode: {"free", "torsion"} or None
    method: str = "bar"
    notes: list[str] = field(default_factory=list)

    @property
    def qmax(self) -> int:
        return len(self.dims if self.mode == "field" else self.invariants) - 1

    def degree(self, q: int):
        return self.dims[q] if self.mode == "field" else self.invariants[q]

    def to_json(self) -> dict:
        out = {"ring": self.ring.to_json(), "mode": self.mode, "method": self.method}
        if self.mode == "field":
            out["dims"] = list(self.dims)
        else:
            out["invariants"] = self.invariants
        if self.notes:
            out["notes"] = list(self.notes)
        return out

    @classmethod
    def from_json(cls, obj: dict) -> TorResult:
        return cls(
            RingSpec.from_json(obj["ring"]),
            obj["mode"],
            list(obj.get("dims", [])),
            list(obj.get("invariants", [])),
            obj.get("method", "bar"),
            list(obj.get("notes", [])),
        )


@dataclass
class ComparisonReport:
    left: TorResult
    right: TorResult
    equal_through: int
    details: list[dict]

    @property
    def all_equal(self) -> bool:
        return self.equal_through == min(self.left.qmax, self.right.qmax)

    def to_json(self) -> dict:
        return {
            "left": self.left.to_json(),
            "right": self.right.to_json(),
            "equal_through": self.equal_through,
            "details": self.details,
        }


def compare(a: TorResult, b: TorResult) -> ComparisonReport:
    if a.ring != b.ring:
        raise RingMismatch(f"{a.ring} vs {b.ring}")
    if a.mode != b.mode:
        raise ValueError("cannot compare field and integer results")
    details = []
    equal_through = -1
    broken = False
    for q in range(min(a.qmax, b.qmax) + 1):
        same = a.degree(q) == b.degree(q)
        details.append({"q": q, "left": a.degree(q), "right": b.degree(q), "equal": same})
        if same and not broken:
            equal_through = q
        else:
            broken = True
    return ComparisonReport(a, b, equal_through, details)


# ---------------------------------------------------------------------------
# the reduced bar complex


class BarComplex:
    """Reduced bar complex of ``(alg, chi)`` in degrees up to ``qmax + 1``.

    Ā has basis b̄ = b - χ(b)·1 over the non-unit basis elements, so
    dim C_q = (dim A - 1)^q.
    """

    def __init__(self, alg: FiniteAlgebra, chi: Character, qmax: int, cap: int = BAR_CAP):
        self.algebra = alg
        self.character = chi
        self.qmax = qmax
        self.cap = cap
        self.ring = alg.ring
        self.nonunit = [k for k in range(alg.dim) if k != alg.unit]
        self.m = len(self.nonunit)
        self._boundaries: dict[int, SparseMatrix] = {}
        self.table = self._product_table()

    def _product_table(self) -> list[list[dict]]:
        """table[x][y] = ā·b̄ in the Ā basis."""
        alg, chi, ring = self.algebra, self.character, self.ring
        pos = {k: i for i, k in enumerate(self.nonunit)}
        table = []
        for x, a in enumerate(self.nonunit):
            row = []
            for y, b in enumerate(self.nonunit):
                out: dict[int, object] = {}
                for s, c in alg.mult[a][b]:
                    if c != alg.unit:
                        out[pos[c]] = ring.add(out.get(pos[c], ring.zero), s)
                out[x] = ring.sub(out.get(x, ring.zero), chi(b))
                out[y] = ring.sub(out.get(y, ring.zero), chi(a))
                row.append({z: v for z, v in out.items() if not ring.is_zero(v)})
            table.append(row)
        return table

    def dim(self, q: int) -> int:
        return self.m**q

    def boundary(self, q: int) -> SparseMatrix:
        """d_q: C_q -> C_{q-1}."""
        if q in self._boundaries:
            return self._boundaries[q]
        m, ring = self.m, self.ring
        ncols = m**q
        if ncols > self.cap:
            raise SizeCapExceeded(f"bar degree {q} has {ncols} basis tensors (cap {self.cap})")
        cols: dict[int, dict[int, object]] = {}
        if q >= 2:
            table = self.table
            neg = [ring.one if i % 2 == 0 else ring.neg(ring.one) for i in range(q)]
            for col in range(ncols):
                digits = []
                c = col
                for _ in range(q):
                    digits.append(c % m)
                    c //= m
                digits.reverse()
                entry: dict[int, object] = {}
                for i in range(1, q):
                    x, y = digits[i - 1], digits[i]
                    prod = table[x][y]
                    if not prod:
                        continue
                    head = 0
                    for t in digits[: i - 1]:
                        head = head * m + t
                    tail = 0
                    for t in digits[i + 1 :]:
                        tail = tail * m + t
                    scale = m ** (q - i - 1)
                    sign = neg[i]
                    for z, v in prod.items():
                        r = (head * m + z) * scale + tail
                        entry[r] = ring.add(entry.get(r, ring.zero), ring.mul(sign, v))
                entry = {r: v for r, v in entry.items() if not ring.is_zero(v)}
                if entry:
                    cols[col] = entry
        mat = SparseMatrix.from_columns(m ** (q - 1), ncols, ring, cols)
        self._boundaries[q] = mat
        return mat

    def check_dd(self, q: int, seed: int = 0) -> None:
        """Hard assertion d_q ∘ d_{q+1} = 0 (sampled on very large degrees)."""
        if q < 2:
            return
        upper, lower = self.boundary(q + 1), self.boundary(q)
        ring = self.ring
        cols = list(upper.columns)
        if len(cols) > DD_FULL_CHECK:
            cols = random.Random(seed).sample(cols, DD_FULL_CHECK // 10)
        for c in cols:
            acc: dict[int, object] = {}
            for r, v in upper.columns[c].items():
                for r2, w in lower.columns.get(r, {}).items():
                    acc[r2] = ring.add(acc.get(r2, ring.zero), ring.mul(v, w))
            if any(not ring.is_zero(v) for v in acc.values()):
                raise CheckFailed(f"d_{q} ∘ d_{q + 1} != 0 on column {c}")


def bar_boundary(alg: FiniteAlgebra, chi: Character, q: int, cap: int = BAR_CAP) -> SparseMatrix:
    if q < 1:
        raise ValueError("bar boundaries start at q = 1")
    return BarComplex(alg, chi, q, cap).boundary(q)


def _tor_bar_field(alg, chi, qmax, cap) -> TorResult:
    bc = BarComplex(alg, chi, qmax, cap)
    ranks = [0] * (qmax + 2)
    for q in range(2, qmax + 2):
        ranks[q] = matrix_rank(bc.boundary(q))
    for q in range(2, qmax + 1):
        bc.check_dd(q)
    dims = [bc.dim(q) - ranks[q] - ranks[q + 1] for q in range(qmax + 1)]
    return TorResult(alg.ring, "field", dims, method="bar")


def _tor_bar_integer(alg, chi, qmax, cap) -> TorResult:
    bc = BarComplex(alg, chi, qmax, cap)
    notes = []
    snf = {}
    for q in range(2, qmax + 2):
        d = bc.boundary(q)
        if d.rows <= SNF_LIMIT and d.cols <= SNF_LIMIT:
            snf[q] = smith_normal_form(d)
    for q in range(2, qmax + 1):
        bc.check_dd(q)
    inv = []
    for q in range(qmax + 1):
        # d_1 vanishes on the reduced complex
        if (q >= 2 and q not in snf) or (q >= 1 and q + 1 not in snf):
            inv.append(None)
            notes.append(_fallback_note(alg, chi, q, cap))
            continue
        rk_q = snf[q].rank if q >= 2 else 0
        rk_next = snf[q + 1].rank if q >= 1 else 0
        torsion = snf[q + 1].torsion if q >= 1 else []
        inv.append({"free": bc.dim(q) - rk_q - rk_next, "torsion": torsion})
    return TorResult(alg.ring, "integer", [], inv, method="bar", notes=notes)


def _fallback_note(alg, chi, q, cap) -> str:
    parts = []
    for ring in (RingSpec.rationals(), RingSpec.prime_field(2), RingSpec.prime_field(3)):
        a2, c2 = change_ring(alg, chi, ring)
        dims = tor(a2, c2, q, method="auto", cap=cap).dims
        parts.append(f"{ring}: {dims[q]}")
    return f"degree {q} exceeds the SNF limit; field dims " + ", ".join(parts)


def change_ring(alg: FiniteAlgebra, chi: Character, ring: RingSpec):
    """Reduce integer structure constants into another ring."""
    if alg.ring.kind != INTEGERS:
        raise RingMismatch("change_ring starts from an integer algebra")
    conv = ring.normalize
    mult = [[tuple((conv(c), k) for c, k in t if not ring.is_zero(conv(c))) for t in row] for row in alg.mult]
    return FiniteAlgebra(ring, alg.basis, alg.unit, mult, alg.meta), Character(tuple(conv(v) for v in chi.values))


# ---------------------------------------------------------------------------
# free resolutions


class FreeResolution:
    """F_q = A^{g_q} → … → F_0 = A → 1, with generator images stored densely.

    ``images[q][t]`` is the image in F_{q-1} of the t-th generator of F_q,
    a vector of length dim A · g_{q-1} indexed by (generator, basis element).
    """

    def __init__(self, alg: FiniteAlgebra, chi: Character, seed: int = 0, tries: int = 6):
        alg.ring.require_field()
        self.rng = random.Random(seed)
        self.tries = tries
        self.algebra = alg
        self.character = chi
        self.ring = alg.ring
        self.d = alg.dim
        self.gens = [1]
        self.images: list[list[list]] = [[]]
        ring = self.ring
        # Kernel of the augmentation: b - χ(b)·1.
        kernel = []
        for b in range(self.d):
            if b == alg.unit:
                continue
            v = [ring.zero] * self.d
            v[b] = ring.one
            v[alg.unit] = ring.sub(v[alg.unit], chi(b))
            kernel.append(v)
        self._kernel = kernel

    def left_multiply(self, b: int, v: list) -> list:
        ring, d = self.ring, self.d
        mult = self.algebra.mult[b]
        out = [ring.zero] * len(v)
        for t in range(0, len(v), d):
            for k in range(d):
                c = v[t + k]
                if ring.is_zero(c):
                    continue
                for s, j in mult[k]:
                    out[t + j] = ring.add(out[t + j], ring.mul(c, s))
        return out

    def extend(self) -> None:
        """Add one more degree: generators for the current kernel and the new kernel.

        Generators are random combinations of the kernel basis, keeping the
        best of a few tries each round. Generic elements generate large
        submodules, so the free ranks stay close to minimal; correctness
        never depends on the choice.
        """
        ring, d = self.ring, self.d
        length = d * self.gens[-1]
        kernel = self._kernel
        span = Subspace(ring, length)
        gens: list[list] = []
        while span.dim < len(kernel):
            best = None
            for _ in range(self.tries):
                v = self._random_combination(kernel, length)
                imgs = [self.left_multiply(b, v) for b in range(d)]
                r = rank_dense(ring, span.basis + imgs, length)
                if best is None or r > best[0]:
                    best = (r, v, imgs)
            if best[0] > span.dim:
                gens.append(best[1])
                span.add(best[2])
        # Matrix of F_new -> F_old: column (t, b) = b·gens[t].
        columns = [self.left_multiply(b, g) for g in gens for b in range(d)]
        rows = [[col[r] for col in columns] for r in range(length)]
        self.gens.append(len(gens))
        self.images.append(gens)
        self._kernel = nullspace(ring, rows, len(columns)) if columns else []

    def _random_combination(self, vectors: list[list], length: int) -> list:
        ring, rng = self.ring, self.rng
        out = [ring.zero] * length
        for w in vectors:
            c = self._random_scalar()
            if ring.is_zero(c):
                continue
            out = [ring.add(a, ring.mul(c, b)) for a, b in zip(out, w)]
        return out

    def _random_scalar(self):
        ring, rng = self.ring, self.rng
        if ring.kind == QUAD_EXT:
            return (rng.randrange(ring.p), rng.randrange(ring.p))
        if ring.kind == PRIME_FIELD:
            return rng.randrange(ring.p)
        return ring.from_int(rng.randint(-3, 3))

    def reduced_differential(self, q: int) -> list[list]:
        """D_q = χ ⊗ ∂_q: k^{g_q} -> k^{g_{q-1}} (rows indexed by F_{q-1} generators)."""
        ring, d, chi = self.ring, self.d, self.character
        rows = []
        for s in range(self.gens[q - 1]):
            row = []
            for v in self.images[q]:
                acc = ring.zero
                for k in range(d):
                    c = v[s * d + k]
                    if not ring.is_zero(c):
                        acc = ring.add(acc, ring.mul(c, chi(k)))
                row.append(acc)
            rows.append(row)
        return rows


def _tor_resolution(alg, chi, qmax) -> TorResult:
    res = FreeResolution(alg, chi)
    for _ in range(qmax + 1):
        res.extend()
    ring = alg.ring
    ranks = [0] * (qmax + 2)
    for q in range(1, qmax + 2):
        ranks[q] = rank_dense(ring, res.reduced_differential(q), res.gens[q])
    for q in range(1, qmax + 1):
        _check_composite_zero(ring, res.reduced_differential(q), res.reduced_differential(q + 1))
    dims = [res.gens[q] - ranks[q] - ranks[q + 1] for q in range(qmax + 1)]
    out = TorResult(ring, "field", dims, method="resolution")
    out.notes.append("resolution ranks " + ",".join(map(str, res.gens[: qmax + 2])))
    return out


def _check_composite_zero(ring, a: list[list], b: list[list]) -> None:
    if not a or not b:
        return
    for i in range(len(a)):
        for j in range(len(b[0])):
            acc = ring.zero
            for k in range(len(b)):
                acc = ring.add(acc, ring.mul(a[i][k], b[k][j]))
            if not ring.is_zero(acc):
                raise CheckFailed("reduced differentials do not compose to zero")


# ---------------------------------------------------------------------------
# public entry points


def tor(alg: FiniteAlgebra, chi: Character, qmax: int, mode: str | None = None, method: str = "auto", cap: int = BAR_CAP) -> TorResult:
    """Tor_q^A(1, 1) for 0 <= q <= qmax.

    ``mode`` is ``"field"`` or ``"integer"`` (default: by the algebra's ring).
    ``method`` is ``"bar"``, ``"resolution"`` or ``"auto"``.
    """
    ring = alg.ring
    mode = mode or ("field" if ring.is_field else "integer")
    if mode == "integer":
        if ring.kind != INTEGERS:
            raise RingMismatch("integer mode needs an algebra over Z")
        if method == "resolution":
            raise NotAField("the resolution engine needs field coefficients")
        return _tor_bar_integer(alg, chi, qmax, cap)
    if not ring.is_field:
        raise NotAField(f"field mode over {ring}")
    m = alg.dim - 1
    if method == "auto":
        method = "bar" if m ** (qmax + 1) <= AUTO_BAR_LIMIT else "resolution"
    if method == "bar":
        return _tor_bar_field(alg, chi, qmax, cap)
    if method == "resolution":
        return _tor_resolution(alg, chi, qmax)
    raise ValueError(f"unknown method {method!r}")


def group_homology(spec, ring: RingSpec, qmax: int, method: str = "auto") -> TorResult:
    from .groups import group_algebra

    alg, chi = group_algebra(spec, ring)
    return tor(alg, chi, qmax, method=method)


# ---------------------------------------------------------------------------
# induced maps


def tor_induced_map(incl: AlgebraMap, chi_src: Character, chi_tgt: Character, qmax: int) -> list[int]:
    """Ranks of H_q(f): Tor_q^{src} -> Tor_q^{tgt} for 0 <= q <= qmax (bar engine)."""
    incl.require_characters(chi_src, chi_tgt)
    src, tgt = incl.source, incl.target
    ring = tgt.ring
    ring.require_field()
    bs = BarComplex(src, chi_src, qmax)
    bt = BarComplex(tgt, chi_tgt, qmax)
    pos_t = {k: i for i, k in enumerate(bt.nonunit)}
    # f(b̄) in the target's Ā basis; the unit coefficient cancels by compatibility.
    fmat = []
    for a in bs.nonunit:
        img = {}
        for k, c in incl.images[a].items():
            if k != tgt.unit:
                img[pos_t[k]] = c
        fmat.append(img)
    ranks = [1]
    for q in range(1, qmax + 1):
        cycles = _cycle_basis(bs, q)
        boundaries = _column_vectors(bt.boundary(q + 1)) if bt.dim(q + 1) else []
        images = [_tensor_apply(fmat, c, bs.m, bt.m, q, ring) for c in cycles]
        n_t = bt.dim(q)
        rb = _sparse_rank(ring, boundaries, n_t)
        rbi = _sparse_rank(ring, boundaries + images, n_t)
        ranks.append(rbi - rb)
    return ranks


def _column_vectors(m: SparseMatrix) -> list[dict]:
    return [dict(c) for c in m.columns.values()]


def _sparse_rank(ring, vectors: list[dict], nrows: int) -> int:
    cols = {i: v for i, v in enumerate(vectors) if v}
    return matrix_rank(SparseMatrix.from_columns(nrows, len(vectors), ring, cols)) if cols else 0


def _cycle_basis(bc: BarComplex, q: int) -> list[dict]:
    ring = bc.ring
    n = bc.dim(q)
    if q == 1:
        return [{i: ring.one} for i in range(n)]
    d = bc.boundary(q)
    rows = [[ring.zero] * n for _ in range(d.rows)]
    for c, col in d.columns.items():
        for r, v in col.items():
            rows[r][c] = v
    return [{i: x for i, x in enumerate(v) if not ring.is_zero(x)} for v in nullspace(ring, rows, n)]


def _tensor_apply(fmat: list[dict], chain: dict, m_src: int, m_tgt: int, q: int, ring) -> dict:
    out: dict[int, object] = {}
    for col, coef in chain.items():
        digits = []
        c = col
        for _ in range(q):
            digits.append(c % m_src)
            c //= m_src
        digits.reverse()
        partial = {0: coef}
        for x in digits:
            nxt: dict[int, object] = {}
            for idx, v in partial.items():
                for z, w in fmat[x].items():
                    key = idx * m_tgt + z
                    nxt[key] = ring.add(nxt.get(key, ring.zero), ring.mul(v, w))
            partial = nxt
        for k, v in partial.items():
            out[k] = ring.add(out.get(k, ring.zero), v)
    return {k: v for k, v in out.items() if not ring.is_zero(v)}
