"""Named verification suites: each returns a SuiteReport of exact checks.

Without overrides a suite runs its fixed acceptance block. With ``n`` given it
runs the single theorem comparison at the requested size and parameters.
"""

from __future__ import annotations

import itertools
import math
import random
import time
from dataclasses import dataclass, field
from functools import lru_cache

from .algebra import (
    Setup,
    diagram_algebra,
    inclusion_map,
    search_sroka_idempotent,
    sroka_link_states,
    verify_fp_scaling,
)
from .braids import BraidWord, PartialBraid, braid_equal, compose_partial, nf_multiply, normal_form
from .diagrams import (
    Flavor,
    Params,
    compose_detailed,
    count_diagrams,
    enumerate_diagrams,
    enumerate_link_states,
    rho,
)
from .errors import DAWError, NonInvertible
from .exact.rings import RingSpec
from .groups import FiniteGroup, SemidirectSpec, direct_power, group_algebra
from .homology import TorResult, compare, group_homology, tor, tor_induced_map

SUITES = ("rook", "brauer", "tl", "rookbrauer", "motzkin", "sroka", "braid", "stability")
EXTRA_SUITES = ("dimensions", "associativity", "oracle")

F2 = RingSpec.prime_field(2)
F5 = RingSpec.prime_field(5)
Q = RingSpec.rationals()
TRIVIAL = FiniteGroup.trivial()
C2 = FiniteGroup.cyclic(2)


@dataclass
class CheckResult:
    id: str
    ref: str
    passed: bool
    details: str = ""

    def to_json(self) -> dict:
        return {"id": self.id, "ref": self.ref, "passed": self.passed, "details": self.details}


@dataclass
class SuiteReport:
    suite: str
    checks: list[CheckResult] = field(default_factory=list)
    wall_time: float = 0.0

    @property
    def failures(self) -> list[CheckResult]:
        return [c for c in self.checks if not c.passed]

    @property
    def status(self) -> str:
        return "pass" if not self.failures else "fail"

    def add(self, id: str, ref: str, passed: bool, details: str = "") -> None:
        self.checks.append(CheckResult(id, ref, bool(passed), details))

    def to_json(self, timing: bool = True) -> dict:
        out = {"suite": self.suite, "status": self.status, "checks": [c.to_json() for c in self.checks]}
        if timing:
            out["wall_time"] = round(self.wall_time, 3)
        return out

    def table(self) -> str:
        lines = [f"suite {self.suite}: {self.status.upper()} ({len(self.checks)} checks, {self.wall_time:.1f}s)"]
        for c in self.checks:
            lines.append(f"  [{'PASS' if c.passed else 'FAIL'}] {c.id}: {c.details}")
        return "\n".join(lines)


@dataclass(frozen=True)
class SuiteConfig:
    n: int | None = None
    group: FiniteGroup = TRIVIAL
    ring: RingSpec = F2
    delta: str = "1"
    eps: str = "1"
    qmax: int = 3
    seed: int = 0


# ---------------------------------------------------------------------------
# cached building blocks


@lru_cache(maxsize=None)
def _algebra(flavor: Flavor, n: int, group: FiniteGroup, ring: RingSpec, delta: str, eps: str):
    return diagram_algebra(n, flavor, group, Params.make(ring, delta, eps))


@lru_cache(maxsize=None)
def diagram_tor(flavor: Flavor, n: int, group: FiniteGroup, ring: RingSpec, delta: str, eps: str, qmax: int, method: str = "auto") -> TorResult:
    alg, chi = _algebra(flavor, n, group, ring, delta, eps)
    return tor(alg, chi, qmax, method=method)


@lru_cache(maxsize=None)
def wreath_tor(group: FiniteGroup, n: int, ring: RingSpec, qmax: int) -> TorResult:
    """Homology of G^n ⋊ Σ_n."""
    return group_homology(SemidirectSpec(group, n), ring, qmax)


@lru_cache(maxsize=None)
def power_tor(group: FiniteGroup, n: int, ring: RingSpec, qmax: int) -> TorResult:
    """Homology of G^n."""
    return group_homology(direct_power(group, n), ring, qmax)


def _compare_check(report: SuiteReport, id: str, ref: str, a: TorResult, b: TorResult) -> None:
    c = compare(a, b)
    report.add(id, ref, c.all_equal, f"{a.dims} vs {b.dims}")


def _expect_check(report: SuiteReport, id: str, ref: str, a: TorResult, want: list[int]) -> None:
    report.add(id, ref, a.dims == want, f"{a.dims} vs expected {want}")


def _invertible(ring: RingSpec, text: str) -> bool:
    try:
        ring.inv(ring.parse_value(text))
        return True
    except NonInvertible:
        return False


def _require(cond: bool, message: str) -> None:
    if not cond:
        raise DAWError(message)


# ---------------------------------------------------------------------------
# independent oracles


def catalan(n: int) -> int:
    c = [1]
    for k in range(1, n + 1):
        c.append(sum(c[i] * c[k - 1 - i] for i in range(k)))
    return c[n]


def motzkin_number(k: int) -> int:
    m = [1, 1]
    for j in range(2, k + 1):
        m.append(m[j - 1] + sum(m[i] * m[j - 2 - i] for i in range(j - 1)))
    return m[k]


def double_factorial_odd(n: int) -> int:
    return math.prod(range(1, 2 * n, 2))


def rook_count(n: int) -> int:
    return sum(math.comb(n, k) ** 2 * math.factorial(k) for k in range(n + 1))


def involutions(m: int) -> int:
    a = [1, 1]
    for j in range(2, m + 1):
        a.append(a[j - 1] + (j - 1) * a[j - 2])
    return a[m]


def cyclic2_periodic_tor(ring: RingSpec, qmax: int) -> list[int]:
    """Tor over k[C_2] from the 2-periodic resolution ... -> k[C_2] --(1-g)--> k[C_2] --(1+g)--> ...

    Exactness is checked on the basis {1, g}; tensoring with the trivial
    module turns the differentials into the scalars 0 and 2.
    """
    one, zero = ring.one, ring.zero
    minus, plus = [[one, ring.neg(one)], [ring.neg(one), one]], [[one, one], [one, one]]

    def rank2(m):
        if all(ring.is_zero(x) for row in m for x in row):
            return 0
        det = ring.sub(ring.mul(m[0][0], m[1][1]), ring.mul(m[0][1], m[1][0]))
        return 1 if ring.is_zero(det) else 2

    def mat_mul(a, b):
        return [[ring.add(ring.mul(a[i][0], b[0][j]), ring.mul(a[i][1], b[1][j])) for j in range(2)] for i in range(2)]

    for a, b in ((minus, plus), (plus, minus)):
        if rank2(mat_mul(a, b)) != 0 or rank2(a) + rank2(b) != 2:
            raise AssertionError("periodic resolution is not exact")
    # d_q on k = k ⊗ F_q: d_1 = χ(1-g) = 0, d_2 = χ(1+g) = 2, alternating
    scal = lambda q: zero if q % 2 else ring.from_int(2)  # noqa: E731
    r = lambda q: 0 if q == 0 or ring.is_zero(scal(q)) else 1  # noqa: E731
    return [1 - r(q) - r(q + 1) for q in range(qmax + 1)]


# ---------------------------------------------------------------------------
# criterion blocks


REF_DIMS = "basis counts: Catalan, Motzkin M_2n, (2n-1)!!, rook numbers, involutions"
REF_ASSOC = "diagram composition is associative with δ for loops and ε for contractible components"
REF_RHO = "ε⁻¹ρ_i is idempotent; the left ideal A·ρ_i is spanned by diagrams with right node i free"
REF_FP = "f_p scaling lemma: y·f_p = δ^((n-i)/2)·y on J_p"
REF_ORACLE = "group homology of C_2: k in every degree in characteristic 2, k in degree 0 over Q"
REF_ROOK = "G-rook theorem: ε invertible gives Tor of G-rook = homology of G^n ⋊ Σ_n"
REF_BRAUER = "G-Brauer theorem: δ invertible gives Tor of G-Brauer = homology of G^n ⋊ Σ_n"
REF_TL = "G-Temperley-Lieb theorem: δ invertible gives Tor of G-TL = Tor over k[G^n]"
REF_RB = "G-rook-Brauer theorem: ε invertible gives Tor of G-RB(δ,ε) = Tor of G-Brauer(δ)"
REF_MOTZKIN = "G-Motzkin theorem: ε invertible gives Tor of G-Motzkin(δ,ε) = Tor of G-TL(δ)"
REF_SROKA = "odd n, any δ: Tor of G-Brauer = homology of G^n ⋊ Σ_n, Tor of G-TL = Tor over k[G^n]"
REF_SROKA_E = "existence of the six-condition idempotent e with J_p·e = J_p fixed pointwise"
REF_BRAID = "braid relations and partial-braid monoid closure at maximal rank"
REF_STAB = "homological stability spot-check at desk scale"


def block_dimensions(report: SuiteReport, cfg: SuiteConfig) -> None:
    cases = [
        (Flavor.TL, range(1, 6), catalan),
        (Flavor.MOTZKIN, range(1, 5), lambda n: motzkin_number(2 * n)),
        (Flavor.BRAUER, range(1, 5), double_factorial_odd),
        (Flavor.ROOK, range(1, 4), rook_count),
        (Flavor.ROOK_BRAUER, range(1, 5), lambda n: involutions(2 * n)),
    ]
    for f, ns, oracle in cases:
        got = [len(enumerate_diagrams(n, f)) for n in ns]
        want = [oracle(n) for n in ns]
        report.add(f"dim.{f.value}", REF_DIMS, got == want, f"{got} vs {want}")
    got = count_diagrams(2, Flavor.BRAUER, C2)
    report.add("dim.brauer.C2", REF_DIMS, got == len(enumerate_diagrams(2, Flavor.BRAUER, C2)) == 12, f"{got}")


def _triple_ok(x, y, z, p: Params) -> bool:
    ring = p.ring
    s1, xy, _ = compose_detailed(x, y, p)
    s2, left, _ = compose_detailed(xy, z, p)
    t1, yz, _ = compose_detailed(y, z, p)
    t2, right, _ = compose_detailed(x, yz, p)
    a, b = ring.mul(s1, s2), ring.mul(t1, t2)
    if ring.is_zero(a) and ring.is_zero(b):
        return True
    return a == b and left == right


def block_associativity(report: SuiteReport, cfg: SuiteConfig) -> None:
    rng = random.Random(cfg.seed)
    for f, g in itertools.product(Flavor, (TRIVIAL, C2)):
        gname = "C2" if g.order == 2 else "1"
        ok, detail = True, []
        for delta, eps in (("0", "1"), ("1", "1"), ("2", "3")):
            alg, _ = diagram_algebra(2, f, g, Params.make(F5, delta, eps), check=False)
            good = alg.check_associative(None)
            ok &= good
            detail.append(f"(δ,ε)=({delta},{eps}) dim {alg.dim} {'ok' if good else 'FAIL'}")
        report.add(f"assoc.n2.{f.value}.{gname}", REF_ASSOC, ok, "; ".join(detail))
        p = Params.make(F5, "2", "3")
        basis = enumerate_diagrams(3, f, g)
        bad = sum(not _triple_ok(*(rng.choice(basis) for _ in range(3)), p) for _ in range(1000))
        report.add(f"assoc.n3.{f.value}.{gname}", REF_ASSOC, bad == 0, f"1000 random triples, {bad} failures")


def block_rho(report: SuiteReport, cfg: SuiteConfig) -> None:
    for f in (f for f in Flavor if f.contains_rho):
        for g, eps in itertools.product((TRIVIAL, C2), ("1", "2")):
            p = Params.make(F5, "2", eps)
            inv = F5.inv(p.eps)
            ok_idem = ok_span = ok_literal = True
            for n in range(1, 4):
                basis = enumerate_diagrams(n, f, g)
                for i in range(1, n + 1):
                    r = rho(n, i, g)
                    s, d, _ = compose_detailed(r, r, p)
                    # (ε⁻¹ρ)(ε⁻¹ρ) = ε⁻² s ρ must equal ε⁻¹ρ
                    ok_idem &= d == r and F5.mul(F5.mul(inv, inv), s) == inv
                    got = set()
                    for x in basis:
                        s, d, _ = compose_detailed(x, r, p)
                        if not F5.is_zero(s):
                            got.add(d)
                    want = {d for d in basis if d.partner[n + i - 1] == -1}
                    ok_span &= got == want
                    if f == Flavor.ROOK:
                        literal = {d for d in basis if not 0 <= d.partner[n + i - 1] < n}
                        ok_literal &= got == literal
            gname = "C2" if g.order == 2 else "1"
            report.add(f"rho.idempotent.{f.value}.{gname}.eps{eps}", REF_RHO, ok_idem, "n <= 3, all i")
            report.add(f"rho.left_ideal.{f.value}.{gname}.eps{eps}", REF_RHO, ok_span, "basis = diagrams with R_i unmatched")
            if f == Flavor.ROOK:
                report.add(f"rho.left_ideal_literal.rook.{gname}.eps{eps}", REF_RHO, ok_literal, "R_i not joined to a left node")


def block_fp(report: SuiteReport, cfg: SuiteConfig) -> None:
    for g, n in itertools.product((TRIVIAL, C2), (2, 3, 4)):
        setup = Setup(n, Flavor.BRAUER, g, Params.make(F5, "2", "1"))
        count, ok = 0, True
        for i in range(n % 2, n + 1, 2):
            for p in enumerate_link_states(n, i, Flavor.BRAUER, g):
                count += 1
                ok &= verify_fp_scaling(setup, p)
        gname = "C2" if g.order == 2 else "1"
        report.add(f"fp.brauer.n{n}.{gname}", REF_FP, ok, f"{count} link states")


def block_oracle(report: SuiteReport, cfg: SuiteConfig) -> None:
    for ring in (F2, Q):
        want = cyclic2_periodic_tor(ring, 5)
        for method in ("bar", "resolution"):
            got = group_homology(C2, ring, 5, method=method)
            _expect_check(report, f"oracle.C2.{ring}.{method}", REF_ORACLE, got, want)


def block_rook(report: SuiteReport, cfg: SuiteConfig) -> None:
    _compare_check(report, "rook.C2.n2", REF_ROOK, diagram_tor(Flavor.ROOK, 2, C2, F2, "1", "1", 3), wreath_tor(C2, 2, F2, 3))
    _compare_check(report, "rook.trivial.n3", REF_ROOK, diagram_tor(Flavor.ROOK, 3, TRIVIAL, F2, "1", "1", 3), wreath_tor(TRIVIAL, 3, F2, 3))


def block_brauer(report: SuiteReport, cfg: SuiteConfig) -> None:
    _compare_check(report, "brauer.trivial.n2", REF_BRAUER, diagram_tor(Flavor.BRAUER, 2, TRIVIAL, F2, "1", "1", 4), wreath_tor(TRIVIAL, 2, F2, 4))
    _compare_check(report, "brauer.C2.n2", REF_BRAUER, diagram_tor(Flavor.BRAUER, 2, C2, F2, "1", "1", 2), wreath_tor(C2, 2, F2, 2))


def block_tl(report: SuiteReport, cfg: SuiteConfig) -> None:
    for n, qmax in ((2, 4), (3, 4), (4, 3)):
        _expect_check(report, f"tl.trivial.n{n}", REF_TL, diagram_tor(Flavor.TL, n, TRIVIAL, Q, "1", "1", qmax), [1] + [0] * qmax)
    _compare_check(report, "tl.C2.n1", REF_TL, diagram_tor(Flavor.TL, 1, C2, F2, "1", "1", 5), power_tor(C2, 1, F2, 5))


def block_rookbrauer(report: SuiteReport, cfg: SuiteConfig) -> None:
    for delta in ("0", "1"):
        _compare_check(
            report, f"rookbrauer.n2.delta{delta}", REF_RB,
            diagram_tor(Flavor.ROOK_BRAUER, 2, TRIVIAL, F2, delta, "1", 3),
            diagram_tor(Flavor.BRAUER, 2, TRIVIAL, F2, delta, "1", 3),
        )


def block_motzkin(report: SuiteReport, cfg: SuiteConfig) -> None:
    for ring, delta in itertools.product((Q, F2), ("0", "1")):
        _compare_check(
            report, f"motzkin.n2.{ring}.delta{delta}", REF_MOTZKIN,
            diagram_tor(Flavor.MOTZKIN, 2, TRIVIAL, ring, delta, "1", 3),
            diagram_tor(Flavor.TL, 2, TRIVIAL, ring, delta, "1", 3),
        )


def _sroka_search(report: SuiteReport, n: int, group: FiniteGroup, ring: RingSpec, delta: str) -> None:
    for f in (Flavor.BRAUER, Flavor.TL):
        setup = Setup(n, f, group, Params.make(ring, delta, "1"))
        states = sroka_link_states(setup)
        failures = []
        for p in states:
            try:
                search_sroka_idempotent(setup, p)
            except DAWError as exc:
                failures.append(f"{p}: {exc}")
        gname = "C2" if group.order == 2 else str(group)
        report.add(f"sroka.search.{f.value}.n{n}.{gname}", REF_SROKA_E, not failures, f"{len(states)} link states" + (f"; {failures[0]}" if failures else ""))


def block_sroka(report: SuiteReport, cfg: SuiteConfig) -> None:
    _expect_check(report, "sroka.tl.n3.delta0", REF_SROKA, diagram_tor(Flavor.TL, 3, TRIVIAL, Q, "0", "1", 3), [1, 0, 0, 0])
    _expect_check(report, "sroka.tl.C2.n1.delta0", REF_SROKA, diagram_tor(Flavor.TL, 1, C2, F2, "0", "1", 5), [1] * 6)
    _compare_check(report, "sroka.brauer.n3.delta0", REF_SROKA, diagram_tor(Flavor.BRAUER, 3, TRIVIAL, Q, "0", "1", 3), wreath_tor(TRIVIAL, 3, Q, 3))
    for g in (TRIVIAL, C2):
        _sroka_search(report, 3, g, F5, "0")


def block_braid(report: SuiteReport, cfg: SuiteConfig, nmax: int = 5) -> None:
    rng = random.Random(cfg.seed)
    lhs, rhs = BraidWord.parse(3, "s1 s2 s1"), BraidWord.parse(3, "s2 s1 s2")
    report.add("braid.relation.B3", REF_BRAID, braid_equal(lhs, rhs), "s1 s2 s1 = s2 s1 s2")
    report.add("braid.nontrivial.B3", REF_BRAID, not braid_equal(lhs, BraidWord.parse(3, "s1 s2")), "s1 s2 s1 != s1 s2")

    bad = 0
    for _ in range(500):
        n = rng.randint(2, nmax)
        w = BraidWord.random(n, rng.randint(0, 10), rng)
        i = rng.randint(1, n - 1)
        kinds = ["free", "inverse"] + (["braid"] if n >= 3 else []) + (["commute"] if n >= 4 else [])
        kind = rng.choice(kinds)
        if kind == "braid":
            i = rng.randint(1, n - 2)
            a = ((i, 1), (i + 1, 1), (i, 1))
            b = ((i + 1, 1), (i, 1), (i + 1, 1))
        elif kind == "commute":
            i, j = rng.choice([(i, j) for i in range(1, n) for j in range(1, n) if abs(j - i) >= 2])
            a, b = ((i, 1), (j, 1)), ((j, 1), (i, 1))
        elif kind == "inverse":
            a, b = ((i, 1), (i, -1)), ()
        else:
            a, b = ((i, -1), (i, 1)), ()
        if rng.random() < 0.5:  # use the inverted relation too
            a = tuple((k, -s) for k, s in reversed(a))
            b = tuple((k, -s) for k, s in reversed(b))
        pos = rng.randint(0, len(w.letters))
        u = BraidWord(n, w.letters[:pos] + a + w.letters[pos:])
        v = BraidWord(n, w.letters[:pos] + b + w.letters[pos:])
        bad += not braid_equal(u, v)
    report.add("braid.insertion", REF_BRAID, bad == 0, f"500 insertions at n <= {nmax}, {bad} failures")

    bad = 0
    for _ in range(300):
        n = rng.randint(1, min(nmax, 4))
        g = rng.choice((None, C2))
        x, y, z = (PartialBraid.random(n, rng, g) for _ in range(3))
        s1, xy = compose_partial(x, y, 3)
        s2, left = compose_partial(xy, z, 3)
        t1, yz = compose_partial(y, z, 3)
        t2, right = compose_partial(x, yz, 3)
        bad += not (s1 * s2 == t1 * t2 and left == right)
    report.add("braid.partial.assoc", REF_BRAID, bad == 0, f"300 triples at n <= {min(nmax, 4)}, {bad} failures")

    bad = 0
    for _ in range(200):
        n = rng.randint(1, min(nmax, 4))
        g = rng.choice((None, C2))
        labels = lambda: None if g is None else [rng.randrange(2) for _ in range(n)]  # noqa: E731
        x = PartialBraid.make(n, range(1, n + 1), range(1, n + 1), BraidWord.random(n, 6, rng), labels(), g)
        y = PartialBraid.make(n, range(1, n + 1), range(1, n + 1), BraidWord.random(n, 6, rng), labels(), g)
        s, xy = compose_partial(x, y, 3)
        ok = s == 1 and xy.k == n and xy.braid == nf_multiply(x.braid, y.braid)
        ok &= xy.braid == normal_form(x.braid.to_word() * y.braid.to_word())
        if g is not None:
            perm = x.braid.permutation()
            ok &= xy.labels == tuple(g.mul(x.labels[j], y.labels[perm[j]]) for j in range(n))
        bad += not ok
    report.add("braid.max_rank.closure", REF_BRAID, bad == 0, f"200 products, {bad} failures")


def _stability_pair(report: SuiteReport, n: int, ring: RingSpec, eps: str, qmax: int) -> None:
    small, chi_s = _algebra(Flavor.ROOK, n - 1, TRIVIAL, ring, "1", eps)
    big, chi_b = _algebra(Flavor.ROOK, n, TRIVIAL, ring, "1", eps)
    ts, tb = tor(small, chi_s, qmax), tor(big, chi_b, qmax)
    gs, gb = wreath_tor(TRIVIAL, n - 1, ring, qmax), wreath_tor(TRIVIAL, n, ring, qmax)
    q = qmax
    report.add(f"stability.rook.n{n - 1}_n{n}.tor{q}", REF_STAB, ts.dims[q] == tb.dims[q], f"{ts.dims[q]} vs {tb.dims[q]}")
    report.add(f"stability.sym.n{n - 1}_n{n}.tor{q}", REF_STAB, gs.dims[q] == gb.dims[q], f"{gs.dims[q]} vs {gb.dims[q]}")
    ranks = tor_induced_map(inclusion_map(small, big), chi_s, chi_b, q)
    full = min(ts.dims[q], tb.dims[q])
    report.add(f"stability.rook.map.n{n - 1}_n{n}.q{q}", REF_STAB, ranks[q] == full, f"rank {ranks[q]}, full rank {full}")


def block_stability(report: SuiteReport, cfg: SuiteConfig) -> None:
    _stability_pair(report, 3, F2, "1", 1)


# ---------------------------------------------------------------------------
# custom single comparisons


def custom_check(suite: str, cfg: SuiteConfig, report: SuiteReport) -> None:
    n, g, ring, d, e, qm = cfg.n, cfg.group, cfg.ring, cfg.delta, cfg.eps, cfg.qmax
    _require(n >= 1, "n must be positive")
    tag = f"{suite}.n{n}.{g}.{ring}.delta{d}.eps{e}"
    if suite == "rook":
        _require(_invertible(ring, e), "the G-rook comparison needs ε invertible")
        _compare_check(report, tag, REF_ROOK, diagram_tor(Flavor.ROOK, n, g, ring, d, e, qm), wreath_tor(g, n, ring, qm))
    elif suite == "brauer":
        _require(_invertible(ring, d) or n % 2, "the G-Brauer comparison needs δ invertible or n odd")
        _compare_check(report, tag, REF_BRAUER, diagram_tor(Flavor.BRAUER, n, g, ring, d, e, qm), wreath_tor(g, n, ring, qm))
    elif suite == "tl":
        _require(_invertible(ring, d) or n % 2, "the G-TL comparison needs δ invertible or n odd")
        _compare_check(report, tag, REF_TL, diagram_tor(Flavor.TL, n, g, ring, d, e, qm), power_tor(g, n, ring, qm))
    elif suite == "rookbrauer":
        _require(_invertible(ring, e), "the G-rook-Brauer comparison needs ε invertible")
        _compare_check(report, tag, REF_RB, diagram_tor(Flavor.ROOK_BRAUER, n, g, ring, d, e, qm), diagram_tor(Flavor.BRAUER, n, g, ring, d, e, qm))
    elif suite == "motzkin":
        _require(_invertible(ring, e), "the G-Motzkin comparison needs ε invertible")
        _compare_check(report, tag, REF_MOTZKIN, diagram_tor(Flavor.MOTZKIN, n, g, ring, d, e, qm), diagram_tor(Flavor.TL, n, g, ring, d, e, qm))
    elif suite == "sroka":
        _require(n % 2 == 1, "the odd-n comparison needs n odd")
        _compare_check(report, tag + ".brauer", REF_SROKA, diagram_tor(Flavor.BRAUER, n, g, ring, d, e, qm), wreath_tor(g, n, ring, qm))
        _compare_check(report, tag + ".tl", REF_SROKA, diagram_tor(Flavor.TL, n, g, ring, d, e, qm), power_tor(g, n, ring, qm))
        _sroka_search(report, n, g, ring, d)
    elif suite == "braid":
        _require(n >= 2, "the braid suite needs n >= 2")
        block_braid(report, cfg, nmax=n)
    elif suite == "stability":
        _require(n >= 2, "the stability spot-check needs n >= 2")
        _require(g.order == 1, "the stability spot-check uses the trivial group")
        _require(_invertible(ring, e), "the stability spot-check needs ε invertible")
        _stability_pair(report, n, ring, e, qm)
    else:
        raise DAWError(f"suite {suite!r} takes no size overrides")


# ---------------------------------------------------------------------------


BLOCKS = {
    "dimensions": (block_dimensions,),
    "associativity": (block_associativity,),
    "oracle": (block_oracle,),
    "rook": (block_rho, block_rook),
    "brauer": (block_fp, block_brauer),
    "tl": (block_tl,),
    "rookbrauer": (block_rookbrauer,),
    "motzkin": (block_motzkin,),
    "sroka": (block_sroka,),
    "braid": (block_braid,),
    "stability": (block_stability,),
}


def run_suite(name: str, cfg: SuiteConfig | None = None) -> SuiteReport:
    cfg = cfg or SuiteConfig()
    if name not in BLOCKS:
        raise DAWError(f"unknown suite {name!r}; choose from {', '.join(BLOCKS)}")
    report = SuiteReport(name)
    start = time.perf_counter()
    if cfg.n is None:
        for block in BLOCKS[name]:
            block(report, cfg)
    else:
        custom_check(name, cfg, report)
    report.wall_time = time.perf_counter() - start
    return report
