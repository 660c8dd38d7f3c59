"""Diagram algebras and the structures the homology theorems rely on.

Covers algebra assembly from the composition engine, the trivial-module
character, the ideals I_i and J_p, quotients, the rook idempotents, the
group-algebra retract A_max, the mirror diagram f_p and the six-condition
idempotent search.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .diagrams import (
    DEFECT,
    PAIRED,
    Diagram,
    Flavor,
    LinkState,
    Params,
    check_group_for_flavor,
    compose_detailed,
    enumerate_diagrams,
    extend,
    jp_member,
    rho,
    right_link_state,
)
from .errors import (
    CharacterNotVanishing,
    CheckFailed,
    FlavorViolation,
    HasMissingNode,
    NoMaxDiagram,
    NotFound,
    ParamMismatch,
)
from .finite_algebra import AlgebraMap, Character, FiniteAlgebra
from .exact.rings import RingSpec
from .groups import FiniteGroup, GRingAction, Permutation, SemidirectElement, SemidirectSpec, semidirect_multiply

FULL_ASSOC_DIM = 40


@dataclass(frozen=True)
class Setup:
    n: int
    flavor: Flavor
    group: FiniteGroup
    params: Params

    def key(self) -> dict:
        return {"n": self.n, "flavor": self.flavor.value, "group": self.group.to_json(), **self.params.key()}

    def diagrams(self) -> list[Diagram]:
        return enumerate_diagrams(self.n, self.flavor, self.group)


def _setup(obj) -> Setup:
    return obj.meta["setup"] if isinstance(obj, FiniteAlgebra) else obj


def diagram_algebra(n: int, flavor: Flavor, group: FiniteGroup | None, params: Params, check: bool = True):
    """Structure constants of the flavor's diagram algebra and its augmentation."""
    group = group or FiniteGroup.trivial()
    check_group_for_flavor(group, flavor)
    setup = Setup(n, flavor, group, params)
    basis = setup.diagrams()
    index = {d: i for i, d in enumerate(basis)}
    ring = params.ring
    mult = []
    for x in basis:
        row = []
        for y in basis:
            s, d, _ = compose_detailed(x, y, params)
            row.append(() if ring.is_zero(s) else ((s, index[d]),))
        mult.append(row)
    unit = index[Diagram.identity(n, group)]
    meta = {"name": f"{flavor.value}_{n}", "setup": setup}
    alg = FiniteAlgebra(ring, basis, unit, mult, meta)
    chi = Character(tuple(ring.one if d.rank == n else ring.zero for d in basis))
    if check:
        if not alg.check_unit():
            raise CheckFailed("identity diagram is not a unit")
        triples = None if alg.dim <= FULL_ASSOC_DIM and n <= 2 else 200
        if not alg.check_associative(triples):
            raise CheckFailed("composition is not associative")
    return alg, chi


def algebra_to_json(alg: FiniteAlgebra, chi: Character) -> dict:
    setup = alg.meta.get("setup")
    out = alg.to_json(lambda d: d.to_json(setup.flavor if setup else None))
    out["character"] = [alg.ring.format(v) for v in chi.values]
    if setup is not None:
        out["setup"] = setup.key()
    return out


def algebra_from_json(obj: dict):
    """Inverse of ``algebra_to_json``: ``(alg, chi)`` with the same basis order."""
    ring = RingSpec.from_json(obj["ring"])
    basis = [Diagram.from_json(b) for b in obj["basis"]]
    d = len(basis)
    table: list[list[list]] = [[[] for _ in range(d)] for _ in range(d)]
    for i, j, c, k in obj["mult"]:
        table[i][j].append((ring.parse_value(c), k))
    mult = [[tuple(t) for t in row] for row in table]
    meta: dict = {}
    if "setup" in obj:
        key = obj["setup"]
        group = FiniteGroup.from_json(key["group"])
        action = None
        if "action" in key:
            action = GRingAction(group, ring, tuple((int(g), t) for g, t in key["action"]["generators"]))
        params = Params.make(ring, key["delta"], key["eps"], action)
        flavor = Flavor.parse(key["flavor"])
        meta = {"name": f"{flavor.value}_{key['n']}", "setup": Setup(key["n"], flavor, group, params)}
    alg = FiniteAlgebra(ring, basis, obj["unit"], mult, meta)
    return alg, Character(tuple(ring.parse_value(v) for v in obj["character"]))


# ---------------------------------------------------------------------------
# idempotents and ideals


def rho_idempotent(alg: FiniteAlgebra, i: int) -> dict:
    """The element ε⁻¹ρ_i."""
    s = _setup(alg)
    if not s.flavor.contains_rho:
        raise FlavorViolation(f"the {s.flavor.value} flavor has no rho_i")
    ring = alg.ring
    inv = ring.inv(s.params.eps)
    return {alg.index(rho(s.n, i, s.group)): inv}


@dataclass(frozen=True)
class IdealSpec:
    basis_subset: frozenset
    side: str  # "left" | "two_sided"

    @property
    def dim(self) -> int:
        return len(self.basis_subset)


def _closed(alg: FiniteAlgebra, members: frozenset, left: bool, right: bool) -> bool:
    for y in members:
        for a in range(alg.dim):
            if left and any(k not in members for _, k in alg.mult[a][y]):
                return False
            if right and any(k not in members for _, k in alg.mult[y][a]):
                return False
    return True


def ideal_I(alg: FiniteAlgebra, i: int, verify: bool = True) -> IdealSpec:
    """Span of diagrams with at most ``i`` through-strands; ``i = -1`` is zero."""
    members = frozenset(k for k, d in enumerate(alg.basis) if d.rank <= i)
    if verify and not _closed(alg, members, True, True):
        raise CheckFailed(f"I_{i} is not a two-sided ideal")
    return IdealSpec(members, "two_sided")


def left_ideal_J(alg: FiniteAlgebra, p: LinkState, verify: bool = True) -> IdealSpec:
    members = frozenset(k for k, d in enumerate(alg.basis) if jp_member(d, p))
    if verify and not _closed(alg, members, True, False):
        raise CheckFailed("J_p is not a left ideal")
    return IdealSpec(members, "left")


def quotient(alg: FiniteAlgebra, chi: Character, ideal: IdealSpec):
    if ideal.side != "two_sided":
        raise ValueError("can only quotient by a two-sided ideal")
    ring = alg.ring
    if any(not ring.is_zero(chi(k)) for k in ideal.basis_subset):
        raise CharacterNotVanishing("the augmentation does not vanish on the ideal")
    keep = [k for k in range(alg.dim) if k not in ideal.basis_subset]
    new = {k: j for j, k in enumerate(keep)}
    if alg.unit not in new:
        raise ValueError("ideal contains the unit")
    mult = [
        [tuple((c, new[k]) for c, k in alg.mult[a][b] if k in new) for b in keep]
        for a in keep
    ]
    meta = dict(alg.meta)
    meta["name"] = f"{alg.meta.get('name', 'A')}/I"
    meta["quotient_of"] = keep
    q = FiniteAlgebra(ring, [alg.basis[k] for k in keep], new[alg.unit], mult, meta)
    return q, Character(tuple(chi(k) for k in keep))


# ---------------------------------------------------------------------------
# group-algebra retract


def semidirect_of(d: Diagram) -> SemidirectElement:
    """Max-rank diagram -> (g, σ) with σ(i) = j for L_i–R_j and g_i its label."""
    n, grp = d.n, d.group
    images = [d.partner[i] - n + 1 for i in range(n)]
    labels = tuple(grp.element(d.labels[i]) for i in range(n))
    return SemidirectElement(labels, Permutation(tuple(images)))


def max_retract(alg: FiniteAlgebra):
    """``(A_max, section, projection)`` for the span of rank-n diagrams."""
    n = _setup(alg).n
    keep = [k for k, d in enumerate(alg.basis) if d.rank == n]
    if not keep:
        raise NoMaxDiagram("no diagram of full rank")
    new = {k: j for j, k in enumerate(keep)}
    ring = alg.ring
    mult = []
    for a in keep:
        row = []
        for b in keep:
            terms = alg.mult[a][b]
            if any(k not in new for _, k in terms):
                raise CheckFailed("full-rank diagrams are not multiplicatively closed")
            row.append(tuple((c, new[k]) for c, k in terms))
        mult.append(row)
    meta = dict(alg.meta)
    meta["name"] = f"{alg.meta.get('name', 'A')}_max"
    amax = FiniteAlgebra(ring, [alg.basis[k] for k in keep], new[alg.unit], mult, meta)
    section = AlgebraMap(amax, alg, [{k: ring.one} for k in keep])
    projection = AlgebraMap(alg, amax, [{new[k]: ring.one} if k in new else {} for k in range(alg.dim)])
    return amax, section, projection


def iso_check(amax: FiniteAlgebra) -> bool:
    """A_max's table is the semidirect product's under the diagram bijection."""
    ring = amax.ring
    elems = [semidirect_of(d) for d in amax.basis]
    if len(set(elems)) != len(elems):
        return False
    index = {e: i for i, e in enumerate(elems)}
    for a, b in itertools.product(range(amax.dim), repeat=2):
        prod = semidirect_multiply(elems[a], elems[b])
        if amax.mult[a][b] != ((ring.one, index.get(prod, -1)),):
            return False
    return True


def max_group_spec(alg: FiniteAlgebra) -> SemidirectSpec:
    s = _setup(alg)
    return SemidirectSpec(s.group, s.n)


# ---------------------------------------------------------------------------
# f_p and its scaling lemma


def build_fp(p: LinkState) -> Diagram:
    if p.has_missing:
        raise HasMissingNode("f_p needs a link state with no missing nodes")
    grp, n = p.group, p.n
    if not grp.abelian:
        raise ValueError("f_p needs an abelian group")
    edges = [(v, n + v, grp.identity_index) for v in p.defects]
    for a, b, g in p.pairs:
        edges.append((n + a, n + b, g))
        edges.append((a, b, grp.inv(g)))
    return Diagram.from_edges(n, edges, grp)


def jp_diagrams(setup: Setup, p: LinkState) -> list[Diagram]:
    return [d for d in setup.diagrams() if jp_member(d, p)]


def verify_fp_scaling(obj, p: LinkState) -> bool:
    """``y·f_p = δ^{(n-i)/2} y`` for every basis diagram ``y`` in J_p."""
    s = _setup(obj)
    ring = s.params.ring
    i = len(p.defects)
    if (s.n - i) % 2:
        raise ValueError("n - i must be even")
    fp = build_fp(p)
    want = ring.pow(s.params.delta, (s.n - i) // 2)
    for y in jp_diagrams(s, p):
        scalar, d, _ = compose_detailed(y, fp, s.params)
        if d != y or scalar != want:
            return False
    return True


# ---------------------------------------------------------------------------
# six-condition idempotents


def _find(parent: list[int], v: int) -> int:
    while parent[v] != v:
        parent[v] = parent[parent[v]]
        v = parent[v]
    return v


def sesqui_components(e: Diagram, p: LinkState) -> list[int]:
    """Union-find roots on m_1..m_n (0..n-1) and r_1..r_n (n..2n-1)."""
    n = e.n
    parent = list(range(2 * n))

    def union(a: int, b: int) -> None:
        ra, rb = _find(parent, a), _find(parent, b)
        if ra != rb:
            parent[ra] = rb

    for a, b, _ in p.pairs:
        union(a, b)
    for a, b, _ in e.edges():
        union(a, b)
    return [_find(parent, v) for v in range(2 * n)]


def sroka_conditions(e: Diagram, p: LinkState) -> bool:
    n, grp = e.n, e.group
    if p.n != n or p.group != grp:
        return False
    # (1) same unlabelled right link state
    if right_link_state(e).underlying() != p.underlying():
        return False
    comp = sesqui_components(e, p)
    # (2) r_j ~ m_j at every defect of p
    if any(comp[n + j] != comp[j] for j in p.defects):
        return False
    # (3) every m_j reaches some r_k
    right_roots = {comp[n + k] for k in range(n)}
    if any(comp[j] not in right_roots for j in range(n)):
        return False
    for a, b, g in e.edges():
        # (4) through-strands carry the identity
        if a < n <= b and g != grp.identity_index:
            return False
        # (5) right-right edges copy p's labels
        if a >= n and p.nodes[a - n] != (PAIRED, b - n, g):
            return False
    # (6) each pair of p meets exactly one endpoint of a left-left edge labelled g⁻¹
    ll = [(a, b, g) for a, b, g in e.edges() if b < n]
    for a, b, g in p.pairs:
        ginv = grp.inv(g)
        if not any(h == ginv and len({u, w} & {a, b}) == 1 for u, w, h in ll):
            return False
    return True


def search_sroka_idempotent(obj, p: LinkState) -> Diagram:
    """First flavor diagram meeting the six conditions, checked to fix J_p on the right."""
    s = _setup(obj)
    if p.has_missing or not p.defects:
        raise ValueError("p needs no missing nodes and at least one defect")
    found = None
    for e in s.diagrams():
        if sroka_conditions(e, p):
            found = e
            break
    if found is None:
        raise NotFound(f"no {s.flavor.value} diagram satisfies the conditions for {p}")
    one = s.params.ring.one
    for y in jp_diagrams(s, p):
        scalar, d, _ = compose_detailed(y, found, s.params)
        if d != y or scalar != one:
            raise CheckFailed(f"y·e != y for y = {y}, e = {found}")
    return found


def sroka_link_states(setup: Setup) -> list[LinkState]:
    """Link states with no missing nodes and at least one defect (planar for TL)."""
    from .diagrams import enumerate_link_states

    out = []
    for i in range(1, setup.n + 1):
        for p in enumerate_link_states(setup.n, i, setup.flavor, setup.group):
            if not p.has_missing:
                out.append(p)
    return out


# ---------------------------------------------------------------------------
# inclusions


def inclusion_map(small: FiniteAlgebra, big: FiniteAlgebra) -> AlgebraMap:
    a, b = _setup(small), _setup(big)
    if (a.flavor, a.group, a.params, a.n + 1) != (b.flavor, b.group, b.params, b.n):
        raise ParamMismatch("inclusion needs equal flavor, group, parameters and n -> n+1")
    ring = big.ring
    return AlgebraMap(small, big, [{big.index(extend(x)): ring.one} for x in small.basis])

