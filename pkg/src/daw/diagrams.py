"""Labelled rook-Brauer diagrams: flavors, enumeration, composition, link states.

Nodes are encoded L1..Ln -> 0..n-1 and R1..Rn -> n..2n-1. A diagram is a
partner array (``-1`` for an unmatched node) plus a label array holding the
group element index of each node's edge at both of its endpoints (``-1`` for
unmatched nodes). Unlabelled diagrams use the trivial group.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, Iterator, Sequence

from .errors import (
    FlavorViolation,
    GroupMismatch,
    NonAbelianGroup,
    NotADefect,
    SizeCapExceeded,
    SizeMismatch,
)
from .exact.rings import RingSpec
from .groups import FiniteGroup, GRingAction

ENUM_CAP = 200_000


class Flavor(str, Enum):
    ROOK_BRAUER = "rookbrauer"
    ROOK = "rook"
    BRAUER = "brauer"
    MOTZKIN = "motzkin"
    TL = "tl"

    @classmethod
    def parse(cls, text: str) -> Flavor:
        t = text.strip().lower().replace("-", "").replace("_", "")
        aliases = {"rb": "rookbrauer", "temperleylieb": "tl", "templieb": "tl"}
        return cls(aliases.get(t, t))

    @property
    def allows_missing(self) -> bool:
        return self in (Flavor.ROOK_BRAUER, Flavor.ROOK, Flavor.MOTZKIN)

    @property
    def allows_same_side(self) -> bool:
        return self is not Flavor.ROOK

    @property
    def planar(self) -> bool:
        return self in (Flavor.MOTZKIN, Flavor.TL)

    @property
    def contains_rho(self) -> bool:
        return self.allows_missing

    @property
    def needs_abelian(self) -> bool:
        return self is not Flavor.ROOK


# ---------------------------------------------------------------------------
# diagrams


def node_name(n: int, v: int) -> str:
    return f"L{v + 1}" if v < n else f"R{v - n + 1}"


def parse_node(n: int, name: str) -> int:
    side, k = name[0].upper(), int(name[1:])
    if side not in "LR" or not 1 <= k <= n:
        raise ValueError(f"bad node {name!r} for n={n}")
    return k - 1 if side == "L" else n + k - 1


@dataclass(frozen=True)
class Diagram:
    n: int
    partner: tuple[int, ...]
    labels: tuple[int, ...]
    group: FiniteGroup = field(default_factory=FiniteGroup.trivial)

    def __post_init__(self):
        if len(self.partner) != 2 * self.n or len(self.labels) != 2 * self.n:
            raise SizeMismatch("partner/label arrays must have length 2n")
        for v, w in enumerate(self.partner):
            if w == -1:
                if self.labels[v] != -1:
                    raise ValueError("unmatched node carries a label")
                continue
            if w == v or self.partner[w] != v:
                raise ValueError(f"partner array is not a matching at node {v}")
            if self.labels[w] != self.labels[v] or not 0 <= self.labels[v] < self.group.order:
                raise ValueError(f"bad label on edge {v}-{w}")

    # constructors -----------------------------------------------------------

    @classmethod
    def from_edges(cls, n: int, edges: Iterable, group: FiniteGroup | None = None) -> Diagram:
        """``edges`` holds ``(a, b)`` or ``(a, b, label)`` with node names or encoded ints."""
        group = group or FiniteGroup.trivial()
        partner = [-1] * (2 * n)
        labels = [-1] * (2 * n)
        for e in edges:
            a, b = (parse_node(n, x) if isinstance(x, str) else int(x) for x in e[:2])
            g = e[2] if len(e) > 2 else group.identity_index
            if not isinstance(g, int):
                g = group.index_of(g)
            if partner[a] != -1 or partner[b] != -1 or a == b:
                raise ValueError(f"node used twice in edge {e}")
            partner[a], partner[b] = b, a
            labels[a] = labels[b] = g
        return cls(n, tuple(partner), tuple(labels), group)

    @classmethod
    def identity(cls, n: int, group: FiniteGroup | None = None) -> Diagram:
        return cls.from_edges(n, [(i, n + i) for i in range(n)], group)

    # structure --------------------------------------------------------------

    def edges(self) -> list[tuple[int, int, int]]:
        return [(v, w, self.labels[v]) for v, w in enumerate(self.partner) if w > v]

    @property
    def rank(self) -> int:
        n = self.n
        return sum(1 for v in range(n) if self.partner[v] >= n)

    def underlying(self) -> Diagram:
        """Same matching, all labels forgotten (trivial group)."""
        return Diagram(self.n, self.partner, tuple(-1 if x == -1 else 0 for x in self.labels))

    def with_group_identity_labels(self) -> Diagram:
        e = self.group.identity_index
        return Diagram(self.n, self.partner, tuple(-1 if x == -1 else e for x in self.labels), self.group)

    def sort_key(self):
        return (tuple((a, b) for a, b, _ in self.edges()), tuple(g for _, _, g in self.edges()))

    def to_json(self, flavor: Flavor | None = None) -> dict:
        g = self.group
        out: dict = {
            "n": self.n,
            "edges": [
                {"a": node_name(self.n, a), "b": node_name(self.n, b), "label": list(g.coords(lab))}
                for a, b, lab in self.edges()
            ],
        }
        if flavor is not None:
            out["flavor"] = flavor.value
        out["group"] = g.to_json()
        return out

    @classmethod
    def from_json(cls, obj: dict) -> Diagram:
        group = FiniteGroup.from_json(obj["group"]) if "group" in obj else FiniteGroup.trivial()
        edges = []
        for e in obj["edges"]:
            lab = e.get("label")
            g = group.identity_index if lab is None else group.index_of(lab)
            edges.append((e["a"], e["b"], g))
        return cls.from_edges(obj["n"], edges, group)

    def __str__(self) -> str:
        g = self.group
        parts = []
        for a, b, lab in self.edges():
            s = f"{node_name(self.n, a)}-{node_name(self.n, b)}"
            if g.order > 1:
                s += f"[{','.join(map(str, g.coords(lab)))}]"
            parts.append(s)
        return "{" + " ".join(parts) + "}"


def rank(x: Diagram) -> int:
    return x.rank


def render(x: Diagram) -> str:
    """Two-column ASCII picture: one row per node index."""
    n, g = x.n, x.group
    lines = []
    for i in range(n):
        left = _describe_end(x, i)
        right = _describe_end(x, n + i)
        lines.append(f"L{i + 1:<2} {left:<16}|  R{i + 1:<2} {right}")
    return "\n".join(lines)


def _describe_end(x: Diagram, v: int) -> str:
    w = x.partner[v]
    if w == -1:
        return "."
    s = "-> " + node_name(x.n, w)
    if x.group.order > 1:
        s += " [" + ",".join(map(str, x.group.coords(x.labels[v]))) + "]"
    return s


# ---------------------------------------------------------------------------
# flavors


def _position(n: int, v: int) -> int:
    """Position in the boundary cyclic order L1..Ln, Rn..R1."""
    return v if v < n else 3 * n - 1 - v


def is_planar(x: Diagram) -> bool:
    n = x.n
    chords = [tuple(sorted((_position(n, a), _position(n, b)))) for a, b, _ in x.edges()]
    for (a, b), (c, d) in itertools.combinations(chords, 2):
        if a < c < b < d or c < a < d < b:
            return False
    return True


def validate_flavor(x: Diagram, f: Flavor) -> bool:
    n = x.n
    if not f.allows_missing and -1 in x.partner:
        return False
    if not f.allows_same_side:
        for v, w in enumerate(x.partner):
            if w != -1 and (v < n) == (w < n):
                return False
    if f.planar and not is_planar(x):
        return False
    return True


def check_group_for_flavor(group: FiniteGroup, f: Flavor) -> None:
    if f.needs_abelian and not group.abelian:
        raise NonAbelianGroup(f"the {f.value} flavor requires an abelian group")


# ---------------------------------------------------------------------------
# enumeration


def _matchings(nodes: list[int], allow_missing: bool) -> Iterator[list[tuple[int, int]]]:
    if not nodes:
        yield []
        return
    v, rest = nodes[0], nodes[1:]
    if allow_missing:
        yield from _matchings(rest, allow_missing)
    for k, w in enumerate(rest):
        for m in _matchings(rest[:k] + rest[k + 1 :], allow_missing):
            yield [(v, w)] + m


def underlying_diagrams(n: int, f: Flavor) -> list[Diagram]:
    out = []
    for m in _matchings(list(range(2 * n)), f.allows_missing):
        d = Diagram.from_edges(n, m)
        if validate_flavor(d, f):
            out.append(d)
    out.sort(key=Diagram.sort_key)
    return out


def _double_factorial_odd(m: int) -> int:
    return math.prod(range(1, 2 * m, 2))


def _catalan(m: int) -> int:
    return math.comb(2 * m, m) // (m + 1)


def size_estimate(n: int, f: Flavor, order: int = 1) -> int:
    """Closed-form number of labelled diagrams, used to refuse oversized jobs early."""
    if f == Flavor.ROOK:
        return sum(math.comb(n, k) ** 2 * math.factorial(k) * order**k for k in range(n + 1))
    if f == Flavor.BRAUER:
        return _double_factorial_odd(n) * order**n
    if f == Flavor.TL:
        return _catalan(n) * order**n
    per_edges = _catalan if f == Flavor.MOTZKIN else _double_factorial_odd
    return sum(math.comb(2 * n, 2 * e) * per_edges(e) * order**e for e in range(n + 1))


def enumerate_diagrams(n: int, f: Flavor, group: FiniteGroup | None = None, cap: int = ENUM_CAP) -> list[Diagram]:
    group = group or FiniteGroup.trivial()
    check_group_for_flavor(group, f)
    estimate = size_estimate(n, f, group.order)
    if estimate > cap:
        raise SizeCapExceeded(f"{estimate} diagrams exceed cap {cap}")
    base = underlying_diagrams(n, f)
    total = sum(group.order ** len(d.edges()) for d in base)
    if total > cap:
        raise SizeCapExceeded(f"{total} diagrams exceed cap {cap}")
    out = []
    for d in base:
        edges = [(a, b) for a, b, _ in d.edges()]
        for labs in itertools.product(range(group.order), repeat=len(edges)):
            out.append(Diagram.from_edges(n, [(a, b, g) for (a, b), g in zip(edges, labs)], group))
    return out


def count_diagrams(n: int, f: Flavor, group: FiniteGroup | None = None) -> int:
    group = group or FiniteGroup.trivial()
    return sum(group.order ** len(d.edges()) for d in underlying_diagrams(n, f))


# ---------------------------------------------------------------------------
# composition


@dataclass(frozen=True)
class Params:
    """Loop factor δ, contractible-component factor ε and the G-ring action."""

    ring: RingSpec
    delta: object
    eps: object
    action: GRingAction | None = None

    @classmethod
    def make(cls, ring: RingSpec, delta="1", eps="1", action: GRingAction | None = None) -> Params:
        d = ring.parse_value(delta) if isinstance(delta, str) else ring.normalize(delta)
        e = ring.parse_value(eps) if isinstance(eps, str) else ring.normalize(eps)
        if action is not None and action.ring != ring:
            raise GroupMismatch("action ring differs from the parameter ring")
        return cls(ring, d, e, action)

    def loop_value(self, g: int):
        if self.action is None:
            return self.delta
        return self.action.apply_raw(g, self.delta)

    def key(self) -> dict:
        out = {"ring": self.ring.to_json(), "delta": self.ring.format(self.delta), "eps": self.ring.format(self.eps)}
        if self.action is not None:
            out["action"] = self.action.to_json()
        return out


@dataclass
class ComponentCounts:
    through: int = 0  # (a) outer to outer
    loops: int = 0  # (b) closed middle cycle
    contractible: int = 0  # (c) wholly-middle path, isolated vertices included
    dead_ends: int = 0  # (d) exactly one outer endpoint


def compose_detailed(x: Diagram, y: Diagram, p: Params):
    """Concatenate ``x`` (left) with ``y`` (right).

    Returns ``(scalar, diagram, counts)``; the scalar is a raw ring value.
    """
    if x.n != y.n:
        raise SizeMismatch(f"{x.n}-diagram composed with {y.n}-diagram")
    if x.group != y.group:
        raise GroupMismatch("diagrams carry different label groups")
    n, grp, ring = x.n, x.group, p.ring
    # Graph vertices: x's left nodes 0..n-1, middle n..2n-1, y's right nodes 2n..3n-1.
    nbrs: list[list[tuple[int, int]]] = [[] for _ in range(3 * n)]
    for a, b, g in x.edges():
        nbrs[a].append((b, g))
        nbrs[b].append((a, g))
    for a, b, g in y.edges():
        a, b = a + n, b + n
        nbrs[a].append((b, g))
        nbrs[b].append((a, g))

    partner = [-1] * (2 * n)
    labels = [-1] * (2 * n)
    seen = [False] * (3 * n)
    counts = ComponentCounts()
    mul = grp.mul

    def out_index(v: int) -> int:
        return v if v < n else v - n

    outer = list(range(n)) + list(range(2 * n, 3 * n))
    for start in outer:
        if seen[start]:
            continue
        seen[start] = True
        prod = grp.identity_index
        prev, cur = -1, start
        while True:
            step = [(w, g) for w, g in nbrs[cur] if w != prev] if prev != -1 else nbrs[cur]
            if not step:
                break
            w, g = step[0]
            prod = mul(prod, g)
            prev, cur = cur, w
            seen[cur] = True
            if cur < n or cur >= 2 * n:
                break
        if cur != start and (cur < n or cur >= 2 * n):
            a, b = out_index(start), out_index(cur)
            partner[a], partner[b] = b, a
            labels[a] = labels[b] = prod
            counts.through += 1
        else:
            counts.dead_ends += 1

    scalar = ring.one
    for v in range(n, 2 * n):
        if seen[v]:
            continue
        # Walk the whole component, noting whether it closes up.
        comp, stack = [], [v]
        seen[v] = True
        while stack:
            u = stack.pop()
            comp.append(u)
            for w, _ in nbrs[u]:
                if not seen[w]:
                    seen[w] = True
                    stack.append(w)
        if all(len(nbrs[u]) == 2 for u in comp):
            prod = grp.identity_index
            for u in comp:
                for w, g in nbrs[u]:
                    if w > u:
                        prod = mul(prod, g)
            scalar = ring.mul(scalar, p.loop_value(prod))
            counts.loops += 1
        else:
            scalar = ring.mul(scalar, p.eps)
            counts.contractible += 1

    assert all(seen), "composition left a vertex unclassified"
    return scalar, Diagram(n, tuple(partner), tuple(labels), grp), counts


def compose(x: Diagram, y: Diagram, f: Flavor | None, p: Params):
    """``(scalar, diagram)`` for the product ``x·y``; validates flavor when given."""
    if f is not None:
        check_group_for_flavor(x.group, f)
        for d in (x, y):
            if not validate_flavor(d, f):
                raise FlavorViolation(f"{d} is not a {f.value} diagram")
    scalar, d, _ = compose_detailed(x, y, p)
    return scalar, d


def extend(x: Diagram) -> Diagram:
    """Append L(n+1)-R(n+1) with the identity label."""
    n = x.n
    edges = []
    for a, b, g in x.edges():
        a2 = a if a < n else a + 1
        b2 = b if b < n else b + 1
        edges.append((a2, b2, g))
    edges.append((n, 2 * n + 1, x.group.identity_index))
    return Diagram.from_edges(n + 1, edges, x.group)


def rho(n: int, i: int, group: FiniteGroup | None = None) -> Diagram:
    """The identity diagram with its i-th edge (1-based) removed."""
    if not 1 <= i <= n:
        raise ValueError(f"rho index {i} outside 1..{n}")
    return Diagram.from_edges(n, [(k, n + k) for k in range(n) if k != i - 1], group)


# ---------------------------------------------------------------------------
# link states

MISSING, DEFECT, PAIRED = "missing", "defect", "paired"


@dataclass(frozen=True)
class LinkState:
    """Per-node status: ``(MISSING, -1, -1)``, ``(DEFECT, -1, g)`` or ``(PAIRED, partner, g)``.

    Nodes are 0-based here and 1-based in JSON.
    """

    n: int
    nodes: tuple[tuple[str, int, int], ...]
    group: FiniteGroup = field(default_factory=FiniteGroup.trivial)

    def __post_init__(self):
        if len(self.nodes) != self.n:
            raise SizeMismatch("link state needs one status per node")
        for v, (kind, w, g) in enumerate(self.nodes):
            if kind == PAIRED:
                if not 0 <= w < self.n or w == v or self.nodes[w][:2] != (PAIRED, v) or self.nodes[w][2] != g:
                    raise ValueError(f"pairing at node {v + 1} is not symmetric")
            elif kind == DEFECT:
                if w != -1 or not 0 <= g < self.group.order:
                    raise ValueError(f"bad defect at node {v + 1}")
            elif kind != MISSING or w != -1 or g != -1:
                raise ValueError(f"bad status at node {v + 1}")

    @classmethod
    def make(cls, n: int, defects=(), pairs=(), group: FiniteGroup | None = None) -> LinkState:
        """``defects``: nodes or ``(node, label)``; ``pairs``: ``(a, b)`` or ``(a, b, label)``; 1-based."""
        group = group or FiniteGroup.trivial()
        e = group.identity_index
        nodes = [(MISSING, -1, -1)] * n
        for d in defects:
            v, g = (d, e) if isinstance(d, int) else d
            nodes[v - 1] = (DEFECT, -1, g)
        for pr in pairs:
            a, b = pr[0] - 1, pr[1] - 1
            g = pr[2] if len(pr) > 2 else e
            nodes[a] = (PAIRED, b, g)
            nodes[b] = (PAIRED, a, g)
        return cls(n, tuple(nodes), group)

    @property
    def defects(self) -> list[int]:
        return [v for v, s in enumerate(self.nodes) if s[0] == DEFECT]

    @property
    def pairs(self) -> list[tuple[int, int, int]]:
        return [(v, w, g) for v, (k, w, g) in enumerate(self.nodes) if k == PAIRED and w > v]

    @property
    def has_missing(self) -> bool:
        return any(s[0] == MISSING for s in self.nodes)

    def underlying(self) -> tuple:
        return tuple((k, w) for k, w, _ in self.nodes)

    def is_planar(self) -> bool:
        pairs = [(a, b) for a, b, _ in self.pairs]
        for (a, b), (c, d) in itertools.combinations(pairs, 2):
            if a < c < b < d or c < a < d < b:
                return False
        return not any(a < v < b for a, b in pairs for v in self.defects)

    def to_json(self) -> dict:
        g = self.group
        nodes = []
        for kind, w, lab in self.nodes:
            entry: dict = {"kind": kind}
            if kind == PAIRED:
                entry["partner"] = w + 1
            if kind != MISSING:
                entry["label"] = list(g.coords(lab))
            nodes.append(entry)
        return {"n": self.n, "nodes": nodes, "group": g.to_json()}

    @classmethod
    def from_json(cls, obj: dict) -> LinkState:
        group = FiniteGroup.from_json(obj["group"]) if "group" in obj else FiniteGroup.trivial()
        nodes = []
        for e in obj["nodes"]:
            lab = group.index_of(e["label"]) if "label" in e else group.identity_index
            if e["kind"] == MISSING:
                nodes.append((MISSING, -1, -1))
            elif e["kind"] == DEFECT:
                nodes.append((DEFECT, -1, lab))
            else:
                nodes.append((PAIRED, e["partner"] - 1, lab))
        return cls(obj["n"], tuple(nodes), group)

    def __str__(self) -> str:
        out = []
        for v, (kind, w, g) in enumerate(self.nodes):
            lab = "" if self.group.order == 1 or kind == MISSING else f"[{','.join(map(str, self.group.coords(g)))}]"
            if kind == MISSING:
                out.append(f"{v + 1}:.")
            elif kind == DEFECT:
                out.append(f"{v + 1}:|{lab}")
            else:
                out.append(f"{v + 1}:~{w + 1}{lab}")
        return " ".join(out)


def right_link_state(x: Diagram) -> LinkState:
    n = x.n
    nodes = []
    for j in range(n):
        w = x.partner[n + j]
        g = x.labels[n + j]
        if w == -1:
            nodes.append((MISSING, -1, -1))
        elif w < n:
            nodes.append((DEFECT, -1, g))
        else:
            nodes.append((PAIRED, w - n, g))
    return LinkState(n, tuple(nodes), x.group)


def left_link_state(x: Diagram) -> LinkState:
    n = x.n
    nodes = []
    for j in range(n):
        w = x.partner[j]
        g = x.labels[j]
        if w == -1:
            nodes.append((MISSING, -1, -1))
        elif w >= n:
            nodes.append((DEFECT, -1, g))
        else:
            nodes.append((PAIRED, w, g))
    return LinkState(n, tuple(nodes), x.group)


def enumerate_link_states(
    n: int, i: int, f: Flavor, group: FiniteGroup | None = None, cap: int = ENUM_CAP
) -> list[LinkState]:
    """Right link states of ``f``-diagrams with exactly ``i`` defects (the set GP_i)."""
    group = group or FiniteGroup.trivial()
    check_group_for_flavor(group, f)
    shapes = []
    for m in _matchings(list(range(n)), allow_missing=True):
        used = {v for e in m for v in e}
        free = [v for v in range(n) if v not in used]
        if m and not f.allows_same_side:
            continue
        for defects in itertools.combinations(free, i):
            if not f.allows_missing and len(defects) != len(free):
                continue
            shapes.append((m, defects))
    total = sum(group.order ** (len(m) + len(d)) for m, d in shapes)
    if total > cap:
        raise SizeCapExceeded(f"{total} link states exceed cap {cap}")
    out = []
    for m, defects in shapes:
        for labs in itertools.product(range(group.order), repeat=len(m) + len(defects)):
            s = LinkState.make(
                n,
                [(d + 1, g) for d, g in zip(defects, labs[len(m) :])],
                [(a + 1, b + 1, g) for (a, b), g in zip(m, labs[: len(m)])],
                group,
            )
            if f.planar and not s.is_planar():
                continue
            out.append(s)
    out.sort(key=lambda s: s.nodes)
    return out


@dataclass(frozen=True)
class GSplice:
    a: int  # 1-based
    b: int
    label: int


@dataclass(frozen=True)
class Deletion:
    a: int


@dataclass(frozen=True)
class LabelReplace:
    a: int
    g: int


def apply_link_move(s: LinkState, move) -> LinkState:
    nodes = list(s.nodes)
    grp = s.group

    def defect(v: int) -> int:
        if not 1 <= v <= s.n or nodes[v - 1][0] != DEFECT:
            raise NotADefect(f"node {v} is not a defect")
        return nodes[v - 1][2]

    if isinstance(move, GSplice):
        if move.a == move.b:
            raise NotADefect("a splice needs two distinct defects")
        ga, gb = defect(move.a), defect(move.b)
        g = grp.mul(grp.mul(ga, move.label), gb)
        nodes[move.a - 1] = (PAIRED, move.b - 1, g)
        nodes[move.b - 1] = (PAIRED, move.a - 1, g)
    elif isinstance(move, Deletion):
        defect(move.a)
        nodes[move.a - 1] = (MISSING, -1, -1)
    elif isinstance(move, LabelReplace):
        g = defect(move.a)
        nodes[move.a - 1] = (DEFECT, -1, grp.mul(g, move.g))
    else:
        raise TypeError(f"unknown move {move!r}")
    return LinkState(s.n, tuple(nodes), grp)


def reachable(p: LinkState, q: LinkState) -> bool:
    """Whether ``q`` is obtained from ``p`` by splices, deletions and label replacements.

    Moves only act on defects: missing nodes and existing pairs (with their
    labels) are frozen, while a defect can end up relabelled, deleted, or
    paired with another former defect under any label.
    """
    if p.n != q.n or p.group != q.group:
        return False
    for v in range(p.n):
        kp, wp, gp = p.nodes[v]
        kq, wq, gq = q.nodes[v]
        if kp != DEFECT:
            if (kp, wp, gp) != (kq, wq, gq):
                return False
        elif kq == PAIRED and p.nodes[wq][0] != DEFECT:
            return False
    return True


def jp_member(x: Diagram, p: LinkState) -> bool:
    return reachable(p, right_link_state(x))
