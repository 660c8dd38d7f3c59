"""Finite groups, permutations, wreath-type semidirect products and G-ring actions.

Group elements are indexed ``0 .. order-1``. For products of cyclic groups the
index is the mixed-radix encoding of the coordinate vector (first coordinate
most significant), so index order is lexicographic order on vectors.

Permutations are stored in one-line notation ``images = (σ(1), ..., σ(n))``
and compose left to right: ``σ.then(τ)`` applies σ first. Semidirect products
G^n ⋊ Σ_n multiply as

    (g, σ)(h, τ) = (g · (σ▹h), σ.then(τ)),   (σ▹h)_i = h_{σ(i)}

which is the rule satisfied by concatenating maximal-rank labelled diagrams
(labels indexed by left endpoint, strand i -> σ(i)).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property
from typing import Sequence

from .errors import GroupMismatch, InfiniteGroup, InvalidGroup, RingMismatch, SizeCapExceeded, SizeMismatch
from .exact.rings import QUAD_EXT, RingSpec, Scalar
from .finite_algebra import Character, FiniteAlgebra

GROUP_ALGEBRA_CAP = 20_000


@dataclass(frozen=True)
class FiniteGroup:
    """A finite group, either a product of cyclic groups or a Cayley table."""

    kind: str  # "cyclic_product" | "cayley"
    moduli: tuple[int, ...] = ()
    table: tuple[tuple[int, ...], ...] = field(default=(), compare=True, repr=False)
    identity: int = 0

    @classmethod
    def cyclic_product(cls, moduli: Sequence[int]) -> FiniteGroup:
        moduli = tuple(int(m) for m in moduli)
        if any(m < 2 for m in moduli):
            raise InvalidGroup(f"cyclic factors need order >= 2, got {moduli}")
        return cls("cyclic_product", moduli)

    @classmethod
    def trivial(cls) -> FiniteGroup:
        return cls("cyclic_product", ())

    @classmethod
    def cyclic(cls, m: int) -> FiniteGroup:
        return cls.cyclic_product([m])

    @classmethod
    def cayley(cls, table: Sequence[Sequence[int]], identity: int = 0) -> FiniteGroup:
        t = tuple(tuple(int(x) for x in row) for row in table)
        g = cls("cayley", (), t, int(identity))
        g._validate_table()
        return g

    def _validate_table(self) -> None:
        t, n, e = self.table, len(self.table), self.identity
        if n == 0 or any(len(row) != n for row in t):
            raise InvalidGroup("Cayley table must be square and non-empty")
        if any(not 0 <= x < n for row in t for x in row):
            raise InvalidGroup("Cayley table entries out of range")
        if not 0 <= e < n or any(t[e][a] != a or t[a][e] != a for a in range(n)):
            raise InvalidGroup("identity element is wrong")
        if any(e not in row for row in t):
            raise InvalidGroup("some element has no inverse")
        for a, b, c in itertools.product(range(n), repeat=3):
            if t[t[a][b]][c] != t[a][t[b][c]]:
                raise InvalidGroup(f"table is not associative at ({a}, {b}, {c})")

    # basic structure --------------------------------------------------------

    @cached_property
    def order(self) -> int:
        if self.kind == "cayley":
            return len(self.table)
        out = 1
        for m in self.moduli:
            out *= m
        return out

    @cached_property
    def identity_index(self) -> int:
        return self.identity if self.kind == "cayley" else 0

    @cached_property
    def abelian(self) -> bool:
        if self.kind == "cyclic_product":
            return True
        t = self.table
        return all(t[a][b] == t[b][a] for a in range(self.order) for b in range(a))

    def coords(self, i: int) -> tuple[int, ...]:
        if self.kind == "cayley":
            return (i,)
        out = []
        for m in reversed(self.moduli):
            out.append(i % m)
            i //= m
        return tuple(reversed(out))

    def index_of(self, coords: Sequence[int]) -> int:
        if self.kind == "cayley":
            (i,) = coords
            if not 0 <= i < self.order:
                raise InvalidGroup(f"no element {i}")
            return int(i)
        if len(coords) != len(self.moduli):
            raise InvalidGroup(f"expected {len(self.moduli)} coordinates, got {list(coords)}")
        i = 0
        for c, m in zip(coords, self.moduli):
            i = i * m + (int(c) % m)
        return i

    @cached_property
    def mul_table(self) -> tuple[tuple[int, ...], ...]:
        if self.kind == "cayley":
            return self.table
        n = self.order
        rows = []
        for a in range(n):
            ca = self.coords(a)
            rows.append(
                tuple(self.index_of([x + y for x, y in zip(ca, self.coords(b))]) for b in range(n))
            )
        return tuple(rows)

    @cached_property
    def inverse_table(self) -> tuple[int, ...]:
        t, e = self.mul_table, self.identity_index
        return tuple(next(b for b in range(self.order) if t[a][b] == e) for a in range(self.order))

    def mul(self, a: int, b: int) -> int:
        return self.mul_table[a][b]

    def inv(self, a: int) -> int:
        return self.inverse_table[a]

    def element_order(self, a: int) -> int:
        k, x = 1, a
        while x != self.identity_index:
            x = self.mul(x, a)
            k += 1
        return k

    def element(self, i_or_coords) -> GroupElement:
        i = i_or_coords if isinstance(i_or_coords, int) else self.index_of(i_or_coords)
        if not 0 <= i < self.order:
            raise InvalidGroup(f"no element {i}")
        return GroupElement(self, i)

    def elements(self) -> list[GroupElement]:
        return [GroupElement(self, i) for i in range(self.order)]

    # serialization ----------------------------------------------------------

    def to_json(self) -> dict:
        if self.kind == "cayley":
            return {"kind": "cayley", "table": [list(r) for r in self.table], "identity": self.identity}
        return {"kind": "cyclic_product", "moduli": list(self.moduli)}

    @classmethod
    def from_json(cls, obj: dict) -> FiniteGroup:
        kind = obj.get("kind", "cyclic_product")
        if kind == "cyclic_product":
            return cls.cyclic_product(obj.get("moduli", []))
        if kind == "cayley":
            return cls.cayley(obj["table"], obj.get("identity", 0))
        raise InvalidGroup(f"unknown group kind {kind!r}")

    @classmethod
    def parse(cls, text: str | None) -> FiniteGroup:
        """``trivial``, ``C2``, ``C2xC3`` or a JSON group spec."""
        if text is None or text.strip().lower() in ("", "trivial", "1"):
            return cls.trivial()
        t = text.strip()
        if t.startswith("{"):
            import json

            return cls.from_json(json.loads(t))
        parts = t.upper().replace("×", "X").split("X")
        try:
            return cls.cyclic_product([int(p.lstrip("C")) for p in parts])
        except ValueError as exc:
            raise InvalidGroup(f"cannot parse group {text!r}") from exc

    def __str__(self) -> str:
        if self.kind == "cayley":
            return f"Cayley({self.order})"
        if not self.moduli:
            return "trivial"
        return "x".join(f"C{m}" for m in self.moduli)


@dataclass(frozen=True)
class GroupElement:
    group: FiniteGroup
    index: int

    @property
    def coords(self) -> tuple[int, ...]:
        return self.group.coords(self.index)

    def __mul__(self, other: GroupElement) -> GroupElement:
        if other.group != self.group:
            raise GroupMismatch("elements of different groups")
        return GroupElement(self.group, self.group.mul(self.index, other.index))

    def inverse(self) -> GroupElement:
        return GroupElement(self.group, self.group.inv(self.index))

    @property
    def is_identity(self) -> bool:
        return self.index == self.group.identity_index

    def __repr__(self) -> str:
        return f"GroupElement({list(self.coords)})"


# ---------------------------------------------------------------------------
# permutations and semidirect products


@dataclass(frozen=True)
class Permutation:
    images: tuple[int, ...]  # one-line, 1-based

    def __post_init__(self):
        if sorted(self.images) != list(range(1, len(self.images) + 1)):
            raise ValueError(f"{self.images} is not a permutation of 1..n")

    @classmethod
    def identity(cls, n: int) -> Permutation:
        return cls(tuple(range(1, n + 1)))

    @classmethod
    def from_zero_based(cls, images: Sequence[int]) -> Permutation:
        return cls(tuple(i + 1 for i in images))

    @property
    def n(self) -> int:
        return len(self.images)

    def __call__(self, i: int) -> int:
        return self.images[i - 1]

    def then(self, other: Permutation) -> Permutation:
        if other.n != self.n:
            raise SizeMismatch(f"permutations on {self.n} and {other.n} points")
        return Permutation(tuple(other(self(i)) for i in range(1, self.n + 1)))

    def inverse(self) -> Permutation:
        out = [0] * self.n
        for i, j in enumerate(self.images, start=1):
            out[j - 1] = i
        return Permutation(tuple(out))

    @property
    def is_identity(self) -> bool:
        return self.images == tuple(range(1, self.n + 1))


@dataclass(frozen=True)
class SemidirectElement:
    g_vec: tuple[GroupElement, ...]
    perm: Permutation

    def __post_init__(self):
        if len(self.g_vec) != self.perm.n:
            raise SizeMismatch("label vector and permutation lengths differ")

    @classmethod
    def identity(cls, group: FiniteGroup, n: int) -> SemidirectElement:
        e = GroupElement(group, group.identity_index)
        return cls(tuple([e] * n), Permutation.identity(n))

    def __mul__(self, other: SemidirectElement) -> SemidirectElement:
        return semidirect_multiply(self, other)


def semidirect_multiply(a: SemidirectElement, b: SemidirectElement) -> SemidirectElement:
    if a.perm.n != b.perm.n:
        raise SizeMismatch(f"G^{a.perm.n} vs G^{b.perm.n}")
    if a.g_vec and a.g_vec[0].group != b.g_vec[0].group:
        raise GroupMismatch("different base groups")
    sigma = a.perm
    acted = [b.g_vec[sigma(i) - 1] for i in range(1, sigma.n + 1)]
    return SemidirectElement(tuple(g * h for g, h in zip(a.g_vec, acted)), sigma.then(b.perm))


@dataclass(frozen=True)
class SemidirectSpec:
    """G^n ⋊ Σ_n (``top="symmetric"``); ``"braid"`` is accepted but infinite."""

    base: FiniteGroup
    n: int
    top: str = "symmetric"

    def __post_init__(self):
        if self.top not in ("symmetric", "braid"):
            raise InvalidGroup(f"unknown top group {self.top!r}")

    @property
    def order(self) -> int:
        if self.top == "braid":
            raise InfiniteGroup("G^n ⋊ B_n is infinite")
        f = 1
        for k in range(2, self.n + 1):
            f *= k
        return self.base.order**self.n * f

    def elements(self) -> list[SemidirectElement]:
        if self.top == "braid":
            raise InfiniteGroup("G^n ⋊ B_n is infinite")
        gs = self.base.elements()
        out = []
        for images in itertools.permutations(range(1, self.n + 1)):
            perm = Permutation(images)
            for vec in itertools.product(gs, repeat=self.n):
                out.append(SemidirectElement(tuple(vec), perm))
        return out

    def to_json(self) -> dict:
        return {"base": self.base.to_json(), "n": self.n, "top": self.top}

    @classmethod
    def from_json(cls, obj: dict) -> SemidirectSpec:
        return cls(FiniteGroup.from_json(obj["base"]), int(obj["n"]), obj.get("top", "symmetric"))


def group_spec_from_json(obj: dict) -> FiniteGroup | SemidirectSpec:
    if "base" in obj:
        return SemidirectSpec.from_json(obj)
    return FiniteGroup.from_json(obj)


def group_algebra(spec: FiniteGroup | SemidirectSpec, ring: RingSpec, cap: int = GROUP_ALGEBRA_CAP):
    """k[H] with the augmentation character (every group element -> 1)."""
    if isinstance(spec, SemidirectSpec):
        if spec.top == "braid":
            raise InfiniteGroup("the braid group has an infinite-dimensional group algebra")
        if spec.order > cap:
            raise SizeCapExceeded(f"|H| = {spec.order} exceeds cap {cap}")
        elements = spec.elements()
        index = {x: i for i, x in enumerate(elements)}
        table = [[index[semidirect_multiply(x, y)] for y in elements] for x in elements]
        unit = index[SemidirectElement.identity(spec.base, spec.n)]
        meta = {"name": f"k[{spec.base}^{spec.n} x| S{spec.n}]", "group": spec.to_json()}
    else:
        if spec.order > cap:
            raise SizeCapExceeded(f"|G| = {spec.order} exceeds cap {cap}")
        elements = spec.elements()
        table = [list(row) for row in spec.mul_table]
        unit = spec.identity_index
        meta = {"name": f"k[{spec}]", "group": spec.to_json()}
    one = ring.one
    mult = [[((one, k),) for k in row] for row in table]
    alg = FiniteAlgebra(ring, elements, unit, mult, meta)
    return alg, Character(tuple([one] * len(elements)))


# ---------------------------------------------------------------------------
# G-ring actions


@dataclass(frozen=True)
class GRingAction:
    """ρ: G -> Aut(k). Only Frobenius on GF(p^2) is nontrivial.

    ``generator_images`` maps a generator to ``"identity"`` or ``"frobenius"``;
    generators are coordinate indices for cyclic products and element indices
    for Cayley tables.
    """

    group: FiniteGroup
    ring: RingSpec
    generator_images: tuple[tuple[int, str], ...] = ()

    def __post_init__(self):
        for _, tag in self.generator_images:
            if tag not in ("identity", "frobenius"):
                raise ValueError(f"unknown automorphism {tag!r}")
            if tag == "frobenius" and self.ring.kind != QUAD_EXT:
                raise RingMismatch(f"{self.ring} has no Frobenius automorphism")
        self.frobenius_exponents  # validates the homomorphism

    @classmethod
    def trivial(cls, group: FiniteGroup, ring: RingSpec) -> GRingAction:
        return cls(group, ring, ())

    @property
    def is_trivial(self) -> bool:
        return not any(e for e in self.frobenius_exponents)

    @cached_property
    def frobenius_exponents(self) -> tuple[int, ...]:
        """ρ(g) = Frobenius^e(g) with e in {0, 1}, for every element g."""
        g = self.group
        images = {gen: (1 if tag == "frobenius" else 0) for gen, tag in self.generator_images}
        if g.kind == "cyclic_product":
            for i, e in images.items():
                if not 0 <= i < len(g.moduli):
                    raise InvalidGroup(f"no generator {i}")
                if e and g.moduli[i] % 2:
                    raise InvalidGroup(f"generator of order {g.moduli[i]} cannot map to an involution")
            return tuple(sum(c * images.get(i, 0) for i, c in enumerate(g.coords(x))) % 2 for x in range(g.order))
        # Cayley: propagate along the generated subgroup, then check the homomorphism law.
        exps = {g.identity_index: 0}
        frontier = [g.identity_index]
        while frontier:
            nxt = []
            for x in frontier:
                for gen, e in images.items():
                    y = g.mul(x, gen)
                    ey = (exps[x] + e) % 2
                    if y in exps:
                        if exps[y] != ey:
                            raise InvalidGroup("generator images do not define a homomorphism")
                    else:
                        exps[y] = ey
                        nxt.append(y)
            frontier = nxt
        if len(exps) < g.order:
            if any(images.values()):
                raise InvalidGroup("generators with nontrivial images must generate the group")
            return tuple([0] * g.order)
        out = tuple(exps[x] for x in range(g.order))
        for a in range(g.order):
            for b in range(g.order):
                if out[g.mul(a, b)] != (out[a] + out[b]) % 2:
                    raise InvalidGroup("generator images do not define a homomorphism")
        return out

    def apply_raw(self, g: int, value):
        if self.frobenius_exponents[g]:
            return self.ring.frobenius(value)
        return value

    def to_json(self) -> dict:
        return {"generators": [[gen, tag] for gen, tag in self.generator_images]}


def action_apply(act: GRingAction, g: GroupElement, lam: Scalar) -> Scalar:
    if lam.ring != act.ring:
        raise RingMismatch(f"{lam.ring} vs {act.ring}")
    if g.group != act.group:
        raise GroupMismatch("element is not in the acting group")
    return Scalar(lam.ring, act.apply_raw(g.index, lam.value))


def direct_power(group: FiniteGroup, n: int) -> FiniteGroup:
    """G^n; index order is lexicographic in the factor indices."""
    if group.kind == "cyclic_product":
        return FiniteGroup.cyclic_product(list(group.moduli) * n)
    elems = list(itertools.product(range(group.order), repeat=n))
    index = {e: i for i, e in enumerate(elems)}
    table = [[index[tuple(group.mul(a, b) for a, b in zip(x, y))] for y in elems] for x in elems]
    return FiniteGroup.cayley(table, index[(group.identity_index,) * n])
