"""Finite-dimensional algebras given by structure constants on a basis.

This is the common currency between diagram algebras, group algebras,
quotients and the homology engines. Elements are dicts ``{basis index: raw}``.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from typing import Any, Sequence

from .errors import CharacterIncompatible, RingMismatch
from .exact.rings import RingSpec

Terms = tuple  # tuple of (raw coefficient, basis index) pairs


class FiniteAlgebra:
    """Basis + multiplication table ``mult[i][j] -> ((coef, k), ...)``.

    Diagram and group algebras are "monomial": every product of basis elements
    is at most one scalar times a basis element. ``meta`` records how the
    algebra was built (flavor, n, group, parameters) for exports and maps.
    """

    def __init__(self, ring: RingSpec, basis: Sequence, unit: int, mult: list[list[Terms]], meta: dict | None = None):
        self.ring = ring
        self.basis = list(basis)
        self.unit = unit
        self.mult = mult
        self.meta = dict(meta or {})
        self._index = None

    @property
    def dim(self) -> int:
        return len(self.basis)

    def index(self, label) -> int:
        if self._index is None:
            self._index = {b: i for i, b in enumerate(self.basis)}
        return self._index[label]

    @property
    def is_monomial(self) -> bool:
        return all(len(t) <= 1 for row in self.mult for t in row)

    def product(self, i: int, j: int) -> Terms:
        return self.mult[i][j]

    def multiply(self, u: dict, v: dict) -> dict:
        ring = self.ring
        out: dict[int, Any] = {}
        for i, a in u.items():
            for j, b in v.items():
                ab = ring.mul(a, b)
                for c, k in self.mult[i][j]:
                    out[k] = ring.add(out.get(k, ring.zero), ring.mul(ab, c))
        return {k: x for k, x in out.items() if not ring.is_zero(x)}

    def element(self, terms: dict) -> dict:
        ring = self.ring
        return {k: ring.normalize(x) for k, x in terms.items() if not ring.is_zero(ring.normalize(x))}

    def basis_element(self, i: int) -> dict:
        return {i: self.ring.one}

    def check_unit(self) -> bool:
        one = self.ring.one
        u = self.unit
        return all(
            self.mult[u][i] == ((one, i),) and self.mult[i][u] == ((one, i),) for i in range(self.dim)
        )

    def check_associative(self, triples: int | None = None, seed: int = 0) -> bool:
        """Exhaustive when ``triples`` is None, otherwise that many random triples."""
        d = self.dim
        if triples is None:
            it = itertools.product(range(d), repeat=3)
        else:
            rng = random.Random(seed)
            it = ((rng.randrange(d), rng.randrange(d), rng.randrange(d)) for _ in range(triples))
        for i, j, k in it:
            left = self.multiply(self.multiply({i: self.ring.one}, {j: self.ring.one}), {k: self.ring.one})
            right = self.multiply({i: self.ring.one}, self.multiply({j: self.ring.one}, {k: self.ring.one}))
            if left != right:
                return False
        return True

    def to_json(self, label_to_json=None) -> dict:
        fmt = self.ring.format
        enc = label_to_json or (lambda b: b if isinstance(b, (int, str)) else repr(b))
        return {
            "ring": self.ring.to_json(),
            "basis": [enc(b) for b in self.basis],
            "unit": self.unit,
            "mult": [
                [i, j, fmt(c), k]
                for i in range(self.dim)
                for j in range(self.dim)
                for c, k in self.mult[i][j]
            ],
        }

    def __repr__(self) -> str:
        name = self.meta.get("name", "algebra")
        return f"FiniteAlgebra({name}, dim={self.dim}, ring={self.ring})"


@dataclass(frozen=True)
class Character:
    """Algebra map to the ground ring, i.e. the trivial module's action."""

    values: tuple

    def __call__(self, i: int):
        return self.values[i]

    def on_element(self, ring: RingSpec, u: dict):
        acc = ring.zero
        for i, a in u.items():
            acc = ring.add(acc, ring.mul(a, self.values[i]))
        return acc

    def is_multiplicative(self, alg: FiniteAlgebra) -> bool:
        ring = alg.ring
        if not ring.is_one(self.values[alg.unit]):
            return False
        for i in range(alg.dim):
            for j in range(alg.dim):
                lhs = self.on_element(ring, dict((k, c) for c, k in alg.mult[i][j]))
                if lhs != ring.mul(self.values[i], self.values[j]):
                    return False
        return True


@dataclass
class AlgebraMap:
    source: FiniteAlgebra
    target: FiniteAlgebra
    images: list[dict] = field(default_factory=list)

    def __post_init__(self):
        if self.source.ring != self.target.ring:
            raise RingMismatch(f"{self.source.ring} vs {self.target.ring}")

    def apply(self, u: dict) -> dict:
        ring = self.target.ring
        out: dict[int, Any] = {}
        for i, a in u.items():
            for k, b in self.images[i].items():
                out[k] = ring.add(out.get(k, ring.zero), ring.mul(a, b))
        return {k: x for k, x in out.items() if not ring.is_zero(x)}

    def is_unital(self) -> bool:
        return self.images[self.source.unit] == {self.target.unit: self.target.ring.one}

    def is_multiplicative(self) -> bool:
        src = self.source
        for i in range(src.dim):
            for j in range(src.dim):
                lhs = self.apply(dict((k, c) for c, k in src.mult[i][j]))
                rhs = self.target.multiply(self.images[i], self.images[j])
                if lhs != rhs:
                    return False
        return True

    def respects_characters(self, chi_src: Character, chi_tgt: Character) -> bool:
        ring = self.target.ring
        return all(
            chi_tgt.on_element(ring, self.images[i]) == chi_src(i) for i in range(self.source.dim)
        )

    def require_characters(self, chi_src: Character, chi_tgt: Character) -> None:
        if not self.respects_characters(chi_src, chi_tgt):
            raise CharacterIncompatible("map does not intertwine the augmentations")
