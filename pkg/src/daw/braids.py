"""Braid words, Garside left-greedy normal form and partial braids.

Permutation braids are stored as 0-based permutations ``perm`` where the
strand starting at position ``x`` ends at position ``perm[x]``. Braids are
read left to right, so the permutation of ``A·B`` is ``A`` followed by ``B``.

For a simple braid ``A``:
    σ_i is a right divisor of A  iff  A⁻¹(i) > A⁻¹(i+1)   (right descents)
    σ_i is a left divisor of A   iff  A(i) > A(i+1)         (left descents)
and a pair (A, B) is left-weighted iff every left descent of B is a right
descent of A.
"""

from __future__ import annotations

import random
import re
from dataclasses import dataclass, field
from typing import Sequence

from .errors import GroupMismatch, SizeMismatch
from .exact.rings import RingSpec
from .groups import FiniteGroup

Perm = tuple  # 0-based one-line permutation


# ---------------------------------------------------------------------------
# words


@dataclass(frozen=True)
class BraidWord:
    n: int
    letters: tuple[tuple[int, int], ...] = ()  # (generator index 1..n-1, ±1)

    def __post_init__(self):
        for i, s in self.letters:
            if not 1 <= i <= self.n - 1 or s not in (1, -1):
                raise ValueError(f"bad letter ({i}, {s}) on {self.n} strands")

    @classmethod
    def parse(cls, n: int, text: str) -> BraidWord:
        """``"s1 s2 S1"``; a capital S is an inverse generator."""
        letters = []
        for tok in text.split():
            m = re.fullmatch(r"([sS])(\d+)", tok)
            if not m:
                raise ValueError(f"bad braid letter {tok!r}")
            letters.append((int(m.group(2)), 1 if m.group(1) == "s" else -1))
        return cls(n, tuple(letters))

    def __str__(self) -> str:
        return " ".join(("s" if s > 0 else "S") + str(i) for i, s in self.letters)

    def __mul__(self, other: BraidWord) -> BraidWord:
        if other.n != self.n:
            raise SizeMismatch(f"B_{self.n} vs B_{other.n}")
        return BraidWord(self.n, self.letters + other.letters)

    def inverse(self) -> BraidWord:
        return BraidWord(self.n, tuple((i, -s) for i, s in reversed(self.letters)))

    def permutation(self) -> Perm:
        pos = list(range(self.n))  # pos[p] = strand at position p
        for i, _ in self.letters:
            pos[i - 1], pos[i] = pos[i], pos[i - 1]
        out = [0] * self.n
        for p, strand in enumerate(pos):
            out[strand] = p
        return tuple(out)

    @classmethod
    def random(cls, n: int, length: int, rng: random.Random) -> BraidWord:
        if n < 2:
            return cls(n, ())
        return cls(n, tuple((rng.randint(1, n - 1), rng.choice((1, -1))) for _ in range(length)))


# ---------------------------------------------------------------------------
# permutation braid helpers


def _identity(n: int) -> Perm:
    return tuple(range(n))


def _w0(n: int) -> Perm:
    return tuple(range(n - 1, -1, -1))


def _then(a: Perm, b: Perm) -> Perm:
    return tuple(b[a[x]] for x in range(len(a)))


def _inverse(a: Perm) -> Perm:
    out = [0] * len(a)
    for x, y in enumerate(a):
        out[y] = x
    return tuple(out)


def _swap(n: int, i: int) -> Perm:
    """The permutation of σ_{i+1} (0-based i)."""
    p = list(range(n))
    p[i], p[i + 1] = i + 1, i
    return tuple(p)


def _left_descents(a: Perm) -> set[int]:
    return {i for i in range(len(a) - 1) if a[i] > a[i + 1]}


def _right_descents(a: Perm) -> set[int]:
    return _left_descents(_inverse(a))


def _tau(a: Perm) -> Perm:
    """Conjugation by Δ: σ_i -> σ_{n-i}."""
    n = len(a)
    return tuple(n - 1 - a[n - 1 - x] for x in range(n))


def _tau_power(a: Perm, k: int) -> Perm:
    return _tau(a) if k % 2 else a


def positive_word(a: Perm) -> list[int]:
    """A reduced word (0-based generator indices) for a permutation braid."""
    word = []
    a = tuple(a)
    while True:
        d = _left_descents(a)
        if not d:
            return word
        i = min(d)
        word.append(i)
        s = _swap(len(a), i)
        a = _then(s, a)


# ---------------------------------------------------------------------------
# normal form


@dataclass(frozen=True)
class GarsideNF:
    n: int
    inf: int = 0
    factors: tuple[Perm, ...] = ()

    def to_word(self) -> BraidWord:
        n = self.n
        delta = [(i + 1, 1) for i in positive_word(_w0(n))]
        letters: list[tuple[int, int]] = []
        if self.inf > 0:
            letters += delta * self.inf
        elif self.inf < 0:
            inv = [(i, -1) for i, _ in reversed(delta)]
            letters += inv * (-self.inf)
        for f in self.factors:
            letters += [(i + 1, 1) for i in positive_word(f)]
        return BraidWord(n, tuple(letters))

    @property
    def is_identity(self) -> bool:
        return self.inf == 0 and not self.factors

    def permutation(self) -> Perm:
        p = _w0(self.n) if self.inf % 2 else _identity(self.n)
        for f in self.factors:
            p = _then(p, f)
        return p

    def to_json(self) -> dict:
        return {"n": self.n, "inf": self.inf, "factors": [list(f) for f in self.factors]}


def normal_form(w: BraidWord) -> GarsideNF:
    n = w.n
    if n <= 1:
        return GarsideNF(n)
    w0 = _w0(n)
    inf = 0
    factors: list[Perm] = []
    for i, s in w.letters:
        sw = _swap(n, i - 1)
        if s > 0:
            factors.append(sw)
        else:
            # σ_i⁻¹ = (σ_i⁻¹Δ)Δ⁻¹, then slide Δ⁻¹ to the front.
            factors.append(_then(sw, w0))
            factors = [_tau(f) for f in factors]
            inf -= 1
    return _normalize(n, inf, factors)


def _normalize(n: int, inf: int, factors: list[Perm]) -> GarsideNF:
    ident, w0 = _identity(n), _w0(n)
    factors = [f for f in factors if f != ident]
    changed = True
    while changed:
        changed = False
        for k in range(len(factors) - 1):
            a, b = factors[k], factors[k + 1]
            move = _left_descents(b) - _right_descents(a)
            while move:
                i = min(move)
                s = _swap(n, i)
                a = _then(a, s)
                b = _then(s, b)
                move = _left_descents(b) - _right_descents(a)
                changed = True
            factors[k], factors[k + 1] = a, b
        if changed:
            factors = [f for f in factors if f != ident]
    # Left-weighted: Δ factors sit at the front. Δ commutes past Δ^inf.
    while factors and factors[0] == w0:
        factors.pop(0)
        inf += 1
    return GarsideNF(n, inf, tuple(factors))


def braid_equal(u: BraidWord, v: BraidWord) -> bool:
    return normal_form(u) == normal_form(v)


def nf_multiply(a: GarsideNF, b: GarsideNF) -> GarsideNF:
    if a.n != b.n:
        raise SizeMismatch(f"B_{a.n} vs B_{b.n}")
    if a.n <= 1:
        return GarsideNF(a.n)
    # Δ^p A Δ^q B = Δ^{p+q} τ^q(A) B
    moved = [_tau_power(f, b.inf) for f in a.factors]
    return _normalize(a.n, a.inf + b.inf, moved + list(b.factors))


# ---------------------------------------------------------------------------
# strand deletion


def delete_strands(w: BraidWord, keep: Sequence[int]) -> BraidWord:
    """Drop every crossing involving a strand not in ``keep`` (1-based starting positions)."""
    kept = set(keep)
    if not kept <= set(range(1, w.n + 1)):
        raise ValueError(f"keep {sorted(kept)} is not a subset of 1..{w.n}")
    at = list(range(1, w.n + 1))  # at[p] = starting position of the strand now at p
    out = []
    for i, s in w.letters:
        a, b = at[i - 1], at[i]
        if a in kept and b in kept:
            j = sum(1 for x in at[: i - 1] if x in kept) + 1
            out.append((j, s))
        at[i - 1], at[i] = b, a
    return BraidWord(len(kept), tuple(out))


# ---------------------------------------------------------------------------
# partial braids


@dataclass(frozen=True)
class PartialBraid:
    """A braided rook diagram: strands from ``left`` to ``right`` braided by ``braid``.

    The strand starting at the j-th element of ``left`` ends at
    ``right[braid.permutation()[j]]``. Labels (group element indices) are per
    strand, in left-endpoint order.
    """

    n: int
    left: tuple[int, ...]
    right: tuple[int, ...]
    braid: GarsideNF
    labels: tuple[int, ...] | None = None
    group: FiniteGroup | None = field(default=None, compare=True)

    def __post_init__(self):
        k = len(self.left)
        if len(self.right) != k or self.braid.n != k:
            raise SizeMismatch("endpoint sets and braid disagree on strand count")
        for s in (self.left, self.right):
            if list(s) != sorted(set(s)) or any(not 1 <= x <= self.n for x in s):
                raise ValueError(f"endpoint set {s} must be sorted and within 1..{self.n}")
        if self.labels is not None:
            if self.group is None or len(self.labels) != k:
                raise ValueError("labels need a group and one label per strand")

    @classmethod
    def make(cls, n: int, left, right, word: BraidWord | str = "", labels=None, group=None) -> PartialBraid:
        left, right = tuple(sorted(left)), tuple(sorted(right))
        if isinstance(word, str):
            word = BraidWord.parse(len(left), word)
        if group is not None and labels is None:
            labels = (group.identity_index,) * len(left)
        return cls(n, left, right, normal_form(word), None if labels is None else tuple(labels), group)

    @classmethod
    def identity(cls, n: int, group: FiniteGroup | None = None) -> PartialBraid:
        return cls.make(n, range(1, n + 1), range(1, n + 1), BraidWord(n), group=group)

    @property
    def k(self) -> int:
        return len(self.left)

    def strand_map(self) -> dict[int, int]:
        perm = self.braid.permutation()
        return {self.left[j]: self.right[perm[j]] for j in range(self.k)}

    def to_json(self) -> dict:
        out = {"n": self.n, "left": list(self.left), "right": list(self.right), "word": str(self.braid.to_word())}
        if self.labels is not None:
            out["labels"] = [list(self.group.coords(g)) for g in self.labels]
            out["group"] = self.group.to_json()
        return out

    @classmethod
    def from_json(cls, obj: dict) -> PartialBraid:
        group = FiniteGroup.from_json(obj["group"]) if "group" in obj else None
        labels = None
        if obj.get("labels") is not None:
            labels = [group.index_of(c) for c in obj["labels"]]
        return cls.make(obj["n"], obj["left"], obj["right"], obj.get("word", ""), labels, group)

    @classmethod
    def random(cls, n: int, rng: random.Random, group: FiniteGroup | None = None, length: int = 6) -> PartialBraid:
        k = rng.randint(0, n)
        left = sorted(rng.sample(range(1, n + 1), k))
        right = sorted(rng.sample(range(1, n + 1), k))
        labels = None if group is None else [rng.randrange(group.order) for _ in range(k)]
        return cls.make(n, left, right, BraidWord.random(k, length, rng), labels, group)


def compose_partial(x: PartialBraid, y: PartialBraid, eps, ring: RingSpec | None = None, action=None):
    """Concatenate ``x`` then ``y``; returns ``(eps**m, result)``.

    ``m`` counts middle positions that are endpoints of neither diagram. A
    strand running into a missing middle node simply dies. ``eps`` is a raw
    ring value when ``ring`` is given, otherwise any object supporting ``**``.
    The G-ring action never enters: loops cannot form here.
    """
    if x.n != y.n:
        raise SizeMismatch(f"partial braids on {x.n} and {y.n} nodes")
    if (x.labels is None) != (y.labels is None) or x.group != y.group:
        raise GroupMismatch("partial braids carry different label groups")
    xr, yl = set(x.right), set(y.left)
    m = sum(1 for v in range(1, x.n + 1) if v not in xr and v not in yl)

    xmap = x.strand_map()
    keep_x = [j + 1 for j, a in enumerate(x.left) if xmap[a] in yl]
    keep_y = [j + 1 for j, b in enumerate(y.left) if b in xr]
    wx = delete_strands(x.braid.to_word(), keep_x)
    wy = delete_strands(y.braid.to_word(), keep_y)
    ymap = y.strand_map()
    new_left = tuple(x.left[j - 1] for j in keep_x)
    new_right = tuple(sorted(ymap[xmap[a]] for a in new_left))
    labels = None
    if x.labels is not None:
        g = x.group
        ylab = dict(zip(y.left, y.labels))
        labels = tuple(g.mul(x.labels[j - 1], ylab[xmap[x.left[j - 1]]]) for j in keep_x)
    braid = normal_form(wx * wy)
    scalar = ring.pow(eps, m) if ring is not None else eps**m
    return scalar, PartialBraid(x.n, new_left, new_right, braid, labels, x.group)
