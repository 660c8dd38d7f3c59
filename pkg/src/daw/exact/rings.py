"""Ground rings: the integers, the rationals, prime fields and GF(p^2).

Raw element representations (used by the inner loops, never mixed across rings):

    Integers      int
    Rationals     fractions.Fraction
    PrimeField    int in [0, p)
    QuadExt       (c0, c1) meaning c0 + c1*a, with a a root of the
                  lexicographically least monic irreducible quadratic mod p

:class:`Scalar` wraps a raw value together with its ring for the public API.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Any, Iterator

from ..errors import NonInvertible, NotAField, RingMismatch

INTEGERS = "integers"
RATIONALS = "rationals"
PRIME_FIELD = "prime_field"
QUAD_EXT = "quad_ext"

_KINDS = (INTEGERS, RATIONALS, PRIME_FIELD, QUAD_EXT)


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    i = 2
    while i * i <= p:
        if p % i == 0:
            return False
        i += 1
    return True


@dataclass(frozen=True)
class RingSpec:
    kind: str
    p: int | None = None
    _modulus: tuple[int, int] | None = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        if self.kind not in _KINDS:
            raise ValueError(f"unknown ring kind {self.kind!r}")
        if self.kind in (PRIME_FIELD, QUAD_EXT):
            if self.p is None or not is_prime(self.p):
                raise ValueError(f"{self.kind} needs a prime p, got {self.p}")
        elif self.p is not None:
            raise ValueError(f"{self.kind} takes no p")
        if self.kind == QUAD_EXT:
            object.__setattr__(self, "_modulus", _least_irreducible_quadratic(self.p))

    # constructors -----------------------------------------------------------

    @classmethod
    def integers(cls) -> RingSpec:
        return cls(INTEGERS)

    @classmethod
    def rationals(cls) -> RingSpec:
        return cls(RATIONALS)

    @classmethod
    def prime_field(cls, p: int) -> RingSpec:
        return cls(PRIME_FIELD, p)

    @classmethod
    def quad_ext(cls, p: int) -> RingSpec:
        return cls(QUAD_EXT, p)

    @classmethod
    def parse(cls, text: str) -> RingSpec:
        """Parse ``Z``, ``Q``, ``F5``, ``GF(7)``, ``F4`` (= GF(2^2)) or ``F3^2``."""
        t = text.strip().replace(" ", "")
        if t.upper() in ("Z", "ZZ", "INTEGERS"):
            return cls.integers()
        if t.upper() in ("Q", "QQ", "RATIONALS"):
            return cls.rationals()
        m = re.fullmatch(r"(?:F|GF\(?)(\d+)(?:\^(\d+))?\)?", t, flags=re.IGNORECASE)
        if not m:
            raise ValueError(f"cannot parse ring {text!r}")
        q = int(m.group(1))
        e = int(m.group(2) or 1)
        if e == 1 and is_prime(q):
            return cls.prime_field(q)
        if e == 2 and is_prime(q):
            return cls.quad_ext(q)
        if e == 1:
            r = int(round(q ** 0.5))
            if r * r == q and is_prime(r):
                return cls.quad_ext(r)
        raise ValueError(f"unsupported field size in {text!r}")

    @classmethod
    def from_json(cls, obj: dict) -> RingSpec:
        return cls(obj["kind"], obj.get("p"))

    def to_json(self) -> dict:
        out: dict[str, Any] = {"kind": self.kind}
        if self.p is not None:
            out["p"] = self.p
        return out

    def __str__(self) -> str:
        if self.kind == INTEGERS:
            return "Z"
        if self.kind == RATIONALS:
            return "Q"
        if self.kind == PRIME_FIELD:
            return f"F{self.p}"
        return f"F{self.p}^2"

    # structure --------------------------------------------------------------

    @property
    def is_field(self) -> bool:
        return self.kind != INTEGERS

    @property
    def characteristic(self) -> int:
        return self.p if self.p is not None else 0

    @property
    def size(self) -> int | None:
        if self.kind == PRIME_FIELD:
            return self.p
        if self.kind == QUAD_EXT:
            return self.p * self.p
        return None

    @property
    def modulus(self) -> tuple[int, int]:
        """(c0, c1) with a^2 + c1*a + c0 = 0, QuadExt only."""
        if self._modulus is None:
            raise RingMismatch(f"{self} has no quadratic modulus")
        return self._modulus

    def require_field(self) -> None:
        if not self.is_field:
            raise NotAField(f"{self} is not a field")

    @cached_property
    def zero(self):
        if self.kind == RATIONALS:
            return Fraction(0)
        if self.kind == QUAD_EXT:
            return (0, 0)
        return 0

    @cached_property
    def one(self):
        if self.kind == RATIONALS:
            return Fraction(1)
        if self.kind == QUAD_EXT:
            return (1, 0)
        return 1

    # raw arithmetic ---------------------------------------------------------

    def from_int(self, n: int):
        if self.kind == INTEGERS:
            return int(n)
        if self.kind == RATIONALS:
            return Fraction(n)
        if self.kind == PRIME_FIELD:
            return n % self.p
        return (n % self.p, 0)

    def is_zero(self, x) -> bool:
        if self.kind == QUAD_EXT:
            return x[0] == 0 and x[1] == 0
        return x == 0

    def is_one(self, x) -> bool:
        return x == self.one

    def add(self, x, y):
        if self.kind == PRIME_FIELD:
            return (x + y) % self.p
        if self.kind == QUAD_EXT:
            return ((x[0] + y[0]) % self.p, (x[1] + y[1]) % self.p)
        return x + y

    def sub(self, x, y):
        return self.add(x, self.neg(y))

    def neg(self, x):
        if self.kind == PRIME_FIELD:
            return (-x) % self.p
        if self.kind == QUAD_EXT:
            return ((-x[0]) % self.p, (-x[1]) % self.p)
        return -x

    def mul(self, x, y):
        if self.kind == PRIME_FIELD:
            return (x * y) % self.p
        if self.kind == QUAD_EXT:
            c0, c1 = self._modulus
            p = self.p
            t = x[1] * y[1]
            return ((x[0] * y[0] - c0 * t) % p, (x[0] * y[1] + x[1] * y[0] - c1 * t) % p)
        return x * y

    def pow(self, x, e: int):
        if e < 0:
            return self.pow(self.inv(x), -e)
        result = self.one
        base = x
        while e:
            if e & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            e >>= 1
        return result

    def inv(self, x):
        if self.is_zero(x):
            raise NonInvertible(f"0 is not invertible in {self}")
        if self.kind == INTEGERS:
            if x in (1, -1):
                return x
            raise NonInvertible(f"{x} is not a unit in Z")
        if self.kind == RATIONALS:
            return 1 / Fraction(x)
        if self.kind == PRIME_FIELD:
            return pow(x, -1, self.p)
        # x^(q-2) in GF(q)
        return self.pow(x, self.p * self.p - 2)

    def frobenius(self, x):
        """x -> x^p; the identity outside QuadExt."""
        if self.kind != QUAD_EXT:
            return x
        return self.pow(x, self.p)

    def elements(self) -> Iterator:
        if self.kind == PRIME_FIELD:
            yield from range(self.p)
        elif self.kind == QUAD_EXT:
            for c1 in range(self.p):
                for c0 in range(self.p):
                    yield (c0, c1)
        else:
            raise ValueError(f"{self} is infinite")

    def normalize(self, x):
        """Coerce ints / Fractions / pairs into this ring's raw form."""
        if self.kind == INTEGERS:
            if isinstance(x, Fraction):
                if x.denominator != 1:
                    raise RingMismatch(f"{x} is not an integer")
                return int(x.numerator)
            return int(x)
        if self.kind == RATIONALS:
            return Fraction(x)
        if self.kind == PRIME_FIELD:
            if isinstance(x, Fraction):
                return (x.numerator * self.inv(x.denominator % self.p)) % self.p
            return int(x) % self.p
        if isinstance(x, tuple):
            return (x[0] % self.p, x[1] % self.p)
        if isinstance(x, Fraction):
            d = self.inv((x.denominator % self.p, 0))
            return self.mul((x.numerator % self.p, 0), d)
        return (int(x) % self.p, 0)

    def parse_value(self, text: str):
        t = str(text).strip().replace(" ", "")
        if self.kind == QUAD_EXT:
            return self._parse_quad(t)
        try:
            return self.normalize(Fraction(t))
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"cannot parse {text!r} in {self}") from exc

    def _parse_quad(self, t: str):
        if not t:
            raise ValueError("empty scalar")
        terms = re.findall(r"[+-]?[^+-]+", t)
        if "".join(terms) != t:
            raise ValueError(f"cannot parse {t!r} in {self}")
        c0 = c1 = 0
        for term in terms:
            sign = -1 if term.startswith("-") else 1
            body = term.lstrip("+-")
            if body.endswith("a"):
                coeff = body[:-1].rstrip("*")
                c1 += sign * (int(coeff) if coeff else 1)
            else:
                c0 += sign * int(body)
        return (c0 % self.p, c1 % self.p)

    def format(self, x) -> str:
        if self.kind == QUAD_EXT:
            c0, c1 = x
            if c1 == 0:
                return str(c0)
            s = "a" if c1 == 1 else f"{c1}a"
            return s + (f"+{c0}" if c0 else "")
        if self.kind == RATIONALS:
            x = Fraction(x)
            return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
        return str(x)

    def scalar(self, value) -> Scalar:
        if isinstance(value, str):
            return Scalar(self, self.parse_value(value))
        return Scalar(self, self.normalize(value))


def _least_irreducible_quadratic(p: int) -> tuple[int, int]:
    # Ordered lexicographically on (c1, c0) for x^2 + c1 x + c0.
    for c1 in range(p):
        for c0 in range(p):
            if all((x * x + c1 * x + c0) % p for x in range(p)):
                return (c0, c1)
    raise AssertionError("unreachable: every prime has an irreducible quadratic")


@dataclass(frozen=True)
class Scalar:
    ring: RingSpec
    value: Any

    def _check(self, other: Scalar) -> None:
        if not isinstance(other, Scalar):
            raise TypeError(f"expected Scalar, got {type(other).__name__}")
        if other.ring != self.ring:
            raise RingMismatch(f"{self.ring} vs {other.ring}")

    def __add__(self, other: Scalar) -> Scalar:
        self._check(other)
        return Scalar(self.ring, self.ring.add(self.value, other.value))

    def __sub__(self, other: Scalar) -> Scalar:
        self._check(other)
        return Scalar(self.ring, self.ring.sub(self.value, other.value))

    def __mul__(self, other: Scalar) -> Scalar:
        self._check(other)
        return Scalar(self.ring, self.ring.mul(self.value, other.value))

    def __neg__(self) -> Scalar:
        return Scalar(self.ring, self.ring.neg(self.value))

    def __pow__(self, e: int) -> Scalar:
        return Scalar(self.ring, self.ring.pow(self.value, e))

    def inv(self) -> Scalar:
        return Scalar(self.ring, self.ring.inv(self.value))

    def frobenius(self) -> Scalar:
        return Scalar(self.ring, self.ring.frobenius(self.value))

    def is_zero(self) -> bool:
        return self.ring.is_zero(self.value)

    def __str__(self) -> str:
        return self.ring.format(self.value)

    def __repr__(self) -> str:
        return f"Scalar({self.ring}, {self})"


def scalar_arith(op: str, a: Scalar, b: Scalar | None = None) -> Scalar:
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    if op == "neg":
        return -a
    if op == "inv":
        return a.inv()
    raise ValueError(f"unknown op {op!r}")
