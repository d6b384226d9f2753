"""Exact arithmetic over GF(p), Z/m and Q.

Elements are plain Python values: residues in ``range(m)`` for the modular
kinds and :class:`fractions.Fraction` for the rationals. Both are canonical, so
element equality is value equality.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Union

from .errors import BadRingSpec, InfiniteRing, NonUnit

RingElem = Union[int, Fraction]

PRIME_FIELD = "prime_field"
MODULAR_RING = "modular_ring"
RATIONALS = "rationals"


def is_prime(m: int) -> bool:
    if m < 2:
        return False
    if m % 2 == 0:
        return m == 2
    d = 3
    while d * d <= m:
        if m % d == 0:
            return False
        d += 2
    return True


@dataclass(frozen=True)
class RingSpec:
    kind: str
    modulus: int | None = None

    def __post_init__(self):
        if self.kind == PRIME_FIELD:
            if self.modulus is None or not is_prime(self.modulus):
                raise BadRingSpec(f"prime field needs a prime modulus, got {self.modulus}")
        elif self.kind == MODULAR_RING:
            if self.modulus is None or self.modulus < 2:
                raise BadRingSpec(f"modular ring needs modulus >= 2, got {self.modulus}")
        elif self.kind == RATIONALS:
            if self.modulus is not None:
                raise BadRingSpec("the rationals take no modulus")
        else:
            raise BadRingSpec(f"unknown ring kind {self.kind!r}")

    # -- construction / printing ---------------------------------------

    @classmethod
    def gf(cls, p: int) -> "RingSpec":
        return cls(PRIME_FIELD, p)

    @classmethod
    def zmod(cls, m: int) -> "RingSpec":
        return cls(MODULAR_RING, m)

    @classmethod
    def rationals(cls) -> "RingSpec":
        return cls(RATIONALS)

    @classmethod
    def parse(cls, text: str) -> "RingSpec":
        """Parse ``"gf:5"``, ``"zmod:6"`` or ``"q"``."""
        s = text.strip().lower()
        if s in ("q", "qq", "rationals"):
            return cls.rationals()
        head, sep, tail = s.partition(":")
        if not sep:
            raise BadRingSpec(f"cannot parse ring {text!r}")
        try:
            m = int(tail)
        except ValueError:
            raise BadRingSpec(f"cannot parse ring modulus in {text!r}") from None
        if head == "gf":
            return cls.gf(m)
        if head in ("zmod", "z"):
            return cls.zmod(m)
        raise BadRingSpec(f"cannot parse ring {text!r}")

    def __str__(self) -> str:
        if self.kind == PRIME_FIELD:
            return f"gf:{self.modulus}"
        if self.kind == MODULAR_RING:
            return f"zmod:{self.modulus}"
        return "q"

    # -- properties -----------------------------------------------------

    @property
    def is_finite(self) -> bool:
        return self.kind != RATIONALS

    @property
    def is_field(self) -> bool:
        if self.kind == MODULAR_RING:
            return is_prime(self.modulus)
        return True

    @property
    def size(self) -> int:
        if not self.is_finite:
            raise InfiniteRing(f"{self} is infinite")
        return self.modulus

    @property
    def characteristic(self) -> int:
        return 0 if self.kind == RATIONALS else self.modulus

    # -- elements -------------------------------------------------------

    @property
    def zero(self) -> RingElem:
        return Fraction(0) if self.kind == RATIONALS else 0

    @property
    def one(self) -> RingElem:
        return Fraction(1) if self.kind == RATIONALS else 1 % self.modulus

    def elem(self, x) -> RingElem:
        """Coerce an int, Fraction or string (``"3"``, ``"-1/2"``) into canonical form."""
        if isinstance(x, str):
            x = Fraction(x.strip())
        if self.kind == RATIONALS:
            return Fraction(x)
        if isinstance(x, Fraction):
            if x.denominator != 1:
                return self.div(x.numerator % self.modulus, x.denominator % self.modulus)
            x = x.numerator
        return int(x) % self.modulus

    def fmt(self, a: RingElem) -> str:
        return str(a)

    def elements(self) -> list:
        if not self.is_finite:
            raise InfiniteRing(f"{self} is infinite")
        return list(range(self.modulus))

    def add(self, a, b):
        if self.kind == RATIONALS:
            return a + b
        return (a + b) % self.modulus

    def sub(self, a, b):
        if self.kind == RATIONALS:
            return a - b
        return (a - b) % self.modulus

    def mul(self, a, b):
        if self.kind == RATIONALS:
            return a * b
        return (a * b) % self.modulus

    def neg(self, a):
        if self.kind == RATIONALS:
            return -a
        return (-a) % self.modulus

    def is_unit(self, a) -> bool:
        if self.kind == RATIONALS:
            return a != 0
        return gcd(a, self.modulus) == 1

    def inv(self, a):
        if self.kind == RATIONALS:
            if a == 0:
                raise NonUnit("0 has no inverse")
            return 1 / a
        try:
            return pow(a, -1, self.modulus)
        except ValueError:
            raise NonUnit(f"{a} is not a unit in {self}") from None

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def pow(self, a, k: int):
        if k < 0:
            return self.pow(self.inv(a), -k)
        if self.kind == RATIONALS:
            return a**k
        return pow(a, k, self.modulus)


# Functional surface --------------------------------------------------------


def ring_add(spec: RingSpec, a, b):
    return spec.add(a, b)


def ring_mul(spec: RingSpec, a, b):
    return spec.mul(a, b)


def ring_neg(spec: RingSpec, a):
    return spec.neg(a)


def ring_inv(spec: RingSpec, a):
    return spec.inv(a)


def units(spec: RingSpec) -> list:
    if not spec.is_finite:
        raise InfiniteRing(f"{spec} has infinitely many units")
    return [a for a in spec.elements() if spec.is_unit(a)]


def nth_power_classes(spec: RingSpec, n: int) -> tuple[frozenset, int]:
    """Return the subgroup of n-th powers of units and its index in the unit group."""
    if n < 1:
        raise ValueError("n must be positive")
    us = units(spec)
    powers = frozenset(spec.pow(u, n) for u in us)
    return powers, len(us) // len(powers)


def primitive_root(spec: RingSpec) -> int:
    """Smallest generator of the (cyclic) unit group of a prime field."""
    if spec.kind != PRIME_FIELD:
        raise BadRingSpec(f"primitive roots are only provided for prime fields, not {spec}")
    p = spec.modulus
    if p == 2:
        return 1
    order = p - 1
    factors = [q for q in range(2, order + 1) if order % q == 0 and is_prime(q)]
    for g in range(2, p):
        if all(pow(g, order // q, p) != 1 for q in factors):
            return g
    raise AssertionError("unreachable: prime fields have primitive roots")


def roots_of_unity(spec: RingSpec, n: int) -> list:
    return [u for u in units(spec) if spec.pow(u, n) == spec.one]
