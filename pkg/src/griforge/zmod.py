"""Exact arithmetic in Z/p^sZ using centered representatives.

A residue is always stored as the unique congruent integer in the
half-open interval (-p^s/2, p^s/2]; for even p^s the right endpoint
p^s/2 is included, for odd p^s the interval is symmetric.
"""

from dataclasses import dataclass
from functools import cached_property

from .errors import ModulusMismatch, NotAUnit

# Exact Miller-Rabin base set for n < 3.3 * 10^24, far beyond 64-bit.
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
_TRIAL_BOUND = 1_000_000


def is_prime(n: int) -> bool:
    """Deterministic primality test for moduli up to 64-bit scale."""
    if n < 2:
        return False
    for q in _MR_BASES:
        if n == q:
            return True
        if n % q == 0:
            return False
    if n < _TRIAL_BOUND:
        d = 41
        while d * d <= n:
            if n % d == 0:
                return False
            d += 2
        return True
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def centered(x: int, m: int) -> int:
    """The representative of x mod m lying in (-m/2, m/2]."""
    r = x % m
    if 2 * r > m:
        r -= m
    return r


def xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Extended Euclid: (g, u, v) with u*a + v*b = g >= 0."""
    old_r, r = a, b
    old_u, u = 1, 0
    old_v, v = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_u, u = u, old_u - q * u
        old_v, v = v, old_v - q * v
    if old_r < 0:
        old_r, old_u, old_v = -old_r, -old_u, -old_v
    return old_r, old_u, old_v


def invmod(a: int, m: int) -> int:
    """Centered inverse of a modulo m; ValueError when gcd(a, m) != 1."""
    g, u, _ = xgcd(a % m, m)
    if g != 1:
        raise ValueError(f"{a} is not invertible modulo {m}")
    return centered(u, m)


@dataclass(frozen=True)
class Modulus:
    """A prime-power modulus p^s."""

    p: int
    s: int

    def __post_init__(self):
        if not is_prime(self.p):
            raise ValueError("p must be prime")
        if self.s < 1:
            raise ValueError("s must be >= 1")

    @cached_property
    def m(self) -> int:
        return self.p**self.s

    def reduce(self, x: int) -> int:
        return centered(x, self.m)

    def __repr__(self):
        return f"{self.p}^{self.s}" if self.s > 1 else str(self.p)


@dataclass(frozen=True)
class ZmodElem:
    """An element of Z/p^sZ, kept in canonical centered form."""

    value: int
    modulus: Modulus

    def __post_init__(self):
        object.__setattr__(self, "value", self.modulus.reduce(self.value))

    def _same(self, other: "ZmodElem"):
        if self.modulus != other.modulus:
            raise ModulusMismatch(f"{self.modulus} vs {other.modulus}")

    def __add__(self, other):
        self._same(other)
        return ZmodElem(self.value + other.value, self.modulus)

    def __sub__(self, other):
        self._same(other)
        return ZmodElem(self.value - other.value, self.modulus)

    def __mul__(self, other):
        self._same(other)
        return ZmodElem(self.value * other.value, self.modulus)

    def __neg__(self):
        return ZmodElem(-self.value, self.modulus)

    def is_unit(self) -> bool:
        return self.value % self.modulus.p != 0

    def inv(self) -> "ZmodElem":
        if not self.is_unit():
            raise NotAUnit(f"{self.value} is divisible by {self.modulus.p}")
        return ZmodElem(invmod(self.value, self.modulus.m), self.modulus)

    def __repr__(self):
        return f"{self.value} mod {self.modulus!r}"


def centered_reduce(x: int, m: Modulus) -> ZmodElem:
    """Canonical centered representative of x modulo p^s."""
    return ZmodElem(x, m)
