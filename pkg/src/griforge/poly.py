"""Dense univariate polynomials over Z/p^sZ.

Coefficients are stored ascending by degree in centered form with
trailing zeros trimmed; the zero polynomial has an empty coefficient
tuple and degree -1. Division is only defined for divisors whose
leading coefficient is a unit, in particular for monic divisors.
"""

import random
from typing import Iterable, Sequence

from .errors import ModulusMismatch, NonMonicDivisor
from .zmod import Modulus, centered, invmod

_KARATSUBA_CUTOFF = 33  # coefficient count; schoolbook below


def _trim(cs: list[int]) -> list[int]:
    while cs and cs[-1] == 0:
        cs.pop()
    return cs


def _raw_add(a, b, m):
    out = [0] * max(len(a), len(b))
    for i, c in enumerate(a):
        out[i] = c
    for i, c in enumerate(b):
        out[i] += c
    return _trim([centered(c, m) for c in out])


def _raw_sub(a, b, m):
    out = [0] * max(len(a), len(b))
    for i, c in enumerate(a):
        out[i] = c
    for i, c in enumerate(b):
        out[i] -= c
    return _trim([centered(c, m) for c in out])


def _school(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, ca in enumerate(a):
        if ca:
            for j, cb in enumerate(b):
                out[i + j] += ca * cb
    return out


def _kara(a, b):
    """Karatsuba product of raw integer coefficient lists, no reduction."""
    if not a or not b:
        return []
    if min(len(a), len(b)) < _KARATSUBA_CUTOFF:
        return _school(a, b)
    h = min(len(a), len(b)) // 2
    a0, a1 = a[:h], a[h:]
    b0, b1 = b[:h], b[h:]
    z0 = _kara(a0, b0)
    z2 = _kara(a1, b1)
    asum = [x + y for x, y in zip(a0, a1)] + list(a1[h:])
    bsum = [x + y for x, y in zip(b0, b1)] + list(b1[h:])
    z1 = _kara(asum, bsum)
    out = [0] * (len(a) + len(b) - 1)
    for i, c in enumerate(z0):
        out[i] += c
        out[i + h] -= c
    for i, c in enumerate(z1):
        out[i + h] += c
    for i, c in enumerate(z2):
        out[i + h] -= c
        out[i + 2 * h] += c
    return out


def _raw_mul(a, b, m):
    if not a or not b:
        return []
    prod = _kara(list(a), list(b)) if min(len(a), len(b)) >= _KARATSUBA_CUTOFF else _school(a, b)
    return _trim([centered(c, m) for c in prod])


def _raw_rem_monic(a, f, m):
    """Remainder of a modulo the monic polynomial f (len f >= 2)."""
    df = len(f) - 1
    r = list(a)
    for i in range(len(r) - 1, df - 1, -1):
        c = centered(r[i], m)
        if c:
            for j in range(df):
                r[i - df + j] -= c * f[j]
        r[i] = 0
    return _trim([centered(c, m) for c in r[:df]])


def _raw_divmod(a, b, m):
    """Quotient and remainder by b, whose leading coefficient must be a unit."""
    if len(a) < len(b):
        return [], _trim([centered(c, m) for c in a])
    linv = invmod(b[-1], m)
    q = [0] * (len(a) - len(b) + 1)
    r = list(a)
    for i in reversed(range(len(q))):
        c = centered(r[i + len(b) - 1] * linv, m)
        q[i] = c
        if c:
            for j in range(len(b)):
                r[i + j] -= c * b[j]
    return _trim(q), _trim([centered(c, m) for c in r[: len(b) - 1]])


class Poly:
    """A polynomial over Z/p^sZ in canonical form."""

    __slots__ = ("coeffs", "modulus")

    def __init__(self, coeffs: Iterable[int], modulus: Modulus):
        m = modulus.m
        cs = [centered(int(c), m) for c in coeffs]
        _trim(cs)
        self.coeffs = tuple(cs)
        self.modulus = modulus

    @classmethod
    def zero(cls, modulus: Modulus) -> "Poly":
        return cls((), modulus)

    @classmethod
    def constant(cls, c: int, modulus: Modulus) -> "Poly":
        return cls((c,), modulus)

    @classmethod
    def x(cls, modulus: Modulus) -> "Poly":
        return cls((0, 1), modulus)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def leading(self) -> int:
        return self.coeffs[-1]

    @property
    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == 1

    def coeff(self, i: int) -> int:
        return self.coeffs[i] if i < len(self.coeffs) else 0

    def _same(self, other: "Poly"):
        if self.modulus != other.modulus:
            raise ModulusMismatch(f"{self.modulus} vs {other.modulus}")

    def __add__(self, other: "Poly") -> "Poly":
        self._same(other)
        return _wrap(_raw_add(self.coeffs, other.coeffs, self.modulus.m), self.modulus)

    def __sub__(self, other: "Poly") -> "Poly":
        self._same(other)
        return _wrap(_raw_sub(self.coeffs, other.coeffs, self.modulus.m), self.modulus)

    def __neg__(self) -> "Poly":
        return _wrap([centered(-c, self.modulus.m) for c in self.coeffs], self.modulus)

    def __mul__(self, other):
        if isinstance(other, int):
            return _wrap(
                _trim([centered(c * other, self.modulus.m) for c in self.coeffs]),
                self.modulus,
            )
        self._same(other)
        return _wrap(_raw_mul(self.coeffs, other.coeffs, self.modulus.m), self.modulus)

    __rmul__ = __mul__

    def __mod__(self, f: "Poly") -> "Poly":
        self._same(f)
        if not f.is_monic or f.degree < 1:
            raise NonMonicDivisor("reduction requires a monic divisor of degree >= 1")
        return _wrap(_raw_rem_monic(self.coeffs, f.coeffs, self.modulus.m), self.modulus)

    def divmod_unit(self, b: "Poly") -> tuple["Poly", "Poly"]:
        """Division by b; the leading coefficient of b must be a unit."""
        self._same(b)
        if b.is_zero:
            raise ZeroDivisionError("polynomial division by zero")
        q, r = _raw_divmod(self.coeffs, b.coeffs, self.modulus.m)
        return _wrap(q, self.modulus), _wrap(r, self.modulus)

    def derivative(self) -> "Poly":
        m = self.modulus.m
        return _wrap(
            _trim([centered(i * c, m) for i, c in enumerate(self.coeffs)][1:]),
            self.modulus,
        )

    def reduce_mod_p(self) -> "Poly":
        """Coefficient-wise reduction into F_p; result lives modulo (p, 1)."""
        pmod = Modulus(self.modulus.p, 1)
        return Poly(self.coeffs, pmod)

    def evaluate(self, x: int) -> int:
        m = self.modulus.m
        acc = 0
        for c in reversed(self.coeffs):
            acc = centered(acc * x + c, m)
        return acc

    def to_text(self) -> str:
        """Ascending comma-separated centered coefficients; zero is "0"."""
        if self.is_zero:
            return "0"
        return ",".join(str(c) for c in self.coeffs)

    @classmethod
    def from_text(cls, text: str, modulus: Modulus) -> "Poly":
        parts = text.strip()
        if parts == "0":
            return cls.zero(modulus)
        return cls((int(tok) for tok in parts.split(",")), modulus)

    def __eq__(self, other):
        return (
            isinstance(other, Poly)
            and self.coeffs == other.coeffs
            and self.modulus == other.modulus
        )

    def __hash__(self):
        return hash((self.coeffs, self.modulus))

    def __repr__(self):
        return f"{_pretty(self.coeffs)} (mod {self.modulus!r})"


def _wrap(raw: list[int], modulus: Modulus) -> Poly:
    p = Poly.__new__(Poly)
    p.coeffs = tuple(raw)
    p.modulus = modulus
    return p


def _pretty(coeffs: Sequence[int], var: str = "x") -> str:
    if not coeffs:
        return "0"
    terms = []
    for i in reversed(range(len(coeffs))):
        c = coeffs[i]
        if not c:
            continue
        if i == 0:
            body = str(abs(c))
        else:
            mag = "" if abs(c) == 1 else str(abs(c))
            body = f"{mag}{var}" if i == 1 else f"{mag}{var}^{i}"
        if not terms:
            terms.append(body if c > 0 else f"-{body}")
        else:
            terms.append(f"+ {body}" if c > 0 else f"- {body}")
    return " ".join(terms)


def _prime_divisors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def _fp_gcd(a: Poly, b: Poly) -> Poly:
    """Monic gcd over F_p."""
    while not b.is_zero:
        a, b = b, a.divmod_unit(b)[1]
    if a.is_zero or a.is_monic:
        return a
    return a * invmod(a.leading, a.modulus.m)


def _fp_xgcd(a: Poly, b: Poly) -> tuple[Poly, Poly, Poly]:
    """Extended Euclid over F_p: (g, u, v) with u*a + v*b = g."""
    zero, one = Poly.zero(a.modulus), Poly.constant(1, a.modulus)
    r0, r1 = a, b
    u0, u1 = one, zero
    v0, v1 = zero, one
    while not r1.is_zero:
        q, r = r0.divmod_unit(r1)
        r0, r1 = r1, r
        u0, u1 = u1, u0 - q * u1
        v0, v1 = v1, v0 - q * v1
    return r0, u0, v0


def _fp_powmod(base: Poly, e: int, mod: Poly) -> Poly:
    result = Poly.constant(1, base.modulus)
    base = base % mod
    while e:
        if e & 1:
            result = (result * base) % mod
        base = (base * base) % mod
        e >>= 1
    return result


def is_irreducible_mod_p(f: Poly) -> bool:
    """Whether the reduction of f modulo p is irreducible over F_p.

    Uses the splitting-field criterion: f of degree n is irreducible
    iff x^(p^n) = x mod f and gcd(x^(p^(n/q)) - x, f) = 1 for every
    prime q dividing n.
    """
    if not f.is_monic or f.degree < 1:
        raise ValueError("irreducibility test requires a monic polynomial of degree >= 1")
    fbar = f.reduce_mod_p()
    p = fbar.modulus.p
    n = fbar.degree
    if n == 1:
        return True
    t = Poly.x(fbar.modulus)
    for q in _prime_divisors(n):
        h = _fp_powmod(t, p ** (n // q), fbar) - t
        if _fp_gcd(fbar, h).degree != 0:
            return False
    return _fp_powmod(t, p**n, fbar) == t


def random_monic_irreducible(modulus: Modulus, n: int, rng: random.Random) -> Poly:
    """Monic degree-n polynomial over Z/p^sZ, irreducible modulo p.

    Non-leading coefficients are uniform over the centered residue
    set; rejection runs until the mod-p reduction is irreducible
    (about n trials on average).
    """
    if n < 1:
        raise ValueError("degree must be >= 1")
    m = modulus.m
    while True:
        f = Poly([rng.randrange(m) for _ in range(n)] + [1], modulus)
        if is_irreducible_mod_p(f):
            return f
