"""Galois ring GR(p^s, n) arithmetic, Newton lifting of simple roots,
and ring isomorphism construction.

A ring presentation is (Z/p^sZ)[x]/(f) with f monic of degree n and
irreducible modulo p. The reduction map onto the residue field
F_p[x]/(fbar) has kernel (p); an element is a unit exactly when its
reduction is nonzero.
"""

import random
from dataclasses import dataclass
from functools import cached_property
from itertools import product

from . import linalg
from .errors import (
    CtxMismatch,
    InvalidIsomorphism,
    ModulusMismatch,
    NotARootModP,
    NotASimpleRoot,
    NotAUnit,
    ParamMismatch,
)
from .ffield import FieldCtx, FieldElem, find_root
from .poly import Poly
from .zmod import Modulus


@dataclass(frozen=True)
class RingCtx:
    """A presentation (Z/p^sZ)[x]/(f) of GR(p^s, n)."""

    f: Poly

    def __post_init__(self):
        if not self.f.is_monic or self.f.degree < 1:
            raise ValueError("defining polynomial must be monic of degree >= 1")
        self.residue_field  # construction checks irreducibility mod p

    @cached_property
    def fbar(self) -> Poly:
        return self.f.reduce_mod_p()

    @cached_property
    def residue_field(self) -> FieldCtx:
        return FieldCtx(self.fbar)

    @property
    def modulus(self) -> Modulus:
        return self.f.modulus

    @property
    def p(self) -> int:
        return self.modulus.p

    @property
    def s(self) -> int:
        return self.modulus.s

    @property
    def m(self) -> int:
        return self.modulus.m

    @property
    def n(self) -> int:
        return self.f.degree

    def elem(self, coeffs) -> "RingElem":
        return self.from_poly(Poly(coeffs, self.modulus))

    def from_poly(self, rep: Poly) -> "RingElem":
        if rep.degree >= self.n:
            rep = rep % self.f
        return RingElem(rep, self)

    def zero(self) -> "RingElem":
        return RingElem(Poly.zero(self.modulus), self)

    def one(self) -> "RingElem":
        return RingElem(Poly.constant(1, self.modulus), self)

    def gen_class(self) -> "RingElem":
        """The class of the quotient variable (a constant when n = 1)."""
        if self.n == 1:
            return self.elem([-self.f.coeffs[0]])
        return RingElem(Poly.x(self.modulus), self)

    def elements(self):
        """All p^(s*n) elements; intended for small brute-force checks."""
        for coeffs in product(range(self.m), repeat=self.n):
            yield self.elem(coeffs)

    def random_elem(self, rng: random.Random) -> "RingElem":
        return self.elem([rng.randrange(self.m) for _ in range(self.n)])


@dataclass(frozen=True)
class RingElem:
    """An element of GR(p^s, n), represented by a polynomial of degree < n."""

    rep: Poly
    ctx: RingCtx

    def __post_init__(self):
        if self.rep.modulus != self.ctx.modulus or self.rep.degree >= self.ctx.n:
            raise ValueError("representative out of canonical range")

    def _same(self, other: "RingElem"):
        if self.ctx != other.ctx:
            raise CtxMismatch("elements of different rings")

    @property
    def is_zero(self) -> bool:
        return self.rep.is_zero

    def coeff_vector(self) -> tuple[int, ...]:
        cs = self.rep.coeffs
        return cs + (0,) * (self.ctx.n - len(cs))

    def sup_norm(self) -> int:
        return max((abs(c) for c in self.rep.coeffs), default=0)

    def __add__(self, other):
        self._same(other)
        return RingElem(self.rep + other.rep, self.ctx)

    def __sub__(self, other):
        self._same(other)
        return RingElem(self.rep - other.rep, self.ctx)

    def __neg__(self):
        return RingElem(-self.rep, self.ctx)

    def __mul__(self, other):
        self._same(other)
        return RingElem((self.rep * other.rep) % self.ctx.f, self.ctx)

    def pow(self, e: int) -> "RingElem":
        if e < 0:
            return self.inv().pow(-e)
        result = self.ctx.one()
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def reduce_mod_p(self) -> FieldElem:
        """Image under the reduction map onto the residue field."""
        return FieldElem(self.rep.reduce_mod_p(), self.ctx.residue_field)

    def is_unit(self) -> bool:
        return not self.reduce_mod_p().is_zero

    def inv(self) -> "RingElem":
        """Inverse of a unit, by Newton iteration on the residue inverse.

        z -> z(2 - az) doubles the p-adic precision of an approximate
        inverse, so ceil(log2 s) steps after the residue-field inverse
        give the exact inverse modulo p^s.
        """
        red = self.reduce_mod_p()
        if red.is_zero:
            raise NotAUnit("element lies in the maximal ideal (p)")
        z = self.ctx.elem(red.inv().rep.coeffs)
        if self.ctx.s > 1:
            two = self.ctx.elem([2])
            for _ in range((self.ctx.s - 1).bit_length()):
                z = z * (two - self * z)
        assert (self * z) == self.ctx.one()
        return z

    def __repr__(self):
        return f"{self.rep!r} in GR({self.ctx.modulus!r}, {self.ctx.n})"


def eval_poly(g: Poly, a: RingElem) -> RingElem:
    """Horner evaluation of g over Z/p^sZ at a ring element."""
    if g.modulus != a.ctx.modulus:
        raise ModulusMismatch("polynomial and element use different moduli")
    acc = a.ctx.zero()
    for c in reversed(g.coeffs):
        acc = acc * a + a.ctx.elem([c])
    return acc


def _in_ideal(a: RingElem, power: int) -> bool:
    """Membership of a in the ideal (p^power); (p^j) = (0) for j >= s."""
    e = a.ctx.p ** min(power, a.ctx.s)
    return all(c % e == 0 for c in a.rep.coeffs)


def hensel_iterates(g: Poly, alpha0: RingElem, ctx: RingCtx) -> list[RingElem]:
    """The lifting sequence beta_0 .. beta_{s-1} for a simple root.

    beta_0 is alpha0 and beta_{i+1} = beta_i - g'(beta_i)^{-1} g(beta_i);
    the returned list always has exactly s entries, and g(beta_i) lies
    in (p^{i+1}) at every step (checked), so the final entry is an
    exact root.
    """
    if alpha0.ctx != ctx:
        raise CtxMismatch("start value does not live in the target ring")
    val = eval_poly(g, alpha0)
    if not val.reduce_mod_p().is_zero:
        raise NotARootModP("g(alpha0) is not divisible by p")
    gprime = g.derivative()
    if not eval_poly(gprime, alpha0).is_unit():
        raise NotASimpleRoot("g'(alpha0) is not a unit")
    beta = alpha0
    betas = [beta]
    assert _in_ideal(val, 1)
    for i in range(ctx.s - 1):
        beta = beta - eval_poly(gprime, beta).inv() * val
        val = eval_poly(g, beta)
        assert _in_ideal(val, i + 2)
        betas.append(beta)
    assert betas[-1].reduce_mod_p() == alpha0.reduce_mod_p()
    return betas


def hensel_lift(g: Poly, alpha0: RingElem, ctx: RingCtx) -> RingElem:
    """The unique exact root of g reducing to the same residue as alpha0."""
    return hensel_iterates(g, alpha0, ctx)[-1]


@dataclass(frozen=True)
class Isomorphism:
    """A ring isomorphism, pinned down by the image of the variable x.

    fwd row i is the coefficient vector of phi_x^i in the destination
    presentation, so images are coefficient vectors times fwd; bwd is
    the inverse matrix over Z/p^sZ.
    """

    src: RingCtx
    dst: RingCtx
    phi_x: RingElem
    fwd: tuple[tuple[int, ...], ...]
    bwd: tuple[tuple[int, ...], ...]

    def apply(self, a: RingElem) -> RingElem:
        if a.ctx != self.src:
            raise CtxMismatch("element is not in the source ring")
        return self.dst.elem(linalg.vec_mat(a.coeff_vector(), self.fwd, self.dst.m))

    def apply_inverse(self, a: RingElem) -> RingElem:
        if a.ctx != self.dst:
            raise CtxMismatch("element is not in the destination ring")
        return self.src.elem(linalg.vec_mat(a.coeff_vector(), self.bwd, self.src.m))


def _check_params(src: RingCtx, dst: RingCtx):
    if (src.p, src.s, src.n) != (dst.p, dst.s, dst.n):
        raise ParamMismatch(
            f"({src.p},{src.s},{src.n}) vs ({dst.p},{dst.s},{dst.n})"
        )


def iso_from_phi_x(src: RingCtx, dst: RingCtx, phi_x: RingElem) -> Isomorphism:
    """Rebuild the full isomorphism from the image of x.

    The matrices are determined by phi_x, so serialized isomorphisms
    only need to store it; a stored value that is not a root of the
    source polynomial is rejected.
    """
    _check_params(src, dst)
    if phi_x.ctx != dst:
        raise CtxMismatch("phi_x does not live in the destination ring")
    if not eval_poly(src.f, phi_x).is_zero:
        raise InvalidIsomorphism("phi_x is not a root of the source polynomial")
    rows = []
    acc = dst.one()
    for _ in range(src.n):
        rows.append(list(acc.coeff_vector()))
        acc = acc * phi_x
    bwd = linalg.mat_inv_mod(rows, dst.m, dst.p)
    return Isomorphism(
        src,
        dst,
        phi_x,
        tuple(tuple(r) for r in rows),
        tuple(tuple(r) for r in bwd),
    )


def ring_iso_from_field_root(src: RingCtx, dst: RingCtx, root_bar: FieldElem) -> Isomorphism:
    """Lift a residue-field root choice to the unique ring isomorphism over it."""
    _check_params(src, dst)
    if root_bar.ctx != dst.residue_field:
        raise CtxMismatch("root does not live in the destination residue field")
    alpha = dst.elem(root_bar.rep.coeffs)  # trivial lift, same centered values
    phi_x = hensel_lift(src.f, alpha, dst)
    return iso_from_phi_x(src, dst, phi_x)


def build_ring_iso(src: RingCtx, dst: RingCtx, rng: random.Random) -> Isomorphism:
    """Construct an isomorphism between two GR(p^s, n) presentations.

    Works through the residue fields: find a root of fbar in the
    destination residue field, lift it to an exact root of f, and read
    the matrices off the powers of the lifted image.
    """
    _check_params(src, dst)
    root_bar = find_root(src.fbar, dst.residue_field, rng)
    return ring_iso_from_field_root(src, dst, root_bar)
