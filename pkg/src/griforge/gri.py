"""GRI problem instances: sampling short elements, public images,
decisional challenges, and the distinguisher experiment harness.

An instance is a pair of secretly isomorphic ring presentations
together with the public images of k short source elements. The
decisional game presents one image of a short element next to one
uniform element and asks which is which.
"""

import math
import random
from dataclasses import dataclass, replace
from typing import Callable, NamedTuple

from .errors import BetaOutOfRange, BetaTooLarge
from .gring import Isomorphism, RingCtx, RingElem, build_ring_iso, iso_from_phi_x
from .poly import random_monic_irreducible
from .zmod import Modulus


class GriParams(NamedTuple):
    p: int
    s: int
    n: int
    beta: int
    k: int


@dataclass(frozen=True)
class ChiBeta:
    """Uniform sampler of ring elements with coefficients in {-beta..beta}."""

    beta: int
    ctx: RingCtx

    def __post_init__(self):
        if self.beta < 1 or 2 * self.beta >= self.ctx.m:
            raise BetaOutOfRange(f"need 1 <= beta < {self.ctx.m}/2, got {self.beta}")

    @property
    def n(self) -> int:
        return self.ctx.n

    @property
    def modulus(self) -> Modulus:
        return self.ctx.modulus

    def sample(self, rng: random.Random) -> RingElem:
        return self.ctx.elem([rng.randint(-self.beta, self.beta) for _ in range(self.n)])


def sample_chi(chi: ChiBeta, rng: random.Random) -> RingElem:
    return chi.sample(rng)


@dataclass(frozen=True)
class GriSecret:
    src: RingCtx
    iso: Isomorphism
    preimages: tuple[RingElem, ...]


@dataclass(frozen=True)
class GriInstance:
    params: GriParams
    dst: RingCtx
    images: tuple[RingElem, ...]
    secret: GriSecret | None

    def public_only(self) -> "GriInstance":
        return replace(self, secret=None) if self.secret is not None else self


def instance_from_iso(iso: Isomorphism, beta: int, k: int, rng: random.Random) -> GriInstance:
    """Sample k short preimages under a fixed isomorphism and publish their images."""
    if k < 1:
        raise ValueError("k must be >= 1")
    chi = ChiBeta(beta, iso.src)
    preimages = tuple(chi.sample(rng) for _ in range(k))
    images = tuple(iso.apply(a) for a in preimages)
    params = GriParams(iso.src.p, iso.src.s, iso.src.n, beta, k)
    return GriInstance(params, iso.dst, images, GriSecret(iso.src, iso, preimages))


def gen_instance(p: int, s: int, n: int, beta: int, k: int, rng: random.Random) -> GriInstance:
    """A fresh instance with independently drawn defining polynomials.

    Statistical independence of the two presentations is a property of
    the supplied randomness; callers wiring in their own polynomials
    must not derive one from the other.
    """
    mod = Modulus(p, s)
    f = random_monic_irreducible(mod, n, rng)
    big_f = random_monic_irreducible(mod, n, rng)
    iso = build_ring_iso(RingCtx(f), RingCtx(big_f), rng)
    return instance_from_iso(iso, beta, k, rng)


@dataclass(frozen=True)
class DecisionalChallenge:
    """A pair in the destination ring, exactly one being a short image.

    hidden_bit is the index of the image inside the pair; it is None
    in the public view handed to distinguishers.
    """

    instance: GriInstance
    pair: tuple[RingElem, RingElem]
    hidden_bit: int | None

    def public_view(self) -> "DecisionalChallenge":
        return DecisionalChallenge(self.instance.public_only(), self.pair, None)


def challenge_from_instance(inst: GriInstance, rng: random.Random) -> DecisionalChallenge:
    """A fresh decisional pair over an existing instance (needs the secret)."""
    if inst.secret is None:
        raise ValueError("challenge generation requires the instance secret")
    chi = ChiBeta(inst.params.beta, inst.secret.src)
    image = inst.secret.iso.apply(chi.sample(rng))
    noise = inst.dst.random_elem(rng)
    bit = rng.randrange(2)
    pair = (image, noise) if bit == 0 else (noise, image)
    return DecisionalChallenge(inst, pair, bit)


def gen_decisional(params: GriParams, rng: random.Random) -> DecisionalChallenge:
    """A fresh instance together with one decisional pair over it."""
    return challenge_from_instance(gen_instance(*params, rng), rng)


Strategy = Callable[[DecisionalChallenge], int]


def random_guess_strategy(rng: random.Random) -> Strategy:
    """Baseline: ignore the challenge, flip a coin."""
    return lambda challenge: rng.randrange(2)


def oracle_strategy(secret: GriSecret, beta: int) -> Strategy:
    """Cheating reference: pull both candidates back and test shortness.

    A uniform element pulls back to a uniform element, which lands in
    the box of sup-norm beta with probability ((2*beta+1)/p^s)^n, so
    at small beta this strategy is essentially always right.
    """

    def guess(challenge: DecisionalChallenge) -> int:
        for idx, cand in enumerate(challenge.pair):
            if secret.iso.apply_inverse(cand).sup_norm() <= beta:
                return idx
        return 0

    return guess


@dataclass(frozen=True)
class ExperimentReport:
    trials: int
    successes: int
    rate: float
    wilson_low: float
    wilson_high: float


def wilson_interval(successes: int, trials: int, z: float = 1.96) -> tuple[float, float]:
    """Wilson score interval for a binomial proportion."""
    phat = successes / trials
    denom = 1 + z * z / trials
    center = (phat + z * z / (2 * trials)) / denom
    half = z * math.sqrt(phat * (1 - phat) / trials + z * z / (4 * trials * trials)) / denom
    return max(0.0, center - half), min(1.0, center + half)


def run_distinguisher_experiment(
    params: GriParams,
    distinguisher: Strategy,
    trials: int,
    rng: random.Random,
    instance: GriInstance | None = None,
) -> ExperimentReport:
    """Empirical success rate of a distinguisher over fresh challenges.

    One instance is generated (or supplied) and fresh pairs are drawn
    per trial, each from a derived independent stream; the hidden bits
    are independent fair coins, so the report is order-insensitive and
    a blind guesser converges to 1/2.
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    inst = instance if instance is not None else gen_instance(*params, rng)
    if inst.params != GriParams(*params):
        raise ValueError("supplied instance does not match the parameters")
    successes = 0
    for _ in range(trials):
        stream = random.Random(rng.getrandbits(64))
        challenge = challenge_from_instance(inst, stream)
        if distinguisher(challenge.public_view()) == challenge.hidden_bit:
            successes += 1
    low, high = wilson_interval(successes, trials)
    return ExperimentReport(trials, successes, successes / trials, low, high)


def reduce_to_ffi(inst: GriInstance) -> GriInstance:
    """Reduce an instance modulo p, collapsing it to the s = 1 problem.

    Only meaning-preserving when beta < p/2: then every preimage
    coefficient already lies in (-p/2, p/2] and survives the reduction
    unchanged, so the reduced instance has the same secrets.
    """
    p = inst.params.p
    if 2 * inst.params.beta >= p:
        raise BetaTooLarge(f"beta={inst.params.beta} does not satisfy beta < {p}/2")
    dst_bar = RingCtx(inst.dst.f.reduce_mod_p())
    images = tuple(dst_bar.elem(a.rep.reduce_mod_p().coeffs) for a in inst.images)
    secret_bar = None
    if inst.secret is not None:
        src_bar = RingCtx(inst.secret.src.f.reduce_mod_p())
        phi_bar = dst_bar.elem(inst.secret.iso.phi_x.rep.reduce_mod_p().coeffs)
        iso_bar = iso_from_phi_x(src_bar, dst_bar, phi_bar)
        preimages = tuple(
            src_bar.elem(a.rep.reduce_mod_p().coeffs) for a in inst.secret.preimages
        )
        for before, after in zip(inst.secret.preimages, preimages):
            assert before.rep.coeffs == after.rep.coeffs
        secret_bar = GriSecret(src_bar, iso_bar, preimages)
    params = inst.params._replace(s=1)
    return GriInstance(params, dst_bar, images, secret_bar)
