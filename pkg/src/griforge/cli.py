"""Command-line front end and the text serialization it speaks.

Files are UTF-8, one `key: value` field per line after a version
header, with polynomials rendered as ascending comma-separated
centered coefficients. Secret material always lives under keys
prefixed `secret.`, so public exports can be checked mechanically.

Exit codes: 0 success, 2 usage error, 3 validation error, 4 internal
invariant breach.
"""

import argparse
import os
import random
import sys
from dataclasses import dataclass
from fractions import Fraction

from .crt import CompositeCtx, CompositePoly, crt_combine_polys
from .errors import GriforgeError, InvariantBreach, ValidationError
from .gri import (
    GriInstance,
    GriParams,
    GriSecret,
    instance_from_iso,
    oracle_strategy,
    random_guess_strategy,
    run_distinguisher_experiment,
)
from .gring import RingCtx, RingElem, eval_poly, iso_from_phi_x
from .lattice import AttackReport, render_report, run_attack
from .poly import Poly, random_monic_irreducible
from .zmod import Modulus

FORMAT_HEADER = "griforge 1"
SEED_ENV = "GRIFORGE_SEED"


# ---------------------------------------------------------------------------
# Generic field file reader/writer


def _render(kind: str, fields: list[tuple[str, str]]) -> str:
    lines = [FORMAT_HEADER, f"kind: {kind}"]
    lines += [f"{key}: {value}" for key, value in fields]
    return "\n".join(lines) + "\n"


def _parse_fields(text: str) -> tuple[str, dict[str, str]]:
    lines = text.splitlines()
    if not lines or lines[0].strip() != FORMAT_HEADER:
        raise ValidationError(f"missing or unknown version header, expected {FORMAT_HEADER!r}")
    fields: dict[str, str] = {}
    for line in lines[1:]:
        if not line.strip():
            continue
        if ": " not in line:
            raise ValidationError(f"malformed line {line!r}")
        key, value = line.split(": ", 1)
        if key in fields:
            raise ValidationError(f"duplicate field {key!r}")
        fields[key] = value.strip()
    if "kind" not in fields:
        raise ValidationError("missing 'kind' field")
    return fields.pop("kind"), fields


def _take_int(fields: dict[str, str], key: str) -> int:
    if key not in fields:
        raise ValidationError(f"missing field {key!r}")
    try:
        return int(fields.pop(key))
    except ValueError:
        raise ValidationError(f"field {key!r} is not an integer") from None


def _take_opt_int(fields: dict[str, str], key: str) -> int | None:
    if key not in fields:
        return None
    return _take_int({key: fields.pop(key)}, key)


def _take_poly(fields: dict[str, str], key: str, modulus: Modulus) -> Poly:
    if key not in fields:
        raise ValidationError(f"missing field {key!r}")
    try:
        return Poly.from_text(fields.pop(key), modulus)
    except ValueError:
        raise ValidationError(f"field {key!r} is not a polynomial") from None


def _reject_leftovers(fields: dict[str, str]):
    if fields:
        raise ValidationError(f"unknown fields: {', '.join(sorted(fields))}")


# ---------------------------------------------------------------------------
# Parameter files


@dataclass
class ParamData:
    p: int
    s: int
    n: int
    seed: int | None
    beta: int | None
    k: int | None
    F: Poly
    f: Poly | None
    phi_x: Poly | None


def serialize_params(data: ParamData) -> str:
    fields = [("p", str(data.p)), ("s", str(data.s)), ("n", str(data.n))]
    if data.seed is not None:
        fields.append(("seed", str(data.seed)))
    if data.beta is not None:
        fields.append(("beta", str(data.beta)))
    if data.k is not None:
        fields.append(("k", str(data.k)))
    fields.append(("F", data.F.to_text()))
    if data.f is not None:
        fields.append(("secret.f", data.f.to_text()))
    if data.phi_x is not None:
        fields.append(("secret.phi_x", data.phi_x.to_text()))
    return _render("params", fields)


def load_params(text: str) -> ParamData:
    kind, fields = _parse_fields(text)
    if kind != "params":
        raise ValidationError(f"expected a params file, got kind {kind!r}")
    p = _take_int(fields, "p")
    s = _take_int(fields, "s")
    n = _take_int(fields, "n")
    try:
        modulus = Modulus(p, s)
    except ValueError as exc:
        raise ValidationError(str(exc)) from None
    seed = _take_opt_int(fields, "seed")
    beta = _take_opt_int(fields, "beta")
    k = _take_opt_int(fields, "k")
    big_f = _take_poly(fields, "F", modulus)
    f = _take_poly(fields, "secret.f", modulus) if "secret.f" in fields else None
    phi_x = _take_poly(fields, "secret.phi_x", modulus) if "secret.phi_x" in fields else None
    _reject_leftovers(fields)
    _check_defining(big_f, n, "F")
    if f is not None:
        _check_defining(f, n, "secret.f")
    if phi_x is not None:
        if f is None:
            raise ValidationError("secret.phi_x requires secret.f")
        try:
            iso_from_phi_x(RingCtx(f), RingCtx(big_f), RingCtx(big_f).from_poly(phi_x))
        except GriforgeError as exc:
            raise ValidationError(f"invalid phi_x: {exc}") from None
    return ParamData(p, s, n, seed, beta, k, big_f, f, phi_x)


def _check_defining(poly: Poly, n: int, label: str):
    if poly.degree != n:
        raise ValidationError(f"{label} must have degree {n}")
    try:
        RingCtx(poly)
    except (GriforgeError, ValueError) as exc:
        raise ValidationError(f"{label}: {exc}") from None


# ---------------------------------------------------------------------------
# Instance files


def serialize_instance(inst: GriInstance, include_secret: bool = True) -> str:
    params = inst.params
    fields = [
        ("p", str(params.p)),
        ("s", str(params.s)),
        ("n", str(params.n)),
        ("beta", str(params.beta)),
        ("k", str(params.k)),
        ("F", inst.dst.f.to_text()),
    ]
    for i, image in enumerate(inst.images, start=1):
        fields.append((f"A.{i}", image.rep.to_text()))
    if include_secret and inst.secret is not None:
        fields.append(("secret.f", inst.secret.src.f.to_text()))
        fields.append(("secret.phi_x", inst.secret.iso.phi_x.rep.to_text()))
        for i, pre in enumerate(inst.secret.preimages, start=1):
            fields.append((f"secret.a.{i}", pre.rep.to_text()))
    return _render("instance", fields)


def load_instance(text: str) -> GriInstance:
    kind, fields = _parse_fields(text)
    if kind != "instance":
        raise ValidationError(f"expected an instance file, got kind {kind!r}")
    p = _take_int(fields, "p")
    s = _take_int(fields, "s")
    n = _take_int(fields, "n")
    beta = _take_int(fields, "beta")
    k = _take_int(fields, "k")
    try:
        modulus = Modulus(p, s)
    except ValueError as exc:
        raise ValidationError(str(exc)) from None
    if beta < 1 or k < 1:
        raise ValidationError("beta and k must be >= 1")
    big_f = _take_poly(fields, "F", modulus)
    _check_defining(big_f, n, "F")
    dst = RingCtx(big_f)
    images = tuple(
        _take_elem(fields, f"A.{i}", dst) for i in range(1, k + 1)
    )
    secret = None
    if "secret.f" in fields:
        f = _take_poly(fields, "secret.f", modulus)
        _check_defining(f, n, "secret.f")
        src = RingCtx(f)
        phi_poly = _take_poly(fields, "secret.phi_x", modulus)
        try:
            iso = iso_from_phi_x(src, dst, dst.from_poly(phi_poly))
        except GriforgeError as exc:
            raise ValidationError(f"invalid phi_x: {exc}") from None
        preimages = tuple(
            _take_elem(fields, f"secret.a.{i}", src) for i in range(1, k + 1)
        )
        secret = GriSecret(src, iso, preimages)
    _reject_leftovers(fields)
    return GriInstance(GriParams(p, s, n, beta, k), dst, images, secret)


def _take_elem(fields: dict[str, str], key: str, ctx: RingCtx) -> RingElem:
    poly = _take_poly(fields, key, ctx.modulus)
    if poly.degree >= ctx.n:
        raise ValidationError(f"field {key!r} has degree >= n")
    return RingElem(poly, ctx)


# ---------------------------------------------------------------------------
# Composite files


def serialize_composite(
    public: CompositeCtx, secret_parts: list[Poly] | None, secret_f: CompositePoly | None
) -> str:
    fields = [
        ("n", str(public.n)),
        ("m", str(public.m)),
        ("components", str(len(public.components))),
    ]
    for i, comp in enumerate(public.components, start=1):
        fields.append((f"component.{i}.p", str(comp.p)))
        fields.append((f"component.{i}.s", str(comp.s)))
        fields.append((f"component.{i}.F", comp.f.to_text()))
    fields.append(("F", public.f.to_text()))
    if secret_parts is not None and secret_f is not None:
        for i, part in enumerate(secret_parts, start=1):
            fields.append((f"secret.component.{i}.f", part.to_text()))
        fields.append(("secret.f", secret_f.to_text()))
    return _render("composite", fields)


def load_composite(text: str) -> tuple[CompositeCtx, CompositeCtx | None]:
    """Returns the public composite context and, when present, the secret one.

    The combined polynomials are recomputed from the stored components
    and must agree with the stored combination.
    """
    kind, fields = _parse_fields(text)
    if kind != "composite":
        raise ValidationError(f"expected a composite file, got kind {kind!r}")
    n = _take_int(fields, "n")
    m = _take_int(fields, "m")
    count = _take_int(fields, "components")
    comps = []
    secret_polys = []
    for i in range(1, count + 1):
        p = _take_int(fields, f"component.{i}.p")
        s = _take_int(fields, f"component.{i}.s")
        try:
            modulus = Modulus(p, s)
        except ValueError as exc:
            raise ValidationError(str(exc)) from None
        big_f = _take_poly(fields, f"component.{i}.F", modulus)
        _check_defining(big_f, n, f"component.{i}.F")
        comps.append(RingCtx(big_f))
        if f"secret.component.{i}.f" in fields:
            f = _take_poly(fields, f"secret.component.{i}.f", modulus)
            _check_defining(f, n, f"secret.component.{i}.f")
            secret_polys.append(f)
    combined_text = fields.pop("F", None)
    if combined_text is None:
        raise ValidationError("missing field 'F'")
    secret_combined_text = fields.pop("secret.f", None)
    _reject_leftovers(fields)
    try:
        public = CompositeCtx.from_components(comps)
    except GriforgeError as exc:
        raise ValidationError(str(exc)) from None
    if public.m != m or public.f != CompositePoly.from_text(combined_text, m):
        raise ValidationError("stored combined polynomial does not match its components")
    secret = None
    if secret_polys:
        if len(secret_polys) != count or secret_combined_text is None:
            raise ValidationError("incomplete secret component set")
        secret = CompositeCtx.from_components([RingCtx(f) for f in secret_polys])
        if secret.f != CompositePoly.from_text(secret_combined_text, m):
            raise ValidationError("stored combined secret does not match its components")
    elif secret_combined_text is not None:
        raise ValidationError("secret.f present without secret components")
    return public, secret


# ---------------------------------------------------------------------------
# Attack report files


def serialize_attack_report(report: AttackReport) -> str:
    fields = [
        ("p", str(report.p)),
        ("s", str(report.s)),
        ("n", str(report.n)),
        ("k", str(report.k)),
        ("beta", str(report.beta)),
        ("delta", str(report.delta)),
        ("gh_factor", repr(report.gh_factor)),
        ("gaussian_heuristic", repr(report.gaussian_heuristic)),
        ("shortness_ratio", repr(report.shortness_ratio)),
    ]
    for i, row in enumerate(report.basis, start=1):
        fields.append((f"basis.{i}", ",".join(str(x) for x in row)))
    fields.append(("candidates", str(len(report.candidates))))
    for i, cand in enumerate(report.candidates, start=1):
        fields.append((f"candidate.{i}", ",".join(str(x) for x in cand.vector)))
        fields.append((f"candidate.{i}.norm_sq", str(cand.norm_sq)))
        fields.append((f"candidate.{i}.in_lattice", "true" if cand.in_lattice else "false"))
        if cand.combo is not None:
            fields.append((f"candidate.{i}.combo", ",".join(str(x) for x in cand.combo)))
    fields.append(("recovery_rank", str(report.recovery_rank)))
    fields.append(("full_recovery", "true" if report.full_recovery else "false"))
    return _render("attack-report", fields)


# ---------------------------------------------------------------------------
# Commands


def _resolve_seed(args) -> int | None:
    if args.seed is not None:
        return args.seed
    env = os.environ.get(SEED_ENV)
    if env is not None:
        try:
            return int(env)
        except ValueError:
            raise ValidationError(f"{SEED_ENV} must be an integer") from None
    return None


def _rng(args) -> random.Random:
    return random.Random(_resolve_seed(args))


def _read_in(path: str) -> str:
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise ValidationError(f"cannot read {path}: {exc.strerror}") from None


def _write_out(path: str, text: str):
    if path == "-":
        sys.stdout.write(text)
        return
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(text)


def cmd_gen_params(args) -> int:
    if args.n < 1:
        raise ValidationError("n must be >= 1")
    try:
        modulus = Modulus(args.p, args.s)
    except ValueError as exc:
        raise ValidationError(str(exc)) from None
    rng = _rng(args)
    f = random_monic_irreducible(modulus, args.n, rng)
    big_f = random_monic_irreducible(modulus, args.n, rng)
    data = ParamData(args.p, args.s, args.n, _resolve_seed(args), args.beta, args.k, big_f, f, None)
    _write_out(args.out, serialize_params(data))
    return 0


def cmd_make_iso(args) -> int:
    data = load_params(_read_in(args.infile))
    if data.f is None:
        raise ValidationError("make-iso needs a params file carrying secret.f")
    rng = _rng(args)
    src, dst = RingCtx(data.f), RingCtx(data.F)
    from .gring import build_ring_iso

    iso = build_ring_iso(src, dst, rng)
    if not eval_poly(src.f, iso.phi_x).is_zero:
        raise InvariantBreach("constructed phi_x is not a root of f")
    data.phi_x = iso.phi_x.rep
    _write_out(args.out, serialize_params(data))
    return 0


def _instance_pieces(data: ParamData, args):
    beta = args.beta if args.beta is not None else data.beta
    k = args.k if args.k is not None else data.k
    if beta is None or k is None:
        raise ValidationError("beta and k must come from flags or the params file")
    if data.f is None or data.phi_x is None:
        raise ValidationError("a params file with secret.f and secret.phi_x is required (run make-iso)")
    src, dst = RingCtx(data.f), RingCtx(data.F)
    iso = iso_from_phi_x(src, dst, dst.from_poly(data.phi_x))
    return iso, beta, k


def cmd_sample(args) -> int:
    data = load_params(_read_in(args.infile))
    iso, beta, k = _instance_pieces(data, args)
    inst = instance_from_iso(iso, beta, k, _rng(args))
    _write_out(args.out, serialize_instance(inst, include_secret=not args.public_only))
    return 0


def cmd_attack(args) -> int:
    inst = load_instance(_read_in(args.infile))
    try:
        delta = Fraction(args.delta)
    except (ValueError, ZeroDivisionError):
        raise ValidationError(f"cannot parse delta {args.delta!r}") from None
    report = run_attack(inst.public_only(), delta=delta, gh_factor=args.gh_factor)
    print(render_report(report))
    if args.out is not None:
        _write_out(args.out, serialize_attack_report(report))
    return 0


def cmd_distinguish(args) -> int:
    data = load_params(_read_in(args.infile))
    iso, beta, k = _instance_pieces(data, args)
    if args.trials < 1:
        raise ValidationError("trials must be >= 1")
    rng = _rng(args)
    inst = instance_from_iso(iso, beta, k, rng)
    if args.strategy == "random":
        strategy = random_guess_strategy(random.Random(rng.getrandbits(64)))
    else:
        strategy = oracle_strategy(inst.secret, beta)
    report = run_distinguisher_experiment(inst.params, strategy, args.trials, rng, instance=inst)
    print(
        f"strategy={args.strategy} trials={report.trials} successes={report.successes} "
        f"rate={report.rate:.4f} wilson95=[{report.wilson_low:.4f},{report.wilson_high:.4f}]"
    )
    return 0


def cmd_crt_combine(args) -> int:
    if len(args.infile) < 2:
        raise ValidationError("crt-combine needs at least two input files")
    datas = [load_params(_read_in(path)) for path in args.infile]
    public = CompositeCtx.from_components([RingCtx(d.F) for d in datas])
    secret_parts = None
    secret_f = None
    if all(d.f is not None for d in datas):
        secret_parts = [d.f for d in datas]
        secret_f = crt_combine_polys(secret_parts)
    _write_out(args.out, serialize_composite(public, secret_parts, secret_f))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="griforge",
        description="Galois ring isomorphism toolkit: parameters, isomorphisms, "
        "instances, lattice attacks, distinguisher experiments.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(sp, needs_in=False, needs_out=True):
        if needs_in:
            sp.add_argument("--in", dest="infile", required=True, help="input file")
        if needs_out:
            sp.add_argument("--out", default="-", help="output file (default stdout)")
        sp.add_argument("--seed", type=int, default=None, help=f"RNG seed (or ${SEED_ENV})")

    sp = sub.add_parser("gen-params", help="generate independent defining polynomials")
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--s", type=int, required=True)
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--beta", type=int, default=None)
    sp.add_argument("--k", type=int, default=None)
    add_common(sp)
    sp.set_defaults(func=cmd_gen_params)

    sp = sub.add_parser("make-iso", help="construct the secret isomorphism")
    add_common(sp, needs_in=True)
    sp.set_defaults(func=cmd_make_iso)

    sp = sub.add_parser("sample", help="sample short preimages and their public images")
    sp.add_argument("--beta", type=int, default=None)
    sp.add_argument("--k", type=int, default=None)
    sp.add_argument("--public-only", action="store_true", help="strip secret fields")
    add_common(sp, needs_in=True)
    sp.set_defaults(func=cmd_sample)

    sp = sub.add_parser("attack", help="run the lattice attack on a public instance")
    sp.add_argument("--delta", default="0.99", help="LLL parameter in (1/4, 1)")
    sp.add_argument("--gh-factor", dest="gh_factor", type=float, default=0.8)
    sp.add_argument("--in", dest="infile", required=True, help="instance file")
    sp.add_argument("--out", default=None, help="optional report file")
    sp.add_argument("--seed", type=int, default=None, help="unused, accepted for uniformity")
    sp.set_defaults(func=cmd_attack)

    sp = sub.add_parser("distinguish", help="measure a distinguisher's success rate")
    sp.add_argument("--trials", type=int, required=True)
    sp.add_argument("--strategy", choices=("random", "oracle"), default="random")
    sp.add_argument("--beta", type=int, default=None)
    sp.add_argument("--k", type=int, default=None)
    add_common(sp, needs_in=True, needs_out=False)
    sp.set_defaults(func=cmd_distinguish)

    sp = sub.add_parser("crt-combine", help="combine params files into a composite ring")
    sp.add_argument("--in", dest="infile", action="append", required=True, help="repeatable")
    sp.add_argument("--out", default="-")
    sp.add_argument("--seed", type=int, default=None, help="unused, accepted for uniformity")
    sp.set_defaults(func=cmd_crt_combine)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except InvariantBreach as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 4
    except (GriforgeError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
