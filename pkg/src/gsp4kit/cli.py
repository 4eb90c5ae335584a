"""Command-line entry point: one binary, five subcommands.

Exit codes: 0 success, 1 verification/data failure, 2 usage error.
Output is JSON on stdout (or a human-readable table with --table);
errors go to stderr as {"error": <class>, "message": <text>}.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import aschbacher, ff, gsp4core, induced, primes, screener
from .errors import (
    BadCongruence,
    Gsp4kitError,
    NotPrime,
    PrimeClash,
    ReducibleModulus,
    TooSmall,
    WrongCharacteristic,
)

USAGE_ERRORS = (
    NotPrime, PrimeClash, BadCongruence, TooSmall,
    ReducibleModulus, WrongCharacteristic,
)

DEFAULT_SEED = screener.DEFAULT_SEED


def _emit(payload, table_text=None, use_table=False):
    if use_table and table_text is not None:
        print(table_text)
    else:
        print(json.dumps(payload, indent=2, sort_keys=True))


def _error(exc):
    sys.stderr.write(json.dumps(
        {"error": type(exc).__name__, "message": str(exc)}) + "\n")


def _parse_field(text):
    """A prime power like '3', '9', or '3^2' -> FieldSpec."""
    if "^" in text:
        ell, r = (int(x) for x in text.split("^", 1))
        return ff.make_field(ell, r)
    n = int(text)
    factors = ff.factorize(n)
    if len(factors) != 1:
        raise NotPrime(f"--field must be a prime power, got {n}")
    (ell, r), = factors.items()
    return ff.make_field(ell, r)


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--table", action="store_true",
                        help="human-readable output instead of JSON")
    common.add_argument("--seed", type=int, default=DEFAULT_SEED,
                        help="seed for synthetic inputs")

    parser = argparse.ArgumentParser(prog="gsp4kit", parents=[common])
    sub = parser.add_subparsers(dest="command", required=True)

    pr = sub.add_parser("primes", parents=[common],
                        help="prime-parameter searches and verification")
    prsub = pr.add_subparsers(dest="mode", required=True)
    pp = prsub.add_parser("pair", parents=[common])
    pp.add_argument("--N", type=int, required=True)
    pq = prsub.add_parser("quad", parents=[common])
    pq.add_argument("--N", type=int, required=True)
    pq.add_argument("--k", type=int, default=1)
    pv = prsub.add_parser("verify", parents=[common])
    pv.add_argument("--cert", required=True, help="certificate JSON file")

    ind = sub.add_parser("induce", parents=[common],
                         help="build the maximally induced representation")
    ind.add_argument("--p", type=int, required=True)
    ind.add_argument("--q", type=int, required=True)
    ind.add_argument("--ell", type=int, required=True)
    ind.add_argument("--alpha", type=int, default=1,
                     help="twist scalar, as a field element index")

    cl = sub.add_parser("classify", parents=[common],
                        help="classify a matrix group inside GSp(4)")
    cl.add_argument("--field", required=True, help="prime power l^r")
    cl.add_argument("--generators",
                    help="generator JSON file; default: full Sp(4) transvections")
    cl.add_argument("--cap", type=int, default=gsp4core.DEFAULT_CLOSURE_CAP)

    sc = sub.add_parser("screen", parents=[common],
                        help="screen a compatible system for exceptional primes")
    sc.add_argument("--system", required=True,
                    help="system JSON file, or synthetic:{trivial,symm3,generic}")
    sc.add_argument("--ell-min", type=int, default=7)
    sc.add_argument("--ell-max", type=int, default=97)
    sc.add_argument("--disc-bound", type=int, default=screener.DEFAULT_DISC_BOUND)

    sz = sub.add_parser("suzuki", parents=[common],
                        help="Suzuki group order divisibility scan")
    sz.add_argument("--prime", type=int, required=True)
    sz.add_argument("--rmax", type=int, required=True)
    return parser


# -- subcommand bodies -------------------------------------------------------------

def _run_primes(args):
    if args.mode == "pair":
        cert = primes.search_pair(args.N)
        _emit(cert.to_json(), use_table=False)
        return 0
    if args.mode == "quad":
        cert = primes.search_quad(args.N, args.k)
        _emit(cert.to_json(), use_table=False)
        return 0
    with open(args.cert) as fh:
        cert = primes.certificate_from_json(json.load(fh))
    report = primes.verify_certificate(cert)
    if args.table:
        width = max(len(c["name"]) for c in report["conditions"])
        lines = [f"{c['name']:<{width}}  {'pass' if c['pass'] else 'FAIL'}  {c['detail']}"
                 for c in report["conditions"]]
        lines.append("overall: " + ("pass" if report["ok"] else "FAIL"))
        print("\n".join(lines))
    else:
        _emit(report)
    return 0 if report["ok"] else 1


def _run_induce(args):
    params = induced.validate_params(args.p, args.q, args.ell)
    rep = induced.build_induced(params, alpha=args.alpha)
    closure = gsp4core.close_subgroup(list(rep.generators()))
    hist = gsp4core.element_orders_histogram(closure)
    spec = rep.t.spec
    irr = induced.is_irreducible_module(spec, [g.entries for g in rep.generators()])
    mackey_ok, orbit = induced.check_mackey_irreducible(params)
    payload = {
        "p": args.p, "q": args.q, "ell": args.ell,
        "field": spec.to_json(),
        "order": closure.order,
        "element_orders": {str(k): v for k, v in sorted(hist.items())},
        "projective_order": gsp4core.projective_order(closure),
        "irreducible": irr,
        "mackey_regular": mackey_ok,
        "frobenius_orbit": orbit,
        "t": rep.t.to_json(),
        "F": rep.F.to_json(),
        "similitudes": [1, 1],
    }
    table = (
        f"induced ({args.p}, {args.q}, {args.ell}): order {closure.order}, "
        f"projective order {payload['projective_order']}, "
        f"irreducible: {irr}"
    )
    _emit(payload, table, args.table)
    return 0


def _run_classify(args):
    spec = _parse_field(args.field)
    if args.generators:
        file_spec, gens = gsp4core.load_generators(args.generators)
        if file_spec != spec:
            raise ReducibleModulus(
                f"--field {args.field} does not match the generator file field"
            )
    else:
        gens = gsp4core.sp4_transvection_generators(spec)
    closure = gsp4core.close_subgroup(gens, cap=args.cap)
    report = aschbacher.classify(closure)
    table = (
        f"group order {report.group_order}, projective order "
        f"{report.projective_order}\ncases: {', '.join(report.cases)}\n"
        f"large image: {report.large_image}"
    )
    _emit(report.to_json(), table, args.table)
    return 0


def _run_screen(args):
    if args.system.startswith("synthetic:"):
        kind = args.system.split(":", 1)[1]
        if kind == "trivial":
            system = screener.make_trivial_system()
        elif kind == "symm3":
            data = {p: (p % 7 - 3, p * p) for p in screener.primes_up_to(200)}
            system = screener.make_symm3_system(data, 1)
        elif kind == "generic":
            system = screener.make_generic_system(seed=args.seed)
        else:
            raise ValueError(f"unknown synthetic system {kind!r}")
    else:
        system = screener.ingest(args.system)
    report = screener.screen(system, args.ell_min, args.ell_max,
                             disc_bound=args.disc_bound)
    _emit(report.to_json(), report.table(), args.table)
    return 0


def _run_suzuki(args):
    divisible = aschbacher.suzuki_divisibility(args.prime, args.rmax)
    payload = {
        "prime": args.prime,
        "rmax": args.rmax,
        "divisible_r": divisible,
        "divisible_odd_r": [r for r in divisible if r % 2 == 1],
    }
    table = (f"orders 2^(2r)(2^(2r)+1)(2^r-1) divisible by {args.prime} "
             f"for r <= {args.rmax}: {divisible or 'none'}")
    _emit(payload, table, args.table)
    return 0


def run(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if exc.code is not None else 2
    try:
        if args.command == "primes":
            return _run_primes(args)
        if args.command == "induce":
            return _run_induce(args)
        if args.command == "classify":
            return _run_classify(args)
        if args.command == "screen":
            return _run_screen(args)
        if args.command == "suzuki":
            return _run_suzuki(args)
        return 2
    except USAGE_ERRORS as exc:
        _error(exc)
        return 2
    except (ValueError, OSError) as exc:
        _error(exc)
        return 2
    except Gsp4kitError as exc:
        _error(exc)
        return 1


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
