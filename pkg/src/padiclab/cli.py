"""The ``padiclab`` command: every verification campaign behind one report schema.

Exit status is 0 iff every requested check passes, 1 if a check fails and
2 if a precondition, budget or input error stops the run.
"""

from __future__ import annotations

import argparse
import sys
import time
from fractions import Fraction

from . import cache
from .errors import PadicLabError
from .report import Report, RunReport


def _curve_from_args(args):
    from .weierstrass import CURVE_32, CurveModel, load_curve

    if getattr(args, "curve", None):
        return load_curve(args.curve)
    if args.g2 is not None or args.g3 is not None:
        if args.g2 is None or args.g3 is None:
            raise PadicLabError("--g2 and --g3 go together")
        return CurveModel(Fraction(args.g2), Fraction(args.g3))
    return CURVE_32


def cmd_gamma32(args) -> RunReport:
    from .acceptance import criterion_1

    if args.p % 4 != 3:
        raise PadicLabError(f"p = {args.p} is not 3 mod 4; the level-32 constant needs p = 3 mod 4")
    K = args.prec if args.prec is not None else (2 if args.p <= 7 else 1)
    run = RunReport("gamma32", {"p": args.p, "prec": K, "m_max": args.m_max})
    report, eps = criterion_1(((args.p, args.m_max, K),), {args.p: args.m_max})
    report.name = f"gamma32_p{args.p}"
    report.precision = K
    run.add(report)
    run.sign_ledger = {"epsilon": eps}
    return run


def cmd_mu(args) -> RunReport:
    from .eisenmod import is_supersingular, verify_mu_congruence
    from .fgl import solve_to_precision

    curve = _curve_from_args(args)
    run = RunReport("mu", {"curve": curve.label(), "p": args.p, "prec": args.prec})
    ss, witness = is_supersingular(curve, args.p)
    if not ss:
        raise PadicLabError(f"{curve.label()} is ordinary at {args.p}; mu is defined at supersingular primes")
    run.add(witness)
    sol = solve_to_precision(curve, args.p, args.prec)
    run.add(Report("dieudonne", sol.mu_p.is_unit(), sol.to_dict(), precision=sol.certified_precision))
    cong = verify_mu_congruence(curve, args.p)
    run.add(cong)
    run.sign_ledger = {"mu_congruence": cong.detail["sign"]}
    return run


def cmd_honda(args) -> RunReport:
    from .fgl import ec_formal_expansion, honda_check, honda_series
    from .modforms import builtin_32, load_eigenform

    curve = _curve_from_args(args)
    form = load_eigenform(args.form) if args.form else builtin_32(args.terms).eigenform()
    if form.truncation < args.terms:
        raise PadicLabError(f"eigenform known through n = {form.truncation}, need {args.terms}")
    run = RunReport("honda", {"curve": curve.label(), "form": args.form or "builtin 32", "terms": args.terms})
    log = ec_formal_expansion(curve, args.terms)
    series = honda_series(form, log, args.terms)
    for p in args.p:
        run.add(honda_check(form, log, p, args.terms, t_of_q=series))
    return run


def cmd_verify(args) -> RunReport:
    from .eisenmod import relative_primality_check
    from .weierstrass import verify_20zeta_identity, verify_wp_lift

    run = RunReport("verify", {"identity": args.identity, "terms": args.terms})
    if args.identity == "wp-lift":
        run.add(verify_wp_lift(args.terms))
    elif args.identity == "twenty-zeta":
        rep = verify_20zeta_identity(args.terms)
        run.add(rep)
        run.sign_ledger = {"sigma": rep.detail["sigma"]}
    else:
        for p in args.p or (5, 7, 11, 13):
            run.add(relative_primality_check(p))
    return run


def cmd_suite(args) -> RunReport:
    from .acceptance import criterion_10, run_acceptance

    if args.name == "acceptance":
        return run_acceptance(seed=args.seed, jobs=args.jobs)
    run = RunReport("suite properties", {"seed": args.seed})
    run.add(criterion_10(args.seed))
    return run


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="padiclab", description=__doc__.splitlines()[0])
    parser.add_argument("--cache-dir", help="series cache directory (default: $PADICLAB_CACHE)")
    parser.add_argument("--no-cache", action="store_true", help="disable the series cache")
    parser.add_argument("--jobs", type=int, default=1, help="worker processes for batteries")
    parser.add_argument("--seed", type=int, default=0, help="seed for randomized property checks")
    parser.add_argument("--json", action="store_true", help="print the JSON report instead of a table")
    sub = parser.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gamma32", help="the level-32 constant through four independent routes")
    g.add_argument("--p", type=int, required=True)
    g.add_argument("--prec", type=int, help="required digits (default 2, or 1 for p > 7)")
    g.add_argument("--m-max", type=int, default=1)
    g.set_defaults(func=cmd_gamma32)

    m = sub.add_parser("mu", help="Dieudonne coefficients at a supersingular prime")
    m.add_argument("--g2", type=Fraction)
    m.add_argument("--g3", type=Fraction)
    m.add_argument("--curve", help="curve file with g2/g3 or ainv lines")
    m.add_argument("--p", type=int, required=True)
    m.add_argument("--prec", type=int, default=1, help="digits of mu to certify")
    m.set_defaults(func=cmd_mu)

    h = sub.add_parser("honda", help="p-integrality of the inverse logarithm at the Eichler integral")
    h.add_argument("--curve")
    h.add_argument("--g2", type=Fraction)
    h.add_argument("--g3", type=Fraction)
    h.add_argument("--form", help="eigenform file of 'n b(n)' lines")
    h.add_argument("--p", type=int, nargs="+", default=[3, 5, 7, 11, 13])
    h.add_argument("--terms", type=int, default=200)
    h.set_defaults(func=cmd_honda)

    v = sub.add_parser("verify", help="exact q-series identities")
    v.add_argument("identity", choices=["wp-lift", "twenty-zeta", "relative-primality"])
    v.add_argument("--terms", type=int, default=200)
    v.add_argument("--p", type=int, nargs="+")
    v.set_defaults(func=cmd_verify)

    s = sub.add_parser("suite", help="check batteries")
    s.add_argument("name", choices=["acceptance", "properties"])
    s.set_defaults(func=cmd_suite)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.no_cache:
        cache.configure(None, enabled=False)
    elif args.cache_dir:
        cache.configure(args.cache_dir)
    else:
        cache.configure()
    start = time.perf_counter()
    try:
        run = args.func(args)
    except PadicLabError as exc:
        print(f"padiclab: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"padiclab: precondition failed: {exc}", file=sys.stderr)
        return 2
    run.timing = {"seconds": round(time.perf_counter() - start, 3)}
    print(run.to_json() if args.json else run.table())
    return 0 if run.passed else 1


if __name__ == "__main__":
    sys.exit(main())
