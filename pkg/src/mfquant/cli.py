"""mfq: build centralizers, invariants, MF generators and their quantization; verify."""
from __future__ import annotations

import argparse
import json
import os
import sys
from typing import List, Optional

from . import serialize as ser
from .checks import FAIL, Check, run_all
from .foundations import _join_signed
from .liealg import minimal_setup
from .mfshift import (Functional, RegularityError, chi_regular, independence_check,
                      mf_generators, random_regular_chi)
from .poisson import good_system_check, truncated_family
from .quantize import extract_Q, quantized_algebra

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _seed(args) -> int:
    if args.seed is not None:
        return args.seed
    env = os.environ.get("MFQ_SEED")
    if env is None:
        return 0
    try:
        return int(env)
    except ValueError:
        raise UsageError("MFQ_SEED must be an integer, got %r" % env)


def _n_range(n: int, lo: int = 2, hi: int = 5) -> int:
    if not lo <= n <= hi:
        raise UsageError("--n must be in %d..%d, got %d" % (lo, hi, n))
    return n


def _chi(args, setup) -> Functional:
    g = setup.ge
    src = args.chi
    if src == "zero":
        chi = Functional.zero(g)
    elif src == "random":
        chi = random_regular_chi(g, setup.ell, _seed(args))
    else:
        try:
            with open(src, encoding="utf-8") as fh:
                chi = ser.functional_from_data(json.load(fh), g)
        except (OSError, ValueError, KeyError) as exc:
            raise UsageError("cannot read functional from %s: %s" % (src, exc))
    if not args.allow_singular and not chi_regular(chi, g, setup.ell):
        raise UsageError("chi is not regular for %s (use --allow-singular to proceed)" % g.name)
    return chi


def _emit(args, text_lines: List[str], data) -> None:
    if args.format == "json":
        sys.stdout.write(ser.dumps(ser.to_data(data)) + "\n")
    else:
        sys.stdout.write("\n".join(text_lines) + "\n")


# commands --------------------------------------------------------------------

def cmd_centralizer(args) -> int:
    setup = minimal_setup(_n_range(args.n, 2, 8))
    g = setup.ge
    brackets = []
    lines = ["basis: " + " ".join(g.labels)]
    for i, j, val in g.nonzero_brackets():
        vals = {g.labels[k]: c for k, c in sorted(val.items())}
        brackets.append({"x": g.labels[i], "y": g.labels[j], "value": vals})
        rhs = _join_signed([(c, l) for l, c in vals.items()], "*")
        lines.append("[%s,%s] = %s" % (g.labels[i], g.labels[j], rhs))
    _emit(args, lines, {"n": args.n, "dim": g.dim, "basis": g.labels, "brackets": brackets})
    return EXIT_OK


def cmd_invariants(args) -> int:
    setup = minimal_setup(_n_range(args.n))
    fam = truncated_family(setup)
    ok = good_system_check(fam, setup.ge, setup.ell)
    lines = ["^eP_%d (degree %d) = %s" % (i, d, p) for i, (p, d) in
             enumerate(zip(fam.polys, fam.degrees), start=1)]
    lines.append("good system: %s" % ("yes" if ok else "no"))
    _emit(args, lines, {"n": args.n, "degrees": fam.degrees, "invariants": fam.polys,
                        "good_system": ok})
    return EXIT_OK if ok else EXIT_FAIL


def cmd_mf(args) -> int:
    setup = minimal_setup(_n_range(args.n))
    chi = _chi(args, setup)
    mf = mf_generators(truncated_family(setup), chi, setup.ell, allow_singular=args.allow_singular)
    indep = independence_check(mf, trials=3, seed=_seed(args))
    lines = ["chi: " + " ".join("%s=%s" % (l, v) for l, v in zip(setup.ge.labels, chi.values))]
    for (i, j), p in zip(mf.labels, mf.generators):
        lines.append("D^%d ^eP_%d = %s" % (j, i, p))
    lines.append("generators: %d" % len(mf.generators))
    lines.append("Poisson-commutative: %s" % ("yes" if mf.commutative else "no"))
    lines.append("independent: %s" % ("yes" if indep else "no"))
    witness = None
    if mf.nonzero_brackets:
        a, b, br = mf.nonzero_brackets[0]
        witness = {"pair": [list(mf.labels[a]), list(mf.labels[b])], "bracket": br}
        lines.append("witness: %s" % ser.dumps(ser.to_data(witness)))
    _emit(args, lines, {"n": args.n, "chi": chi,
                        "generators": [{"i": i, "j": j, "value": p}
                                       for (i, j), p in zip(mf.labels, mf.generators)],
                        "commutative": mf.commutative, "independent": indep, "witness": witness})
    return EXIT_OK if mf.commutative and indep else EXIT_FAIL


def cmd_q(args) -> int:
    qs = extract_Q(_n_range(args.n))
    lines = ["Q_%d = %s" % (i, q) for i, q in enumerate(qs, start=1)]
    _emit(args, lines, {"n": args.n, "Q": qs})
    return EXIT_OK


def cmd_quantize(args) -> int:
    setup = minimal_setup(_n_range(args.n))
    chi = _chi(args, setup)
    qa = quantized_algebra(args.n, chi, allow_singular=args.allow_singular)
    lines = ["chi: " + " ".join("%s=%s" % (l, v) for l, v in zip(setup.ge.labels, chi.values))]
    for l, a in zip(qa.labels, qa.generators):
        lines.append("%s = %s" % (l, a))
    lines.append("generators: %d" % len(qa.generators))
    lines.append("commutative: %s" % ("yes" if qa.commutative else "no"))
    witness = None
    if qa.nonzero_commutators:
        a, b, c = qa.nonzero_commutators[0]
        witness = {"pair": [qa.labels[a], qa.labels[b]], "commutator": c}
        lines.append("witness: %s" % ser.dumps(ser.to_data(witness)))
    _emit(args, lines, {"n": args.n, "chi": chi,
                        "generators": [{"label": l, "value": a}
                                       for l, a in zip(qa.labels, qa.generators)],
                        "commutative": qa.commutative, "witness": witness})
    return EXIT_OK if qa.commutative else EXIT_FAIL


def cmd_verify(args) -> int:
    n_max = _n_range(args.n_max, 3, 5)
    if n_max == 5 and not args.slow:
        raise UsageError("--n-max 5 requires --slow")
    checks: List[Check] = run_all(_seed(args), n_max, args.slow)
    failed = sum(c.status == FAIL for c in checks)
    lines = [c.line() for c in checks]
    lines.append("%d checks, %d failed" % (len(checks), failed))
    _emit(args, lines, {"checks": [c.to_data() for c in checks], "failed": failed})
    return EXIT_FAIL if failed else EXIT_OK


# parser ----------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--seed", type=int, default=None,
                        help="random seed (falls back to $MFQ_SEED, then 0)")

    chi_opts = argparse.ArgumentParser(add_help=False)
    chi_opts.add_argument("--chi", default="random",
                          help="'random' (seeded regular), 'zero', or a JSON file of values")
    chi_opts.add_argument("--allow-singular", action="store_true")

    p = argparse.ArgumentParser(prog="mfq", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("centralizer", parents=[common], help="g^e basis and brackets")
    s.add_argument("--n", type=int, required=True)
    s.set_defaults(func=cmd_centralizer)

    s = sub.add_parser("invariants", parents=[common], help="truncated invariants ^eP_i")
    s.add_argument("--n", type=int, required=True)
    s.set_defaults(func=cmd_invariants)

    s = sub.add_parser("mf", parents=[common, chi_opts], help="Mishchenko-Fomenko generators")
    s.add_argument("--n", type=int, required=True)
    s.set_defaults(func=cmd_mf)

    s = sub.add_parser("q", parents=[common], help="central elements Q_i")
    s.add_argument("--n", type=int, required=True)
    s.set_defaults(func=cmd_q)

    s = sub.add_parser("quantize", parents=[common, chi_opts], help="quantized generators A_i^(j)")
    s.add_argument("--n", type=int, required=True)
    s.set_defaults(func=cmd_quantize)

    s = sub.add_parser("verify", parents=[common], help="run the verification suite")
    s.add_argument("--all", action="store_true", help="run every check (the default)")
    s.add_argument("--n-max", type=int, default=4)
    s.add_argument("--slow", action="store_true", help="include n = 5")
    s.set_defaults(func=cmd_verify)
    return p


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, RegularityError) as exc:
        parser.exit(EXIT_USAGE, "mfq: error: %s\n" % exc)


if __name__ == "__main__":
    sys.exit(main())
