"""Command-line front end: ``mfperiod {expand,reduce,pair,verify,prove,catalog}``."""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from . import cosets, mfring, qseries, witnesses
from .errors import InsufficientPrecision, MFPeriodError
from .mfring import MFElement
from .pairing import (pair_sqft, pair_sqm, quasimodular_control, well_definedness_check)
from .periodicity import (naive_degree12_obstruction, obstruct_delta_power, sqft_lower_bound,
                          sqm_lower_bound)
from .qseries import GeneratorName, QSeries, format_series

TERMS_ENV = "MFPERIOD_TERMS"

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _default_terms() -> int:
    raw = os.environ.get(TERMS_ENV)
    if raw is None:
        return witnesses.DEFAULT_TERMS
    try:
        value = int(raw)
    except ValueError:
        raise UsageError("%s must be a positive integer, got %r" % (TERMS_ENV, raw)) from None
    if value <= 0:
        raise UsageError("%s must be a positive integer, got %r" % (TERMS_ENV, raw))
    return value


def _frac(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else "%d/%d" % (c.numerator, c.denominator)


def _short(rep: QSeries, shown: int = 6) -> str:
    head = rep.truncate(min(rep.horizon, rep.valuation + shown))
    return "%s + O(q^%d)" % (format_series(head), head.horizon)


def _emit(out, args, payload, text_lines):
    if args.format == "json":
        out.write(json.dumps(payload, indent=2, sort_keys=True) + "\n")
    else:
        for line in text_lines:
            out.write(line + "\n")


def _witness_by_name(name: str, terms: int, realizer):
    index = witnesses.catalog_index(terms)
    w = witnesses.lookup(index, name)
    if realizer is not None:
        w = witnesses.product_witness(witnesses.image_realizer(realizer), w)
    return w


# subcommands

def cmd_expand(args, out) -> int:
    target = args.target
    try:
        series = qseries.generator(GeneratorName(target.upper()), args.terms)
    except ValueError:
        series = mfring.expand(mfring.parse_element(target), args.terms)
    _emit(out, args, qseries.to_json(series), [format_series(series)])
    return EXIT_OK


def _read_json(path: str):
    try:
        if path == "-":
            return json.load(sys.stdin)
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError("cannot read JSON from %s: %s" % (path, exc)) from None


def cmd_reduce(args, out) -> int:
    series = qseries.from_json(_read_json(args.input))
    red = mfring.reduce(series, args.weight)
    elem = red.element
    payload = {"weight": args.weight, "coords": mfring.to_json(elem),
               "remainder": qseries.to_json(red.remainder), "member": red.is_member}
    lines = ["weight: %d" % args.weight,
             "coords: %s" % elem,
             "remainder: %s" % format_series(red.remainder),
             "member: %s" % ("yes" if red.is_member else "no")]
    _emit(out, args, payload, lines)
    return EXIT_OK


def cmd_pair(args, out) -> int:
    w = _witness_by_name(args.witness, args.terms, args.realizer)
    if args.kind == "sqft":
        if args.phi is None:
            raise UsageError("pair sqft needs --phi")
        result = pair_sqft(mfring.parse_element(args.phi), w)
    else:
        if args.x is None:
            raise UsageError("pair sqm needs --x")
        try:
            x = Fraction(args.x)
        except ValueError:
            raise UsageError("--x must be a rational number, got %r" % args.x) from None
        result = pair_sqm(x, w)
    lines = [_frac(result.value)]
    _emit(out, args, result.to_json(), lines)
    return EXIT_OK


def _verification_checks(args):
    """(name, passed, detail) for every invariant suite."""
    terms = args.terms
    checks = []

    c4 = qseries.generator(GeneratorName.C4, terms + 1)
    c6 = qseries.generator(GeneratorName.C6, terms + 1)
    delta = qseries.generator(GeneratorName.DELTA, terms)
    ident = (c4 ** 3 - c6 ** 2 - 1728 * delta).truncate(terms)
    checks.append(("generator identity c4^3 - c6^2 = 1728 Delta", ident.is_zero(),
                   "window [0, %d)" % ident.horizon))
    inv = delta * qseries.generator(GeneratorName.DELTA_INV, terms) - 1
    checks.append(("Delta * Delta^-1 = 1", inv.is_zero(),
                   "window [%d, %d)" % (inv.valuation, inv.horizon)))

    rec = mfring.constant_term_vanishing(2, -args.d_min)
    checks.append(("weight-2 constant terms vanish (pole order <= %d)" % -args.d_min,
                   rec.passed, "%d monomials" % len(rec.entries)))

    index = witnesses.catalog_index(terms)
    pairs = [
        (mfring.delta_power(-1), index["D4S3"]),
        (mfring.delta_power(-16),
         witnesses.product_witness(witnesses.image_realizer(15), index["D4S3"])),
        (mfring.delta_power(-12),
         witnesses.product_witness(witnesses.image_realizer(8), index["USPIN76"])),
    ]
    for phi, w in pairs:
        rec = well_definedness_check(phi, w, args.trials, seed=args.seed)
        checks.append(("pairing well-defined: <%s, %s>" % (phi, w.name), rec.passed,
                       "%d trials, value %s" % (args.trials, _frac(rec.baseline))))
        control = quasimodular_control(phi, w.invariant.weight, w.invariant.rep.horizon)
        neg = well_definedness_check(phi, w, 0, inject=control)
        checks.append(("non-member control moves <%s, %s>" % (phi, w.name), not neg.passed,
                       "delta %s" % (_frac(neg.counterexample["delta"])
                                     if neg.counterexample else "0")))

    for w in index.values():
        if w.kind is witnesses.Kind.STRING_CLASS:
            checks.append(("%s in Witten image lattice" % w.name,
                           mfring.image_lattice_contains(w.invariant).contains, str(w.invariant)))
    k3 = index["K3"].relative_class()
    checks.append(("24 * D4S3 = Wit(K3) mod MF_2",
                   cosets.coset_equal(cosets.coset_scale(24, index["D4S3"].invariant), k3), ""))
    checks.append(("U_ETA3 = 12 * D4S3 mod MF_2",
                   cosets.coset_equal(cosets.coset_scale(12, index["D4S3"].invariant),
                                      index["U_ETA3"].invariant), ""))
    der = witnesses.derive_uspin76(index)
    checks.append(("derived USPIN76 = E2 Delta^3 mod MF_38", der.equal,
                   "%d steps" % len(der.trace)))
    naive = naive_degree12_obstruction(index)
    checks.append(("naive degree-12 witness gives no obstruction", naive.modulus == 1,
                   "pairing %s" % _frac(naive.pairing_value)))
    return checks


def cmd_verify(args, out) -> int:
    checks = _verification_checks(args)
    ok = all(passed for _, passed, _ in checks)
    payload = {"passed": ok, "seed": args.seed, "trials": args.trials, "terms": args.terms,
               "checks": [{"name": n, "passed": p, "detail": d} for n, p, d in checks]}
    lines = ["%s  %s%s" % ("PASS" if p else "FAIL", n, "  (%s)" % d if d else "")
             for n, p, d in checks]
    lines.append("%d/%d checks passed" % (sum(p for _, p, _ in checks), len(checks)))
    _emit(out, args, payload, lines)
    return EXIT_OK if ok else EXIT_FAIL


def cmd_prove(args, out) -> int:
    if args.which == "sqft":
        report = sqft_lower_bound(terms=args.terms)
    else:
        report = sqm_lower_bound(terms=args.terms)
    payload = report.to_json()
    if args.which == "sqft":
        payload["obstructions"] = [obstruct_delta_power(d, terms=args.terms).to_json()
                                   for d in (1, 16, 12)]
    lines = ["%s periodicity lower bound: %d" % (report.spectrum, report.bound)]
    label = "d" if args.which == "sqft" else "n"
    for c in report.cases:
        status = "excluded" if c.excluded else "open"
        extra = []
        if c.n is not None:
            extra.append("n=%d" % c.n)
        if c.m is not None:
            extra.append("m=%d" % c.m)
        if c.modulus is not None:
            extra.append("modulus=%d" % c.modulus)
        if c.pairing is not None:
            extra.append("pairing=%s" % _frac(c.pairing))
        lines.append("  %s=%-2d %-12s %-8s %s" % (label, c.d, c.method, status, " ".join(extra)))
        if c.detail:
            lines.append("        %s" % c.detail)
    lines.extend("note: %s" % n for n in report.notes)
    _emit(out, args, payload, lines)
    # the last case is allowed to stay open: it is where the bound stops
    proved = report.bound is not None and all(c.excluded for c in report.cases[:-1])
    return EXIT_OK if proved else EXIT_FAIL


def _describe_invariant(w) -> str:
    inv = w.invariant
    if isinstance(inv, MFElement):
        return str(inv)
    if isinstance(inv, cosets.Coset):
        return "%s mod MF_%d" % (_short(inv.rep), inv.weight)
    if isinstance(inv, QSeries):
        return _short(inv)
    return _frac(inv)


def cmd_catalog(args, out) -> int:
    ws = witnesses.catalog(args.terms)
    payload = [witnesses.to_json(w) for w in ws]
    lines = []
    for w in ws:
        lines.append("%-11s degree %-3d %-15s %s" % (w.name, w.degree, w.kind.value,
                                                    _describe_invariant(w)))
        lines.append("            %s" % w.provenance)
    _emit(out, args, payload, lines)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--terms", type=int, default=None,
                        help="determined coefficients per series (default 80, env %s)" % TERMS_ENV)
    common.add_argument("--d-min", type=int, default=-25, dest="d_min",
                        help="pole bound for weight-indexed checks (default -25)")
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--trials", type=int, default=50,
                        help="random perturbations per well-definedness check")
    common.add_argument("--seed", type=int, default=0)

    parser = argparse.ArgumentParser(
        prog="mfperiod",
        description="Exact modular-form arithmetic and periodicity obstructions.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("expand", parents=[common], help="q-expansion of a generator or form")
    p.add_argument("target", help="C4, C6, DELTA, DELTA_INV, E2 or an expression like "
                                  "'c4^2*c6*Delta^-1'")
    p.set_defaults(func=cmd_expand)

    p = sub.add_parser("reduce", parents=[common], help="reduce a QSeries JSON modulo MF_w")
    p.add_argument("input", help="path to QSeries JSON, or - for stdin")
    p.add_argument("--weight", type=int, required=True)
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("pair", parents=[common], help="evaluate a pairing on a catalog witness")
    p.add_argument("kind", choices=("sqft", "sqm"))
    p.add_argument("--witness", required=True)
    p.add_argument("--phi", help="modular form Phi(T), e.g. 'Delta^-1'")
    p.add_argument("--x", help="rational Psi(T) for the sqm pairing")
    p.add_argument("--realizer", type=int, default=None,
                   help="multiply the witness by the minimal string class of Wit a*Delta^d")
    p.set_defaults(func=cmd_pair)

    p = sub.add_parser("verify", parents=[common], help="run the invariant suites")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("prove", parents=[common], help="emit a lower-bound report")
    p.add_argument("which", choices=("sqft", "sqm"))
    p.set_defaults(func=cmd_prove)

    p = sub.add_parser("catalog", parents=[common], help="list built-in witnesses")
    p.set_defaults(func=cmd_catalog)
    return parser


def main(argv=None, out=None) -> int:
    out = out if out is not None else sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    try:
        if args.terms is None:
            args.terms = _default_terms()
        if args.terms <= 0:
            raise UsageError("--terms must be positive")
        if args.trials < 0:
            raise UsageError("--trials must be non-negative")
        if args.d_min >= 0:
            raise UsageError("--d-min must be negative")
        return args.func(args, out)
    except UsageError as exc:
        sys.stderr.write("mfperiod: error: %s\n" % exc)
        return EXIT_USAGE
    except InsufficientPrecision as exc:
        sys.stderr.write("mfperiod: insufficient precision: %s (window %s)\n" % (exc, exc.window))
        return EXIT_FAIL
    except MFPeriodError as exc:
        sys.stderr.write("mfperiod: error: %s\n" % exc)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
