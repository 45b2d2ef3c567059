"""Command line front end: ``pairops example|suite|monomial|semigroup|dualize|certify``."""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from .artinian import build_algebra, parse_context
from .cores import FeasibilityError, enumerate_ideals
from .integral import CertificateParseError, GradedSubmodule, read_certificates, verify_certificate
from .monomial import MonomialIdeal, UncertifiedClosure, closure_report, combine, ratliff_rush
from .operations import builtin, jbe, jbf, smile_dual
from .properties import PROPERTIES, PairContext, run_suite
from .registry import REGISTRY, UnknownExample, run_example
from .semigroup import NumericalSemigroup, ValueIdeal, interior_pair, value_colon

EXIT_OK, EXIT_COUNTEREXAMPLE, EXIT_INPUT = 0, 1, 2


class InputError(ValueError):
    pass


def _emit(args, payload, text: str):
    if getattr(args, "json", False):
        print(json.dumps(payload, sort_keys=True, indent=2))
    else:
        print(text)


def _algebra(args):
    try:
        config = parse_context(args.ctx)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    if args.field is not None:
        config["p"] = args.field
    if args.trunc is not None:
        config["N"] = args.trunc
    try:
        return build_algebra(config)
    except ValueError as exc:
        raise InputError(str(exc)) from None


def _ideal(A, text):
    if text is None or text.strip() in ("", "m"):
        return A.maximal_ideal
    try:
        return A.ideal([t.strip() for t in text.split(",")])
    except (ValueError, KeyError) as exc:
        raise InputError(f"cannot parse ideal {text!r}: {exc}") from None


def _random_ideals(A, count: int, seed: int):
    rng = np.random.default_rng(seed)
    found = {A.regular.zero().space.key(): A.regular.zero(), A.regular.full().space.key(): A.regular.full()}
    attempts = 0
    while len(found) < count + 2 and attempts < 50 * (count + 2):
        attempts += 1
        k = int(rng.integers(1, 3))
        vecs = []
        for _ in range(k):
            v = rng.integers(0, A.p, A.dim)
            v[0] = 0
            vecs.append(v)
        I = A.regular.generate(vecs)
        found.setdefault(I.space.key(), I)
    return sorted(found.values(), key=lambda I: (I.dim, I.space.key()))


def _context(args, A) -> PairContext:
    label = A.describe()
    if args.samples is None or args.exhaustive:
        try:
            return PairContext(A, A.regular, enumerate_ideals(A), label, True, args.seed)
        except FeasibilityError as exc:
            if args.exhaustive:
                raise InputError(str(exc)) from None
    members = _random_ideals(A, args.samples or 8, args.seed)
    return PairContext(A, A.regular, members, label, False, args.seed, max_map_pairs=40)


def cmd_example(args) -> int:
    try:
        report = run_example(args.id)
    except UnknownExample as exc:
        print(exc.args[0], file=sys.stderr)
        return EXIT_INPUT
    _emit(args, report.to_dict(), report.to_text())
    return EXIT_OK if report.ok else EXIT_COUNTEREXAMPLE


def cmd_list(args) -> int:
    for key in REGISTRY:
        print(key)
    return EXIT_OK


def cmd_suite(args) -> int:
    A = _algebra(args)
    J = _ideal(A, args.J)
    try:
        op = builtin(args.op, A, J)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    props = [p.strip() for p in args.props.split(",") if p.strip()]
    if props != ["all"]:
        unknown = [p for p in props if p not in PROPERTIES]
        if unknown:
            raise InputError(f"unknown properties {unknown}; known: {', '.join(PROPERTIES)}")
    ctx = _context(args, A)
    reports = run_suite(op, ctx, props)
    payload = [r.to_dict() for r in reports]
    lines = []
    for r in reports:
        line = f"{r.property:26s} {r.verdict:16s} samples={r.samples}"
        if r.witness:
            line += "  witness: " + ", ".join(f"{k}={v}" for k, v in sorted(r.witness.items()))
        lines.append(line)
    lines.append(f"op={op.name} context={ctx.label} exhaustive={ctx.exhaustive} seed={ctx.seed}")
    _emit(args, payload, "\n".join(lines))
    return EXIT_OK if all(r.holds for r in reports) else EXIT_COUNTEREXAMPLE


def cmd_monomial(args) -> int:
    try:
        I = MonomialIdeal.parse(args.first)
        J = MonomialIdeal.parse(args.second, I.n) if args.second else None
    except ValueError as exc:
        raise InputError(str(exc)) from None
    extra = {}
    if args.op in ("colon", "sum", "product", "intersect"):
        if J is None:
            raise InputError(f"{args.op} needs two ideals")
        n = max(I.n, J.n)
        I, J = MonomialIdeal.from_gens(n, [tuple(g) + (0,) * (n - I.n) for g in I.gens]), \
            MonomialIdeal.from_gens(n, [tuple(g) + (0,) * (n - J.n) for g in J.gens])
        try:
            out = I.colon(J) if args.op == "colon" else combine(args.op, I, J)
        except ValueError as exc:
            raise InputError(str(exc)) from None
    elif args.op == "closure":
        rep = closure_report(I)
        out = rep.ideal
        extra = {"certified": rep.certified, "method": rep.method}
        if not rep.certified:
            print(str(UncertifiedClosure(rep)), file=sys.stderr)
    elif args.op == "rr":
        res = ratliff_rush(I, args.n_max)
        out = res.ideal
        extra = {"stabilized": res.stabilized, "stable_from": res.stable_from}
    else:
        raise InputError(f"unknown monomial operation {args.op!r}")
    payload = {"op": args.op, "result": str(out), **extra}
    text = str(out) + "".join(f"\n{k}: {v}" for k, v in extra.items())
    _emit(args, payload, text)
    return EXIT_OK


def cmd_semigroup(args) -> int:
    try:
        S = NumericalSemigroup(int(g) for g in args.gens.split(","))
    except ValueError as exc:
        raise InputError(str(exc)) from None
    if args.action == "invariants":
        payload = {"generators": list(S.gens), "multiplicity": S.e, "frobenius": S.frobenius,
                   "conductor": S.conductor, "apery": list(S.apery), "gaps": list(S.gaps)}
        _emit(args, payload, "\n".join(f"{k}: {v}" for k, v in payload.items()))
        return EXIT_OK
    try:
        J = ValueIdeal.parse(S, args.J or "m")
        I = ValueIdeal.parse(S, args.ideal)
    except (ValueError, TypeError) as exc:
        raise InputError(str(exc)) from None
    if args.action == "interior":
        out = interior_pair(args.mode or "relative", J, I)
    elif args.action == "colon":
        out = value_colon(args.mode or "in_R", I, J)
    else:
        raise InputError(f"unknown semigroup action {args.action!r}")
    _emit(args, {"action": args.action, "mode": args.mode, "result": str(out)}, str(out))
    return EXIT_OK


def cmd_dualize(args) -> int:
    A = _algebra(args)
    J = _ideal(A, args.J)
    op = builtin(args.op, A, J)
    dual = smile_dual(op)
    partner = {"jbf": jbe(J), "jbe": jbf(J)}.get(args.op)
    ideals = enumerate_ideals(A)
    rows = []
    mismatches = 0
    for M in ideals:
        for L in ideals:
            if not L <= M:
                continue
            d = dual(L, M)
            row = {"L": L.format(), "M": M.format(), "op": op(L, M).format(), "dual": d.format()}
            if partner is not None:
                agree = d == partner(L, M)
                row["matches_" + partner.name] = agree
                mismatches += not agree
            rows.append(row)
    text = "\n".join(f"L={r['L']:18s} M={r['M']:18s} {op.name}={r['op']:18s} dual={r['dual']}" for r in rows)
    if partner is not None:
        text += f"\ndual({op.name}) vs {partner.name}: {mismatches} mismatches over {len(rows)} pairs"
    _emit(args, {"op": op.name, "pairs": rows, "mismatches": mismatches}, text)
    return EXIT_OK if mismatches == 0 else EXIT_COUNTEREXAMPLE


def cmd_certify(args) -> int:
    gens = [g.split(",") for g in args.module.split(";")]
    try:
        U = GradedSubmodule(args.nvars, len(gens[0]), gens, args.field or 2)
        certs = read_certificates(args.file)
        results = [(c.relation, verify_certificate(c, U)) for c in certs]
    except (CertificateParseError, ValueError, OSError) as exc:
        raise InputError(str(exc)) from None
    _emit(args, [{"relation": r, "valid": ok} for r, ok in results],
          "\n".join(f"{'valid  ' if ok else 'INVALID'} {r}" for r, ok in results))
    return EXIT_OK if all(ok for _, ok in results) else EXIT_COUNTEREXAMPLE


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="pairops", description="Exact pair operations on modules.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, ctx=False):
        p.add_argument("--json", action="store_true", help="machine-readable output")
        if ctx:
            p.add_argument("--ctx", default="artinian p=2 vars=x trunc=4",
                           help='e.g. "artinian p=2 vars=x,y trunc=8 rels=[x^3]" or "semigroup p=2 gens=2,3 trunc=12"')
            p.add_argument("--field", type=int, help="override the prime p")
            p.add_argument("--trunc", type=int, help="override the truncation order")
            p.add_argument("--J", help='ideal parameter, comma separated generators (default: m)')

    p = sub.add_parser("example", help="run a scripted example")
    p.add_argument("id", help="example id; see 'pairops list'")
    common(p)
    p.set_defaults(func=cmd_example)

    p = sub.add_parser("list", help="list example ids")
    p.set_defaults(func=cmd_list)

    p = sub.add_parser("suite", help="check properties of an operation")
    common(p, ctx=True)
    p.add_argument("--op", required=True, help="identity, jbf, jbe, res:<op>, her:<op>, dual:<op>, rho_socle, ...")
    p.add_argument("--props", default="all", help=f"comma separated, or 'all'; known: {','.join(PROPERTIES)}")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--samples", type=int, help="number of random ideals when not enumerating")
    p.add_argument("--exhaustive", action="store_true", help="require full ideal enumeration")
    p.set_defaults(func=cmd_suite)

    p = sub.add_parser("monomial", help="monomial ideal arithmetic")
    p.add_argument("op", choices=["colon", "sum", "product", "intersect", "closure", "rr"])
    p.add_argument("first")
    p.add_argument("second", nargs="?")
    p.add_argument("--n-max", type=int, default=6, dest="n_max")
    common(p)
    p.set_defaults(func=cmd_monomial)

    p = sub.add_parser("semigroup", help="numerical semigroup rings")
    p.add_argument("gens", help="generators, e.g. 2,5")
    p.add_argument("action", choices=["invariants", "interior", "colon"])
    p.add_argument("--J", "--by", dest="J", default="m", help="the ideal J (interior) or the divisor (colon)")
    p.add_argument("--ideal", default="m")
    p.add_argument("--mode", help="relative|absolute for interior, in_R|in_Q for colon")
    common(p)
    p.set_defaults(func=cmd_semigroup)

    p = sub.add_parser("dualize", help="tabulate the smile dual of an operation on all ideal pairs")
    common(p, ctx=True)
    p.add_argument("--op", required=True)
    p.set_defaults(func=cmd_dualize)

    p = sub.add_parser("certify", help="verify integrality certificates from a file")
    p.add_argument("file")
    p.add_argument("--module", required=True, help='generators separated by ";", entries by ",", e.g. "x,0;y,-x;0,y"')
    p.add_argument("--nvars", type=int, default=2)
    p.add_argument("--field", type=int)
    common(p)
    p.set_defaults(func=cmd_certify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
