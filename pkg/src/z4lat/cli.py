"""Command line entry point: ``z4lat list | verify | compute``."""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from z4lat import formats, lattice, tables, series, verify, weights
from z4lat.z4 import NonOrthogonalUpper, NotSelfDual, ShapeError, shorten_sub

COMPUTE = ("weights", "swe", "lattice", "theta-decompose", "shadow", "sub", "dual", "bounds")


def _emit(human: list[str], record: dict, as_json: bool) -> None:
    if as_json:
        print(json.dumps(record, sort_keys=True, default=str))
    else:
        print("\n".join(human))


def _cmd_list(args) -> int:
    for name in tables.BUILTIN_CODES:
        entry = tables.load()["codes"][name]
        print(f"{name}  n={entry['n']}  k1={entry['k1']}")
    return 0


def _cmd_verify(args) -> int:
    results = verify.verify(args.scope, jobs=args.jobs)
    print(verify.format_table(results))
    if args.json:
        lines = "".join(r.to_json(args.timings) + "\n" for r in results)
        if args.json == "-":
            sys.stdout.write(lines)
        else:
            with open(args.json, "w", encoding="utf-8") as fh:
                fh.write(lines)
    return 0 if verify.summary_ok(results) else 1


def _bounds(n: int, as_json: bool) -> int:
    rec: dict = {"n": n, "typeI_bound": weights.typeI_upper_bound(n), "typeII_bound": weights.typeII_upper_bound(n)}
    human = [f"Type I bound     {rec['typeI_bound']}", f"Type II bound    {rec['typeII_bound']}"]
    try:
        rec["dmax_upper_bound"] = weights.dmax_upper_bound(n)
        rec["mu_max_odd"] = list(weights.mu_max_odd(n))
        best = weights.dmaxE_table(n)
        rec["dmaxE"] = list(best) if isinstance(best, tuple) else best
        human = [str(rec["dmax_upper_bound"])] + human + [
            f"mu_max odd       {' or '.join(map(str, rec['mu_max_odd']))}",
            f"d_max,E          {rec['dmaxE'] if not isinstance(best, tuple) else f'{best[0]}..{best[1]}'}",
        ]
    except weights.OutOfRange as exc:
        human.append(f"(no tabulated values: {exc})")
    _emit(human, rec, as_json)
    return 0


def _cmd_compute(args) -> int:
    if args.sub == "bounds":
        if args.n is None:
            raise SystemExit("compute bounds: --n is required")
        return _bounds(args.n, args.json)
    if args.code is None:
        raise SystemExit(f"compute {args.sub}: a builtin code name or a code file is required")
    C = formats.load_code(args.code)
    name = C.name or args.code

    if args.sub == "weights":
        mw = weights.min_weights(C)
        rec = {"code": name, "n": C.n, "d_E": mw.euclidean, "d_L": mw.lee, "d_H": mw.hamming}
        _emit([str(mw)], rec, args.json)
    elif args.sub == "swe":
        enum = weights.swe(C, args.cap)
        rec = {"code": name, "cap": args.cap, "terms": [list(m) + [c] for m, c in sorted(enum.terms.items())]}
        _emit(enum.to_lines(), rec, args.json)
    elif args.sub == "lattice":
        rep = lattice.lattice_report(C, args.max_norm)
        L = lattice.construction_a(C)
        rec = {"code": name, "n": C.n, "min_norm": rep.min_norm, "kissing": rep.kissing, "parity": rep.parity,
               "theta": rep.theta_prefix.integer_coefficients()}
        human = [f"min norm  {rep.min_norm}", f"kissing   {rep.kissing}", f"parity    {rep.parity}",
                 f"theta     {rep.theta_prefix.to_poly_string()}"]
        if args.emit == "basis":
            human += ["", formats.format_lattice(L).rstrip()]
            rec["basis"] = L.M.tolist()
        elif args.emit == "gram":
            human += ["", formats.format_matrix(L.gram()).rstrip()]
            rec["gram"] = L.gram().tolist()
        _emit(human, rec, args.json)
    elif args.sub in ("theta-decompose", "shadow"):
        theta = lattice.theta_prefix(C, C.n // 8)
        dec = series.decompose(theta, C.n)
        rec = {"code": name, "a": [str(Fraction(x)) for x in dec.a]}
        human = [f"a{j} = {x}" for j, x in enumerate(dec.a)]
        if args.sub == "shadow":
            mu, _ = lattice.min_norm_and_kissing(C)
            S = series.shadow(dec, args.order)
            rep = series.shadow_constraints(S, mu)
            rec.update(shadow=[[str(Fraction(k, 4)), str(c)] for k, c in S.items()], constraints_ok=rep.ok)
            human += ["", f"shadow  {S.to_poly_string()}", *rep.lines()]
        _emit(human, rec, args.json)
    elif args.sub == "sub":
        D = shorten_sub(C, args.coord)
        mw = weights.min_weights(D)
        rec = {"code": f"sub({name})", "n": D.n, "d_E": mw.euclidean, "d_L": mw.lee, "d_H": mw.hamming,
               "generators": D.generator_matrix.tolist()}
        _emit([formats.format_code(D).rstrip(), f"weights {mw}"], rec, args.json)
    elif args.sub == "dual":
        D = C.dual()
        rec = {"code": f"dual({name})", "generators": D.generator_matrix.tolist(), "same_as_code": D.same_span(C)}
        _emit([formats.format_code(D).rstrip()], rec, args.json)
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="z4lat", description="Self-dual Z4 codes and their Construction A lattices.")
    sub = p.add_subparsers(dest="command", required=True)

    sub.add_parser("list", help="list the builtin codes").set_defaults(func=_cmd_list)

    v = sub.add_parser("verify", help="recompute the embedded tables and compare")
    v.add_argument("scope", choices=verify.SCOPES + ("all",))
    v.add_argument("--jobs", type=int, default=1, help="worker processes (output order is fixed)")
    v.add_argument("--json", metavar="PATH", help="write one JSON record per check ('-' for stdout)")
    v.add_argument("--timings", action="store_true", help="include runtimes in JSON records")
    v.set_defaults(func=_cmd_verify)

    c = sub.add_parser("compute", help="compute one artifact for a code")
    c.add_argument("sub", choices=COMPUTE)
    c.add_argument("code", nargs="?", help="builtin name (see 'list') or code file")
    c.add_argument("--cap", type=int, default=None, help="swe: Euclidean weight cap (default: all 2^n codewords)")
    c.add_argument("--max-norm", type=int, default=None, help="lattice: theta series through this norm")
    c.add_argument("--emit", choices=("basis", "gram"), help="lattice: also print the basis or Gram matrix")
    c.add_argument("--order", type=int, default=44, help="shadow: series precision in quarter steps")
    c.add_argument("--coord", type=int, default=0, help="sub: coordinate to shorten on")
    c.add_argument("--n", type=int, default=None, help="bounds: length")
    c.add_argument("--json", action="store_true", help="print a JSON object instead of text")
    c.set_defaults(func=_cmd_compute)
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (formats.ParseError, NotSelfDual, NonOrthogonalUpper, ShapeError, FileNotFoundError,
            weights.TooLarge, lattice.NotUnimodular) as exc:
        print(f"z4lat: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
