"""Command line entry point: ``jetfiber <verb> [options]``.

Exit codes: 0 all checks pass, 1 a verification failed, 2 a reduction or
enumeration budget was exhausted, 3 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .components import VerificationError, decompose, symmetry_permutation
from .graph import intersection_poset
from .ideal import DEFAULT_BUDGET, BudgetExceeded, Ideal, build_J, build_L, dimension, saturate
from .jets import Surface, TruncationSpec, jet_coeffs, lemma_grid, reduce_mod_L
from .oracle import cover_check, point_count
from .poly import PolynomialSyntaxError, Polynomial, var_from_name
from .suite import run_suite

EXIT_OK, EXIT_FAIL, EXIT_BUDGET, EXIT_USAGE = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _triple(text: str) -> TruncationSpec:
    try:
        p, q, r = (int(v) for v in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected p,q,r, got {text!r}") from None
    if min(p, q, r) < 0:
        raise argparse.ArgumentTypeError("p, q, r must be non-negative")
    return TruncationSpec(p, q, r)


def _emit(doc, as_json: bool = True) -> None:
    if as_json:
        print(json.dumps(doc, sort_keys=True, separators=(",", ":")))
    else:
        print(doc)


def _build_ideal(surface: Surface, m: int, what: str) -> Ideal:
    what = what.upper()
    if what in ("J1", "J2", "J3"):
        return build_J(surface, int(what[1]), m)
    if what == "FIBER":
        jets = tuple(jet_coeffs(surface, m).coeffs)
        return Ideal(tuple(Polynomial.var(v) for v in TruncationSpec(1, 1, 1).killed()) + jets, m)
    if what.startswith("L:"):
        try:
            spec = _triple(what[2:])
        except argparse.ArgumentTypeError as exc:
            raise UsageError(str(exc)) from None
        return build_L(spec, m)
    raise UsageError(f"unknown ideal {what!r}; expected J1, J2, J3, FIBER or L:p,q,r")


# --- verbs -----------------------------------------------------------------

def cmd_expand(args) -> int:
    for g in jet_coeffs(args.surface, args.m).coeffs:
        print(reduce_mod_L(g, args.mod) if args.mod else g)
    return EXIT_OK


def cmd_lemma_g(args) -> int:
    rows = lemma_grid(args.pmax, args.lmax, args.surface)
    ok = all(r["ok"] for r in rows)
    _emit({"ok": ok, "rows": rows})
    return EXIT_OK if ok else EXIT_FAIL


def cmd_ideal(args) -> int:
    I = _build_ideal(args.surface, args.m, args.build)
    if args.saturate:
        try:
            v = var_from_name(args.saturate)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        I = saturate(I, v, args.budget)
    doc = {"generators": [str(g) for g in I.gens]}
    if args.gb or args.dim:
        I.groebner(args.budget)
        if args.gb:
            doc["gb"] = [str(g) for g in I.gb]
    if args.dim:
        doc["dimension"] = dimension(I, args.budget)
    if args.json:
        _emit(doc)
    else:
        for key in ("generators", "gb"):
            if key in doc:
                print(f"{key}:")
                for g in doc[key]:
                    print(f"  {g}")
        if "dimension" in doc:
            print(f"dimension: {doc['dimension']}")
    return EXIT_OK


def cmd_decompose(args) -> int:
    dec = decompose(args.surface, args.m, args.budget)
    perms = {w: symmetry_permutation(dec.components, w, args.budget) for w in ("PSI1", "PSI2")}
    comps = []
    for c in dec.components:
        comps.append({"label": c.label, "generators": [str(g) for g in c.generators()],
                      "dimension": c.dim, "witnesses": dec.witnesses.get(c.label),
                      "symmetry_images": {w.lower(): perms[w][c.label] for w in perms},
                      "certificate": None if c.certificate is None else c.certificate.to_dict(),
                      "evidence": c.evidence})
    doc = {"surface": dec.surface.value, "m": dec.m, "components": comps}
    if args.json:
        _emit(doc)
    else:
        for c in comps:
            print(f"{c['label']}: dimension {c['dimension']}, {len(c['generators'])} generators, "
                  f"witness {c['witnesses']}, images {c['symmetry_images']}")
    return EXIT_OK


def cmd_graph(args) -> int:
    dec = decompose(args.surface, args.m, args.budget)
    report = intersection_poset(dec.components, args.budget)
    dot = report.graph.to_dot()
    if args.dot:
        Path(args.dot).write_text(dot + "\n")
    if args.json:
        _emit(report.to_dict())
    else:
        print(dot)
        print(f"D4 star: {report.ok}")
    return EXIT_OK if report.ok else EXIT_FAIL


def cmd_count(args) -> int:
    if args.cover:
        doc = cover_check(args.surface, args.m, args.k)
        ok = doc["equal"]
    else:
        I = _build_ideal(args.surface, args.m, args.build)
        doc = point_count(I, args.m, args.k).to_dict()
        ok = True
    if args.json:
        _emit(doc)
    elif args.cover:
        print(f"fiber {doc['fiber_points']} points, union {doc['union_points']} points, equal: {doc['equal']}")
    else:
        print(doc["count"])
    return EXIT_OK if ok else EXIT_FAIL


def cmd_suite(args) -> int:
    report = run_suite(args.surface, args.m, args.budget)
    if args.json:
        _emit(report.to_dict())
    else:
        for c in report.checks:
            print(f"{c.status:15s} {c.check_id:24s} {c.claim}")
        print(f"{'PASS' if report.ok else 'FAIL'}: {report.title}")
    return EXIT_OK if report.ok else EXIT_FAIL


# --- parser ----------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--surface", type=Surface.parse, help="d40 or d41 (default d40; d41 for lemma-g)")
    common.add_argument("-m", type=int, default=5, help="jet order")
    common.add_argument("--budget", type=int, default=DEFAULT_BUDGET, help="reduction step budget")
    common.add_argument("--json", action="store_true", help="single-line JSON output")
    common.add_argument("--dot", metavar="FILE", help="write the dual graph in DOT format")

    parser = _Parser(prog="jetfiber", description="Jet schemes of the characteristic 2 D4 surface singularities.")
    sub = parser.add_subparsers(dest="verb", required=True, parser_class=_Parser)

    p = sub.add_parser("expand", parents=[common], help="print the jet equations")
    p.add_argument("--mod", type=_triple, metavar="p,q,r", help="reduce modulo L_pqr")
    p.set_defaults(func=cmd_expand)

    p = sub.add_parser("lemma-g", parents=[common], help="check the reduction lemma over a grid")
    p.add_argument("--pmax", type=int, default=5)
    p.add_argument("--lmax", type=int, default=12)
    p.set_defaults(func=cmd_lemma_g)

    p = sub.add_parser("ideal", parents=[common], help="build, saturate and analyse one ideal")
    p.add_argument("--build", required=True, metavar="J1|J2|J3|FIBER|L:p,q,r")
    p.add_argument("--saturate", metavar="VAR")
    p.add_argument("--gb", action="store_true", help="print the reduced Groebner basis")
    p.add_argument("--dim", action="store_true", help="print the dimension")
    p.set_defaults(func=cmd_ideal)

    p = sub.add_parser("decompose", parents=[common], help="certify the four components")
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("graph", parents=[common], help="intersection poset and dual graph")
    p.set_defaults(func=cmd_graph)

    p = sub.add_parser("count", parents=[common], help="enumerate points over GF(2^k)")
    p.add_argument("-k", type=int, default=1, help="field GF(2^k)")
    p.add_argument("--build", default="FIBER", metavar="J1|J2|J3|FIBER|L:p,q,r")
    p.add_argument("--cover", action="store_true", help="compare the fiber with V(J^1) u V(J^2) u V(J^3)")
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("suite", parents=[common], help="run every check")
    p.set_defaults(func=cmd_suite)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.m < 0:
        parser.error("-m must be non-negative")
    if args.surface is None:
        args.surface = Surface.D41 if args.verb == "lemma-g" else Surface.D40
    try:
        return args.func(args)
    except BudgetExceeded as exc:
        print(f"jetfiber: budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except VerificationError as exc:
        print(f"jetfiber: verification failed: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except (UsageError, ValueError, PolynomialSyntaxError) as exc:
        print(f"jetfiber: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
