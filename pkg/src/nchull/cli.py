"""Command-line front end.

Exit codes: 0 when everything checked out, 1 when a verification found a
counterexample, 2 for usage, parse and budget errors.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import dataclass, field

from . import checks, hullposet, render, scd, trees
from .configuration import ShapeError, parse_shape
from .lattice import build_lattice, is_graded, is_rank_symmetric, lattice_json, rank_polynomial
from .oracle import BudgetError

EXIT_OK, EXIT_COUNTEREXAMPLE, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


@dataclass
class RunReport:
    command: str
    shapes: list = field(default_factory=list)
    results: dict = field(default_factory=dict)
    budget: dict = field(default_factory=dict)
    elapsed: float = 0.0
    ok: bool = True

    def to_json(self, timing: bool = False) -> str:
        d = {"command": self.command, "shapes": self.shapes, "results": self.results, "budget": self.budget, "ok": self.ok}
        if timing:
            d["elapsed"] = round(self.elapsed, 3)
        return json.dumps(d, sort_keys=True, indent=2)

    def to_text(self) -> str:
        lines = [f"{self.command}: {', '.join(self.shapes)}" if self.shapes else self.command]
        for key in sorted(self.results):
            val = self.results[key]
            if isinstance(val, bool):
                val = str(val).lower()
            elif isinstance(val, (list, tuple)):
                val = ",".join(map(str, val))
            lines.append(f"  {key}: {val}")
        return "\n".join(lines) + "\n"


def _shape(args):
    try:
        return parse_shape(args.shape)
    except ShapeError as exc:
        raise UsageError(str(exc)) from None


def _lattice(args, cfg):
    return build_lattice(cfg, max_n=args.max_n, max_partitions=args.max_partitions)


def _budget(args):
    return {"max_n": args.max_n, "max_partitions": args.max_partitions}


def cmd_stats(args):
    cfg = _shape(args)
    lat = _lattice(args, cfg)
    if args.json:
        return EXIT_OK, lattice_json(lat) + "\n"
    rep = RunReport("stats", [str(cfg)], budget=_budget(args))
    rep.results = {
        "elements": len(lat),
        "ranks": rank_polynomial(lat),
        "graded": is_graded(lat),
        "rank_symmetric": is_rank_symmetric(lat),
        "atoms": len(lat.atoms()),
        "coatoms": len(lat.coatoms()),
    }
    return EXIT_OK, rep.to_text()


def cmd_scd(args):
    cfg = _shape(args)
    lat = _lattice(args, cfg)
    try:
        dec = scd.scd(cfg, lat, blank_side=args.blank_side)
    except scd.NoBlankSideError as exc:
        raise UsageError(str(exc)) from None
    report = scd.verify_scd(lat, dec) if args.verify else None
    code = EXIT_OK if report is None or report.ok else EXIT_COUNTEREXAMPLE
    if args.json:
        d = {"shape": str(cfg), "chains": dec.chains}
        if report is not None:
            d["verify"] = report.as_dict()
        return code, json.dumps(d, sort_keys=True) + "\n"
    rep = RunReport("scd", [str(cfg)], budget=_budget(args))
    rep.results = {"chains": len(dec.chains), "chain_sizes": dec.sizes()}
    if report is not None:
        rep.results.update({k: v for k, v in report.as_dict().items() if k != "witness"})
        if report.witness:
            rep.results["witness"] = json.dumps(report.witness, sort_keys=True)
    return code, rep.to_text()


def cmd_trees(args):
    cfg = _shape(args)
    found = trees.enumerate_cg_trees(cfg, max_n=args.max_n)
    rep = RunReport("trees", [str(cfg)], budget=_budget(args))
    rep.results["count"] = len(found)
    code = EXIT_OK
    if args.list:
        rep.results["trees"] = [str(t) for t in found]
    if args.check_union or args.check_bijection:
        lat = _lattice(args, cfg)
    if args.check_bijection:
        sets = trees.maximal_boolean_atom_sets(lat, max_n=args.max_n)
        edges = {trees.atom_set_edges(lat, s) for s in sets}
        ok = len(edges) == len(sets) == len(found) and edges == {t.edges for t in found}
        rep.results["boolean_atom_sets"] = len(sets)
        rep.results["bijection"] = ok
        code = code if ok else EXIT_COUNTEREXAMPLE
    if args.check_union:
        union = trees.boolean_union_check(lat, found)
        rep.results["union_covered"] = union.covered
        if not union.covered:
            rep.results["missing"] = str(lat.elements[union.missing[0]])
            code = EXIT_COUNTEREXAMPLE
    if args.json:
        return code, json.dumps({"shape": str(cfg), **rep.results}, sort_keys=True) + "\n"
    if args.count and not (args.list or args.check_union or args.check_bijection):
        return code, f"{len(found)}\n"
    if args.list:
        body = "\n".join(rep.results.pop("trees"))
        return code, rep.to_text() + (body + "\n" if body else "")
    return code, rep.to_text()


def cmd_hullposet(args):
    n = args.n
    if n < 2:
        raise UsageError("--n must be at least 2")
    if n > args.max_n:
        raise BudgetError(f"n={n} exceeds budget max_n={args.max_n}")
    if args.dot:
        return EXIT_OK, hullposet.hasse_dot(n)
    if args.json:
        return EXIT_OK, hullposet.hasse_json(n) + "\n"
    rep = RunReport("hullposet", [f"H({n})"], budget=_budget(args))
    counts = hullposet.rank_counts(n)
    rep.results = {f"rank_{k}": c for k, c in counts.items()}
    ok = all(c == hullposet.predicted_rank_count(n, k) for k, c in counts.items())
    rep.results["matches_formula"] = ok
    return (EXIT_OK if ok else EXIT_COUNTEREXAMPLE), rep.to_text()


def cmd_check(args):
    t0 = time.perf_counter()
    rep = RunReport("check", budget={"max_n": args.max_n})
    lines = []
    for name, thunk in checks.default_suite(args.max_n):
        if args.only and name not in args.only:
            continue
        res = thunk()
        rep.results[name] = {"ok": res.ok, "cases": res.cases, "counterexample": res.counterexample}
        lines.append(f"{'PASS' if res.ok else 'FAIL'} {name} ({res.cases} cases, {res.elapsed:.2f}s)")
        if not res.ok:
            rep.ok = False
            lines.append(f"  counterexample: {res.counterexample}")
            break
    rep.elapsed = time.perf_counter() - t0
    code = EXIT_OK if rep.ok else EXIT_COUNTEREXAMPLE
    if args.json:
        return code, rep.to_json() + "\n"
    return code, "\n".join(lines) + "\n"


def cmd_render(args):
    cfg = _shape(args)
    if args.object == "hasse":
        return EXIT_OK, _lattice(args, cfg).to_dot()
    try:
        obj = render.parse_object(cfg, args.object) if args.object else None
    except (ValueError, KeyError) as exc:
        raise UsageError(str(exc)) from None
    return EXIT_OK, render.render_svg(cfg, obj)


def build_parser() -> argparse.ArgumentParser:
    def add(name, func, help, max_n=12):
        p = sub.add_parser(name, help=help)
        p.add_argument("--json", action="store_true", help="machine-readable output")
        p.add_argument("--out", metavar="FILE", help="write output to FILE instead of stdout")
        p.add_argument("--max-n", type=int, default=max_n, help=f"refuse inputs with more points (default {max_n})")
        p.add_argument("--max-partitions", type=int, default=None, help="refuse lattices with more elements")
        p.set_defaults(func=func)
        return p

    parser = argparse.ArgumentParser(prog="nchull", description="Noncrossing partition lattices of hull configurations.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = add("stats", cmd_stats, "size, rank vector, gradedness, symmetry")
    p.add_argument("--shape", required=True)

    p = add("scd", cmd_scd, "symmetric chain decomposition")
    p.add_argument("--shape", required=True)
    p.add_argument("--verify", action="store_true")
    p.add_argument("--blank-side", type=int, default=None, metavar="I", help="1-based blank side to split at")

    p = add("trees", cmd_trees, "noncrossing trees with convex geodesics", max_n=10)
    p.add_argument("--shape", required=True)
    p.add_argument("--count", action="store_true")
    p.add_argument("--list", action="store_true")
    p.add_argument("--check-union", action="store_true")
    p.add_argument("--check-bijection", action="store_true")

    p = add("hullposet", cmd_hullposet, "the poset H(n)", max_n=7)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--counts", action="store_true", help="rank counts (default)")
    p.add_argument("--dot", action="store_true")

    p = add("check", cmd_check, "run the invariant suite", max_n=6)
    p.add_argument("--only", nargs="*", metavar="NAME")

    p = add("render", cmd_render, "SVG of a partition or tree, or DOT of the lattice")
    p.add_argument("--shape", required=True)
    p.add_argument("--object", default="", help="partition (0,1|2), tree (0-1;1-2) or 'hasse'")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        code, text = args.func(args)
    except (UsageError, BudgetError) as exc:
        print(f"nchull: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
