"""Command-line front end.

Exit codes: 0 completed, 1 property violated (hole or violation found),
2 usage or input error, 3 budget exceeded.
"""

from __future__ import annotations

import argparse
import glob
import hashlib
import json
import os
import sys
import time
from pathlib import Path

from . import __version__
from .cutlattice import (
    HomPoint,
    cut_generators,
    facet_inequalities,
    format_point,
    in_cone,
    in_cone_nonhomogeneous,
    in_lattice,
    in_lattice_nonhomogeneous,
    parse_point,
)
from .errors import Budget, BudgetExceeded, CutPolyError, GraphFormatError
from .graph import (
    CliqueSumSpec,
    Graph,
    delete_edge,
    format_graph,
    make_named,
    parse_graph_name,
    read_graph,
)
from .lifting import format_shores, lift_deletion, merge_clique_sum, parse_shores, shores_total
from .minors import has_minor
from .normality import (
    NOT_NORMAL,
    UNKNOWN,
    classify_normality,
    decompose,
    decompose_nonhomogeneous,
    hilbert_check,
    verify_normality,
)

SCHEMA = 1
EXIT_OK, EXIT_VIOLATION, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3


class UsageError(Exception):
    pass


def graph_digest(g: Graph) -> dict:
    return {"n": g.n, "m": g.m,
            "checksum": hashlib.sha256(format_graph(g).encode()).hexdigest()[:16]}


def _read_text_or_literal(arg: str) -> str:
    p = Path(arg)
    if p.is_file():
        return p.read_text()
    return arg


def _load_point(arg: str, allow_fraction: bool = False):
    try:
        return parse_point(_read_text_or_literal(arg), allow_fraction)
    except CutPolyError as exc:
        raise UsageError(f"bad point {arg!r}: {exc}") from None


def _parse_edge(g: Graph, text: str) -> int:
    try:
        u, v = (int(t) for t in text.replace("-", ",").split(","))
        return g.index(u, v)
    except (ValueError, KeyError):
        raise UsageError(f"{text!r} is not an edge of the graph") from None


def _parse_shared(text: str) -> tuple[tuple[int, int], ...]:
    pairs = []
    for item in text.split(","):
        item = item.strip()
        if not item:
            continue
        try:
            v, w = (int(t) for t in item.split(":"))
        except ValueError:
            raise UsageError(f"bad shared pair {item!r}; expected V:W") from None
        pairs.append((v, w))
    return tuple(pairs)


def _pattern(name: str) -> Graph:
    if Path(name).is_file():
        return read_graph(name)
    return parse_graph_name(name)


# ---------------------------------------------------------------------------
# subcommands: each returns (result payload, exit code, text lines)

def cmd_gen(args, budget):
    params = list(args.params)
    try:
        g = make_named(args.name, params) if params or args.name.lower() in ("v8", "prism", "wagner") \
            else parse_graph_name(args.name)
    except CutPolyError:
        g = make_named(args.name, params)
    text = format_graph(g)
    if args.output:
        Path(args.output).write_text(text)
        lines = [f"wrote {args.output}: n={g.n} m={g.m}"]
    else:
        lines = [text.rstrip("\n")]
    return {"graph": {"n": g.n, "edges": [list(e) for e in g.edges]}, "output": args.output}, EXIT_OK, lines, g


def cmd_cuts(args, budget):
    g = read_graph(args.file)
    basis = cut_generators(g)
    gens = [{"shore": sorted(c.shore), "x": list(c.coords)} for c in basis.generators]
    lines = [f"{' '.join(map(str, c.coords))}  # S={{{','.join(map(str, sorted(c.shore)))}}}"
             for c in basis.generators]
    return {"count": len(gens), "generators": gens}, EXIT_OK, lines, g


def cmd_facets(args, budget):
    g = read_graph(args.file)
    fs = facet_inequalities(g)
    ineqs = [{"cycle": list(ci.cycle.vertices), "odd_set": sorted(ci.odd_set),
              "coefficients": ci.coefficients(g.m), "rhs_per_alpha": ci.rhs}
             for ci in fs.cycle_inequalities]
    result = {"cycle_inequalities": len(ineqs), "box": fs.n_box, "total": len(fs), "inequalities": ineqs}
    lines = [f"{len(ineqs)} odd-cycle inequalities + {fs.n_box} box bounds = {len(fs)}"]
    lines += [f"{' '.join(f'{c:+d}' for c in i['coefficients'])} <= {i['rhs_per_alpha']}*alpha"
              for i in ineqs]
    return result, EXIT_OK, lines, g


def cmd_member(args, budget):
    g = read_graph(args.file)
    x, alpha = _load_point(args.point, allow_fraction=args.oracle == "cone")
    if len(x) != g.m:
        raise UsageError(f"point has {len(x)} coordinates, graph has {g.m} edges")
    result: dict = {"oracle": args.oracle, "homogeneous": alpha is not None}
    if alpha is None:
        if args.oracle == "lattice":
            ok = in_lattice_nonhomogeneous(g, x)
        elif args.oracle == "cone":
            ok = in_cone_nonhomogeneous(g, x)
        else:
            parts = decompose_nonhomogeneous(g, x, budget)
            ok = parts is not None
            if ok:
                gens = cut_generators(g).generators
                result["decomposition"] = [sorted(gens[i].shore) for i in parts]
    else:
        p = HomPoint(tuple(x), alpha)
        if args.oracle == "lattice":
            ok = in_lattice(g, p)
        elif args.oracle == "cone":
            ok = in_cone(g, p)
        else:
            dec = decompose(g, p, budget, seed=args.seed)
            ok = dec is not None
            if ok:
                result["decomposition"] = [sorted(s) for s in dec.shores(g)]
    result["member"] = ok
    lines = [f"{args.oracle}: {'member' if ok else 'not a member'}"]
    if "decomposition" in result:
        lines += ["shores:"] + ["  " + " ".join(map(str, s)) for s in result["decomposition"]]
    return result, EXIT_OK, lines, g


def _verdict_lines(v) -> list[str]:
    lines = [f"status: {v.status}"]
    if v.rules_fired:
        lines.append(f"rules: {', '.join(v.rules_fired)}")
    lines.append(f"search degree: {v.search_degree}")
    if v.hole:
        lines.append(f"hole: {format_point(v.hole.point.x, v.hole.point.alpha)}")
    if v.minor_witness:
        lines.append(f"K5 minor branch sets: {v.minor_witness.as_lists()}")
    return lines


def cmd_normality(args, budget):
    g = read_graph(args.file)
    v = verify_normality(g, args.max_degree, full=args.full, budget=budget, n_jobs=args.threads)
    result = v.as_dict()
    if v.hole is not None:
        result["hole_reverified"] = v.hole.reverify(g)
    code = EXIT_VIOLATION if v.status == NOT_NORMAL else EXIT_BUDGET if v.status == UNKNOWN else EXIT_OK
    return result, code, _verdict_lines(v), g


def cmd_classify(args, budget):
    g = read_graph(args.file)
    v = classify_normality(g, budget if budget.limit is not None else None)
    code = EXIT_OK
    if v.status == NOT_NORMAL:
        code = EXIT_VIOLATION
    elif "budget-exceeded" in v.rules_fired:
        code = EXIT_BUDGET
    return v.as_dict(), code, _verdict_lines(v), g


def cmd_hilbert(args, budget):
    g = read_graph(args.file)
    v = hilbert_check(g, args.max_degree, budget)
    code = EXIT_VIOLATION if v.status == "violation" else EXIT_OK
    lines = [f"{v.status} {v.bound}"]
    if v.witness is not None:
        lines.append(f"witness: {format_point(v.witness)}")
    return v.as_dict(), code, lines, g


def cmd_lift_delete(args, budget):
    g = read_graph(args.file)
    e0 = _parse_edge(g, args.edge)
    x, alpha = _load_point(args.point)
    if alpha is None:
        raise UsageError("lift-delete needs a homogeneous point 'x ; alpha'")
    p = lift_deletion(g, e0, x, alpha)
    h, _ = delete_edge(g, e0)
    result = {"edge": list(g.edges[e0]), "gamma": p.x[e0], "point": p.as_dict(),
              "in_lattice": in_lattice(g, p), "in_cone": in_cone(g, p)}
    lines = [f"gamma = {p.x[e0]}", f"lifted: {format_point(p.x, p.alpha)}"]
    return result, EXIT_OK, lines, g


def cmd_merge(args, budget):
    g1, g2 = read_graph(args.file1), read_graph(args.file2)
    spec = CliqueSumSpec(g1, g2, _parse_shared(args.shared))
    dec1 = parse_shores(_read_text_or_literal(args.dec1))
    dec2 = parse_shores(_read_text_or_literal(args.dec2))
    merged = merge_clique_sum(spec, dec1, dec2)
    g = spec.result
    total = shores_total(g, merged)
    result = {"graph": {"n": g.n, "edges": [list(e) for e in g.edges]},
              "shores": [sorted(S) for S in merged], "target": total.as_dict()}
    lines = format_shores(merged).rstrip("\n").splitlines()
    lines.append(f"# target: {format_point(total.x, total.alpha)}")
    return result, EXIT_OK, lines, g


def cmd_minor(args, budget):
    g = read_graph(args.file)
    pattern = _pattern(args.pattern)
    w = has_minor(g, pattern, budget)
    result = {"pattern": args.pattern, "minor": w is not None,
              "branch_sets": {str(k): v for k, v in w.as_lists().items()} if w else None}
    lines = [f"{args.pattern}: " + (f"minor, branch sets {w.as_lists()}" if w else "no minor")]
    return result, EXIT_OK, lines, g


def cmd_explore(args, budget):
    files = sorted(set(glob.glob(args.pattern)))
    if not files:
        raise UsageError(f"no files match {args.pattern!r}")
    records, worst = [], EXIT_OK
    for path in files:
        g = read_graph(path)
        b = Budget(budget.limit, "explore")
        rec: dict = {"file": path, "input": graph_digest(g)}
        cls = classify_normality(g, b if b.limit is not None else None)
        rec["classify"] = cls.as_dict()
        status = cls.status
        if cls.status == UNKNOWN or args.always_search:
            v = verify_normality(g, args.max_degree, budget=b, n_jobs=args.threads)
            rec["search"] = v.as_dict()
            if v.status == NOT_NORMAL:
                status = NOT_NORMAL
            elif cls.status == UNKNOWN:
                status = v.status
        rec["status"] = status
        if status == NOT_NORMAL:
            worst = EXIT_VIOLATION
        elif status == UNKNOWN and worst == EXIT_OK and "budget-exceeded" in cls.rules_fired:
            worst = EXIT_BUDGET
        budget.tick(b.used)
        records.append(rec)
    lines = [f"{r['file']}: {r['status']}" for r in records]
    return {"graphs": records}, worst, lines, None


# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["json", "text"], default=argparse.SUPPRESS)
    common.add_argument("--threads", type=int, default=argparse.SUPPRESS,
                        help="worker processes for hole scans (default: all cores)")
    common.add_argument("--budget", type=int, default=argparse.SUPPRESS, help="search node budget")
    common.add_argument("--seed", type=int, default=argparse.SUPPRESS,
                        help="seed for randomized helpers; certification is deterministic")

    parser = argparse.ArgumentParser(prog="cutpoly", parents=[common],
                                     description="Cut polytopes of graphs: membership, normality, lifting.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", parents=[common], help="write a catalog graph")
    p.add_argument("name")
    p.add_argument("params", nargs="*", type=int)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("cuts", parents=[common], help="list cut vectors")
    p.add_argument("file")
    p.set_defaults(func=cmd_cuts)

    p = sub.add_parser("facets", parents=[common], help="odd-cycle inequality system")
    p.add_argument("file")
    p.set_defaults(func=cmd_facets)

    p = sub.add_parser("member", parents=[common], help="membership of a point")
    p.add_argument("file")
    p.add_argument("--point", required=True)
    p.add_argument("--oracle", choices=["lattice", "cone", "semigroup"], required=True)
    p.set_defaults(func=cmd_member)

    p = sub.add_parser("normality", parents=[common], help="hole search")
    p.add_argument("file")
    p.add_argument("--max-degree", type=int, default=3)
    p.add_argument("--full", action="store_true", help="search to degree |E|-1 and certify")
    p.set_defaults(func=cmd_normality)

    p = sub.add_parser("classify", parents=[common], help="rule-based classification")
    p.add_argument("file")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("hilbert", parents=[common], help="nonhomogeneous Hilbert basis check")
    p.add_argument("file")
    p.add_argument("--max-degree", type=int, required=True)
    p.set_defaults(func=cmd_hilbert)

    p = sub.add_parser("lift-delete", parents=[common], help="lift a point across an edge deletion")
    p.add_argument("file")
    p.add_argument("--edge", required=True, help="deleted edge as u,v")
    p.add_argument("--point", required=True, help="point on G - e as 'x ; alpha'")
    p.set_defaults(func=cmd_lift_delete)

    p = sub.add_parser("merge", parents=[common], help="merge decompositions across a clique sum")
    p.add_argument("file1")
    p.add_argument("file2")
    p.add_argument("--shared", required=True, help="shared vertex pairs V1:W1,V2:W2,...")
    p.add_argument("--dec1", required=True)
    p.add_argument("--dec2", required=True)
    p.set_defaults(func=cmd_merge)

    p = sub.add_parser("minor", parents=[common], help="minor containment")
    p.add_argument("file")
    p.add_argument("--pattern", required=True)
    p.set_defaults(func=cmd_minor)

    p = sub.add_parser("explore", parents=[common], help="classify and search many graphs (NDJSON)")
    p.add_argument("pattern", metavar="FILE_GLOB")
    p.add_argument("--max-degree", type=int, default=3)
    p.add_argument("--always-search", action="store_true")
    p.set_defaults(func=cmd_explore)
    return parser


def _emit(report: dict, lines: list[str], fmt: str, out) -> None:
    if fmt == "json":
        out.write(json.dumps(report, sort_keys=True) + "\n")
    else:
        for line in lines:
            out.write(line + "\n")


def run(argv: list[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    args.format = getattr(args, "format", "text")
    args.threads = getattr(args, "threads", None) or os.cpu_count() or 1
    args.seed = getattr(args, "seed", None)
    budget = Budget(getattr(args, "budget", None), args.command)
    echo = {k: v for k, v in sorted(vars(args).items()) if k not in ("func", "format", "threads")}
    t0 = time.perf_counter()
    try:
        result, code, lines, g = args.func(args, budget)
    except GraphFormatError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except BudgetExceeded as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        if args.format == "json":
            _emit({"schema": SCHEMA, "command": echo, "result": {"status": "budget_exceeded"},
                   "budget": {"limit": budget.limit, "used": budget.used}}, [], "json", out)
        return EXIT_BUDGET
    except (UsageError, CutPolyError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    elapsed = time.perf_counter() - t0

    if args.command == "explore" and args.format == "json":
        for rec in result["graphs"]:
            out.write(json.dumps({"schema": SCHEMA, **rec}, sort_keys=True) + "\n")
        return code
    report = {
        "schema": SCHEMA,
        "command": echo,
        "input": graph_digest(g) if g is not None else None,
        "result": result,
        "timing": {"seconds": round(elapsed, 6)},
        "budget": {"limit": budget.limit, "used": budget.used},
    }
    _emit(report, lines, args.format, out)
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
