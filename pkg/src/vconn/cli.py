"""vconn command line: check, sparsify, oracle, gen, bench."""

from __future__ import annotations

import argparse
import csv
import io as _io
import json
import sys
import time
from fractions import Fraction
from pathlib import Path

from . import flow
from .gen import connected_graphs, gnp, planted_cut
from .graph import Graph
from .io import GraphFormatError, format_graph, parse_graph, parse_id_list, relabel, write_graph
from .pipeline import MainConfig, main, vertex_sparsify
from .roc import RocConfig

SCHEMA = 1
VERIFY_LIMIT = 60
TABLE_LIMIT = 6
BENCH_COLUMNS = ("n", "m", "c", "wall_time", "levels", "fallback")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(1)


def _emit(obj) -> None:
    sys.stdout.write(json.dumps(obj) + "\n")


def _fraction(text: str) -> Fraction:
    try:
        val = Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from None
    if not 0 < val < 1:
        raise argparse.ArgumentTypeError("phi must lie strictly between 0 and 1")
    return val


def _ids(g: Graph, text: str, what: str) -> list[int]:
    ids = parse_id_list(text)
    missing = [v for v in ids if v not in g.vertex_set()]
    if missing:
        raise UsageError(f"{what}: vertex {missing[0]} not in graph")
    return ids


def _vertex(g: Graph, v: int, what: str) -> int:
    if v not in g.vertex_set():
        raise UsageError(f"{what}: vertex {v} not in graph")
    return v


def _main_config(args, sink=None) -> MainConfig:
    return MainConfig(base_factor=args.base_factor, phi=args.phi, roc=RocConfig(sink=sink))


# check


def cmd_check(args) -> int:
    g = parse_graph(args.graph)
    if args.c < 1:
        raise UsageError("--c must be at least 1")
    sink = [] if args.trace else None
    stats: dict = {}
    res = main(g, args.c, _main_config(args, sink), stats)
    out = {
        "schema": SCHEMA,
        "n": g.n,
        "m": g.m,
        "c": args.c,
        "result": "cut" if res.found else "connected",
        "separator": sorted(res.separator) if res.found else None,
        "fallback_triggered": stats["fallback_triggered"],
        "stats": stats if args.stats else {"levels": stats["levels"], "route": stats["route"]},
    }
    if args.verify:
        if g.n > VERIFY_LIMIT:
            out["verified"] = None
        else:
            truth = flow.min_vertex_separator(g, args.c)
            ok = truth.found == res.found
            if res.found:
                S = res.separator
                ok = ok and len(S) < args.c and g.is_separator(S)
            out["verified"] = ok
    if args.trace:
        Path(args.trace).write_text(json.dumps({"schema": SCHEMA, "traces": sink}) + "\n")
    _emit(out)
    return 2 if res.found else 0


# sparsify


def _equivalence_table(g: Graph, h: Graph, T: list[int], c: int) -> list[dict]:
    subsets = [[t for i, t in enumerate(T) if m >> i & 1] for m in range(1, 1 << len(T))]
    rows = []
    for i, A in enumerate(subsets):
        for B in subsets[i:]:
            a = min(flow.mu(g, A, B, c), c)
            b = min(flow.mu(h, A, B, c), c)
            rows.append({"A": A, "B": B, "mu_g": a, "mu_h": b, "ok": a == b})
    return rows


def cmd_sparsify(args) -> int:
    g = parse_graph(args.graph)
    if args.c < 1:
        raise UsageError("--c must be at least 1")
    T = sorted(set(_ids(g, args.terminals, "--terminals")))
    if not T:
        raise UsageError("--terminals must not be empty")
    sp = vertex_sparsify(g, T, args.c, phi=args.phi)
    h = sp.graph
    h_out, old = relabel(h)
    new = {v: i for i, v in enumerate(old)}
    write_graph(h_out, args.out, comments=[f"sparsified c={args.c} terminals={len(T)}"])
    manifest = {
        "schema": SCHEMA,
        "c": args.c,
        "terminals": [new[t] for t in T],
        "vertices": h.n,
        "edges": h.m,
        "edge_bound_ok": h.m <= args.c * h.n,
        "original_ids": old,
        "cover_fallback": sp.cover.fallback,
    }
    if args.verify:
        if len(T) > TABLE_LIMIT:
            raise UsageError(f"--verify needs at most {TABLE_LIMIT} terminals")
        table = _equivalence_table(g, h, T, args.c)
        manifest["equivalent"] = all(r["ok"] for r in table)
        manifest["table"] = table
    _emit(manifest)
    return 0


# oracle


def cmd_oracle(args) -> int:
    g = parse_graph(args.graph)
    cap = g.n if args.cap is None else args.cap
    out: dict = {"schema": SCHEMA, "query": args.query}
    if args.query == "kappa":
        if (args.x is None) != (args.y is None):
            raise UsageError("give both --x and --y, or neither")
        if args.x is None:
            res = flow.min_vertex_separator(g, cap)
            out["kappa"] = len(res.separator) if res.found else min(cap, max(g.n - 1, 0))
        else:
            x, y = _vertex(g, args.x, "--x"), _vertex(g, args.y, "--y")
            if x == y or g.has_edge(x, y):
                raise UsageError("--x and --y must be distinct and non-adjacent")
            res = flow.kappa_pair(g, x, y, cap)
            out["kappa"] = len(res.separator) if res.found else None
        out["separator"] = sorted(res.separator) if res.found else None
    elif args.query == "mu":
        A, B = _ids(g, args.A, "--A"), _ids(g, args.B, "--B")
        res = flow.min_weak_separator(g, A, B, cap)
        out["mu"] = len(res.separator) if res.found else None
        out["separator"] = sorted(res.separator) if res.found else None
    elif args.query == "steiner":
        cut = flow.min_steiner_cut(g, _ids(g, args.terminals, "--terminals"), cap)
        out["cut"] = None if cut is None else cut.as_dict()
    else:
        T = _ids(g, args.terminals, "--terminals")
        t = _vertex(g, args.t, "--t")
        if t not in T:
            raise UsageError("--t must be one of the terminals")
        cut = flow.min_isolating_cut(g, t, T, cap, maximal=args.maximal)
        out["cut"] = None if cut is None else cut.as_dict()
    _emit(out)
    return 0


# gen


def cmd_gen(args) -> int:
    if args.family == "connected":
        if args.n < 1 or args.n > 8:
            raise UsageError("connected family supports 1 <= n <= 8")
        graphs = connected_graphs(args.n)
        if args.out is None:
            _emit({"schema": SCHEMA, "family": "connected", "n": args.n, "count": len(graphs)})
            return 0
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        for i, g in enumerate(graphs):
            write_graph(g, out / f"connected-n{args.n}-{i:05d}.txt", comments=[f"connected n={args.n} #{i}"])
        _emit({"schema": SCHEMA, "family": "connected", "n": args.n, "count": len(graphs), "dir": str(out)})
        return 0
    if args.family == "gnp":
        g = gnp(args.n, args.p, args.seed)
        note = f"gnp n={args.n} p={args.p} seed={args.seed}"
    else:
        try:
            g = planted_cut(args.n, args.cut_size, args.seed, args.p)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        note = f"planted-cut n={args.n} cut-size={args.cut_size} seed={args.seed}"
    text = format_graph(g, comments=[note])
    if args.out is None:
        sys.stdout.write(text)
    else:
        Path(args.out).write_text(text)
    return 0


# bench


def _bench_files(paths: list[str]) -> list[Path]:
    files = []
    for p in map(Path, paths):
        files.extend(sorted(p.glob("*.txt")) if p.is_dir() else [p])
    return files


def cmd_bench(args) -> int:
    if any(c < 1 for c in args.c):
        raise UsageError("--c values must be at least 1")
    if args.plot and args.out is None:
        raise UsageError("--plot needs --out (the figure is written next to the CSV)")
    rows = []
    for path in _bench_files(args.graphs):
        g = parse_graph(path)
        for c in args.c:
            stats: dict = {}
            start = time.perf_counter()
            main(g, c, _main_config(args), stats)
            wall = time.perf_counter() - start
            rows.append({"n": g.n, "m": g.m, "c": c, "wall_time": wall,
                         "levels": stats["levels"], "fallback": int(stats["fallback_triggered"])})
    buf = _io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(BENCH_COLUMNS)
    for r in rows:
        writer.writerow([r["n"], r["m"], r["c"], f"{r['wall_time']:.6f}", r["levels"], r["fallback"]])
    if args.out is None:
        sys.stdout.write(buf.getvalue())
    else:
        out = Path(args.out)
        out.write_text(buf.getvalue())
        if args.plot:
            from .report import plot_bench
            plot_bench(rows, out.with_suffix(".png"))
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="vconn", description="Vertex connectivity for small c.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def tuning(sp):
        sp.add_argument("--phi", type=_fraction, default=None, help="expansion override, e.g. 1/20")
        sp.add_argument("--base-factor", type=int, default=100,
                        help="solve directly once n <= base-factor * c (default 100)")

    sp = sub.add_parser("check", help="decide c-connectivity")
    sp.add_argument("graph")
    sp.add_argument("--c", type=int, required=True)
    tuning(sp)
    sp.add_argument("--verify", action="store_true", help=f"cross-check with flows when n <= {VERIFY_LIMIT}")
    sp.add_argument("--trace", metavar="PATH", help="write recursion trees as JSON")
    sp.add_argument("--stats", action="store_true", help="full per-level statistics")
    sp.set_defaults(func=cmd_check)

    sp = sub.add_parser("sparsify", help="terminal sparsifier")
    sp.add_argument("graph")
    sp.add_argument("--c", type=int, required=True)
    sp.add_argument("--terminals", required=True, help='"0,3,7" or @file')
    sp.add_argument("--out", required=True, help="output graph file")
    sp.add_argument("--phi", type=_fraction, default=None)
    sp.add_argument("--verify", action="store_true", help="emit the equivalence table")
    sp.set_defaults(func=cmd_sparsify)

    sp = sub.add_parser("oracle", help="flow queries")
    sp.add_argument("query", choices=["kappa", "mu", "steiner", "isolating"])
    sp.add_argument("graph")
    sp.add_argument("--x", type=int)
    sp.add_argument("--y", type=int)
    sp.add_argument("--A", default="")
    sp.add_argument("--B", default="")
    sp.add_argument("--t", type=int)
    sp.add_argument("--terminals", default="")
    sp.add_argument("--cap", type=int, default=None)
    sp.add_argument("--maximal", action="store_true")
    sp.set_defaults(func=cmd_oracle)

    sp = sub.add_parser("gen", help="deterministic corpora")
    sp.add_argument("--family", choices=["connected", "gnp", "planted-cut"], required=True)
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--p", type=float, default=0.3)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--cut-size", type=int, default=2)
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_gen)

    sp = sub.add_parser("bench", help="time the pipeline over graph files")
    sp.add_argument("graphs", nargs="+", help="files or directories of *.txt")
    sp.add_argument("--c", type=int, nargs="+", default=[1, 2, 3])
    tuning(sp)
    sp.add_argument("--out", help="CSV path (default standard output)")
    sp.add_argument("--plot", action="store_true", help="also write a PNG next to the CSV")
    sp.set_defaults(func=cmd_bench)
    return p


def run(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, GraphFormatError, OSError, ValueError, RuntimeError) as exc:
        print(f"vconn {args.command}: {exc}", file=sys.stderr)
        return 1


def entry() -> None:
    raise SystemExit(run())
