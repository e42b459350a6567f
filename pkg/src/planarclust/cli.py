"""Command line front end.

Exit codes: 0 success, 1 verification failure, 2 usage or input errors.
All outputs are deterministic for fixed inputs, seeds, and flags, except
wall-clock fields (runtime_ms in bench CSVs, timings_ms in reports).
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import sys
import time

from .formats import (COLOURS, FormatError, parse_colouring, parse_plan,
                      write_colouring, write_plan)
from .generators import gen_fan_apex, gen_grid, gen_random_triangulation
from .pipeline import (PipelineParams, lmst_three_colour, three_colour,
                       two_colour, verify_clustering)
from .plane import validate
from .separators import minimalize_q_separator, q_separator


def _read(path: str) -> str:
    with open(path, "r", encoding="utf-8") as fh:
        return fh.read()


def _write(path: str, text: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(text)


def _load_graph(path: str):
    return parse_plan(_read(path))


def cmd_gen(args) -> int:
    if args.family == "grid":
        G = gen_grid(args.k)
    elif args.family == "fan":
        G = gen_fan_apex(args.k)
    else:
        G = gen_random_triangulation(args.n, args.seed, flips=args.flips)
    _write(args.out, write_plan(G))
    return 0


_ALGOS = {"main": three_colour, "lmst3": lmst_three_colour, "two": two_colour}


def cmd_colour(args) -> int:
    G = _load_graph(args.infile)
    if args.algo == "main":
        params = PipelineParams.defaults(G.n)
        if args.q is not None:
            params.q = args.q
        if args.t is not None:
            params.t = args.t
        if args.p is not None:
            params.p = args.p
        params.override_t = args.override_t
        col, report = three_colour(G, params)
    else:
        col, report = _ALGOS[args.algo](G)
    _write(args.out, write_colouring(col.assignment))
    if args.report:
        _write(args.report, json.dumps(report, indent=2, sort_keys=True) + "\n")
    print(f"clustering {col.clustering}")
    return 0


def cmd_separate(args) -> int:
    G = _load_graph(args.infile)
    result = q_separator(G, args.q)
    S = list(result.vertices)
    if args.minimal:
        S = minimalize_q_separator(G, args.q, S)
    _write(args.out, "".join(f"{v}\n" for v in S))
    print(f"separator size {len(S)} (q={args.q})")
    return 0


def cmd_verify(args) -> int:
    G = _load_graph(args.graph)
    bad = validate(G)
    if bad:
        for msg in bad:
            print(f"invalid graph: {msg}", file=sys.stderr)
        return 1
    if args.colouring:
        assignment = parse_colouring(_read(args.colouring), G.n)
        maxima = verify_clustering(G, assignment)
        worst = max(maxima.values(), default=0)
        print(" ".join(f"{c}={maxima.get(c, 0)}" for c in COLOURS))
        if args.max_component is not None and worst > args.max_component:
            print(f"clustering {worst} exceeds bound {args.max_component}",
                  file=sys.stderr)
            return 1
    return 0


def _bench_instance(family: str, n_or_k: int, seed: int):
    if family == "grid":
        return gen_grid(n_or_k), n_or_k * n_or_k
    if family == "fan":
        return gen_fan_apex(n_or_k), n_or_k ** 3 + 1
    return gen_random_triangulation(n_or_k, seed), n_or_k


def cmd_bench(args) -> int:
    sizes = [int(s) for s in args.sizes.split(",") if s]
    seeds = [int(s) for s in args.seeds.split(",") if s]
    algos = [a for a in args.algos.split(",") if a]
    for a in algos:
        if a not in _ALGOS:
            raise FormatError(f"unknown algo {a!r}")
    rows = []
    for size in sizes:
        for seed in seeds:
            G, n = _bench_instance(args.family, size, seed)
            for algo in algos:
                t0 = time.perf_counter()
                col, report = _ALGOS[algo](G)
                ms = 1000 * (time.perf_counter() - t0)
                stages = report.get("stages", {})
                peel = stages.get("peel", {})
                ratio_key, _ = {"main": ("ratio_n49", ""), "lmst3": ("ratio_n12", ""),
                                "two": ("ratio_n23", "")}[algo]
                flags = report.get("flags", {})
                rows.append({
                    "family": args.family, "n": n, "seed": seed, "algo": algo,
                    "clustering": col.clustering,
                    "ratio_n49": col.clustering / n ** (4.0 / 9.0) if n else 0.0,
                    "ratio": report["clustering"].get(ratio_key, 0.0),
                    "s0": stages.get("s0", {}).get("size", ""),
                    "s": stages.get("s_minimal", {}).get("size", ""),
                    "s1": stages.get("s1", {}).get("size", ""),
                    "s2": stages.get("s2", {}).get("size", ""),
                    "tw_ub_g1": peel.get("initial_max_tw_ub", ""),
                    "runtime_ms": f"{ms:.1f}",
                    "flags": ";".join(f"{k}={v}" for k, v in sorted(flags.items())),
                })
    fields = ["family", "n", "seed", "algo", "clustering", "ratio_n49",
              "s0", "s", "s1", "s2", "tw_ub_g1", "runtime_ms", "flags"]
    with open(args.csv, "w", newline="", encoding="utf-8") as fh:
        wr = csv.DictWriter(fh, fieldnames=fields, extrasaction="ignore")
        wr.writeheader()
        for row in rows:
            wr.writerow(row)
    if args.figures:
        from .render import bench_figures

        stem = args.csv[:-4] if args.csv.endswith(".csv") else args.csv
        for p in bench_figures(rows, stem):
            print(f"wrote {p}")
    print(f"wrote {args.csv} ({len(rows)} rows)")
    return 0


def cmd_svg(args) -> int:
    from .render import render_svg

    G = _load_graph(args.graph)
    assignment = None
    if args.colouring:
        assignment = parse_colouring(_read(args.colouring), G.n)
    _write(args.out, render_svg(G, assignment))
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="planarclust",
                                 description="clustered colourings of plane graphs")
    sub = ap.add_subparsers(dest="cmd", required=True)

    g = sub.add_parser("gen", help="generate graph families")
    gs = g.add_subparsers(dest="family", required=True)
    for fam, help_ in (("grid", "k x k grid"), ("fan", "fans plus apex")):
        p = gs.add_parser(fam, help=help_)
        p.add_argument("--k", type=int, required=True)
        p.add_argument("--out", required=True)
    p = gs.add_parser("tri", help="random stacked triangulation")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--flips", type=int, default=0)
    p.add_argument("--out", required=True)
    g.set_defaults(func=cmd_gen)

    c = sub.add_parser("colour", help="run a colouring algorithm")
    c.add_argument("--algo", choices=sorted(_ALGOS), default="main")
    c.add_argument("--in", dest="infile", required=True)
    c.add_argument("--out", required=True)
    c.add_argument("--report")
    c.add_argument("--q", type=float)
    c.add_argument("--t", type=float)
    c.add_argument("--p", type=float)
    c.add_argument("--override-t", action="store_true", dest="override_t")
    c.set_defaults(func=cmd_colour)

    s = sub.add_parser("separate", help="compute a q-separator")
    s.add_argument("--q", type=float, required=True)
    s.add_argument("--in", dest="infile", required=True)
    s.add_argument("--out", required=True)
    s.add_argument("--minimal", action="store_true")
    s.set_defaults(func=cmd_separate)

    v = sub.add_parser("verify", help="validate a graph and optionally a colouring")
    v.add_argument("--graph", required=True)
    v.add_argument("--colouring")
    v.add_argument("--max-component", type=float, dest="max_component")
    v.set_defaults(func=cmd_verify)

    b = sub.add_parser("bench", help="benchmark algorithms over families")
    b.add_argument("--family", choices=["grid", "fan", "tri"], required=True)
    b.add_argument("--sizes", required=True,
                   help="comma separated; k for grid/fan, n for tri")
    b.add_argument("--seeds", default="1")
    b.add_argument("--algos", default="main,lmst3,two")
    b.add_argument("--csv", required=True)
    b.add_argument("--figures", action=argparse.BooleanOptionalAction, default=True)
    b.set_defaults(func=cmd_bench)

    r = sub.add_parser("svg", help="draw a graph (needs stored coordinates)")
    r.add_argument("--graph", required=True)
    r.add_argument("--colouring")
    r.add_argument("--out", required=True)
    r.set_defaults(func=cmd_svg)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.func(args)
    except (FormatError, FileNotFoundError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
