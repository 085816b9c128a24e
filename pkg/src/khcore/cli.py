"""Command-line interface: decomposition and its applications over edge-list files."""

from __future__ import annotations

import argparse
import json
import logging
import math
import sys
import time
from dataclasses import dataclass

import numpy as np

from .clubs import max_h_club
from .coloring import greedy_distance_h_coloring
from .decomposition import ALGORITHMS, bound_error, decompose
from .dense import NoSolutionError, cocktail_party, densest_h_core
from .graph import Graph, GraphError, ParseError, load_edge_list
from .landmarks import STRATEGIES, bfs_distances, estimate_distance, sample_pairs, select_landmarks

EXIT_OK, EXIT_USAGE, EXIT_IO, EXIT_PARSE = 0, 1, 2, 3

log = logging.getLogger("khcore")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


@dataclass
class RunConfig:
    input: str
    h: int = 2
    algorithm: str = "lbub"
    partition_size: int = 1
    threads: int = 1
    seed: int = 0
    output: str | None = None
    verbose: bool = False

    def validate(self) -> None:
        if self.h < 1:
            raise UsageError("--h must be >= 1")
        if self.partition_size < 1:
            raise UsageError("--partition-size must be >= 1")
        if self.threads < 1:
            raise UsageError("--threads must be >= 1")


def _positive(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")
    if v < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1, got {v}")
    return v


def _common(p: argparse.ArgumentParser, multi_h: bool = False) -> None:
    p.add_argument("input", help="edge list file (two labels per line, # or % comments)")
    if multi_h:
        p.add_argument("--h", type=_positive, action="append", dest="hs",
                       help="distance threshold; repeat for several (default 1..5)")
    else:
        p.add_argument("--h", type=_positive, default=2, help="distance threshold (default 2)")
    p.add_argument("--algorithm", choices=ALGORITHMS, default="lbub")
    p.add_argument("--partition-size", type=_positive, default=1,
                   help="number of upper-bound values per interval for lbub")
    p.add_argument("--threads", type=_positive, default=1)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--output", "-o", help="write results here instead of stdout")
    p.add_argument("--verbose", "-v", action="store_true")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="khcore", description="Distance-generalized (k,h)-core decomposition.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    _common(sub.add_parser("decompose", help="per-vertex core index as TSV"))
    _common(sub.add_parser("stats", help="max core index and distinct cores per h"), multi_h=True)
    _common(sub.add_parser("hclub", help="maximum h-club"))
    _common(sub.add_parser("densest", help="densest core by average h-degree"))
    p = sub.add_parser("community", help="cocktail-party community for query vertices")
    _common(p)
    p.add_argument("--query", "-q", nargs="+", required=True, help="query vertex labels")
    _common(sub.add_parser("color", help="greedy distance-h coloring"))
    p = sub.add_parser("landmarks", help="landmark distance bounds on sampled pairs")
    _common(p)
    p.add_argument("--ell", type=_positive, default=10, help="number of landmarks")
    p.add_argument("--strategy", choices=STRATEGIES, default="core")
    p.add_argument("--pairs", type=int, default=100, help="number of random pairs to sample")
    p.add_argument("--pair", nargs=2, action="append", metavar=("S", "T"),
                   help="explicit pair of labels (repeatable); replaces sampling")
    return parser


def _config(args) -> RunConfig:
    cfg = RunConfig(args.input, getattr(args, "h", 2) or 2, args.algorithm, args.partition_size,
                    args.threads, args.seed, args.output, args.verbose)
    cfg.validate()
    return cfg


def _label(g: Graph, v: int):
    return g.label_of(int(v))


def _json_value(x):
    if isinstance(x, float) and math.isinf(x):
        return None
    return x


def _jsonl(records) -> str:
    lines = []
    for rec in records:
        rec = {k: _json_value(v) for k, v in rec.items()}
        lines.append(json.dumps(rec, sort_keys=False))
    return "\n".join(lines) + "\n"


def _decompose(g: Graph, cfg: RunConfig, diagnostics=False, algorithm=None):
    return decompose(g, cfg.h, algorithm or cfg.algorithm, s=cfg.partition_size,
                     threads=cfg.threads, diagnostics=diagnostics)


def cmd_decompose(g: Graph, cfg: RunConfig, args) -> str:
    t0 = time.perf_counter()
    res = _decompose(g, cfg, diagnostics=cfg.verbose)
    wall = time.perf_counter() - t0
    cols = []
    if cfg.verbose and res.diagnostics:
        cols = sorted(res.diagnostics)
    out = []
    if cols:
        out.append("\t".join(["vertex", "core"] + cols))
    for v in range(g.n):
        row = [str(_label(g, v)), str(int(res.core[v]))]
        row += [str(int(res.diagnostics[c][v])) for c in cols]
        out.append("\t".join(row))
    print(f"max_core={res.max_core} distinct_cores={res.distinct_cores} bound_visits={res.bound_visits} "
          f"distance_computations={res.distance_computations} seconds={wall:.3f}", file=sys.stderr)
    if cols:
        for c in cols:
            err, exact = bound_error(res.diagnostics[c], res.core)
            print(f"{c}: mean_relative_error={err:.4f} exact_fraction={exact:.4f}", file=sys.stderr)
    return "\n".join(out) + "\n"


def cmd_stats(g: Graph, cfg: RunConfig, args) -> str:
    hs = args.hs or [1, 2, 3, 4, 5]
    out = ["h\tmax_core\tdistinct_cores\tdistance_computations"]
    for h in hs:
        res = decompose(g, h, cfg.algorithm, s=cfg.partition_size, threads=cfg.threads)
        out.append(f"{h}\t{res.max_core}\t{res.distinct_cores}\t{res.distance_computations}")
    return "\n".join(out) + "\n"


def cmd_hclub(g: Graph, cfg: RunConfig, args) -> str:
    res = _decompose(g, cfg)
    cert = max_h_club(g, cfg.h, res)
    return _jsonl([{"h": cfg.h, "size": cert.size, "verified": bool(cert.verified),
                    "members": [_label(g, v) for v in cert.members]}])


def cmd_densest(g: Graph, cfg: RunConfig, args) -> str:
    res = _decompose(g, cfg)
    d = densest_h_core(g, cfg.h, res)
    return _jsonl([{"h": cfg.h, "core_index": d.core_index, "density": d.density,
                    "size": len(d.members), "members": [_label(g, v) for v in d.members]}])


def cmd_community(g: Graph, cfg: RunConfig, args) -> str:
    q = [g.id_of(lab) for lab in args.query]
    res = _decompose(g, cfg)
    c = cocktail_party(g, q, cfg.h, res)
    return _jsonl([{"h": cfg.h, "query": list(args.query), "k": c.k, "min_h_degree": c.min_h_degree,
                    "size": len(c.members), "members": [_label(g, v) for v in c.members]}])


def cmd_color(g: Graph, cfg: RunConfig, args) -> str:
    # a full peeling order is needed, which lbub does not produce
    algo = cfg.algorithm if cfg.algorithm != "lbub" else "lb"
    res = _decompose(g, cfg, algorithm=algo)
    col = greedy_distance_h_coloring(g, cfg.h, res)
    return _jsonl([{"h": cfg.h, "num_colors": col.num_colors, "bound": 1 + res.max_core,
                    "colors": {str(_label(g, v)): int(col.color[v]) for v in range(g.n)}}])


def cmd_landmarks(g: Graph, cfg: RunConfig, args) -> str:
    res = _decompose(g, cfg) if args.strategy == "core" else None
    idx = select_landmarks(g, cfg.h, args.ell, seed=cfg.seed, strategy=args.strategy, result=res)
    if args.pair:
        pairs = [(g.id_of(s), g.id_of(t)) for s, t in args.pair]
    else:
        pairs = sample_pairs(g.n, args.pairs, seed=cfg.seed)
    records = [{"landmarks": [_label(g, u) for u in idx.landmarks], "strategy": idx.strategy}]
    true_cache: dict[int, np.ndarray] = {}
    for s, t in pairs:
        est = estimate_distance(idx, s, t)
        if s not in true_cache:
            true_cache[s] = bfs_distances(g, s)
        true = float(true_cache[s][t])
        records.append({"s": _label(g, s), "t": _label(g, t), "lower": est.lower,
                        "upper": est.upper, "estimate": est.estimate, "true": true})
    return _jsonl(records)


COMMANDS = {
    "decompose": cmd_decompose,
    "stats": cmd_stats,
    "hclub": cmd_hclub,
    "densest": cmd_densest,
    "community": cmd_community,
    "color": cmd_color,
    "landmarks": cmd_landmarks,
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(name)s: %(message)s")
    try:
        cfg = _config(args)
    except UsageError as e:
        print(f"khcore: error: {e}", file=sys.stderr)
        return EXIT_USAGE
    try:
        g = load_edge_list(cfg.input)
    except ParseError as e:
        print(f"khcore: parse error: {e}", file=sys.stderr)
        return EXIT_PARSE
    except OSError as e:
        print(f"khcore: cannot read {cfg.input}: {e.strerror or e}", file=sys.stderr)
        return EXIT_IO
    log.info("loaded %s: n=%d m=%d", cfg.input, g.n, g.m)
    try:
        text = COMMANDS[args.command](g, cfg, args)
    except (GraphError, NoSolutionError, ValueError) as e:
        print(f"khcore: error: {e}", file=sys.stderr)
        return EXIT_USAGE
    try:
        if cfg.output:
            with open(cfg.output, "w", encoding="utf-8") as fh:
                fh.write(text)
        else:
            sys.stdout.write(text)
    except OSError as e:
        print(f"khcore: cannot write {cfg.output}: {e.strerror or e}", file=sys.stderr)
        return EXIT_IO
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
