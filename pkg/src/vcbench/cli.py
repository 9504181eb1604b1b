"""Command-line interface.

Subcommands: profile, partition, metrics, run, bench, correlate.
"""

from __future__ import annotations

import argparse
import os
import sys

from . import algorithms as alg
from . import graphcore, harness
from .engine import COUNTERS_CSV_HEADER, build_vertex_cut, counters_csv_row
from .partition import (ASSIGNMENT_CSV_HEADER, METRICS_CSV_HEADER, Strategy,
                        assignment_csv_lines, compute_metrics, metrics_csv_row,
                        partition_edges)


def _load(args) -> graphcore.Graph:
    g, dropped = graphcore.load_edge_list(
        args.edgelist, allow_self_loops=not args.drop_self_loops)
    if dropped:
        print(f"# dropped {dropped} self-loops", file=sys.stderr)
    return g


def _dataset_name(args) -> str:
    if args.name:
        return args.name
    base = os.path.basename(args.edgelist)
    return base.rsplit(".", 1)[0] if "." in base else base


def _add_common_graph_args(p) -> None:
    p.add_argument("edgelist", help="plain-text edge list (src dst per line)")
    p.add_argument("--drop-self-loops", action="store_true",
                   help="drop self-loop edges at load time")
    p.add_argument("--name", default=None, help="dataset name for output rows")


def cmd_profile(args) -> int:
    g = _load(args)
    p = graphcore.profile(g, exact_threshold=args.exact_diameter_threshold)
    name = _dataset_name(args)
    if args.csv:
        print(graphcore.PROFILE_CSV_HEADER)
        print(graphcore.profile_csv_row(name, p))
    else:
        print(graphcore.profile_text(name, p))
    return 0


def cmd_partition(args) -> int:
    g = _load(args)
    a = partition_edges(g, Strategy.from_name(args.strategy), args.num_partitions)
    lines = assignment_csv_lines(g, a)
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            for line in lines:
                fh.write(line + "\n")
        print(f"wrote {len(g.edges)} assignments to {args.out}")
    else:
        for line in lines:
            print(line)
    return 0


def cmd_metrics(args) -> int:
    g = _load(args)
    strategy = Strategy.from_name(args.strategy)
    a = partition_edges(g, strategy, args.num_partitions)
    m = compute_metrics(g, a)
    print(METRICS_CSV_HEADER)
    print(metrics_csv_row(_dataset_name(args), strategy, args.num_partitions, m))
    return 0


def cmd_run(args) -> int:
    g = _load(args)
    if args.canonicalize:
        g = graphcore.canonicalize_undirected(g)
    strategy = Strategy.from_name(args.strategy)
    a = partition_edges(g, strategy, args.num_partitions)
    vcg = build_vertex_cut(g, a)

    algorithm = args.algorithm
    if algorithm == "PR":
        payload, counters = alg.pagerank(vcg, iterations=args.iterations)
    elif algorithm == "CC":
        labels, count, counters = alg.connected_components(
            vcg, max_supersteps=args.max_supersteps)
        payload = labels
        print(f"# components: {count}", file=sys.stderr)
    elif algorithm == "TR":
        payload, total, counters = alg.triangle_count(vcg)
        print(f"# triangles: {total}", file=sys.stderr)
    elif algorithm == "SSSP":
        landmarks = harness.draw_landmarks(g.vertices, args.landmarks, args.seed)
        print(f"# landmarks: {landmarks}", file=sys.stderr)
        payload, counters = alg.shortest_paths(
            vcg, landmarks, max_supersteps=args.max_supersteps)
    else:
        raise ValueError(f"unknown algorithm {algorithm}")

    print(COUNTERS_CSV_HEADER)
    print(counters_csv_row(algorithm, _dataset_name(args), strategy.value,
                           args.num_partitions, counters))
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            for line in alg.result_csv_lines(algorithm, payload):
                fh.write(line + "\n")
        print(f"wrote per-vertex results to {args.out}")
    return 0


def cmd_bench(args) -> int:
    manifest = harness.parse_manifest(args.manifest)
    records, metric_rows, warnings = harness.run_experiment(
        manifest, out_dir=args.out, verbose=not args.quiet)
    correlations, notices = harness.correlate(records, metric_rows)
    harness.emit_report(records, metric_rows, correlations, args.out,
                        notices=notices)
    print(f"{len(records)} runs, {len(metric_rows)} metric rows, "
          f"{len(correlations)} correlations -> {args.out}")
    for warning in warnings:
        print(f"warning: {warning}", file=sys.stderr)
    return 0


def cmd_correlate(args) -> int:
    records = harness.read_runs_csv(args.runs)
    metric_rows = harness.read_metrics_csv(args.metrics)
    correlations, notices = harness.correlate(records, metric_rows)
    harness.emit_report(records, metric_rows, correlations, args.out,
                        notices=notices)
    print(f"{len(correlations)} correlations -> {args.out}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="vcbench",
        description="Vertex-cut partitioning strategies, quality metrics, "
                    "and BSP analytics benchmarks")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("profile", help="characterize a dataset")
    _add_common_graph_args(p)
    p.add_argument("--csv", action="store_true", help="emit one CSV row")
    p.add_argument("--exact-diameter-threshold", type=int, default=10_000,
                   help="max vertices for exact diameter (default 10000)")
    p.set_defaults(func=cmd_profile)

    p = sub.add_parser("partition", help="assign edges to partitions")
    _add_common_graph_args(p)
    p.add_argument("--strategy", required=True)
    p.add_argument("--num-partitions", type=int, required=True)
    p.add_argument("--out", default=None, help="write assignment CSV here")
    p.set_defaults(func=cmd_partition)

    p = sub.add_parser("metrics", help="partitioning quality metrics")
    _add_common_graph_args(p)
    p.add_argument("--strategy", required=True)
    p.add_argument("--num-partitions", type=int, required=True)
    p.set_defaults(func=cmd_metrics)

    p = sub.add_parser("run", help="run one analytics algorithm")
    _add_common_graph_args(p)
    p.add_argument("--algorithm", required=True, choices=alg.ALGORITHM_NAMES)
    p.add_argument("--strategy", required=True)
    p.add_argument("--num-partitions", type=int, required=True)
    p.add_argument("--iterations", type=int, default=10,
                   help="PageRank iterations (default 10)")
    p.add_argument("--landmarks", type=int, default=5,
                   help="landmark count for SSSP (default 5)")
    p.add_argument("--seed", type=int, default=0, help="landmark draw seed")
    p.add_argument("--max-supersteps", type=int, default=100)
    p.add_argument("--canonicalize", action="store_true",
                   help="canonicalize to a simple undirected graph first "
                        "(required for TR on directed inputs)")
    p.add_argument("--out", default=None, help="write per-vertex results here")
    p.set_defaults(func=cmd_run)

    p = sub.add_parser("bench", help="run an experiment manifest")
    p.add_argument("--manifest", required=True)
    p.add_argument("--out", required=True, help="output directory")
    p.add_argument("--quiet", action="store_true")
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("correlate", help="correlate metrics with run time")
    p.add_argument("--runs", required=True, help="runs.csv from bench")
    p.add_argument("--metrics", required=True, help="metrics.csv from bench")
    p.add_argument("--out", required=True, help="output directory")
    p.set_defaults(func=cmd_correlate)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
