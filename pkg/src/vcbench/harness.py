"""Benchmark harness: experiment matrix, correlation analysis, reports.

One (dataset, strategy, N, algorithm, repetition) cell runs at a time so
wall-clock numbers are not polluted by sibling cells. Partitioning quality
metrics are computed once per (dataset, strategy, N) and joined to run
records by that key.
"""

from __future__ import annotations

import math
import os
import time
from dataclasses import dataclass
from fractions import Fraction

from . import algorithms as alg
from .engine import build_vertex_cut
from .graphcore import Graph, canonicalize_undirected, is_canonical, load_edge_list
from .hashing import SplitMix64, fold_string
from .partition import (ALL_STRATEGIES, METRICS_CSV_HEADER, PartitionMetrics,
                        Strategy, compute_metrics, metrics_csv_row,
                        partition_edges)

METRIC_NAMES = ("balance", "non_cut", "cut", "comm_cost", "part_stddev")

RUNS_CSV_HEADER = ("dataset,strategy,num_partitions,algorithm,repetition,"
                   "wall_time_s,supersteps,gather_msgs,scatter_msgs,converged,seed")

CORRELATIONS_CSV_HEADER = ("algorithm,num_partitions,metric,grouping,dataset,"
                           "pearson_r,sample_count")


class UndefinedCorrelationError(ValueError):
    """Pearson is undefined: one of the series has zero variance."""


@dataclass(frozen=True)
class ExperimentManifest:
    datasets: tuple[tuple[str, str], ...]  # (name, path)
    strategies: tuple[Strategy, ...] = ALL_STRATEGIES
    partition_counts: tuple[int, ...] = (128, 256)
    algorithms: tuple[str, ...] = alg.ALGORITHM_NAMES
    repetitions: int = 5
    pr_iterations: int = 10
    landmark_count: int = 5
    max_supersteps: int = 100
    seed: int = 0

    def __post_init__(self):
        if self.repetitions < 1:
            raise ValueError("repetitions must be >= 1")
        if not self.partition_counts:
            raise ValueError("partition_counts must be non-empty")
        unknown = set(self.algorithms) - set(alg.ALGORITHM_NAMES)
        if unknown:
            raise ValueError(f"unknown algorithms: {sorted(unknown)}")


@dataclass(frozen=True)
class RunRecord:
    dataset: str
    strategy: str
    num_partitions: int
    algorithm: str
    repetition: int
    wall_time_s: float
    supersteps: int
    gather_msgs: int
    scatter_msgs: int
    converged: bool
    seed: int

    def csv_row(self) -> str:
        return (f"{self.dataset},{self.strategy},{self.num_partitions},"
                f"{self.algorithm},{self.repetition},{self.wall_time_s!r},"
                f"{self.supersteps},{self.gather_msgs},{self.scatter_msgs},"
                f"{self.converged},{self.seed}")


@dataclass(frozen=True)
class MetricsRow:
    dataset: str
    strategy: str
    num_partitions: int
    metrics: PartitionMetrics

    def csv_row(self) -> str:
        return metrics_csv_row(self.dataset, Strategy.from_name(self.strategy),
                               self.num_partitions, self.metrics)


@dataclass(frozen=True)
class CorrelationReport:
    algorithm: str
    num_partitions: int
    metric: str
    grouping: str            # "pooled" | "per_dataset"
    dataset: str             # empty for pooled
    pearson_r: float
    sample_count: int

    def csv_row(self) -> str:
        return (f"{self.algorithm},{self.num_partitions},{self.metric},"
                f"{self.grouping},{self.dataset},{self.pearson_r!r},"
                f"{self.sample_count}")


# ---------------------------------------------------------------------------
# Manifest files
# ---------------------------------------------------------------------------

def parse_manifest(path) -> ExperimentManifest:
    """Plain-text manifest: key=value lines, repeated dataset=<name>,<path>."""
    datasets: list[tuple[str, str]] = []
    kwargs: dict = {}
    with open(path, "r", encoding="utf-8") as fh:
        for line_no, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            if "=" not in line:
                raise ValueError(f"{path}:{line_no}: expected key=value")
            key, _, value = line.partition("=")
            key = key.strip()
            value = value.strip()
            if key == "dataset":
                name, _, ds_path = value.partition(",")
                if not name or not ds_path:
                    raise ValueError(f"{path}:{line_no}: dataset needs <name>,<path>")
                datasets.append((name.strip(), ds_path.strip()))
            elif key == "strategies":
                kwargs["strategies"] = tuple(
                    Strategy.from_name(s.strip()) for s in value.split(","))
            elif key == "partition_counts":
                kwargs["partition_counts"] = tuple(int(x) for x in value.split(","))
            elif key == "algorithms":
                kwargs["algorithms"] = tuple(s.strip() for s in value.split(","))
            elif key in ("repetitions", "pr_iterations", "landmark_count",
                         "max_supersteps", "seed"):
                kwargs[key] = int(value)
            else:
                raise ValueError(f"{path}:{line_no}: unknown key {key!r}")
    if not datasets:
        raise ValueError(f"{path}: no dataset lines")
    return ExperimentManifest(datasets=tuple(datasets), **kwargs)


# ---------------------------------------------------------------------------
# Experiment driver
# ---------------------------------------------------------------------------

def cell_seed(manifest_seed: int, dataset: str, strategy: Strategy,
              num_partitions: int, algorithm: str, repetition: int) -> int:
    """Deterministic per-cell seed, independent of execution order."""
    key = f"{dataset}|{strategy.value}|{num_partitions}|{algorithm}|{repetition}"
    return fold_string(key, seed=manifest_seed)


def draw_landmarks(vertices: tuple[int, ...], count: int, seed: int) -> list[int]:
    """count distinct vertices drawn from the seeded stream (all, if fewer exist)."""
    if count >= len(vertices):
        return list(vertices)
    rng = SplitMix64(seed)
    chosen: list[int] = []
    taken: set[int] = set()
    while len(chosen) < count:
        v = vertices[rng.next_below(len(vertices))]
        if v not in taken:
            taken.add(v)
            chosen.append(v)
    return chosen


class _IncrementalCsv:
    """Append-per-row CSV writer; flushes every row so crashes lose nothing."""

    def __init__(self, path, header: str):
        self._fh = open(path, "w", encoding="utf-8", newline="")
        self._fh.write(header + "\n")
        self._fh.flush()

    def write_row(self, row: str) -> None:
        self._fh.write(row + "\n")
        self._fh.flush()

    def close(self) -> None:
        self._fh.close()


def _run_one(algorithm: str, vcg, manifest: ExperimentManifest, graph: Graph,
             seed: int):
    if algorithm == "PR":
        _, counters = alg.pagerank(vcg, iterations=manifest.pr_iterations)
    elif algorithm == "CC":
        _, _, counters = alg.connected_components(
            vcg, max_supersteps=manifest.max_supersteps)
    elif algorithm == "TR":
        _, _, counters = alg.triangle_count(vcg)
    elif algorithm == "SSSP":
        landmarks = draw_landmarks(graph.vertices, manifest.landmark_count, seed)
        _, counters = alg.shortest_paths(
            vcg, landmarks, max_supersteps=manifest.max_supersteps)
    else:  # pragma: no cover - validated by the manifest
        raise ValueError(f"unknown algorithm {algorithm}")
    return counters


def run_experiment(manifest: ExperimentManifest, out_dir=None, verbose: bool = True,
                   ) -> tuple[list[RunRecord], list[MetricsRow], list[str]]:
    """Run the full matrix; returns (records, metric rows, warnings).

    With out_dir set, runs.csv and metrics.csv are written incrementally,
    one flushed row per completed cell. Triangle counting needs canonical
    undirected input: non-canonical datasets get a canonicalized twin named
    '<name>:canonical' with its own metrics rows, keeping every run record
    joinable to exactly one metrics row.
    """
    records: list[RunRecord] = []
    metric_rows: list[MetricsRow] = []
    warnings: list[str] = []
    runs_csv = metrics_csv = None
    if out_dir is not None:
        os.makedirs(out_dir, exist_ok=True)
        runs_csv = _IncrementalCsv(os.path.join(out_dir, "runs.csv"), RUNS_CSV_HEADER)
        metrics_csv = _IncrementalCsv(os.path.join(out_dir, "metrics.csv"),
                                      METRICS_CSV_HEADER)

    def note(msg: str) -> None:
        if verbose:
            print(msg, flush=True)

    try:
        for ds_name, ds_path in manifest.datasets:
            try:
                graph, _ = load_edge_list(ds_path)
            except (OSError, ValueError) as exc:
                warning = f"skipping dataset {ds_name}: {exc}"
                warnings.append(warning)
                note(f"[warn] {warning}")
                continue

            # (name, graph, algorithms to run on it)
            variants: list[tuple[str, Graph, tuple[str, ...]]] = []
            non_tr = tuple(a for a in manifest.algorithms if a != "TR")
            if "TR" in manifest.algorithms and is_canonical(graph) is not None:
                if non_tr:
                    variants.append((ds_name, graph, non_tr))
                canon = canonicalize_undirected(graph)
                variants.append((f"{ds_name}:canonical", canon, ("TR",)))
                note(f"[info] {ds_name}: not canonical, triangle runs use "
                     f"{ds_name}:canonical")
            else:
                variants.append((ds_name, graph, manifest.algorithms))

            for name, g, algos in variants:
                for strategy in manifest.strategies:
                    for n in manifest.partition_counts:
                        assignment = partition_edges(g, strategy, n)
                        metrics = compute_metrics(g, assignment)
                        row = MetricsRow(name, strategy.value, n, metrics)
                        metric_rows.append(row)
                        if metrics_csv:
                            metrics_csv.write_row(row.csv_row())
                        t_build = time.perf_counter()
                        vcg = build_vertex_cut(g, assignment)
                        build_s = time.perf_counter() - t_build
                        note(f"[cell] {name} {strategy.value} N={n} "
                             f"build={build_s:.3f}s comm_cost={metrics.comm_cost}")
                        for algorithm in algos:
                            for rep in range(manifest.repetitions):
                                seed = cell_seed(manifest.seed, name, strategy,
                                                 n, algorithm, rep)
                                try:
                                    counters = _run_one(algorithm, vcg, manifest,
                                                        g, seed)
                                except MemoryError:
                                    warning = (f"aborted {name}/{strategy.value}/"
                                               f"N={n}/{algorithm}: out of memory")
                                    warnings.append(warning)
                                    note(f"[warn] {warning}")
                                    break
                                record = RunRecord(
                                    dataset=name,
                                    strategy=strategy.value,
                                    num_partitions=n,
                                    algorithm=algorithm,
                                    repetition=rep,
                                    wall_time_s=counters.wall_time_s,
                                    supersteps=counters.supersteps,
                                    gather_msgs=counters.gather_msgs,
                                    scatter_msgs=counters.scatter_msgs,
                                    converged=counters.converged,
                                    seed=seed,
                                )
                                records.append(record)
                                if runs_csv:
                                    runs_csv.write_row(record.csv_row())
    finally:
        if runs_csv:
            runs_csv.close()
        if metrics_csv:
            metrics_csv.close()
    return records, metric_rows, warnings


# ---------------------------------------------------------------------------
# Correlation
# ---------------------------------------------------------------------------

def pearson(xs, ys) -> float:
    """Pearson product-moment correlation.

    Numerator and squared denominator are computed in exact rational
    arithmetic, so |r| <= 1 always and r is exactly +/-1.0 for perfectly
    linear data; the single square root is the only rounding step.
    """
    if len(xs) != len(ys):
        raise ValueError("series lengths differ")
    if len(xs) < 3:
        raise ValueError("need at least 3 points")
    n = len(xs)
    xbar = Fraction(sum(Fraction(x) for x in xs), n)
    ybar = Fraction(sum(Fraction(y) for y in ys), n)
    dx = [Fraction(x) - xbar for x in xs]
    dy = [Fraction(y) - ybar for y in ys]
    sxx = sum(d * d for d in dx)
    syy = sum(d * d for d in dy)
    if sxx == 0 or syy == 0:
        raise UndefinedCorrelationError("zero variance in one of the series")
    sxy = sum(a * b for a, b in zip(dx, dy))
    ratio = (sxy * sxy) / (sxx * syy)  # exact, in [0, 1] by Cauchy-Schwarz
    return math.copysign(math.sqrt(float(ratio)), float(sxy))


def _metric_value(m: PartitionMetrics, name: str) -> float:
    return {
        "balance": m.balance,
        "non_cut": m.non_cut,
        "cut": m.cut,
        "comm_cost": m.comm_cost,
        "part_stddev": m.part_stddev,
    }[name]


def mean_wall_times(records) -> dict[tuple[str, int, str, str], float]:
    """Arithmetic mean wall time per (algorithm, N, dataset, strategy)."""
    sums: dict[tuple, list[float]] = {}
    for r in records:
        sums.setdefault((r.algorithm, r.num_partitions, r.dataset, r.strategy),
                        []).append(r.wall_time_s)
    return {k: sum(v) / len(v) for k, v in sums.items()}


def correlate(records: list[RunRecord], metric_rows: list[MetricsRow],
              ) -> tuple[list[CorrelationReport], list[str]]:
    """Correlate each quality metric with mean run time, pooled and per dataset.

    Pooled: one point per (dataset, strategy); per-dataset: one point per
    strategy. Groups with fewer than 3 points or zero variance are omitted
    and a notice is returned instead of a number.
    """
    by_key = {(m.dataset, m.strategy, m.num_partitions): m.metrics
              for m in metric_rows}
    missing = [r for r in records
               if (r.dataset, r.strategy, r.num_partitions) not in by_key]
    if missing:
        r = missing[0]
        raise ValueError(f"run record ({r.dataset}, {r.strategy}, "
                         f"{r.num_partitions}) has no metrics row")

    mean_time = mean_wall_times(records)

    reports: list[CorrelationReport] = []
    notices: list[str] = []
    algo_ns = sorted({(a, n) for a, n, _, _ in mean_time})

    def try_report(points, algorithm, n, metric, grouping, dataset=""):
        label = f"{algorithm}/N={n}/{metric}/{grouping}" + (f"/{dataset}" if dataset else "")
        if len(points) < 3:
            notices.append(f"{label}: omitted, only {len(points)} points")
            return
        xs = [p[0] for p in points]
        ys = [p[1] for p in points]
        try:
            r = pearson(xs, ys)
        except UndefinedCorrelationError:
            notices.append(f"{label}: omitted, zero variance (n/a)")
            return
        reports.append(CorrelationReport(algorithm, n, metric, grouping,
                                         dataset, r, len(points)))

    for algorithm, n in algo_ns:
        cells = sorted((ds, st) for a, nn, ds, st in mean_time
                       if a == algorithm and nn == n)
        for metric in METRIC_NAMES:
            pooled = [(_metric_value(by_key[(ds, st, n)], metric),
                       mean_time[(algorithm, n, ds, st)]) for ds, st in cells]
            try_report(pooled, algorithm, n, metric, "pooled")
            for dataset in sorted({ds for ds, _ in cells}):
                per = [(_metric_value(by_key[(ds, st, n)], metric),
                        mean_time[(algorithm, n, ds, st)])
                       for ds, st in cells if ds == dataset]
                try_report(per, algorithm, n, metric, "per_dataset", dataset)
    return reports, notices


# ---------------------------------------------------------------------------
# Reports
# ---------------------------------------------------------------------------

def best_strategies(records: list[RunRecord],
                    ) -> dict[tuple[str, str, int], tuple[str, str]]:
    """Per (dataset, algorithm, N): (best strategy by mean wall time,
    best by mean gather+scatter messages). Ties break on strategy name."""
    times: dict[tuple, list[float]] = {}
    msgs: dict[tuple, list[int]] = {}
    for r in records:
        key = (r.dataset, r.algorithm, r.num_partitions, r.strategy)
        times.setdefault(key, []).append(r.wall_time_s)
        msgs.setdefault(key, []).append(r.gather_msgs + r.scatter_msgs)

    out: dict[tuple[str, str, int], tuple[str, str]] = {}
    groups = sorted({(ds, a, n) for ds, a, n, _ in times})
    for ds, a, n in groups:
        strategies = sorted(st for d2, a2, n2, st in times if (d2, a2, n2) == (ds, a, n))
        by_time = min(strategies, key=lambda st: (
            sum(times[(ds, a, n, st)]) / len(times[(ds, a, n, st)]), st))
        by_msgs = min(strategies, key=lambda st: (
            sum(msgs[(ds, a, n, st)]) / len(msgs[(ds, a, n, st)]), st))
        out[(ds, a, n)] = (by_time, by_msgs)
    return out


def emit_report(records: list[RunRecord], metric_rows: list[MetricsRow],
                correlations: list[CorrelationReport], out_dir,
                notices=()) -> None:
    """Write runs.csv, metrics.csv, correlations.csv and summary.txt.

    Output is a pure function of the inputs (no timestamps), so re-running
    on the same data produces byte-identical files.
    """
    os.makedirs(out_dir, exist_ok=True)

    def write(name: str, lines) -> None:
        with open(os.path.join(out_dir, name), "w", encoding="utf-8",
                  newline="") as fh:
            for line in lines:
                fh.write(line + "\n")

    write("runs.csv", [RUNS_CSV_HEADER] + [r.csv_row() for r in records])
    write("metrics.csv", [METRICS_CSV_HEADER] + [m.csv_row() for m in metric_rows])
    ordered = sorted(correlations, key=lambda c: (
        c.algorithm, c.num_partitions, c.grouping, c.dataset, c.metric))
    write("correlations.csv",
          [CORRELATIONS_CSV_HEADER] + [c.csv_row() for c in ordered])

    lines = ["best strategy per (dataset, algorithm, num_partitions)", ""]
    best = best_strategies(records)
    for (ds, a, n), (by_time, by_msgs) in sorted(best.items()):
        lines.append(f"{ds} {a} N={n}: by_wall_time={by_time} by_messages={by_msgs}")
    if notices:
        lines += ["", "correlation notices:"]
        lines += [f"  {note}" for note in notices]
    write("summary.txt", lines)


# ---------------------------------------------------------------------------
# CSV re-readers (for the correlate subcommand)
# ---------------------------------------------------------------------------

def read_runs_csv(path) -> list[RunRecord]:
    records = []
    with open(path, "r", encoding="utf-8") as fh:
        header = fh.readline().strip()
        if header != RUNS_CSV_HEADER:
            raise ValueError(f"{path}: unexpected runs.csv header")
        for line in fh:
            line = line.strip()
            if not line:
                continue
            (ds, st, n, a, rep, wall, steps, gather, scatter, conv,
             seed) = line.split(",")
            records.append(RunRecord(ds, st, int(n), a, int(rep), float(wall),
                                     int(steps), int(gather), int(scatter),
                                     conv == "True", int(seed)))
    return records


def read_metrics_csv(path) -> list[MetricsRow]:
    rows = []
    with open(path, "r", encoding="utf-8") as fh:
        header = fh.readline().strip()
        if header != METRICS_CSV_HEADER:
            raise ValueError(f"{path}: unexpected metrics.csv header")
        for line in fh:
            line = line.strip()
            if not line:
                continue
            ds, st, n, balance, non_cut, cut, comm, stddev = line.split(",")
            metrics = PartitionMetrics(
                balance=float(balance), non_cut=int(non_cut), cut=int(cut),
                comm_cost=int(comm), part_stddev=float(stddev), edge_counts=[])
            rows.append(MetricsRow(ds, st, int(n), metrics))
    return rows
