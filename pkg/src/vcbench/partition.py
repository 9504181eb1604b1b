"""Vertex-cut edge partitioning strategies and partitioning-quality metrics.

Every strategy is a pure function of (src, dst, num_partitions), so the
same graph partitions identically on any machine. Quality metrics are
derived from the per-vertex replica sets: a vertex is replicated into
every partition that holds one of its incident edges.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

from .graphcore import Graph, UndefinedMetricError
from .hashing import MASK64, PAIR_MULT, mix64


class Strategy(enum.Enum):
    """The six edge-partitioning strategies.

    RVC    hash of the ordered (src, dst) pair
    ONE_D  hash of the source id: same-source edges collocate
    TWO_D  grid of ceil(sqrt(N)) columns x rows; source hashes to the
           column, destination to the row; folded by mod N when N is not
           a perfect square. Bounds each vertex to 2*ceil(sqrt(N)) replicas.
    CRVC   hash of the (min, max) pair: direction-independent
    SC     raw source id mod N, no hashing
    DC     raw destination id mod N, no hashing
    """

    RVC = "RVC"
    ONE_D = "1D"
    TWO_D = "2D"
    CRVC = "CRVC"
    SC = "SC"
    DC = "DC"

    @classmethod
    def from_name(cls, name: str) -> "Strategy":
        for s in cls:
            if s.value == name or s.name == name:
                return s
        raise ValueError(f"unknown strategy {name!r}; expected one of "
                         f"{[s.value for s in cls]}")


ALL_STRATEGIES = tuple(Strategy)


@dataclass(frozen=True)
class PartitionAssignment:
    """Partition id per edge, aligned index-for-index with Graph.edges."""

    strategy: Strategy
    num_partitions: int
    per_edge: list[int]


@dataclass(frozen=True)
class ReplicationTable:
    """Sorted partition-id tuple per vertex; r_v is the tuple length."""

    replicas: dict[int, tuple[int, ...]]

    def replica_count(self, v: int) -> int:
        return len(self.replicas[v])

    def total_replicas(self) -> int:
        return sum(len(p) for p in self.replicas.values())


@dataclass(frozen=True)
class PartitionMetrics:
    balance: float          # max partition edges / mean edges per partition
    non_cut: int            # vertices residing in exactly one partition
    cut: int                # vertices replicated into >= 2 partitions
    comm_cost: int          # total replicas of cut vertices
    part_stddev: float      # population stddev of edges per partition
    edge_counts: list[int]  # per-partition edge totals, empties included


def grid_side(num_partitions: int) -> int:
    """Side of the smallest square grid with at least num_partitions cells."""
    q = math.isqrt(num_partitions)
    if q * q < num_partitions:
        q += 1
    return q


def partition_edges(g: Graph, strategy: Strategy, num_partitions: int) -> PartitionAssignment:
    """Assign every edge of g to a partition in [0, num_partitions)."""
    n = num_partitions
    if n < 1:
        raise ValueError("num_partitions must be >= 1")
    edges = g.edges
    # memoized per-vertex hashes: strategies reuse mix64(v) across edges
    vh: dict[int, int] = {}

    def h(v: int) -> int:
        out = vh.get(v)
        if out is None:
            out = vh[v] = mix64(v)
        return out

    if strategy is Strategy.SC:
        per_edge = [u % n for u, _ in edges]
    elif strategy is Strategy.DC:
        per_edge = [v % n for _, v in edges]
    elif strategy is Strategy.ONE_D:
        per_edge = [h(u) % n for u, _ in edges]
    elif strategy is Strategy.TWO_D:
        q = grid_side(n)
        per_edge = [((h(u) % q) * q + h(v) % q) % n for u, v in edges]
    elif strategy is Strategy.RVC:
        per_edge = [mix64(h(u) ^ ((h(v) * PAIR_MULT) & MASK64)) % n for u, v in edges]
    elif strategy is Strategy.CRVC:
        per_edge = [
            mix64(h(u) ^ ((h(v) * PAIR_MULT) & MASK64)) % n if u <= v
            else mix64(h(v) ^ ((h(u) * PAIR_MULT) & MASK64)) % n
            for u, v in edges
        ]
    else:  # pragma: no cover - exhaustive enum
        raise ValueError(f"unhandled strategy {strategy}")
    return PartitionAssignment(strategy=strategy, num_partitions=n, per_edge=per_edge)


def _check_aligned(g: Graph, a: PartitionAssignment) -> None:
    if len(a.per_edge) != len(g.edges):
        raise ValueError(
            f"assignment covers {len(a.per_edge)} edges but graph has {len(g.edges)}")


def replication_table(g: Graph, a: PartitionAssignment) -> ReplicationTable:
    """Partition ids holding each vertex, i.e. partitions with an incident edge."""
    _check_aligned(g, a)
    replicas: dict[int, set[int]] = {}
    per_edge = a.per_edge
    for i, (u, v) in enumerate(g.edges):
        p = per_edge[i]
        s = replicas.get(u)
        if s is None:
            replicas[u] = {p}
        else:
            s.add(p)
        s = replicas.get(v)
        if s is None:
            replicas[v] = {p}
        else:
            s.add(p)
    return ReplicationTable({v: tuple(sorted(ps)) for v, ps in replicas.items()})


def compute_metrics(g: Graph, a: PartitionAssignment) -> PartitionMetrics:
    """The five partitioning-quality metrics for one assignment.

    comm_cost counts all replicas of cut vertices (the full copy count,
    not copies minus one). balance and part_stddev are taken over all
    num_partitions partitions, empty ones included.
    """
    _check_aligned(g, a)
    if not g.edges:
        raise UndefinedMetricError("metrics are undefined on an empty graph")
    n = a.num_partitions
    edge_counts = [0] * n
    for p in a.per_edge:
        edge_counts[p] += 1

    table = replication_table(g, a)
    cut = 0
    comm_cost = 0
    for ps in table.replicas.values():
        r = len(ps)
        if r >= 2:
            cut += 1
            comm_cost += r
    non_cut = len(table.replicas) - cut

    total = len(g.edges)
    mean = total / n
    balance = max(edge_counts) / mean
    variance = sum((c - mean) ** 2 for c in edge_counts) / n
    return PartitionMetrics(
        balance=balance,
        non_cut=non_cut,
        cut=cut,
        comm_cost=comm_cost,
        part_stddev=math.sqrt(variance),
        edge_counts=edge_counts,
    )


ASSIGNMENT_CSV_HEADER = "edge_index,src,dst,partition"
METRICS_CSV_HEADER = "dataset,strategy,num_partitions,balance,non_cut,cut,comm_cost,part_stddev"


def assignment_csv_lines(g: Graph, a: PartitionAssignment):
    """Yield header plus one CSV line per edge, in edge-list order."""
    _check_aligned(g, a)
    yield ASSIGNMENT_CSV_HEADER
    for i, (u, v) in enumerate(g.edges):
        yield f"{i},{u},{v},{a.per_edge[i]}"


def metrics_csv_row(dataset: str, strategy: Strategy, num_partitions: int,
                    m: PartitionMetrics) -> str:
    return (f"{dataset},{strategy.value},{num_partitions},"
            f"{m.balance!r},{m.non_cut},{m.cut},{m.comm_cost},{m.part_stddev!r}")
