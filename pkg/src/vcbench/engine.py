"""Vertex-cut BSP execution engine with exact message accounting.

The graph lives as per-partition local edge lists. Every vertex incident
to an edge of a partition has a replica (mirror) there; the replica in
the lowest-numbered partition is the master. A superstep runs in four
barrier-separated phases:

  1. edge messages  every partition evaluates the program's edge_message
                    over its local edges, using current mirror states,
                    and pre-merges messages per target vertex locally
  2. gather         each partition ships one message per locally merged
                    target it does not master; the master merges partials
                    in ascending partition-id order
  3. apply          masters apply the merged message to the vertex state
  4. scatter        for every vertex whose state changed, the master
                    ships the new state to each non-master replica

gather_msgs and scatter_msgs count exactly the phase-2 and phase-4
transfers, which is what ties execution cost back to the partitioning
metrics: with partials on every replica and every cut vertex changing,
both equal comm_cost - cut per superstep.

Merging is deterministic (local edge order, then ascending partition id),
so repeated runs produce bit-identical states, floats included. The
thread-pool path only parallelizes phase 1 across partitions, each of
which writes its own output slot, so results are schedule-independent.
"""

from __future__ import annotations

import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Any, Callable, Iterable

from .graphcore import Edge, Graph
from .partition import PartitionAssignment, replication_table


@dataclass(frozen=True)
class VertexCutGraph:
    num_partitions: int
    local_edges: list[list[Edge]]          # per partition, original relative order
    mirrors: list[list[int]]               # per partition, sorted vertex ids
    master_of: dict[int, int]              # vertex -> lowest partition holding it
    replicas: dict[int, tuple[int, ...]]   # vertex -> sorted partitions holding it

    @property
    def vertices(self) -> Iterable[int]:
        return self.master_of.keys()


@dataclass(frozen=True)
class VertexProgram:
    """A BSP vertex computation.

    initial_state   vertex id -> state
    edge_message    (src_state, dst_state, edge) -> iterable of
                    (target vertex, message); may yield both endpoints
    merge_messages  commutative, associative combiner
    apply_message   (old_state, merged) -> (new_state, changed flag);
                    new_state is stored and broadcast only when the flag
                    is set, otherwise the old state is retained

    States are value-like: replicas share the stored object, so apply must
    return a fresh state rather than mutate the old one in place.
    """

    initial_state: Callable[[int], Any]
    edge_message: Callable[[Any, Any, Edge], Iterable[tuple[int, Any]]]
    merge_messages: Callable[[Any, Any], Any]
    apply_message: Callable[[Any, Any], tuple[Any, bool]]


@dataclass
class RunCounters:
    supersteps: int = 0
    gather_msgs: int = 0
    scatter_msgs: int = 0
    active_vertices: list[int] = field(default_factory=list)
    gather_per_step: list[int] = field(default_factory=list)
    scatter_per_step: list[int] = field(default_factory=list)
    wall_time_s: float = 0.0
    converged: bool = False

    def absorb(self, other: "RunCounters") -> None:
        """Fold a follow-up phase into this record (used by two-phase runs)."""
        self.supersteps += other.supersteps
        self.gather_msgs += other.gather_msgs
        self.scatter_msgs += other.scatter_msgs
        self.active_vertices.extend(other.active_vertices)
        self.gather_per_step.extend(other.gather_per_step)
        self.scatter_per_step.extend(other.scatter_per_step)
        self.wall_time_s += other.wall_time_s
        self.converged = other.converged


COUNTERS_CSV_HEADER = ("algorithm,dataset,strategy,num_partitions,supersteps,"
                       "gather_msgs,scatter_msgs,wall_time_s,converged")


def counters_csv_row(algorithm: str, dataset: str, strategy: str,
                     num_partitions: int, c: RunCounters) -> str:
    return (f"{algorithm},{dataset},{strategy},{num_partitions},{c.supersteps},"
            f"{c.gather_msgs},{c.scatter_msgs},{c.wall_time_s!r},{c.converged}")


def build_vertex_cut(g: Graph, a: PartitionAssignment) -> VertexCutGraph:
    """Group edges by assigned partition and derive mirrors and masters."""
    if len(a.per_edge) != len(g.edges):
        raise ValueError(
            f"assignment covers {len(a.per_edge)} edges but graph has {len(g.edges)}")
    n = a.num_partitions
    local_edges: list[list[Edge]] = [[] for _ in range(n)]
    for i, e in enumerate(g.edges):
        local_edges[a.per_edge[i]].append(e)
    table = replication_table(g, a)
    mirrors: list[list[int]] = [[] for _ in range(n)]
    master_of: dict[int, int] = {}
    for v in sorted(table.replicas):
        parts = table.replicas[v]
        master_of[v] = parts[0]
        for p in parts:
            mirrors[p].append(v)
    return VertexCutGraph(
        num_partitions=n,
        local_edges=local_edges,
        mirrors=mirrors,
        master_of=master_of,
        replicas=table.replicas,
    )


def _partition_partials(prog: VertexProgram, edges: list[Edge],
                        states: dict[int, Any], active) -> dict[int, Any]:
    """Phase 1 for one partition: evaluate edges, pre-merge per target."""
    partials: dict[int, Any] = {}
    edge_message = prog.edge_message
    merge = prog.merge_messages
    for e in edges:
        u, v = e
        if active is not None and u not in active and v not in active:
            continue
        for target, msg in edge_message(states[u], states[v], e):
            if target in partials:
                partials[target] = merge(partials[target], msg)
            else:
                partials[target] = msg
    return partials


def run_pregel(vcg: VertexCutGraph, prog: VertexProgram, max_supersteps: int,
               workers: int = 1, validate: bool = False,
               ) -> tuple[dict[int, Any], RunCounters]:
    """Execute prog to convergence or the superstep budget.

    Returns (final master states, counters). converged is False when the
    loop stopped because max_supersteps was exhausted with changes pending.

    An edge is evaluated in a superstep when either endpoint is active;
    every vertex is active in superstep 0, afterwards only vertices whose
    state changed in the previous superstep. Vertices apply only when they
    received a message. With workers > 1 the edge-message phase runs on a
    thread pool; all merging stays in fixed order, so results are
    identical to the sequential mode.
    """
    if max_supersteps < 1:
        raise ValueError("max_supersteps must be >= 1")
    n = vcg.num_partitions
    # per-partition replicated states; the master copy is authoritative
    states: list[dict[int, Any]] = [
        {v: prog.initial_state(v) for v in vcg.mirrors[p]} for p in range(n)
    ]
    master_of = vcg.master_of
    counters = RunCounters()
    active: set[int] | None = None  # None = all vertices (superstep 0)
    pool = ThreadPoolExecutor(max_workers=workers) if workers > 1 else None

    t0 = time.perf_counter()
    try:
        for _ in range(max_supersteps):
            counters.active_vertices.append(
                len(master_of) if active is None else len(active))

            # phase 1: local edge messages, pre-merged per target
            if pool is None:
                partials = [
                    _partition_partials(prog, vcg.local_edges[p], states[p], active)
                    for p in range(n)
                ]
            else:
                partials = list(pool.map(
                    lambda p: _partition_partials(
                        prog, vcg.local_edges[p], states[p], active),
                    range(n)))

            # phase 2: gather to masters, merging in ascending partition id
            gather = 0
            inbox: dict[int, Any] = {}
            merge = prog.merge_messages
            for p in range(n):
                for target, msg in partials[p].items():
                    if master_of[target] != p:
                        gather += 1
                    if target in inbox:
                        inbox[target] = merge(inbox[target], msg)
                    else:
                        inbox[target] = msg
            counters.gather_per_step.append(gather)
            counters.gather_msgs += gather

            # phase 3: apply at masters
            changed: set[int] = set()
            for target in sorted(inbox):
                home = master_of[target]
                new_state, did_change = prog.apply_message(
                    states[home][target], inbox[target])
                if did_change:
                    states[home][target] = new_state
                    changed.add(target)

            # phase 4: scatter new states to non-master replicas
            scatter = 0
            for v in changed:
                home = master_of[v]
                new_state = states[home][v]
                for p in vcg.replicas[v]:
                    if p != home:
                        states[p][v] = new_state
                        scatter += 1
            counters.scatter_per_step.append(scatter)
            counters.scatter_msgs += scatter

            if validate:
                _check_replica_coherence(vcg, states)

            counters.supersteps += 1
            active = changed
            if not changed:
                counters.converged = True
                break
    finally:
        if pool is not None:
            pool.shutdown()
    counters.wall_time_s = time.perf_counter() - t0

    final = {v: states[master_of[v]][v] for v in master_of}
    return final, counters


def _check_replica_coherence(vcg: VertexCutGraph, states: list[dict[int, Any]]) -> None:
    for v, parts in vcg.replicas.items():
        master_state = states[vcg.master_of[v]][v]
        for p in parts:
            if states[p][v] != master_state:
                raise AssertionError(
                    f"replica of vertex {v} in partition {p} diverged from master")
