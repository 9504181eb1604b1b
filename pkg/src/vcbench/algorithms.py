"""The four analytics computations, expressed as vertex programs.

Results are a function of the graph alone: partitioning changes message
counts and timing, never the computed values (exactly for the integer
algorithms, up to merge-order rounding for PageRank).
"""

from __future__ import annotations

from typing import Any

from .engine import RunCounters, VertexCutGraph, VertexProgram, run_pregel

ALGORITHM_NAMES = ("PR", "CC", "TR", "SSSP")


# ---------------------------------------------------------------------------
# PageRank
# ---------------------------------------------------------------------------

def pagerank(vcg: VertexCutGraph, iterations: int = 10, reset_prob: float = 0.15,
             workers: int = 1) -> tuple[dict[int, float], RunCounters]:
    """Static PageRank: fixed iteration count, ranks start at 1.0, unnormalized.

    Each iteration sets rank(v) = reset_prob + (1 - reset_prob) * sum of
    rank(u)/out_degree(u) over in-neighbors u (an empty sum for vertices
    with no in-edges). Every edge also carries an explicit zero
    contribution to its source, so each replica partition always holds a
    partial for every mirror and the gather traffic reflects the full
    replication structure.
    """
    if iterations < 1:
        raise ValueError("iterations must be >= 1")
    if not 0.0 < reset_prob < 1.0:
        raise ValueError("reset_prob must be strictly between 0 and 1")

    out_degree: dict[int, int] = {}
    for edges in vcg.local_edges:
        for u, _ in edges:
            out_degree[u] = out_degree.get(u, 0) + 1

    damp = 1.0 - reset_prob

    def edge_message(src_state, _dst_state, edge):
        u, v = edge
        return ((v, src_state / out_degree[u]), (u, 0.0))

    def apply_message(_old, merged):
        # static formulation: every vertex is rewritten every iteration
        return reset_prob + damp * merged, True

    prog = VertexProgram(
        initial_state=lambda v: 1.0,
        edge_message=edge_message,
        merge_messages=lambda a, b: a + b,
        apply_message=apply_message,
    )
    states, counters = run_pregel(vcg, prog, max_supersteps=iterations, workers=workers)
    return states, counters


# ---------------------------------------------------------------------------
# Connected components
# ---------------------------------------------------------------------------

def connected_components(vcg: VertexCutGraph, max_supersteps: int = 100,
                         workers: int = 1) -> tuple[dict[int, int], int, RunCounters]:
    """Weak connectivity via minimum-label propagation along both edge directions.

    Labels converge to the minimum vertex id of each component. When the
    superstep budget runs out first, counters.converged is False and the
    labels are a partially propagated upper bound.
    """

    def edge_message(src_label, dst_label, edge):
        u, v = edge
        if src_label < dst_label:
            return ((v, src_label),)
        if dst_label < src_label:
            return ((u, dst_label),)
        return ()

    def apply_message(old, merged):
        if merged < old:
            return merged, True
        return old, False

    prog = VertexProgram(
        initial_state=lambda v: v,
        edge_message=edge_message,
        merge_messages=min,
        apply_message=apply_message,
    )
    labels, counters = run_pregel(vcg, prog, max_supersteps=max_supersteps,
                                  workers=workers)
    return labels, len(set(labels.values())), counters


# ---------------------------------------------------------------------------
# Triangle counting
# ---------------------------------------------------------------------------

def _require_canonical(vcg: VertexCutGraph) -> None:
    seen: set[tuple[int, int]] = set()
    for edges in vcg.local_edges:
        for u, v in edges:
            if u >= v:
                raise ValueError(
                    f"triangle counting requires canonical undirected input; "
                    f"edge ({u}, {v}) is not in (min, max) form")
            if (u, v) in seen:
                raise ValueError(
                    f"triangle counting requires canonical undirected input; "
                    f"edge ({u}, {v}) appears more than once")
            seen.add((u, v))


def triangle_count(vcg: VertexCutGraph,
                   workers: int = 1) -> tuple[dict[int, int], int, RunCounters]:
    """Per-vertex and total triangle counts on a canonical undirected graph.

    Two single-superstep engine rounds: first every vertex collects its
    neighbor set, then every edge credits both endpoints with the size of
    the endpoints' neighbor intersection. Each triangle corner is credited
    twice (once per incident edge) and each triangle three times in total.
    """
    _require_canonical(vcg)

    collect = VertexProgram(
        initial_state=lambda v: frozenset(),
        edge_message=lambda _s, _d, e: ((e[0], frozenset((e[1],))),
                                        (e[1], frozenset((e[0],)))),
        merge_messages=lambda a, b: a | b,
        apply_message=lambda old, merged: (old | merged, True),
    )
    neighbors, counters = run_pregel(vcg, collect, max_supersteps=1, workers=workers)

    def wedge_message(src_state, dst_state, edge):
        common = len(src_state[0] & dst_state[0])
        if common:
            return ((edge[0], common), (edge[1], common))
        return ()

    count = VertexProgram(
        initial_state=lambda v: (neighbors[v], 0),
        edge_message=wedge_message,
        merge_messages=lambda a, b: a + b,
        apply_message=lambda old, merged: ((old[0], old[1] + merged), True),
    )
    credited, phase2 = run_pregel(vcg, count, max_supersteps=1, workers=workers)
    counters.absorb(phase2)

    per_vertex = {}
    for v, (_, credit) in credited.items():
        if credit % 2:
            raise AssertionError(f"odd wedge credit {credit} at vertex {v}")
        per_vertex[v] = credit // 2
    corner_sum = sum(per_vertex.values())
    if corner_sum % 3:
        raise AssertionError(f"corner sum {corner_sum} not divisible by 3")
    return per_vertex, corner_sum // 3, counters


# ---------------------------------------------------------------------------
# Shortest paths to landmarks
# ---------------------------------------------------------------------------

def shortest_paths(vcg: VertexCutGraph, landmarks, max_supersteps: int = 100,
                   workers: int = 1) -> tuple[dict[int, dict[int, int]], RunCounters]:
    """Hop distance from every vertex to each reachable landmark.

    Distances follow edge direction; the maps travel against it (an edge
    (u, v) lets u reach whatever v reaches, one hop further). A landmark
    missing from a vertex's map is unreachable from that vertex.
    """
    landmark_set = frozenset(int(x) for x in landmarks)
    if not landmark_set:
        raise ValueError("landmarks must be non-empty")
    unknown = landmark_set - set(vcg.master_of)
    if unknown:
        raise ValueError(f"unknown landmark ids: {sorted(unknown)}")

    def edge_message(src_state, dst_state, edge):
        improved = {}
        for lm, d in dst_state.items():
            nd = d + 1
            cur = src_state.get(lm)
            if cur is None or nd < cur:
                improved[lm] = nd
        if improved:
            return ((edge[0], improved),)
        return ()

    def merge(a: dict, b: dict) -> dict:
        out = dict(a)
        for lm, d in b.items():
            cur = out.get(lm)
            if cur is None or d < cur:
                out[lm] = d
        return out

    def apply_message(old: dict, merged: dict):
        out = None
        for lm, d in merged.items():
            cur = old.get(lm)
            if cur is None or d < cur:
                if out is None:
                    out = dict(old)
                out[lm] = d
        if out is None:
            return old, False
        return out, True

    prog = VertexProgram(
        initial_state=lambda v: {v: 0} if v in landmark_set else {},
        edge_message=edge_message,
        merge_messages=merge,
        apply_message=apply_message,
    )
    maps, counters = run_pregel(vcg, prog, max_supersteps=max_supersteps,
                                workers=workers)
    return maps, counters


# ---------------------------------------------------------------------------
# Result dumps
# ---------------------------------------------------------------------------

RESULT_CSV_HEADER = "vertex,value"


def result_csv_lines(algorithm: str, payload: dict[int, Any]):
    """Yield 'vertex,value' lines, vertices ascending.

    Ranks print as decimals, labels and triangle counts as integers,
    distance maps as semicolon-joined landmark:dist pairs.
    """
    yield RESULT_CSV_HEADER
    for v in sorted(payload):
        value = payload[v]
        if algorithm == "SSSP":
            text = ";".join(f"{lm}:{d}" for lm, d in sorted(value.items()))
        elif algorithm == "PR":
            text = repr(value)
        else:
            text = str(value)
        yield f"{v},{text}"
