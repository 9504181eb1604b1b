"""Edge-list graphs: ingestion, normalization, and dataset profiling.

A graph is an immutable, ordered directed edge list. Vertices exist only
through incidence: there are no isolated vertices, and the vertex set is
derived from the edges. All profiling operations are pure functions of
the edge list.
"""

from __future__ import annotations

from collections import Counter, deque
from dataclasses import dataclass, field

MAX_VERTEX_ID = (1 << 64) - 1

Edge = tuple[int, int]


class EdgeListParseError(ValueError):
    """A data line could not be parsed as two unsigned 64-bit integers."""

    def __init__(self, path: str, line_no: int, reason: str):
        super().__init__(f"{path}:{line_no}: {reason}")
        self.path = path
        self.line_no = line_no


class EmptyGraphError(ValueError):
    """The input contained no edge lines at all."""


class UndefinedMetricError(ValueError):
    """The requested metric is undefined on this graph (usually: empty)."""


@dataclass(frozen=True)
class Graph:
    """Immutable directed multigraph over 64-bit vertex ids.

    edges preserves input order and multiplicity; degree maps count
    multiplicity too, so sum(out_degree) == sum(in_degree) == len(edges).
    """

    edges: tuple[Edge, ...]
    vertices: tuple[int, ...]  # sorted, derived from edges
    in_degree: dict[int, int]
    out_degree: dict[int, int]

    @classmethod
    def from_edges(cls, edges) -> "Graph":
        edges = tuple((int(u), int(v)) for u, v in edges)
        indeg: Counter = Counter()
        outdeg: Counter = Counter()
        for u, v in edges:
            outdeg[u] += 1
            indeg[v] += 1
        vertices = tuple(sorted(set(indeg) | set(outdeg)))
        return cls(edges=edges, vertices=vertices,
                   in_degree=dict(indeg), out_degree=dict(outdeg))

    @property
    def vertex_count(self) -> int:
        return len(self.vertices)

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    def undirected_adjacency(self) -> dict[int, set[int]]:
        """Neighbor sets ignoring direction and self-loops."""
        adj: dict[int, set[int]] = {v: set() for v in self.vertices}
        for u, v in self.edges:
            if u != v:
                adj[u].add(v)
                adj[v].add(u)
        return adj


@dataclass(frozen=True)
class Diameter:
    """Longest shortest path, with an explicit tag for the two non-exact cases."""

    kind: str  # "exact" | "infinite" | "lower_bound"
    hops: int | None = None

    @classmethod
    def exact(cls, hops: int) -> "Diameter":
        return cls("exact", hops)

    @classmethod
    def infinite(cls) -> "Diameter":
        return cls("infinite", None)

    @classmethod
    def lower_bound(cls, hops: int) -> "Diameter":
        return cls("lower_bound", hops)

    def __str__(self) -> str:
        if self.kind == "infinite":
            return "inf"
        if self.kind == "lower_bound":
            return f">={self.hops}"
        return str(self.hops)


@dataclass(frozen=True)
class DatasetProfile:
    vertices: int
    edges: int
    symmetry_pct: float
    zero_in_pct: float
    zero_out_pct: float
    triangles: int
    weak_components: int
    strong_components: int
    diameter: Diameter
    in_degree_hist: dict[int, int] = field(repr=False)
    out_degree_hist: dict[int, int] = field(repr=False)
    out_in_ratio_cdf: list[tuple[float, float]] = field(repr=False)
    zero_in_vertices: int = 0  # excluded from the ratio CDF, reported apart


# ---------------------------------------------------------------------------
# Ingestion and normalization
# ---------------------------------------------------------------------------

def load_edge_list(path, allow_self_loops: bool = True) -> tuple[Graph, int]:
    """Parse a plain-text edge list into a Graph.

    Per line: '#'-prefixed comments are skipped; otherwise the first two
    whitespace-separated tokens are src and dst (base-10 unsigned 64-bit);
    extra tokens are ignored. Tabs, spaces and \\r\\n all accepted.

    Returns (graph, dropped_self_loops). The drop count is nonzero only
    when allow_self_loops is False.
    """
    path = str(path)
    edges: list[Edge] = []
    dropped = 0
    saw_data_line = False
    with open(path, "r", encoding="utf-8") as fh:
        for line_no, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            saw_data_line = True
            tokens = line.split()
            if len(tokens) < 2:
                raise EdgeListParseError(path, line_no, "expected at least two integer tokens")
            try:
                u = int(tokens[0])
                v = int(tokens[1])
            except ValueError:
                raise EdgeListParseError(path, line_no, f"non-integer token in {tokens[:2]!r}") from None
            if u < 0 or v < 0 or u > MAX_VERTEX_ID or v > MAX_VERTEX_ID:
                raise EdgeListParseError(path, line_no, "vertex id outside unsigned 64-bit range")
            if u == v and not allow_self_loops:
                dropped += 1
                continue
            edges.append((u, v))
    if not saw_data_line:
        raise EmptyGraphError(f"{path}: no edge lines found")
    return Graph.from_edges(edges), dropped


def canonicalize_undirected(g: Graph) -> Graph:
    """Collapse to a simple undirected graph stored as sorted (min, max) edges.

    Reciprocal pairs and duplicates collapse to one edge; self-loops drop.
    Idempotent.
    """
    canon = {(u, v) if u < v else (v, u) for u, v in g.edges if u != v}
    return Graph.from_edges(sorted(canon))


def is_canonical(g: Graph) -> Edge | None:
    """Return None if g is in canonical undirected form, else an offending edge."""
    seen: set[Edge] = set()
    for u, v in g.edges:
        if u >= v or (u, v) in seen:
            return (u, v)
        seen.add((u, v))
    return None


def symmetrize(g: Graph) -> Graph:
    """Directed graph containing both directions of every non-loop edge."""
    canon = canonicalize_undirected(g)
    both: list[Edge] = []
    for u, v in canon.edges:
        both.append((u, v))
        both.append((v, u))
    return Graph.from_edges(both)


# ---------------------------------------------------------------------------
# Scalar characterization metrics
# ---------------------------------------------------------------------------

def symmetry_pct(g: Graph) -> float:
    """Percentage of edge-list entries whose reverse edge also exists.

    Self-loops count as reciprocated.
    """
    if not g.edges:
        raise UndefinedMetricError("symmetry is undefined on an empty graph")
    eset = set(g.edges)
    reciprocated = sum(1 for u, v in g.edges if u == v or (v, u) in eset)
    return 100.0 * reciprocated / len(g.edges)


def zero_degree_pcts(g: Graph) -> tuple[float, float]:
    """(pct of vertices with no incoming edges, pct with no outgoing edges)."""
    if not g.edges:
        raise UndefinedMetricError("degree percentages are undefined on an empty graph")
    n = g.vertex_count
    zero_in = sum(1 for v in g.vertices if g.in_degree.get(v, 0) == 0)
    zero_out = sum(1 for v in g.vertices if g.out_degree.get(v, 0) == 0)
    return 100.0 * zero_in / n, 100.0 * zero_out / n


def degree_histograms(g: Graph) -> tuple[dict[int, int], dict[int, int]]:
    """(in-degree histogram, out-degree histogram), both with a 0 bucket."""
    in_hist: Counter = Counter()
    out_hist: Counter = Counter()
    for v in g.vertices:
        in_hist[g.in_degree.get(v, 0)] += 1
        out_hist[g.out_degree.get(v, 0)] += 1
    return dict(in_hist), dict(out_hist)


def out_in_ratio_cdf(g: Graph) -> tuple[list[tuple[float, float]], int]:
    """CDF of out-degree/in-degree over vertices with in-degree > 0.

    Vertices with in-degree 0 have no honest place on the curve and are
    returned as a separate count. The CDF is nondecreasing and ends at 1.0
    over the included vertices.
    """
    ratios = []
    zero_in = 0
    for v in g.vertices:
        indeg = g.in_degree.get(v, 0)
        if indeg == 0:
            zero_in += 1
        else:
            ratios.append(g.out_degree.get(v, 0) / indeg)
    ratios.sort()
    pairs: list[tuple[float, float]] = []
    n = len(ratios)
    i = 0
    while i < n:
        j = i
        while j + 1 < n and ratios[j + 1] == ratios[i]:
            j += 1
        pairs.append((ratios[i], (j + 1) / n))
        i = j + 1
    return pairs, zero_in


# ---------------------------------------------------------------------------
# Structure: triangles, components, diameter
# ---------------------------------------------------------------------------

def triangle_count_exact(g: Graph) -> tuple[dict[int, int], int]:
    """Exact per-vertex and total unique-triangle counts.

    The graph is canonicalized to a simple undirected graph internally.
    Each triangle contributes 1 to each of its three corners; the total is
    the corner sum divided by 3.
    """
    canon = canonicalize_undirected(g)
    adj = canon.undirected_adjacency()
    per_vertex = {v: 0 for v in g.vertices}
    for u, v in canon.edges:
        nu, nv = adj[u], adj[v]
        if len(nu) > len(nv):
            nu, nv = nv, nu
        for w in nu:
            if w in nv:
                per_vertex[w] += 1
    corner_sum = sum(per_vertex.values())
    return per_vertex, corner_sum // 3


def weak_components(g: Graph) -> tuple[dict[int, int], int]:
    """Undirected connected components, labeled by their minimum vertex id."""
    adj = g.undirected_adjacency()
    labels: dict[int, int] = {}
    count = 0
    for start in g.vertices:
        if start in labels:
            continue
        count += 1
        # vertices are scanned in ascending order, so start is its component's minimum
        labels[start] = start
        queue = deque([start])
        while queue:
            x = queue.popleft()
            for y in adj[x]:
                if y not in labels:
                    labels[y] = start
                    queue.append(y)
    return labels, count


def strong_components(g: Graph) -> int:
    """Number of strongly connected components (iterative Tarjan).

    Iterative on an explicit stack: does not overflow on path graphs of
    10**6 vertices.
    """
    succ: dict[int, list[int]] = {v: [] for v in g.vertices}
    for u, v in g.edges:
        succ[u].append(v)

    UNVISITED = -1
    index: dict[int, int] = {v: UNVISITED for v in g.vertices}
    lowlink: dict[int, int] = {}
    on_stack: set[int] = set()
    stack: list[int] = []
    counter = 0
    scc_count = 0

    for root in g.vertices:
        if index[root] != UNVISITED:
            continue
        # frames: (vertex, iterator position into succ[vertex])
        work = [(root, 0)]
        while work:
            v, pos = work.pop()
            if pos == 0:
                index[v] = counter
                lowlink[v] = counter
                counter += 1
                stack.append(v)
                on_stack.add(v)
            advanced = False
            neighbors = succ[v]
            while pos < len(neighbors):
                w = neighbors[pos]
                pos += 1
                if index[w] == UNVISITED:
                    work.append((v, pos))
                    work.append((w, 0))
                    advanced = True
                    break
                if w in on_stack:
                    lowlink[v] = min(lowlink[v], index[w])
            if advanced:
                continue
            if lowlink[v] == index[v]:
                scc_count += 1
                while True:
                    w = stack.pop()
                    on_stack.discard(w)
                    if w == v:
                        break
            if work:
                parent = work[-1][0]
                lowlink[parent] = min(lowlink[parent], lowlink[v])
    return scc_count


def _bfs_eccentricity(adj: dict[int, set[int]], source: int) -> tuple[int, int]:
    """(eccentricity, farthest vertex with minimal id) from source."""
    dist = {source: 0}
    queue = deque([source])
    far_d, far_v = 0, source
    while queue:
        x = queue.popleft()
        dx = dist[x]
        for y in adj[x]:
            if y not in dist:
                dist[y] = dx + 1
                queue.append(y)
                if dist[y] > far_d or (dist[y] == far_d and y < far_v):
                    far_d, far_v = dist[y], y
    return far_d, far_v


def diameter(g: Graph, exact_threshold: int = 10_000) -> Diameter:
    """Undirected diameter of g.

    INFINITE when the graph has more than one weak component. Exact
    (all-sources BFS) up to exact_threshold vertices; beyond that a
    double-sweep lower bound, tagged as such.
    """
    if not g.edges:
        raise UndefinedMetricError("diameter is undefined on an empty graph")
    _, n_components = weak_components(g)
    if n_components > 1:
        return Diameter.infinite()
    adj = g.undirected_adjacency()
    if g.vertex_count <= exact_threshold:
        best = 0
        for v in g.vertices:
            ecc, _ = _bfs_eccentricity(adj, v)
            if ecc > best:
                best = ecc
        return Diameter.exact(best)
    start = g.vertices[0]
    _, far = _bfs_eccentricity(adj, start)
    ecc, _ = _bfs_eccentricity(adj, far)
    return Diameter.lower_bound(ecc)


# ---------------------------------------------------------------------------
# Composite profile
# ---------------------------------------------------------------------------

def profile(g: Graph, exact_threshold: int = 10_000) -> DatasetProfile:
    """Full dataset characterization in one record."""
    if not g.edges:
        raise UndefinedMetricError("cannot profile an empty graph")
    zero_in_pct, zero_out_pct = zero_degree_pcts(g)
    in_hist, out_hist = degree_histograms(g)
    cdf, zero_in_vertices = out_in_ratio_cdf(g)
    _, triangles = triangle_count_exact(g)
    _, weak = weak_components(g)
    return DatasetProfile(
        vertices=g.vertex_count,
        edges=g.edge_count,
        symmetry_pct=symmetry_pct(g),
        zero_in_pct=zero_in_pct,
        zero_out_pct=zero_out_pct,
        triangles=triangles,
        weak_components=weak,
        strong_components=strong_components(g),
        diameter=diameter(g, exact_threshold),
        in_degree_hist=in_hist,
        out_degree_hist=out_hist,
        out_in_ratio_cdf=cdf,
        zero_in_vertices=zero_in_vertices,
    )


PROFILE_CSV_HEADER = ("dataset,vertices,edges,symmetry_pct,zero_in_pct,"
                      "zero_out_pct,triangles,weak_cc,strong_cc,diameter")


def profile_csv_row(dataset: str, p: DatasetProfile) -> str:
    return ",".join([
        dataset,
        str(p.vertices),
        str(p.edges),
        f"{p.symmetry_pct:.2f}",
        f"{p.zero_in_pct:.2f}",
        f"{p.zero_out_pct:.2f}",
        str(p.triangles),
        str(p.weak_components),
        str(p.strong_components),
        str(p.diameter),
    ])


def profile_text(dataset: str, p: DatasetProfile) -> str:
    """Flat key=value block; histograms and the CDF as compact inline maps."""
    in_hist = ",".join(f"{d}:{c}" for d, c in sorted(p.in_degree_hist.items()))
    out_hist = ",".join(f"{d}:{c}" for d, c in sorted(p.out_degree_hist.items()))
    cdf = ",".join(f"{r:g}:{f:g}" for r, f in p.out_in_ratio_cdf)
    lines = [
        f"dataset={dataset}",
        f"vertices={p.vertices}",
        f"edges={p.edges}",
        f"symmetry_pct={p.symmetry_pct:.2f}",
        f"zero_in_pct={p.zero_in_pct:.2f}",
        f"zero_out_pct={p.zero_out_pct:.2f}",
        f"triangles={p.triangles}",
        f"weak_cc={p.weak_components}",
        f"strong_cc={p.strong_components}",
        f"diameter={p.diameter}",
        f"in_degree_hist={in_hist}",
        f"out_degree_hist={out_hist}",
        f"out_in_ratio_cdf={cdf}",
        f"ratio_cdf_excluded_zero_in={p.zero_in_vertices}",
    ]
    return "\n".join(lines)
