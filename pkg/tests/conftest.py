import random

import hypothesis
import pytest

import vcbench as vb

hypothesis.settings.register_profile(
    "suite", max_examples=40, deadline=None,
    suppress_health_check=[hypothesis.HealthCheck.too_slow])
hypothesis.settings.load_profile("suite")


def random_edges(rng: random.Random, n_vertices: int, n_edges: int,
                 id_offset: int = 0) -> list[tuple[int, int]]:
    return [(id_offset + rng.randrange(n_vertices),
             id_offset + rng.randrange(n_vertices)) for _ in range(n_edges)]


def random_canonical_graph(rng: random.Random, n_vertices: int,
                           n_edges: int) -> "vb.Graph":
    edges = set()
    attempts = 0
    while len(edges) < n_edges and attempts < 20 * n_edges:
        u, v = rng.randrange(n_vertices), rng.randrange(n_vertices)
        attempts += 1
        if u != v:
            edges.add((min(u, v), max(u, v)))
    return vb.Graph.from_edges(sorted(edges))


@pytest.fixture
def rng():
    return random.Random(0x5EED)
