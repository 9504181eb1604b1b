#!/usr/bin/env python3
"""Regenerate the bundled toy datasets in data/.

Both graphs are emitted in canonical undirected form (src < dst, no
duplicates), so every algorithm including triangle counting runs on them
directly. Generation is fully deterministic: rerunning this script
reproduces the committed files byte for byte.

  toy_mesh    12x12 grid, the road-network analog: regular degrees,
              no triangles, wide diameter
  toy_social  preferential-attachment graph, the social-network analog:
              skewed degrees, many triangles, small diameter
"""

import os
import sys

sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "src"))

from vcbench.hashing import SplitMix64  # noqa: E402


def mesh_edges(side=12):
    edges = []
    for r in range(side):
        for c in range(side):
            v = r * side + c
            if c + 1 < side:
                edges.append((v, v + 1))
            if r + 1 < side:
                edges.append((v, v + side))
    return edges


def social_edges(n_vertices=180, attach=3, seed=404):
    rng = SplitMix64(seed)
    endpoints = [0, 1, 1, 2, 0, 2]  # seed triangle; degree-proportional pool
    edges = {(0, 1), (0, 2), (1, 2)}
    for v in range(3, n_vertices):
        for _ in range(attach):
            u = endpoints[rng.next_below(len(endpoints))]
            if u != v:
                edges.add((min(u, v), max(u, v)))
                endpoints.append(u)
                endpoints.append(v)
    return sorted(edges)


def write(path, name, edges):
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(f"# {name}: {len(edges)} canonical undirected edges\n")
        for u, v in edges:
            fh.write(f"{u}\t{v}\n")
    print(f"wrote {path} ({len(edges)} edges)")


def main():
    out_dir = os.path.join(os.path.dirname(__file__), "..", "data")
    os.makedirs(out_dir, exist_ok=True)
    write(os.path.join(out_dir, "toy_mesh.txt"), "toy_mesh", mesh_edges())
    write(os.path.join(out_dir, "toy_social.txt"), "toy_social", social_edges())


if __name__ == "__main__":
    main()
