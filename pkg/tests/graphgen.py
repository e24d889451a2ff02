"""Random valid link graphs for property tests."""

from __future__ import annotations

import random

from skeinlab.linkgraph import LinkGraph


def random_tree(rng: random.Random, colour: int, size: int, tag: str) -> list[tuple]:
    """Random tree with ``size`` edges and vertex degree at most 3."""
    verts = [f"{tag}0"]
    deg = {verts[0]: 0}
    edges = []
    for i in range(1, size + 1):
        parent = rng.choice([v for v in verts if deg[v] < 3])
        v = f"{tag}{i}"
        verts.append(v)
        deg[v] = 1
        deg[parent] += 1
        edges.append((parent, v, colour))
    return edges


def random_link_graph(rng: random.Random, colours: int = 3, max_edges: int = 4, hooks: int = 4) -> LinkGraph:
    """Glue leaves of one colour onto bivalent vertices of another colour."""
    edges: list[tuple] = []
    for c in range(colours):
        edges += random_tree(rng, c, rng.randint(1, max_edges), f"c{c}_")
    for _ in range(hooks):
        deg: dict = {}
        col: dict = {}
        for u, v, c in edges:
            for w in (u, v):
                deg[w] = deg.get(w, 0) + 1
                col.setdefault(w, set()).add(c)
        leaves = [v for v in deg if deg[v] == 1]
        mids = [v for v in deg if deg[v] == 2 and len(col[v]) == 1]
        pairs = [(a, b) for a in leaves for b in mids if col[a] != col[b]]
        if not pairs:
            break
        a, b = rng.choice(sorted(pairs))
        edges = [(b if u == a else u, b if v == a else v, c) for u, v, c in edges]
    return LinkGraph.build(edges)
