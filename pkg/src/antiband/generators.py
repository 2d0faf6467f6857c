"""Small graph families used by the tests and demos."""
from __future__ import annotations

import itertools
import random

from .graph import Graph

# Fig.-1-style 3x3 grid; vertex names A..I are row-major.
GRID_NAMES = "ABCDEFGHI"
GRID_EDGES = "AB BC AD DE BE CF EF DG GH EH HI FI".split()
GRID_OPTIMAL_LABELING = (5, 1, 6, 2, 7, 3, 8, 4, 9)


def example_grid() -> Graph:
    idx = {c: k for k, c in enumerate(GRID_NAMES)}
    return Graph.from_edges(9, [(idx[a], idx[b]) for a, b in GRID_EDGES], "grid3x3")


def path(n: int) -> Graph:
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)], f"P{n}")


def cycle(n: int) -> Graph:
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)], f"C{n}")


def star(leaves: int) -> Graph:
    return Graph.from_edges(leaves + 1, [(0, i) for i in range(1, leaves + 1)], f"K1,{leaves}")


def complete(n: int) -> Graph:
    return Graph.from_edges(n, itertools.combinations(range(n), 2), f"K{n}")


def complete_bipartite(a: int, b: int) -> Graph:
    return Graph.from_edges(a + b, [(i, a + j) for i in range(a) for j in range(b)], f"K{a},{b}")


def grid(rows: int, cols: int) -> Graph:
    es = []
    for r in range(rows):
        for c in range(cols):
            v = r * cols + c
            if c + 1 < cols:
                es.append((v, v + 1))
            if r + 1 < rows:
                es.append((v, v + cols))
    return Graph.from_edges(rows * cols, es, f"grid{rows}x{cols}")


def random_connected(n: int, p: float, rng: random.Random) -> Graph:
    """Random spanning tree plus independent extra edges with probability ``p``."""
    order = list(range(n))
    rng.shuffle(order)
    es = {tuple(sorted((order[k], order[rng.randrange(k)]))) for k in range(1, n)}
    for u, v in itertools.combinations(range(n), 2):
        if rng.random() < p:
            es.add((u, v))
    return Graph.from_edges(n, es, f"rand{n}")


def small_families(max_n: int = 7):
    """Paths, cycles, stars, complete and complete bipartite graphs up to ``max_n`` vertices."""
    for n in range(2, max_n + 1):
        yield path(n)
        yield complete(n)
        if n >= 3:
            yield cycle(n)
            yield star(n - 1)
        for a in range(1, n // 2 + 1):
            if a > 1 or n - a > 1:
                yield complete_bipartite(a, n - a)
