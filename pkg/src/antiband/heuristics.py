"""Construction heuristics and swap-based local search for antibandwidth labelings.

All constructions hand out labels 1, 2, ..., n in increasing order and never
relabel a vertex, so the largest labeled neighbor of a vertex is always the
most recently labeled one.
"""
from __future__ import annotations

import logging
import time
from typing import Callable, Sequence

import numpy as np

from .graph import INF, Graph, antibandwidth, bfs_layers, require_connected

logger = logging.getLogger(__name__)

EPSILON = 0.0001


class _PartialLabeling:
    """Bookkeeping shared by the constructions (one instance per run)."""

    def __init__(self, g: Graph):
        self.g = g
        self.n = g.n
        self.f = [0] * g.n
        self.maxlab = [0] * g.n  # largest label among labeled neighbors
        self.unlabeled_degree = [len(a) for a in g.adjacency]
        self.unlabeled = set(range(g.n))

    def assign(self, v: int, label: int) -> None:
        self.f[v] = label
        self.unlabeled.discard(v)
        for u in self.g.adjacency[v]:
            self.maxlab[u] = label
            self.unlabeled_degree[u] -= 1

    def result_ab(self, v: int, label: int) -> float:
        """Antibandwidth of ``v`` if it took ``label``; unlabeled neighbors count as label n-1."""
        r = INF
        if self.maxlab[v]:
            r = label - self.maxlab[v]
        if self.unlabeled_degree[v]:
            r = min(r, abs(self.n - 1 - label))
        return r

    def labeled_ab(self, v: int, label: int) -> float:
        """Antibandwidth of ``v`` at ``label`` counting labeled neighbors only."""
        return label - self.maxlab[v] if self.maxlab[v] else INF

    def max_neighbor_degree(self, v: int) -> int:
        """Largest unlabeled-subgraph degree over the unlabeled neighbors of ``v``."""
        f, ud = self.f, self.unlabeled_degree
        return max((ud[u] for u in self.g.adjacency[v] if not f[u]), default=-1)

    def tie_key(self, v: int):
        return (self.unlabeled_degree[v], self.max_neighbor_degree(v), -v)


def bfs_layer_heuristic(g: Graph, root: int) -> list[int]:
    """Label by alternating sweeps over the even and odd BFS layers from ``root``.

    A labeled vertex blocks its neighbors until the current sweep ends.
    Inside a layer the next vertex maximizes (resulting antibandwidth,
    unlabeled degree, largest unlabeled degree of a neighbor), then lowest index.
    """
    require_connected(g, "bfs_layer_heuristic")
    layers = bfs_layers(g, root).layers
    state = _PartialLabeling(g)
    state.assign(root, 1)
    label = 2
    sweeps = (layers[0::2], layers[1::2])
    parity = 0
    while label <= g.n:
        blocked: set[int] = set()
        for layer in sweeps[parity]:
            while True:
                cands = [v for v in layer if not state.f[v] and v not in blocked]
                if not cands:
                    break
                v = max(cands, key=lambda u: (state.result_ab(u, label),) + state.tie_key(u))
                state.assign(v, label)
                blocked.update(g.adjacency[v])
                label += 1
        parity ^= 1
    return state.f


def bound_guided_heuristic(g: Graph, root: int, bound: int) -> list[int]:
    """Give each label to a vertex whose resulting antibandwidth reaches the running bound.

    The bound starts at ``bound`` and drops by one whenever no unlabeled
    vertex qualifies for the current label.
    """
    require_connected(g, "bound_guided_heuristic")
    state = _PartialLabeling(g)
    state.assign(root, 1)
    bh = bound
    for label in range(2, g.n + 1):
        values = {v: state.result_ab(v, label) for v in state.unlabeled}
        top = max(values.values())
        bh = min(bh, top)
        cands = [v for v, r in values.items() if r >= bh]
        v = max(cands, key=state.tie_key)
        state.assign(v, label)
    return state.f


Score = Callable[[int, int], float] | np.ndarray | None


def incumbent_guided_heuristic(g: Graph, incumbent: int, score: Score = None) -> list[int]:
    """Try to beat ``incumbent`` by labeling in order of (score + eps) * degree.

    ``score`` is either a callable ``score(vertex, label)`` or an array indexed
    ``[vertex, label - 1]``; without it the order is by degree. For each label
    the first vertex in that order whose antibandwidth towards its labeled
    neighbors is at least the running bound (initially ``incumbent + 1``) wins.
    """
    if incumbent < 0:
        raise ValueError("incumbent must be non-negative")
    state = _PartialLabeling(g)
    deg = g.degree
    if score is None:
        static = sorted(range(g.n), key=lambda v: (-deg[v], v))
    elif callable(score):
        static = None
    else:
        score = np.asarray(score, dtype=float)
        static = None
    bh = incumbent + 1
    for label in range(1, g.n + 1):
        if static is not None:
            order = [v for v in static if not state.f[v]]
        elif callable(score):
            order = sorted(state.unlabeled, key=lambda v: (-(score(v, label) + EPSILON) * deg[v], v))
        else:
            col = score[:, label - 1]
            order = sorted(state.unlabeled, key=lambda v: (-(col[v] + EPSILON) * deg[v], v))
        values = [state.labeled_ab(v, label) for v in order]
        bh = min(bh, max(values))
        v = next(u for u, r in zip(order, values) if r >= bh)
        state.assign(v, label)
    return state.f


# -- local search ----------------------------------------------------------------

def _leximin_better(new: list[int], old: list[int]) -> bool:
    return sorted(new) > sorted(old)


def local_search(g: Graph, f: Sequence[int], time_limit: float | None = None) -> list[int]:
    """Improve ``f`` by label swaps at the endpoints of minimum-bandwidth edges.

    For an edge at the current minimum, every swap of one endpoint's label
    with another vertex's label is scored by the smaller of the two swapped
    vertices' new antibandwidths. The best-scoring swap is applied if it
    strictly improves the sorted edge-length vector of the labeling; that
    order refines the antibandwidth, so the result is never worse than ``f``.
    """
    f = [int(x) for x in f]
    if g.m == 0:
        return f
    deadline = None if time_limit is None else time.perf_counter() + time_limit
    adj = g.adjacency
    n = g.n

    def swapped_view(u: int, w: int):
        fu, fw = f[u], f[w]

        def lab(x):
            if x == u:
                return fw
            if x == w:
                return fu
            return f[x]
        return lab

    def evaluate(u: int, w: int):
        lab = swapped_view(u, w)
        old, new = [], []
        ab_u = ab_w = INF
        for x in adj[u]:
            d_new = abs(lab(u) - lab(x))
            ab_u = min(ab_u, d_new)
            if x != w:
                old.append(abs(f[u] - f[x]))
                new.append(d_new)
        for x in adj[w]:
            d_new = abs(lab(w) - lab(x))
            ab_w = min(ab_w, d_new)
            if x != u:
                old.append(abs(f[w] - f[x]))
                new.append(d_new)
        return min(ab_u, ab_w), new, old

    improved = True
    while improved:
        improved = False
        current = antibandwidth(g, f)
        min_edges = [(i, j) for i, j in g.edges if abs(f[i] - f[j]) == current]
        for i, j in min_edges:
            if abs(f[i] - f[j]) != current:
                continue
            if deadline is not None and time.perf_counter() > deadline:
                return f
            best = None
            for u in (i, j):
                for w in range(n):
                    if w == i or w == j:
                        continue
                    value, new, old = evaluate(u, w)
                    if not _leximin_better(new, old):
                        continue
                    key = (value, -w)
                    if best is None or key > best[0]:
                        best = (key, u, w)
            if best is not None:
                _, u, w = best
                f[u], f[w] = f[w], f[u]
                improved = True
                current = antibandwidth(g, f)
    return f


def multi_start(g: Graph, bound: int, roots: Sequence[int] | None = None,
                time_limit: float | None = None, search: bool = True) -> list[int]:
    """Both constructions from every root, each polished by local search; best wins.

    Ties keep the first labeling found. ``time_limit`` stops starting new
    roots once exceeded (at least one root always runs).
    """
    require_connected(g, "multi_start")
    roots = range(g.n) if roots is None else roots
    deadline = None if time_limit is None else time.perf_counter() + time_limit
    best, best_ab = None, -1
    for k, r in enumerate(roots):
        if k and deadline is not None and time.perf_counter() > deadline:
            logger.info("multi_start stopped after %d roots", k)
            break
        for build in (lambda: bfs_layer_heuristic(g, r), lambda: bound_guided_heuristic(g, r, bound)):
            f = build()
            if search:
                f = local_search(g, f)
            ab = antibandwidth(g, f)
            if ab > best_ab:
                best, best_ab = f, ab
    return best

