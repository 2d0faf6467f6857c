"""Anytime exact solvers for maximum stable set and graph coloring.

Both return an :class:`NpResult` whose bounds stay valid when the time
limit cuts the search short: the stable set side reports a proven upper
bound on alpha(G), the coloring side a proven lower bound on chi(G).
"""
from __future__ import annotations

import itertools
import time
from dataclasses import dataclass, field

import numpy as np

from .graph import Graph

DEFAULT_TIME_LIMIT = 10.0


class _Timeout(Exception):
    pass


@dataclass
class NpResult:
    kind: str  # "stable_set" or "coloring"
    lower_value: int
    upper_value: int
    certificate: list[int]
    optimal: bool
    elapsed: float = 0.0
    nodes: int = field(default=0, repr=False)

    def __post_init__(self):
        if self.lower_value > self.upper_value:
            raise ValueError(f"inconsistent bounds {self.lower_value} > {self.upper_value}")


def _bits(x: int):
    while x:
        low = x & -x
        yield low.bit_length() - 1
        x ^= low


class _Clock:
    def __init__(self, limit: float | None):
        self.start = time.perf_counter()
        self.deadline = None if limit is None else self.start + limit
        self.ticks = 0

    def tick(self) -> None:
        self.ticks += 1
        if self.deadline is not None and self.ticks & 255 == 0 and time.perf_counter() > self.deadline:
            raise _Timeout

    @property
    def elapsed(self) -> float:
        return time.perf_counter() - self.start


# -- coloring ------------------------------------------------------------------

def greedy_coloring(g: Graph) -> NpResult:
    """Sequential coloring in descending-degree order (ties by index)."""
    t0 = time.perf_counter()
    order = sorted(range(g.n), key=lambda v: (-len(g.adjacency[v]), v))
    color = [-1] * g.n
    for v in order:
        used = {color[u] for u in g.adjacency[v]}
        c = 0
        while c in used:
            c += 1
        color[v] = c
    k = max(color) + 1 if g.n else 0
    clique = greedy_clique(g)
    lower = len(clique)
    return NpResult("coloring", lower, k, [c + 1 for c in color], lower == k,
                    time.perf_counter() - t0)


def greedy_clique(g: Graph) -> list[int]:
    """Largest clique found by greedy growth from every start vertex.

    Growth adds the candidate with most neighbors among the remaining
    candidates; the max-degree vertex is tried first.
    """
    nbr = g.neighbor_masks
    best: list[int] = []
    starts = sorted(range(g.n), key=lambda v: (-len(g.adjacency[v]), v))
    for s in starts:
        if len(g.adjacency[s]) + 1 <= len(best):
            continue
        clique = [s]
        cand = nbr[s]
        while cand:
            v = max(_bits(cand), key=lambda u: ((nbr[u] & cand).bit_count(), -u))
            clique.append(v)
            cand &= nbr[v]
        if len(clique) > len(best):
            best = sorted(clique)
    return best


def dsatur_coloring(g: Graph) -> list[int]:
    """Plain DSATUR heuristic; returns 0-based colors."""
    nbr = g.neighbor_masks
    color = [-1] * g.n
    sat = [0] * g.n
    uncolored = set(range(g.n))
    while uncolored:
        v = max(uncolored, key=lambda u: (sat[u].bit_count(), len(g.adjacency[u]), -u))
        free = ~sat[v]
        c = (free & -free).bit_length() - 1
        color[v] = c
        uncolored.discard(v)
        for u in _bits(nbr[v]):
            sat[u] |= 1 << c
    return color


def _k_colorable(g: Graph, k: int, clique: list[int], clock: _Clock) -> list[int] | None:
    """DSATUR backtracking for a proper k-coloring; the clique is pre-colored."""
    n = g.n
    nbr = g.neighbor_masks
    color = [-1] * n
    sat = [0] * n  # bitmask of colors present on neighbors
    full = (1 << k) - 1

    def assign(v, c, trail):
        color[v] = c
        bit = 1 << c
        for u in _bits(nbr[v]):
            if color[u] < 0 and not sat[u] & bit:
                sat[u] |= bit
                trail.append(u)

    def undo(v, c, trail):
        color[v] = -1
        bit = ~(1 << c)
        for u in trail:
            sat[u] &= bit

    for c, v in enumerate(clique):
        assign(v, c, [])
    uncolored = {v for v in range(n) if color[v] < 0}

    def search(used: int) -> bool:
        clock.tick()
        if not uncolored:
            return True
        best_v, best_key = -1, None
        for u in uncolored:
            s = sat[u].bit_count()
            if s >= k:
                return False
            key = (s, len(g.adjacency[u]), -u)
            if best_key is None or key > best_key:
                best_v, best_key = u, key
        v = best_v
        free = full & ~sat[v]
        # colors above `used` are interchangeable; try only the first of them
        limit = min(used + 1, k)
        uncolored.discard(v)
        for c in _bits(free & ((1 << limit) - 1)):
            trail: list[int] = []
            assign(v, c, trail)
            if search(max(used, c + 1)):
                return True
            undo(v, c, trail)
        uncolored.add(v)
        return False

    if search(len(clique)):
        return color
    return None


def chromatic_number(g: Graph, time_limit: float | None = DEFAULT_TIME_LIMIT) -> NpResult:
    """Exact chi(G) by DSATUR decision searches for k = LB, LB+1, ...

    The lower bound starts from a greedy clique and rises by one with every
    k proven infeasible, so a timeout still leaves a valid lower bound.
    """
    clock = _Clock(time_limit)
    if g.n == 0:
        return NpResult("coloring", 0, 0, [], True)
    greedy = greedy_coloring(g)
    ds = dsatur_coloring(g)
    best = [c - 1 for c in greedy.certificate]
    if max(ds) < max(best):
        best = ds
    upper = max(best) + 1
    clique = greedy_clique(g)
    lower = len(clique)
    try:
        k = lower
        while k < upper:
            found = _k_colorable(g, k, clique, clock)
            if found is None:
                lower = k + 1
                k += 1
            else:
                best, upper = found, k
    except _Timeout:
        pass
    return NpResult("coloring", lower, upper, [c + 1 for c in best], lower == upper,
                    clock.elapsed, clock.ticks)


# -- stable set ----------------------------------------------------------------

def _clique_cover(cand: int, nbr) -> tuple[list[int], list[int]]:
    """Greedy clique cover of G[cand]; returns vertices with their cover index (1-based).

    Vertices come out grouped by clique, so the index sequence is non-decreasing.
    """
    order: list[int] = []
    bound: list[int] = []
    rest = cand
    k = 0
    while rest:
        k += 1
        q = rest
        while q:
            v = (q & -q).bit_length() - 1
            q &= nbr[v]
            rest &= ~(1 << v)
            order.append(v)
            bound.append(k)
    return order, bound


def _greedy_stable(g: Graph) -> list[int]:
    nbr = g.neighbor_masks
    alive = (1 << g.n) - 1
    chosen = []
    while alive:
        v = min(_bits(alive), key=lambda u: ((nbr[u] & alive).bit_count(), u))
        chosen.append(v)
        alive &= ~(nbr[v] | (1 << v))
    return chosen


def max_stable_set(g: Graph, time_limit: float | None = DEFAULT_TIME_LIMIT) -> NpResult:
    """Maximum stable set by branch and bound with a clique-cover bound.

    Vertices of degree 0 or 1 in the candidate subgraph are taken without
    branching. On timeout ``upper_value`` is the best bound proven so far.
    """
    clock = _Clock(time_limit)
    nbr = g.neighbor_masks
    best = _greedy_stable(g)
    if g.n == 0:
        return NpResult("stable_set", 0, 0, [], True)

    def reduce(cand: int, taken: list[int]) -> int:
        changed = True
        while changed and cand:
            changed = False
            for v in _bits(cand):
                if not (cand >> v) & 1:
                    continue
                d = (nbr[v] & cand).bit_count()
                if d <= 1:
                    taken.append(v)
                    cand &= ~(nbr[v] | (1 << v))
                    changed = True
        return cand

    def expand(cand: int, current: list[int]) -> None:
        nonlocal best
        clock.tick()
        taken: list[int] = []
        cand = reduce(cand, taken)
        current = current + taken
        if not cand:
            if len(current) > len(best):
                best = current
            return
        order, bound = _clique_cover(cand, nbr)
        size = len(current)
        for idx in range(len(order) - 1, -1, -1):
            if size + bound[idx] <= len(best):
                return
            v = order[idx]
            expand(cand & ~nbr[v] & ~(1 << v), current + [v])
            cand &= ~(1 << v)

    root_taken: list[int] = []
    cand = reduce((1 << g.n) - 1, root_taken)
    order, bound = _clique_cover(cand, nbr)
    upper = len(root_taken) + (bound[-1] if bound else 0)
    optimal = False
    try:
        if len(root_taken) > len(best) and not cand:
            best = root_taken
        rest = cand
        for idx in range(len(order) - 1, -1, -1):
            upper = max(len(best), len(root_taken) + bound[idx])
            if len(root_taken) + bound[idx] <= len(best):
                break
            v = order[idx]
            expand(rest & ~nbr[v] & ~(1 << v), root_taken + [v])
            rest &= ~(1 << v)
        upper = len(best)
        optimal = True
    except _Timeout:
        upper = max(upper, len(best))
    cert = sorted(best)
    return NpResult("stable_set", len(cert), upper, cert, optimal, clock.elapsed, clock.ticks)


def is_stable_set(g: Graph, vertices) -> bool:
    s = set(vertices)
    return not any(u in s and v in s for u, v in g.edges)


def is_proper_coloring(g: Graph, colors) -> bool:
    return all(colors[u] != colors[v] for u, v in g.edges)


def stable_set_brute_force(g: Graph) -> int:
    """alpha(G) by enumerating all vertex subsets (small graphs only)."""
    if g.n > 20:
        raise ValueError("brute force limited to n <= 20")
    subsets = np.arange(1 << g.n, dtype=np.int64)
    ok = np.ones(subsets.shape, dtype=bool)
    for u, v in g.edges:
        ok &= ~(((subsets >> u) & 1).astype(bool) & ((subsets >> v) & 1).astype(bool))
    sizes = np.array([bin(s).count("1") for s in range(1 << g.n)])
    return int(sizes[ok].max())


def chromatic_brute_force(g: Graph) -> int:
    """chi(G) by trying every assignment of k colors for increasing k (n <= 8)."""
    if g.n > 8:
        raise ValueError("brute force limited to n <= 8")
    if g.n == 0:
        return 0
    for k in range(1, g.n + 1):
        for colors in itertools.product(range(k), repeat=g.n):
            if all(colors[u] != colors[v] for u, v in g.edges):
                return k
    return g.n
