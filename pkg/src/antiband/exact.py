"""Exact antibandwidth by repeated decision searches "is there a labeling with AB >= t?".

Each decision is a depth-first search over label domains (Python-int bitsets,
bit ``l-1`` for label ``l``) with propagation of

* all-different: used labels leave every domain, a label that fits only one
  vertex is forced on it, and interval Hall sets are checked for overflow;
* edge distance: a label of ``u`` survives only if some label of a neighbor
  lies at distance >= t (a window test on the neighbor's min and max label);
* clique spread: members of a clique need pairwise gaps of t, so ``c`` of
  them confined to a label interval of width ``w`` require ``(c-1)*t <= w``.

The outer loop raises t past every labeling found until a search proves
infeasibility or the upper bound is met.
"""
from __future__ import annotations

import itertools
import logging
import math
import time
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .bounds import BoundsReport, best_upper_bound
from .graph import Graph, GraphError, antibandwidth, is_connected
from .heuristics import incumbent_guided_heuristic, local_search, multi_start
from .npsolvers import DEFAULT_TIME_LIMIT as SUBSOLVER_TIME_LIMIT

logger = logging.getLogger(__name__)

DEFAULT_TIME_LIMIT = 1800.0


class _BudgetExhausted(Exception):
    pass


def _range_mask(lo: int, hi: int) -> int:
    """Bits for labels lo..hi inclusive (1-based); empty when lo > hi."""
    if lo > hi:
        return 0
    return ((1 << (hi - lo + 1)) - 1) << (lo - 1)


def _lo(d: int) -> int:
    return (d & -d).bit_length()


def _hi(d: int) -> int:
    return d.bit_length()


def _labels(d: int) -> list[int]:
    out = []
    while d:
        low = d & -d
        out.append(low.bit_length())
        d ^= low
    return out


# -- clique catalog -----------------------------------------------------------

def clique_catalog(g: Graph) -> list[tuple[int, ...]]:
    """Cliques of size >= 3 covering every edge that lies in a triangle.

    Each uncovered edge is grown greedily by the common neighbor with most
    neighbors among the remaining candidates (smallest index on ties).
    """
    nbr = g.neighbor_masks
    covered: set[tuple[int, int]] = set()
    catalog = []
    for u, v in g.edges:
        if (u, v) in covered:
            continue
        clique = [u, v]
        cand = nbr[u] & nbr[v]
        while cand:
            best, best_key = -1, None
            c = cand
            while c:
                low = c & -c
                w = low.bit_length() - 1
                c ^= low
                key = ((nbr[w] & cand).bit_count(), -w)
                if best_key is None or key > best_key:
                    best, best_key = w, key
            clique.append(best)
            cand &= nbr[best]
        if len(clique) >= 3:
            clique.sort()
            catalog.append(tuple(clique))
            covered.update(itertools.combinations(clique, 2))
        else:
            covered.add((u, v))
    return catalog


# -- search state ---------------------------------------------------------------

@dataclass
class SearchState:
    """Domains for target distance ``t``. ``fixed[v]`` marks processed singletons."""

    t: int
    domains: list[int]
    fixed: list[bool]
    used: int = 0
    assigned: list[tuple[int, int]] = field(default_factory=list)
    node_count: int = 0
    elapsed: float = 0.0

    def copy(self) -> "SearchState":
        return SearchState(self.t, self.domains.copy(), self.fixed.copy(), self.used,
                           self.assigned.copy(), self.node_count, self.elapsed)

    def domain(self, v: int) -> list[int]:
        return _labels(self.domains[v])

    def labeling(self) -> list[int] | None:
        if not all(self.fixed):
            return None
        return [_lo(d) for d in self.domains]


class Propagator:
    """Constraint propagation for one graph and one target distance."""

    def __init__(self, g: Graph, t: int, catalog: Sequence[tuple[int, ...]] | None = None,
                 hall: bool = True, support: bool = True):
        self.g = g
        self.n = g.n
        self.t = t
        self.adj = g.adjacency
        self.degree = [len(a) for a in g.adjacency]
        self.full = (1 << g.n) - 1
        self.catalog = list(clique_catalog(g) if catalog is None else catalog)
        self.hall = hall
        self.support = support
        # far[l]: labels at distance >= t from l
        self.far = [0] + [self.full & ~_range_mask(max(1, lab - t + 1), min(g.n, lab + t - 1))
                          for lab in range(1, g.n + 1)]
        self.cliques_of: list[list[int]] = [[] for _ in range(g.n)]
        for k, c in enumerate(self.catalog):
            for v in c:
                self.cliques_of[v].append(k)

    def initial(self, symmetry: bool = True) -> SearchState | None:
        """Root state after propagation, or None if the root is already infeasible."""
        state = SearchState(self.t, [self.full] * self.n, [False] * self.n)
        if symmetry:
            v = self.g.max_degree_vertex()
            state.domains[v] = _range_mask(1, math.ceil(self.n / 2))
        if not self.fixpoint(state, list(range(self.n))):
            return None
        return state

    def assign(self, state: SearchState, v: int, label: int) -> SearchState | None:
        """New state with ``v`` fixed to ``label``, or None on conflict."""
        bit = 1 << (label - 1)
        if not state.domains[v] & bit:
            return None
        child = state.copy()
        child.domains[v] = bit
        child.assigned.append((v, label))
        return child if self.fixpoint(child, [v]) else None

    def remove(self, state: SearchState, v: int, label: int) -> bool:
        """Drop ``label`` from ``v`` in place; False on conflict."""
        state.domains[v] &= ~(1 << (label - 1))
        return self.fixpoint(state, [v])

    def fixpoint(self, state: SearchState, queue: list[int]) -> bool:
        dom, fixed = state.domains, state.fixed
        adj, t, n, full = self.adj, self.t, self.n, self.full
        touched: set[int] = set(queue)
        while True:
            while queue:
                v = queue.pop()
                d = dom[v]
                if not d:
                    return False
                lo, hi = _lo(d), _hi(d)
                if lo == hi and not fixed[v]:
                    fixed[v] = True
                    if state.used & d:
                        return False
                    state.used |= d
                    for u in range(n):
                        if not fixed[u] and dom[u] & d:
                            dom[u] &= ~d
                            queue.append(u)
                            touched.add(u)
                # neighbor labels within distance < t of every label of v lose support
                if hi - lo <= 2 * t - 2:
                    window = _range_mask(max(1, hi - t + 1), min(n, lo + t - 1))
                    for u in adj[v]:
                        du = dom[u]
                        if du & window:
                            du &= ~window
                            dom[u] = du
                            if not du:
                                return False
                            queue.append(u)
                            touched.add(u)
            # labels that fit a single vertex are forced
            once = twice = 0
            for u in range(n):
                if not fixed[u]:
                    d = dom[u]
                    twice |= once & d
                    once |= d
            free = full & ~state.used
            if free & ~once:
                return False
            singles = free & ~twice
            if singles:
                for u in range(n):
                    if not fixed[u]:
                        hit = dom[u] & singles
                        if hit:
                            if hit & (hit - 1):
                                return False
                            if dom[u] != hit:
                                dom[u] = hit
                                queue.append(u)
                                touched.add(u)
                if queue:
                    continue
            if self.support:
                if self._support(state, queue) is False:
                    return False
                if queue:
                    touched.update(queue)
                    continue
            if self.hall and not self._hall_ok(state):
                return False
            if self.catalog and not self._cliques_ok(state, touched):
                return False
            return True

    def _support(self, state: SearchState, queue: list[int]) -> bool:
        """Drop labels whose far region cannot seat every unfixed neighbor.

        Pruned vertices are pushed on ``queue``; False means a wipe-out.
        """
        dom, fixed, far, adj = state.domains, state.fixed, self.far, self.adj
        free = self.full & ~state.used
        for v in range(self.n):
            if fixed[v]:
                continue
            reach = 0
            need = 0
            for u in adj[v]:
                if not fixed[u]:
                    reach |= dom[u]
                    need += 1
            if not need:
                continue
            reach &= free
            d = dom[v]
            keep = d
            rest = d
            while rest:
                low = rest & -rest
                rest ^= low
                if (far[low.bit_length()] & reach & ~low).bit_count() < need:
                    keep ^= low
            if keep != d:
                if not keep:
                    return False
                dom[v] = keep
                queue.append(v)
        return True

    def _hall_ok(self, state: SearchState) -> bool:
        """No label interval is claimed by more unfixed vertices than it has free labels."""
        dom, fixed = state.domains, state.fixed
        spans = sorted((_hi(dom[u]), _lo(dom[u])) for u in range(self.n) if not fixed[u])
        if len(spans) < 2:
            return True
        free = self.full & ~state.used
        for a in sorted({lo for _, lo in spans}):
            count = 0
            for hi, lo in spans:
                if lo >= a:
                    count += 1
                    if count > 1 and count > (free & _range_mask(a, hi)).bit_count():
                        return False
        return True

    def _cliques_ok(self, state: SearchState, touched: set[int]) -> bool:
        dom, t = state.domains, self.t
        seen = set()
        for v in touched:
            for k in self.cliques_of[v]:
                if k in seen:
                    continue
                seen.add(k)
                spans = [(_lo(dom[u]), _hi(dom[u])) for u in self.catalog[k]]
                for a, _ in spans:
                    for _, b in spans:
                        if b < a:
                            continue
                        c = sum(1 for lo, hi in spans if lo >= a and hi <= b)
                        if c >= 2 and (c - 1) * t > b - a:
                            return False
        return True


def initial_state(g: Graph, t: int, symmetry: bool = True) -> SearchState | None:
    return Propagator(g, t).initial(symmetry)


def propagate(g: Graph, state: SearchState, i: int, label: int) -> SearchState | None:
    """Assign ``label`` to vertex ``i`` and propagate; None signals a conflict."""
    return Propagator(g, state.t).assign(state, i, label)


def select_branch_vertex(g: Graph, state: SearchState) -> int | None:
    """Unfixed vertex of highest degree; ties by fewest labels, then smallest index."""
    best, best_key = None, None
    for v in range(g.n):
        if state.fixed[v]:
            continue
        d = state.domains[v]
        key = (len(g.adjacency[v]), -d.bit_count(), -v)
        if best_key is None or key > best_key:
            best, best_key = v, key
    return best


def select_branch_label(g: Graph, state: SearchState, full: int):
    """Free label with the fewest candidate vertices, plus those candidates.

    Candidates come back sorted by decreasing degree, then index. Returns
    None when every label is used.
    """
    free = full & ~state.used
    best = None
    while free:
        low = free & -free
        free ^= low
        cands = [u for u in range(g.n) if not state.fixed[u] and state.domains[u] & low]
        if best is None or len(cands) < len(best[1]):
            best = (low.bit_length(), cands)
            if len(cands) <= 1:
                break
    if best is None:
        return None
    best[1].sort(key=lambda u: (-len(g.adjacency[u]), u))
    return best


def _value_order(d: int, n: int) -> int:
    """Extreme label of the domain closest to its end of 1..n (the low end on ties)."""
    lo, hi = _lo(d), _hi(d)
    return lo if lo - 1 <= n - hi else hi


# -- decision -------------------------------------------------------------------

@dataclass
class Decision:
    outcome: str  # "feasible", "infeasible" or "unknown"
    labeling: list[int] | None
    nodes: int
    seconds: float


def decide(g: Graph, t: int, *, node_limit: int | None = None, time_limit: float | None = None,
           symmetry: bool = True, catalog: Sequence[tuple[int, ...]] | None = None,
           hall: bool = True, branching: str = "label", support: bool = True) -> Decision:
    """Search for a labeling with antibandwidth >= t.

    ``branching="label"`` picks the free label with the fewest candidate
    vertices and tries each candidate in turn (high degree first);
    ``"vertex"`` branches on :func:`select_branch_vertex` with a
    one-label-versus-rest split.

    With ``symmetry`` the max-degree vertex (smallest index on ties) is
    restricted to labels <= ceil(n/2), which is safe because reversing a
    labeling keeps its antibandwidth.
    """
    if g.m == 0:
        raise GraphError("decide needs at least one edge")
    if not 1 <= t <= g.n - 1:
        raise ValueError(f"target t={t} outside 1..{g.n - 1}")
    start = time.perf_counter()
    if branching not in ("label", "vertex"):
        raise ValueError(f"unknown branching {branching!r}")
    if t == 1:
        return Decision("feasible", list(range(1, g.n + 1)), 0, 0.0)
    prop = Propagator(g, t, catalog, hall, support)
    deadline = None if time_limit is None else start + time_limit
    nodes = 0

    def search(state: SearchState) -> list[int] | None:
        nonlocal nodes
        nodes += 1
        if node_limit is not None and nodes > node_limit:
            raise _BudgetExhausted
        if deadline is not None and nodes & 63 == 0 and time.perf_counter() > deadline:
            raise _BudgetExhausted
        if branching == "label":
            picked = select_branch_label(g, state, prop.full)
            if picked is None:
                return state.labeling()
            label, cands = picked
            for u in cands:
                child = prop.assign(state, u, label)
                if child is not None:
                    found = search(child)
                    if found is not None:
                        return found
            return None
        v = select_branch_vertex(g, state)
        if v is None:
            return state.labeling()
        while True:
            label = _value_order(state.domains[v], g.n)
            child = prop.assign(state, v, label)
            if child is not None:
                found = search(child)
                if found is not None:
                    return found
            if not prop.remove(state, v, label):
                return None
            if state.fixed[v]:
                # the removal forced v; carry on with the next branching vertex
                return search(state)

    root = prop.initial(symmetry)
    try:
        found = None if root is None else search(root)
    except _BudgetExhausted:
        return Decision("unknown", None, nodes, time.perf_counter() - start)
    seconds = time.perf_counter() - start
    if found is None:
        return Decision("infeasible", None, nodes, seconds)
    if antibandwidth(g, found) < t:
        raise AssertionError("search returned a labeling below the target")
    return Decision("feasible", found, nodes, seconds)


# -- iterative driver -------------------------------------------------------------

@dataclass
class Iteration:
    t: int
    outcome: str
    nodes: int
    seconds: float
    source: str = "search"


@dataclass
class SolveResult:
    best_labeling: list[int] | None
    lower_bound: int
    upper_bound: int
    status: str  # "optimal", "feasible", "unknown" or "infeasible_input"
    iterations: list[Iteration] = field(default_factory=list)
    bounds: BoundsReport | None = None
    heuristic_value: int | None = None
    seconds: float = 0.0

    def __post_init__(self):
        if self.lower_bound > self.upper_bound:
            raise ValueError("lower bound above upper bound")


def _domain_scores(state: SearchState, n: int) -> np.ndarray:
    """Surrogate for fractional assignment values: uniform weight over each domain."""
    score = np.zeros((n, n))
    for v, d in enumerate(state.domains):
        labels = _labels(d)
        score[v, [label - 1 for label in labels]] = 1.0 / len(labels)
    return score


def solve(g: Graph, time_limit: float = DEFAULT_TIME_LIMIT,
          subsolver_time_limit: float = SUBSOLVER_TIME_LIMIT, *,
          node_limit: int | None = None, heuristic_roots: Sequence[int] | None = None,
          bounds: BoundsReport | None = None, branching: str = "label") -> SolveResult:
    """Antibandwidth with optimality proof when the budget allows.

    Upper bound from the four structural bounds, start labeling from the
    multi-start heuristics, then one decision search per target t = LB + 1.
    A found labeling moves LB to its own antibandwidth; an infeasible target
    closes the gap.
    """
    start = time.perf_counter()
    if g.m == 0 or not is_connected(g):
        raise GraphError("solve needs a connected graph with at least one edge")
    deadline = start + time_limit
    if bounds is None:
        bounds = best_upper_bound(g, subsolver_time_limit)
    upper = bounds.best
    best = multi_start(g, upper, roots=heuristic_roots,
                       time_limit=max(0.0, deadline - time.perf_counter()))
    lower = antibandwidth(g, best)
    result = SolveResult(best, lower, max(lower, upper), "feasible", bounds=bounds,
                         heuristic_value=lower)
    catalog = clique_catalog(g)
    while result.lower_bound < result.upper_bound:
        t = result.lower_bound + 1
        remaining = deadline - time.perf_counter()
        if remaining <= 0:
            break
        prop = Propagator(g, t, catalog)
        root = prop.initial()
        if root is None:
            result.iterations.append(Iteration(t, "infeasible", 1, 0.0, "root"))
            result.upper_bound = t - 1
            break
        tick = time.perf_counter()
        guess = incumbent_guided_heuristic(g, result.lower_bound, _domain_scores(root, g.n))
        guess = local_search(g, guess, time_limit=remaining)
        value = antibandwidth(g, guess)
        if value >= t:
            result.iterations.append(Iteration(t, "feasible", 0, time.perf_counter() - tick, "primal"))
            result.best_labeling, result.lower_bound = guess, value
            continue
        remaining = deadline - time.perf_counter()
        if remaining <= 0:
            break
        dec = decide(g, t, node_limit=node_limit, time_limit=remaining, catalog=catalog,
                     branching=branching)
        result.iterations.append(Iteration(t, dec.outcome, dec.nodes, dec.seconds))
        logger.info("%s: t=%d %s (%d nodes, %.2fs)", g.name, t, dec.outcome, dec.nodes, dec.seconds)
        if dec.outcome == "feasible":
            result.best_labeling = dec.labeling
            result.lower_bound = antibandwidth(g, dec.labeling)
        elif dec.outcome == "infeasible":
            result.upper_bound = t - 1
            break
        else:
            break
    result.upper_bound = max(result.upper_bound, result.lower_bound)
    result.status = "optimal" if result.lower_bound == result.upper_bound else "feasible"
    result.seconds = time.perf_counter() - start
    return result


def brute_force(g: Graph) -> int:
    """Antibandwidth by enumerating labelings, one of each mirror pair (n <= 10)."""
    n = g.n
    if n > 10:
        raise ValueError("brute force limited to n <= 10")
    if g.m == 0:
        raise GraphError("antibandwidth undefined for edgeless graph")
    e = np.asarray(g.edges)
    best = 0
    batch = []
    for p in itertools.permutations(range(1, n + 1)):
        if p[0] > p[-1]:
            continue  # its mirror n+1-f has first < last and is enumerated
        batch.append(p)
        if len(batch) == 50000:
            best = max(best, _batch_ab(np.array(batch), e))
            batch = []
    if batch:
        best = max(best, _batch_ab(np.array(batch), e))
    return best


def _batch_ab(perms: np.ndarray, e: np.ndarray) -> int:
    return int(np.abs(perms[:, e[:, 0]] - perms[:, e[:, 1]]).min(axis=1).max())
