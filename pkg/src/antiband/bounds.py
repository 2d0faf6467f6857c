"""Upper bounds on the antibandwidth from order, size, degree, alpha(G) and chi(G)."""
from __future__ import annotations

from dataclasses import dataclass
from math import isqrt

from .graph import Graph, GraphError, is_connected
from .npsolvers import DEFAULT_TIME_LIMIT, NpResult, chromatic_number, max_stable_set


def _check(g: Graph) -> None:
    if g.m == 0:
        raise GraphError("bounds need at least one edge")
    if not is_connected(g):
        raise GraphError("bounds require a connected graph")


def degree_bound(g: Graph) -> int:
    """min(floor((n - min_degree + 1) / 2), n - max_degree)."""
    _check(g)
    return min((g.n - g.min_degree + 1) // 2, g.n - g.max_degree)


def size_bound_value(n: int, m: int) -> int:
    """floor(n - (sqrt(8m+1) - 1) / 2) in exact integer arithmetic.

    The result k is the unique integer with
    (2(n-k-1)+1)^2 < 8m+1 <= (2(n-k)+1)^2.
    """
    q = 8 * m + 1
    r = isqrt(q)
    # smallest c with (2c+1)^2 >= q
    c = (r - 1) // 2
    while (2 * c + 1) ** 2 < q:
        c += 1
    while c > 0 and (2 * c - 1) ** 2 >= q:
        c -= 1
    return n - c


def size_bound(g: Graph) -> int:
    _check(g)
    return size_bound_value(g.n, g.m)


def stability_bound(g: Graph, time_limit: float | None = DEFAULT_TIME_LIMIT,
                    result: NpResult | None = None) -> int:
    """alpha(G), or a proven upper bound on it when the sub-solve times out."""
    if result is None:
        result = max_stable_set(g, time_limit)
    return result.upper_value


def coloring_bound_value(n: int, chi_lower: int) -> int:
    if chi_lower < 2:
        raise GraphError("coloring bound undefined for chi < 2")
    return (n - 1) // (chi_lower - 1)


def coloring_bound(g: Graph, time_limit: float | None = DEFAULT_TIME_LIMIT,
                   result: NpResult | None = None) -> int:
    """floor((n-1)/(chi-1)) using a proven lower bound on chi(G)."""
    if g.m == 0:
        raise GraphError("coloring bound undefined for edgeless graph")
    if result is None:
        result = chromatic_number(g, time_limit)
    return coloring_bound_value(g.n, result.lower_value)


@dataclass
class BoundsReport:
    t11: int
    t12: int
    t13: int
    t13_optimal: bool
    t13_time: float
    t14: int
    t14_optimal: bool
    t14_time: float
    best: int
    connected: bool = True
    alpha: NpResult | None = None
    chi: NpResult | None = None

    def as_dict(self) -> dict:
        return {
            "T1.1": self.t11, "T1.2": self.t12,
            "T1.3": self.t13, "t_alpha": round(self.t13_time, 3), "alpha_opt": self.t13_optimal,
            "T1.4": self.t14, "t_chi": round(self.t14_time, 3), "chi_opt": self.t14_optimal,
            "UB": self.best,
        }


def best_upper_bound(g: Graph, time_limit: float | None = DEFAULT_TIME_LIMIT) -> BoundsReport:
    """All four bounds; ``time_limit`` applies to each NP-hard sub-solve."""
    _check(g)
    t11 = degree_bound(g)
    t12 = size_bound(g)
    alpha = max_stable_set(g, time_limit)
    chi = chromatic_number(g, time_limit)
    t13 = alpha.upper_value
    t14 = coloring_bound_value(g.n, chi.lower_value)
    return BoundsReport(t11, t12, t13, alpha.optimal, alpha.elapsed,
                        t14, chi.optimal, chi.elapsed, min(t11, t12, t13, t14),
                        True, alpha, chi)
