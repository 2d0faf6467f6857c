"""Constructions, then local search, then the multi-start driver."""
import random

from antiband import (antibandwidth, best_upper_bound, bfs_layer_heuristic, bound_guided_heuristic,
                      local_search, multi_start)
from antiband.generators import grid, random_connected

rng = random.Random(3)
for g in (grid(5, 6), random_connected(40, 0.1, rng)):
    ub = best_upper_bound(g, time_limit=5).best
    layers = bfs_layer_heuristic(g, 0)
    guided = bound_guided_heuristic(g, 0, ub)
    polished = local_search(g, guided, time_limit=2)
    best = multi_start(g, ub, time_limit=10)
    print(f"{g.name}: upper bound {ub}")
    print(f"  bfs layers from 0     {antibandwidth(g, layers)}")
    print(f"  bound guided from 0   {antibandwidth(g, guided)}")
    print(f"  after local search    {antibandwidth(g, polished)}")
    print(f"  multi start           {antibandwidth(g, best)}")
