"""Compare the four upper bounds on a handful of small graphs."""
from antiband import best_upper_bound, solve
from antiband.generators import complete_bipartite, cycle, example_grid, grid, path, star

graphs = [path(8), cycle(9), star(6), complete_bipartite(3, 4), example_grid(), grid(3, 4)]

print(f"{'graph':<12}{'degree':>8}{'size':>6}{'stable':>8}{'color':>7}{'best':>6}{'opt':>5}")
for g in graphs:
    rep = best_upper_bound(g, time_limit=5)
    print(f"{g.name:<12}{rep.t11:>8}{rep.t12:>6}{rep.t13:>8}{rep.t14:>7}{rep.best:>6}"
          f"{solve(g, time_limit=30).lower_bound:>6}")
