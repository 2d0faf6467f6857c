"""Prove optima with the iterative solve loop and inspect its decisions."""
from antiband import decide, solve
from antiband.generators import example_grid, grid

for g in (example_grid(), grid(4, 4), grid(4, 5)):
    res = solve(g, time_limit=60)
    print(f"{g.name}: [{res.lower_bound}, {res.upper_bound}] {res.status} in {res.seconds:.2f}s")
    for it in res.iterations:
        print(f"   t={it.t:<3}{it.outcome:<11}{it.nodes:>7} nodes  via {it.source}")

# the neighborhood support filter is what makes the grid proofs cheap
g = grid(4, 5)
for support in (True, False):
    d = decide(g, 9, time_limit=30, support=support)
    print(f"4x5 grid, t=9, support={support}: {d.outcome} after {d.nodes} nodes")
