"""Read a graph, label it, and measure how far apart neighbors end up."""
from antiband import antibandwidth, parse_edge_list, parse_matrix_market, vertex_antibandwidth
from antiband.generators import GRID_NAMES, GRID_OPTIMAL_LABELING, example_grid

MTX = """%%MatrixMarket matrix coordinate pattern symmetric
4 4 4
2 1
3 2
4 3
4 1
"""

square = parse_matrix_market(MTX, "square")
print(square.name, "n =", square.n, "m =", square.m)
for f in ([1, 2, 3, 4], [1, 3, 2, 4]):
    print(f, "->", antibandwidth(square, f))

g = example_grid()
f = GRID_OPTIMAL_LABELING
print("\n3x3 grid labeling:")
for row in range(3):
    print("  ", " ".join(f"{GRID_NAMES[3 * row + c]}={f[3 * row + c]}" for c in range(3)))
print("antibandwidth:", antibandwidth(g, f))
print("per vertex:", [vertex_antibandwidth(g, f, i) for i in range(g.n)])

tri = parse_edge_list("3 3\n1 2\n2 3\n1 3\n", "triangle")
print("\ntriangle best possible:", antibandwidth(tri, [1, 2, 3]))
