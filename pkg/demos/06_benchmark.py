"""Run the command line benchmark over a small directory of instances."""
import random
import tempfile
from pathlib import Path

from antiband.cli import main
from antiband.generators import grid, random_connected
from antiband.graph import to_edge_list, to_matrix_market

folder = Path(tempfile.mkdtemp())
(folder / "grid4x4.mtx").write_text(to_matrix_market(grid(4, 4)))
(folder / "rand12.edges").write_text(to_edge_list(random_connected(12, 0.3, random.Random(1))))
(folder / "grid3x5.edges").write_text(to_edge_list(grid(3, 5)))

main([str(folder), "--mode", "solve", "--time-limit", "120", "--format", "markdown"])
