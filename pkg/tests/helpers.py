"""Shared strategies, reference data and instance lookup for the test suite."""
from __future__ import annotations

import os
import random
from pathlib import Path

from hypothesis import strategies as st

from antiband.generators import random_connected, small_families
from antiband.graph import Graph, read_graph

DATA = Path(__file__).parent / "data"

# name: (n, m, T1.1, T1.2, T1.3, T1.4, best known labeling value, proven optimal)
SMALL_TABLE = {
    "pores1": (30, 103, 13, 16, 8, 9, 6, False),
    "ibm32": (32, 90, 15, 19, 13, 10, 9, True),
    "bcspwr01": (39, 46, 19, 29, 21, 19, 17, True),
    "bcsstk01": (48, 176, 22, 29, 13, 9, 8, False),
    "bcspwr02": (49, 59, 24, 38, 27, 24, 21, False),
    "curtis54": (54, 124, 26, 38, 22, 13, 13, True),
    "will57": (57, 127, 28, 41, 25, 14, 13, False),
    "impcolb": (59, 281, 29, 35, 21, 8, 8, True),
    "ash85": (85, 219, 42, 64, 29, 28, 21, False),
    "nos4": (100, 247, 50, 78, 40, 49, 34, False),
    "dwt234": (117, 162, 58, 99, 76, 58, 50, False),
    "bcspwr03": (118, 179, 59, 99, 57, 39, 39, True),
}

# name: (n, m, T1.1, T1.2)
LARGE_TABLE = {
    "bcsstk06": (420, 3720, 210, 334),
    "bcsstk07": (420, 3720, 210, 334),
    "impcold": (425, 1267, 212, 375),
    "can445": (445, 1682, 221, 387),
    "494bus": (494, 586, 247, 460),
    "dwt503": (503, 2762, 250, 429),
    "sherman4": (546, 1341, 272, 494),
    "dwt592": (592, 2256, 295, 525),
    "662bus": (662, 906, 331, 619),
    "nos6": (675, 1290, 337, 624),
    "685bus": (685, 1282, 342, 634),
    "can715": (715, 2975, 357, 638),
}

EXACT_OPTIMA = {"bcspwr03": 39, "impcolb": 8, "curtis54": 13, "bcspwr01": 17, "ibm32": 9}


def instance_dir() -> Path:
    """Directory holding the HarwellBoeing instances in MatrixMarket form."""
    env = os.environ.get("ANTIBAND_INSTANCE_DIR")
    return Path(env) if env else Path(__file__).parent.parent / "data" / "hb"


def find_instance(name: str) -> Path | None:
    base = instance_dir()
    for suffix in (".mtx", ".mtx.gz"):
        p = base / f"{name}{suffix}"
        if p.is_file():
            return p
    return None


def load_instance(name: str) -> Graph | None:
    p = find_instance(name)
    return None if p is None else read_graph(p)


def oracle_graphs(max_n: int = 7, random_n8: int = 0, seed: int = 0) -> list[Graph]:
    """Family graphs up to ``max_n`` vertices, then ``random_n8`` random connected 8-vertex graphs."""
    graphs = list(small_families(max_n))
    rng = random.Random(seed)
    for k in range(random_n8):
        g = random_connected(8, rng.uniform(0.05, 0.7), rng)
        graphs.append(Graph.from_edges(g.n, g.edges, f"rand8_{k}"))
    return graphs


@st.composite
def connected_graphs(draw, min_n: int = 2, max_n: int = 7) -> Graph:
    """Random spanning tree plus a random subset of the remaining pairs."""
    n = draw(st.integers(min_n, max_n))
    edges = {(draw(st.integers(0, v - 1)), v) for v in range(1, n)}
    others = [(i, j) for i in range(n) for j in range(i + 1, n) if (i, j) not in edges]
    extra = draw(st.lists(st.sampled_from(others), unique=True, max_size=len(others))) if others else []
    return Graph.from_edges(n, list(edges) + extra, f"h{n}")


@st.composite
def graphs(draw, min_n: int = 1, max_n: int = 8) -> Graph:
    n = draw(st.integers(min_n, max_n))
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True, max_size=len(pairs))) if pairs else []
    return Graph.from_edges(n, chosen, f"g{n}")


@st.composite
def labelings(draw, n: int) -> list[int]:
    return draw(st.permutations(list(range(1, n + 1))))
