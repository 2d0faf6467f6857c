"""Graph representation, instance parsing and labeling evaluation.

Vertices are ``0..n-1`` internally. Labels are ``1..n`` and every file
format and report is 1-based.
"""
from __future__ import annotations

import gzip
import io
import logging
import math
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

logger = logging.getLogger(__name__)

INF = math.inf


class ParseError(ValueError):
    """Malformed instance text. ``line`` is 1-based, or None for whole-file errors."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class GraphError(ValueError):
    """A graph does not meet the precondition of an operation."""


@dataclass(frozen=True)
class Graph:
    """Undirected simple graph.

    Build with :meth:`from_edges`, which normalizes and validates. Equality
    only looks at ``n`` and the edge list.
    """

    n: int
    edges: tuple[tuple[int, int], ...]
    adjacency: tuple[tuple[int, ...], ...] = field(repr=False)
    name: str = field(default="", compare=False)
    dropped_loops: int = field(default=0, compare=False, repr=False)
    dropped_duplicates: int = field(default=0, compare=False, repr=False)

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]], name: str = "",
                   *, dedup: bool = True, drop_loops: bool = False) -> "Graph":
        """Build a graph from 0-based vertex pairs.

        Self-loops raise unless ``drop_loops``; duplicates raise unless ``dedup``.
        """
        if n < 0:
            raise GraphError("negative vertex count")
        seen: set[tuple[int, int]] = set()
        loops = dups = 0
        for u, v in edges:
            u, v = int(u), int(v)
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"edge ({u + 1},{v + 1}) outside 1..{n}")
            if u == v:
                if not drop_loops:
                    raise GraphError(f"self-loop at vertex {u + 1}")
                loops += 1
                continue
            e = (u, v) if u < v else (v, u)
            if e in seen:
                if not dedup:
                    raise GraphError(f"duplicate edge ({e[0] + 1},{e[1] + 1})")
                dups += 1
                continue
            seen.add(e)
        sorted_edges = tuple(sorted(seen))
        adj: list[list[int]] = [[] for _ in range(n)]
        for u, v in sorted_edges:
            adj[u].append(v)
            adj[v].append(u)
        adjacency = tuple(tuple(sorted(a)) for a in adj)
        return cls(n, sorted_edges, adjacency, name, loops, dups)

    @property
    def m(self) -> int:
        return len(self.edges)

    @cached_property
    def degree(self) -> np.ndarray:
        return np.array([len(a) for a in self.adjacency], dtype=np.int64)

    @property
    def max_degree(self) -> int:
        return int(self.degree.max()) if self.n else 0

    @property
    def min_degree(self) -> int:
        return int(self.degree.min()) if self.n else 0

    @cached_property
    def neighbor_masks(self) -> tuple[int, ...]:
        """Adjacency rows as Python-int bitsets (bit ``j`` set iff ``j`` adjacent)."""
        masks = []
        for a in self.adjacency:
            x = 0
            for j in a:
                x |= 1 << j
            masks.append(x)
        return tuple(masks)

    def has_edge(self, u: int, v: int) -> bool:
        return (self.neighbor_masks[u] >> v) & 1 == 1

    def max_degree_vertex(self) -> int:
        """Vertex of maximum degree, smallest index among ties."""
        return int(np.argmax(self.degree))

    def subgraph(self, vertices: Sequence[int]) -> "Graph":
        """Induced subgraph, relabelled ``0..len(vertices)-1`` in the given order."""
        index = {v: k for k, v in enumerate(vertices)}
        es = [(index[u], index[v]) for u, v in self.edges if u in index and v in index]
        return Graph.from_edges(len(vertices), es, self.name)

    def __str__(self) -> str:
        label = f"{self.name} " if self.name else ""
        return f"{label}(n={self.n}, m={self.m})"


@dataclass(frozen=True)
class LayerPartition:
    root: int
    layer: tuple[int, ...]
    layers: tuple[tuple[int, ...], ...]


# -- parsing -----------------------------------------------------------------

def _data_lines(text: str):
    for lineno, raw in enumerate(io.StringIO(text), start=1):
        line = raw.strip()
        if line:
            yield lineno, line


def parse_matrix_market(text: str, name: str = "") -> Graph:
    """Graph of the off-diagonal nonzero pattern of a MatrixMarket coordinate file.

    Values are ignored, diagonal entries dropped and repeated entries merged;
    both are logged as warnings and counted on the returned graph.
    """
    lines = _data_lines(text)
    try:
        lineno, header = next(lines)
    except StopIteration:
        raise ParseError("empty input") from None
    tokens = header.split()
    if len(tokens) != 5 or tokens[0].lower() != "%%matrixmarket":
        raise ParseError("expected '%%MatrixMarket matrix coordinate <field> <symmetry>'", lineno)
    obj, fmt, fld, sym = (t.lower() for t in tokens[1:])
    if obj != "matrix" or fmt != "coordinate":
        raise ParseError(f"unsupported MatrixMarket type '{obj} {fmt}'", lineno)
    if fld not in ("pattern", "real", "integer", "complex", "double"):
        raise ParseError(f"unknown field '{fld}'", lineno)
    if sym not in ("general", "symmetric", "skew-symmetric", "hermitian"):
        raise ParseError(f"unknown symmetry '{sym}'", lineno)

    size = None
    for lineno, line in lines:
        if line.startswith("%"):
            continue
        parts = line.split()
        if len(parts) != 3:
            raise ParseError("size line must be 'rows cols entries'", lineno)
        try:
            rows, cols, nnz = (int(p) for p in parts)
        except ValueError:
            raise ParseError("non-integer size line", lineno) from None
        size = (rows, cols, nnz)
        break
    if size is None:
        raise ParseError("missing size line")
    rows, cols, nnz = size
    if rows != cols:
        raise ParseError(f"matrix is {rows}x{cols}, need a square matrix", lineno)
    n = rows
    if n <= 0:
        raise ParseError("empty graph (n=0)", lineno)

    symmetric = sym != "general"
    seen: set[tuple[int, int]] = set()
    loops = dups = count = 0
    for lineno, line in lines:
        if line.startswith("%"):
            continue
        parts = line.split()
        if len(parts) < 2:
            raise ParseError("entry needs row and column index", lineno)
        try:
            i, j = int(parts[0]), int(parts[1])
        except ValueError:
            raise ParseError("non-integer index", lineno) from None
        if not (1 <= i <= n and 1 <= j <= n):
            raise ParseError(f"index ({i},{j}) outside 1..{n}", lineno)
        count += 1
        if i == j:
            loops += 1
            continue
        key = (min(i, j), max(i, j)) if symmetric else (i, j)
        if key in seen:
            dups += 1
            continue
        seen.add(key)
    if count < nnz:
        raise ParseError(f"expected {nnz} entries, found {count}")
    if count > nnz:
        raise ParseError(f"expected {nnz} entries, found {count}")

    pairs = {(min(i, j) - 1, max(i, j) - 1) for i, j in seen}
    g = Graph.from_edges(n, pairs, name)
    _warn_dropped(name, loops, dups)
    return Graph(g.n, g.edges, g.adjacency, name, loops, dups)


def parse_edge_list(text: str, name: str = "", *, dedup: bool = True) -> Graph:
    """Parse ``n m`` followed by ``m`` lines ``u v`` (1-based endpoints).

    Self-loops are rejected. Duplicate edges are merged with a warning, or
    rejected when ``dedup`` is false.
    """
    lines = (item for item in _data_lines(text) if not item[1].startswith(("#", "%")))
    try:
        lineno, first = next(lines)
    except StopIteration:
        raise ParseError("empty input") from None
    parts = first.split()
    if len(parts) != 2:
        raise ParseError("first line must be 'n m'", lineno)
    try:
        n, m = int(parts[0]), int(parts[1])
    except ValueError:
        raise ParseError("non-integer header", lineno) from None
    if n <= 0:
        raise ParseError("empty graph (n=0)", lineno)
    if m < 0:
        raise ParseError("negative edge count", lineno)

    pairs: list[tuple[int, int]] = []
    seen: set[tuple[int, int]] = set()
    dups = 0
    for lineno, line in lines:
        if len(pairs) + dups == m:
            raise ParseError(f"more than {m} edge lines", lineno)
        parts = line.split()
        if len(parts) != 2:
            raise ParseError("edge line must be 'u v'", lineno)
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise ParseError("non-integer endpoint", lineno) from None
        if u == v:
            raise ParseError(f"self-loop at vertex {u}", lineno)
        if not (1 <= u <= n and 1 <= v <= n):
            raise ParseError(f"endpoint outside 1..{n}", lineno)
        e = (min(u, v) - 1, max(u, v) - 1)
        if e in seen:
            if not dedup:
                raise ParseError(f"duplicate edge ({u},{v})", lineno)
            dups += 1
            continue
        seen.add(e)
        pairs.append(e)
    if len(pairs) + dups < m:
        raise ParseError(f"expected {m} edge lines, found {len(pairs) + dups}")
    _warn_dropped(name, 0, dups)
    g = Graph.from_edges(n, pairs, name)
    return Graph(g.n, g.edges, g.adjacency, name, 0, dups)


def _warn_dropped(name: str, loops: int, dups: int) -> None:
    if loops:
        logger.warning("%s: dropped %d diagonal entries", name or "graph", loops)
    if dups:
        logger.warning("%s: merged %d duplicate entries", name or "graph", dups)


def instance_name(path: str | Path) -> str:
    name = Path(path).name
    for suffix in (".gz", ".mtx", ".edges", ".txt", ".el"):
        if name.endswith(suffix):
            name = name[: -len(suffix)]
    return name


def read_graph(path: str | Path) -> Graph:
    """Load an instance file, choosing the parser from the first line.

    Gzipped files are accepted.
    """
    path = Path(path)
    raw = path.read_bytes()
    if raw[:2] == b"\x1f\x8b":
        raw = gzip.decompress(raw)
    text = raw.decode("utf-8")
    name = instance_name(path)
    if text.lstrip().lower().startswith("%%matrixmarket"):
        return parse_matrix_market(text, name)
    return parse_edge_list(text, name)


def to_edge_list(g: Graph) -> str:
    out = [f"{g.n} {g.m}"]
    out.extend(f"{u + 1} {v + 1}" for u, v in g.edges)
    return "\n".join(out) + "\n"


def to_matrix_market(g: Graph) -> str:
    """Symmetric pattern file holding the lower triangle."""
    out = ["%%MatrixMarket matrix coordinate pattern symmetric", f"{g.n} {g.n} {g.m}"]
    out.extend(f"{v + 1} {u + 1}" for u, v in g.edges)
    return "\n".join(out) + "\n"


# -- structure ---------------------------------------------------------------

def _bfs_depths(g: Graph, root: int) -> list[int]:
    depth = [-1] * g.n
    depth[root] = 0
    queue = deque([root])
    while queue:
        u = queue.popleft()
        for v in g.adjacency[u]:
            if depth[v] < 0:
                depth[v] = depth[u] + 1
                queue.append(v)
    return depth


def is_connected(g: Graph) -> bool:
    if g.n == 0:
        raise GraphError("graph has no vertices")
    return min(_bfs_depths(g, 0)) >= 0


def connected_components(g: Graph) -> list[list[int]]:
    comp = [-1] * g.n
    out: list[list[int]] = []
    for s in range(g.n):
        if comp[s] >= 0:
            continue
        members = [v for v, d in enumerate(_bfs_depths(g, s)) if d >= 0]
        for v in members:
            comp[v] = len(out)
        out.append(members)
    return out


def require_connected(g: Graph, what: str = "this operation") -> None:
    if not is_connected(g):
        depth = _bfs_depths(g, 0)
        missing = [v + 1 for v, d in enumerate(depth) if d < 0]
        raise GraphError(f"{what} requires a connected graph; unreached from vertex 1: {missing[:20]}"
                         + (" ..." if len(missing) > 20 else ""))


def bfs_layers(g: Graph, root: int) -> LayerPartition:
    depth = _bfs_depths(g, root)
    unreached = [v + 1 for v, d in enumerate(depth) if d < 0]
    if unreached:
        raise GraphError(f"graph is disconnected; vertices not reached from {root + 1}: {unreached}")
    layers: list[list[int]] = [[] for _ in range(max(depth) + 1)]
    for v, d in enumerate(depth):
        layers[d].append(v)
    return LayerPartition(root, tuple(depth), tuple(tuple(layer) for layer in layers))


# -- labelings ---------------------------------------------------------------

def is_labeling(f: Sequence[int], n: int) -> bool:
    """True iff ``f`` is a bijection from ``0..n-1`` onto ``1..n``."""
    if len(f) != n:
        return False
    return sorted(int(x) for x in f) == list(range(1, n + 1))


def check_labeling(g: Graph, f: Sequence[int]) -> None:
    if not is_labeling(f, g.n):
        raise ValueError(f"not a bijection onto 1..{g.n}")


def label_distance(a: int, b: int) -> int:
    return abs(a - b)


def label_set_distance(a: int, labels: Iterable[int]) -> int:
    labels = list(labels)
    if not labels:
        raise ValueError("distance to an empty label set is undefined")
    return min(abs(a - b) for b in labels)


def vertex_antibandwidth(g: Graph, f: Sequence[int], i: int) -> float:
    """Smallest label gap between ``i`` and a neighbor; ``inf`` if isolated."""
    fi = f[i]
    return min((abs(fi - f[j]) for j in g.adjacency[i]), default=INF)


def antibandwidth(g: Graph, f: Sequence[int]) -> int:
    if g.m == 0:
        raise GraphError("antibandwidth undefined for edgeless graph")
    fa = np.asarray(f, dtype=np.int64)
    if fa.shape != (g.n,) or not np.array_equal(np.sort(fa), np.arange(1, g.n + 1)):
        raise ValueError(f"not a bijection onto 1..{g.n}")
    e = np.asarray(g.edges)
    return int(np.abs(fa[e[:, 0]] - fa[e[:, 1]]).min())


def reversed_labeling(f: Sequence[int]) -> list[int]:
    n = len(f)
    return [n + 1 - int(x) for x in f]
