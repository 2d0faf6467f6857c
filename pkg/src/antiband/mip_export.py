"""Write the antibandwidth, stable set and coloring MIP models in CPLEX LP format.

Vertices and labels are 1-based in variable names:

* ``x_i_l``  vertex i gets label l
* ``l_i``    integer label of vertex i (big-M model only)
* ``y_i_j`` / ``z_i_j``  orientation of edge {i, j} (big-M model only)
* ``b``      objective value; ``b_l`` is reserved for the extended model

Output is deterministic: variables by vertex then label, constraints by
family then index, so files can serve as golden references.
"""
from __future__ import annotations

import math
import re
from collections import Counter
from dataclasses import dataclass, field
from pathlib import Path

from .graph import Graph, GraphError
from .npsolvers import greedy_coloring

VAR_SCHEME = {"x": "x_i_l", "l": "l_i", "y": "y_i_j", "z": "z_i_j", "b": "b", "b_l": "b_l"}
_TERMS_PER_LINE = 8

FORMULATIONS = ("flit", "f", "fek", "ssp", "gcp")


@dataclass
class ModelText:
    body: str
    stats: dict[str, int]
    var_scheme: dict[str, str] = field(default_factory=lambda: dict(VAR_SCHEME))

    def write(self, path: str | Path) -> Path:
        path = Path(path)
        path.write_text(self.body)
        return path


def _expr(terms: list[tuple[int, str]]) -> list[str]:
    """Linear expression split into lines of at most a few terms each."""
    parts = []
    for k, (c, name) in enumerate(terms):
        if k == 0:
            prefix = "-" if c < 0 else ""
            mag = abs(c)
            parts.append(f"{prefix}{'' if mag == 1 else str(mag) + ' '}{name}")
        else:
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            parts.append(f"{sign} {'' if mag == 1 else str(mag) + ' '}{name}")
    return [" ".join(parts[i:i + _TERMS_PER_LINE]) for i in range(0, len(parts), _TERMS_PER_LINE)]


class _Writer:
    def __init__(self, title: str, sense: str):
        self.lines = [f"\\ {title}", sense]
        self.constraints: list[str] = []
        self.bounds: list[str] = []
        self.binaries: list[str] = []
        self.generals: list[str] = []
        self.stats: Counter[str] = Counter()

    def objective(self, terms: list[tuple[int, str]]) -> None:
        chunks = _expr(terms)
        self.lines.append(f" obj: {chunks[0]}")
        self.lines.extend(f"      {c}" for c in chunks[1:])

    def row(self, family: str, name: str, terms: list[tuple[int, str]], sense: str, rhs: int) -> None:
        chunks = _expr(terms)
        chunks[-1] += f" {sense} {rhs}"
        self.constraints.append(f" {name}: {chunks[0]}")
        self.constraints.extend(f"   {c}" for c in chunks[1:])
        self.stats[f"rows_{family}"] += 1

    def text(self) -> str:
        out = list(self.lines)
        out.append("Subject To")
        out.extend(self.constraints)
        if self.bounds:
            out.append("Bounds")
            out.extend(self.bounds)
        if self.binaries:
            out.append("Binaries")
            out.extend(_wrap(self.binaries))
        if self.generals:
            out.append("Generals")
            out.extend(_wrap(self.generals))
        out.append("End")
        return "\n".join(out) + "\n"


def _wrap(names: list[str], per_line: int = 10) -> list[str]:
    return [" " + " ".join(names[i:i + per_line]) for i in range(0, len(names), per_line)]


def x(i: int, label: int) -> str:
    return f"x_{i + 1}_{label}"


def _assignment(w: _Writer, g: Graph) -> None:
    n = g.n
    for label in range(1, n + 1):
        w.row("vertices", f"VERTICES_{label}", [(1, x(i, label)) for i in range(n)], "=", 1)
    for i in range(n):
        w.row("labels", f"LABELS_{i + 1}", [(1, x(i, label)) for label in range(1, n + 1)], "=", 1)
    w.binaries.extend(x(i, label) for i in range(n) for label in range(1, n + 1))
    w.stats["vars_x"] = n * n


def _symmetry(w: _Writer, g: Graph) -> None:
    v = g.max_degree_vertex()
    for label in range(math.ceil(g.n / 2) + 1, g.n + 1):
        w.bounds.append(f" {x(v, label)} = 0")
        w.stats["fixings"] += 1


def _b_bounds(w: _Writer, upper: int) -> None:
    w.bounds.append(f" 1 <= b <= {upper}")
    w.stats["vars_b"] = 1


def _need_edges(g: Graph) -> None:
    if g.m == 0:
        raise GraphError("model needs at least one edge")


def export_f_lit(g: Graph, ub: int | None = None, *, symmetry: bool = True) -> ModelText:
    """Big-M model with integer labels and edge orientation binaries.

    The big-M is 2(n-1), or (n-1)+ub when an upper bound is given.
    """
    _need_edges(g)
    n = g.n
    big_m = 2 * (n - 1) if ub is None else (n - 1) + ub
    w = _Writer(f"F_lit {g.name} n={n} m={g.m} M={big_m}", "Maximize")
    w.objective([(1, "b")])
    _assignment(w, g)
    for i in range(n):
        terms = [(label, x(i, label)) for label in range(1, n + 1)] + [(-1, f"l_{i + 1}")]
        w.row("link", f"LINK_{i + 1}", terms, "=", 0)
    for i, j in g.edges:
        li, lj, y, z = f"l_{i + 1}", f"l_{j + 1}", f"y_{i + 1}_{j + 1}", f"z_{i + 1}_{j + 1}"
        tag = f"{i + 1}_{j + 1}"
        w.row("obj1", f"OBJ1_{tag}", [(1, "b"), (-1, li), (1, lj), (-big_m, y)], "<=", 0)
        w.row("obj2", f"OBJ2_{tag}", [(1, "b"), (-1, lj), (1, li), (-big_m, z)], "<=", 0)
        w.row("obj3", f"OBJ3_{tag}", [(1, y), (1, z)], "=", 1)
        w.binaries.extend([y, z])
    if symmetry:
        _symmetry(w, g)
    _b_bounds(w, n - 1 if ub is None else ub)
    w.bounds.extend(f" 1 <= l_{i + 1} <= {n}" for i in range(n))
    w.generals.extend(f"l_{i + 1}" for i in range(n))
    w.stats["vars_l"] = n
    w.stats["vars_yz"] = 2 * g.m
    w.stats["big_m"] = big_m
    return ModelText(w.text(), dict(w.stats))


def objn_coefficient(label: int, other: int, ub: int | None) -> int:
    d = abs(label - other)
    return d if ub is None else min(d, ub)


def export_f(g: Graph, ub: int, include_vertex_n: bool = False, *,
             symmetry: bool = True) -> ModelText:
    """Assignment model with distance-weighted objective rows, coefficients capped at ``ub``.

    ``include_vertex_n`` adds the per-vertex/label/distance rows for d = 1..ub-1.
    """
    _need_edges(g)
    if ub < 1:
        raise ValueError("upper bound must be >= 1")
    n = g.n
    w = _Writer(f"F {g.name} n={n} m={g.m} UB={ub}", "Maximize")
    w.objective([(1, "b")])
    _assignment(w, g)
    for label in range(1, n + 1):
        for i, j in g.edges:
            terms = [(1, "b")]
            for other in range(1, n + 1):
                c = objn_coefficient(label, other, ub)
                if c:
                    terms.append((-c, x(i, other)))
                    terms.append((-c, x(j, other)))
            w.row("objn", f"OBJN_{label}_{i + 1}_{j + 1}", terms, "<=", 0)
    if include_vertex_n:
        for i in range(n):
            for label in range(1, n + 1):
                for d in range(1, ub):
                    c = ub - d
                    terms = [(1, "b")]
                    terms += [(c, x(i, other)) for other in range(max(1, label - d), min(n, label + d) + 1)]
                    terms += [(c, x(j, label)) for j in g.adjacency[i]]
                    w.row("vertexn", f"VERTEXN_{i + 1}_{label}_{d}", terms, "<=", 2 * ub - d)
    if symmetry:
        _symmetry(w, g)
    _b_bounds(w, ub)
    return ModelText(w.text(), dict(w.stats))


def export_f_e_k(g: Graph, k: int, *, clique_e: bool = False, symmetry: bool = True) -> ModelText:
    """Feasibility model for "antibandwidth >= k+1": no edge inside any k+1 label window.

    ``clique_e`` also writes the clique-window rows for the greedy clique catalog.
    """
    _need_edges(g)
    n = g.n
    if not 1 <= k <= n - 2:
        raise ValueError(f"k={k} outside 1..{n - 2}")
    w = _Writer(f"F_E({k}) {g.name} n={n} m={g.m}", "Maximize")
    w.objective([(0, x(0, 1))])
    _assignment(w, g)
    for i, j in g.edges:
        for start in range(1, n - k + 1):
            window = range(start, start + k + 1)
            terms = [(1, x(i, a)) for a in window] + [(1, x(j, a)) for a in window]
            w.row("objk", f"OBJK_{i + 1}_{j + 1}_{start}", terms, "<=", 1)
    if clique_e:
        from .exact import clique_catalog

        for c_idx, clique in enumerate(clique_catalog(g), start=1):
            for start in range(1, n - k + 1):
                terms = [(1, x(v, a)) for v in clique for a in range(start, start + k + 1)]
                w.row("cliquee", f"CLIQUEE_{c_idx}_{start}", terms, "<=", 1)
    if symmetry:
        _symmetry(w, g)
    return ModelText(w.text(), dict(w.stats))


def export_ssp(g: Graph) -> ModelText:
    w = _Writer(f"SSP {g.name} n={g.n} m={g.m}", "Maximize")
    w.objective([(1, f"x_{i + 1}") for i in range(g.n)])
    for i, j in g.edges:
        w.row("edge", f"EDGE_{i + 1}_{j + 1}", [(1, f"x_{i + 1}"), (1, f"x_{j + 1}")], "<=", 1)
    w.binaries.extend(f"x_{i + 1}" for i in range(g.n))
    w.stats["vars_x"] = g.n
    return ModelText(w.text(), dict(w.stats), {"x": "x_i"})


def export_gcp(g: Graph, color_ub: int | None = None) -> ModelText:
    """Coloring model with colors restricted to 1..color_ub (default: greedy color count)."""
    greedy = greedy_coloring(g).upper_value
    if color_ub is None:
        color_ub = greedy
    if color_ub < greedy:
        raise ValueError(f"color_ub={color_ub} below the greedy bound {greedy}")
    w = _Writer(f"GCP {g.name} n={g.n} m={g.m} colors={color_ub}", "Minimize")
    colors = range(1, color_ub + 1)
    w.objective([(1, f"w_{c}") for c in colors])
    for i, j in g.edges:
        for c in colors:
            w.row("edge_color", f"EDGE_{i + 1}_{j + 1}_{c}",
                  [(1, x(i, c)), (1, x(j, c)), (-1, f"w_{c}")], "<=", 0)
    for i in range(g.n):
        w.row("assign", f"ASSIGN_{i + 1}", [(1, x(i, c)) for c in colors], "=", 1)
    w.binaries.extend(x(i, c) for i in range(g.n) for c in colors)
    w.binaries.extend(f"w_{c}" for c in colors)
    w.stats["vars_x"] = g.n * color_ub
    w.stats["vars_w"] = color_ub
    return ModelText(w.text(), dict(w.stats), {"x": "x_i_c", "w": "w_c"})


def export(g: Graph, formulation: str, *, ub: int | None = None, k: int | None = None,
           include_vertex_n: bool = False, clique_e: bool = False) -> ModelText:
    if formulation == "flit":
        return export_f_lit(g, ub)
    if formulation == "f":
        if ub is None:
            raise ValueError("formulation f needs an upper bound")
        return export_f(g, ub, include_vertex_n)
    if formulation == "fek":
        if k is None:
            raise ValueError("formulation fek needs k")
        return export_f_e_k(g, k, clique_e=clique_e)
    if formulation == "ssp":
        return export_ssp(g)
    if formulation == "gcp":
        return export_gcp(g, ub)
    raise ValueError(f"unknown formulation {formulation!r}; choose from {FORMULATIONS}")


def model_filename(instance: str, formulation: str) -> str:
    return f"{instance}.{formulation}.lp"


# -- reading back ------------------------------------------------------------------

@dataclass
class LinearRow:
    name: str
    terms: dict[str, float]
    sense: str
    rhs: float

    def satisfied(self, values: dict[str, float], tol: float = 1e-9) -> bool:
        lhs = sum(c * values.get(v, 0.0) for v, c in self.terms.items())
        if self.sense == "<=":
            return lhs <= self.rhs + tol
        if self.sense == ">=":
            return lhs >= self.rhs - tol
        return abs(lhs - self.rhs) <= tol


@dataclass
class LpModel:
    sense: str
    objective: dict[str, float]
    rows: list[LinearRow]
    bounds: dict[str, tuple[float, float]]
    binaries: list[str]
    generals: list[str]

    def variables(self) -> set[str]:
        names = set(self.objective) | set(self.bounds) | set(self.binaries) | set(self.generals)
        for r in self.rows:
            names.update(r.terms)
        return names


_TERM = re.compile(r"([+-]?)\s*(\d+(?:\.\d+)?)?\s*([A-Za-z_][A-Za-z0-9_]*)")
_SENSE = re.compile(r"(<=|>=|=)\s*(-?\d+(?:\.\d+)?)\s*$")


def _parse_terms(text: str) -> dict[str, float]:
    terms: dict[str, float] = {}
    pos = 0
    text = text.strip()
    while pos < len(text):
        mt = _TERM.match(text, pos)
        if not mt or mt.end() == pos:
            raise ValueError(f"cannot parse expression near {text[pos:pos + 30]!r}")
        sign = -1.0 if mt.group(1) == "-" else 1.0
        coef = float(mt.group(2)) if mt.group(2) else 1.0
        terms[mt.group(3)] = terms.get(mt.group(3), 0.0) + sign * coef
        pos = mt.end()
        while pos < len(text) and text[pos] == " ":
            pos += 1
    return terms


def read_lp(text: str) -> LpModel:
    """Reader for the LP subset this module writes (not a general LP parser)."""
    section = None
    sense = ""
    objective: dict[str, float] = {}
    rows: list[LinearRow] = []
    bounds: dict[str, tuple[float, float]] = {}
    binaries: list[str] = []
    generals: list[str] = []
    pending = ""
    obj_text = ""
    headers = {"maximize": "obj", "minimize": "obj", "subject to": "rows", "bounds": "bounds",
               "binaries": "bin", "generals": "gen", "end": "end"}
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("\\"):
            continue
        key = line.lower()
        if key in headers:
            if key in ("maximize", "minimize"):
                sense = key
            section = headers[key]
            continue
        if section == "obj":
            obj_text += " " + line.split(":", 1)[-1] if ":" in line and not obj_text else " " + line
        elif section == "rows":
            pending += " " + line
            m = _SENSE.search(pending)
            if m:
                name, expr = pending.split(":", 1)
                expr = expr[: expr.rfind(m.group(1))]
                rows.append(LinearRow(name.strip(), _parse_terms(expr), m.group(1), float(m.group(2))))
                pending = ""
        elif section == "bounds":
            parts = line.split()
            if len(parts) == 3 and parts[1] == "=":
                bounds[parts[0]] = (float(parts[2]), float(parts[2]))
            elif len(parts) == 5 and parts[1] == parts[3] == "<=":
                bounds[parts[2]] = (float(parts[0]), float(parts[4]))
            else:
                raise ValueError(f"unsupported bound line {line!r}")
        elif section == "bin":
            binaries.extend(line.split())
        elif section == "gen":
            generals.extend(line.split())
    if pending.strip():
        raise ValueError("unterminated constraint")
    if obj_text.strip():
        objective = _parse_terms(obj_text)
    return LpModel(sense, objective, rows, bounds, binaries, generals)


def labeling_to_x(f, n: int) -> dict[str, float]:
    """0/1 assignment values for the x variables of a labeling."""
    return {x(i, int(f[i])): 1.0 for i in range(n)}
