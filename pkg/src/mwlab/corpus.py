"""Named matroids and expansion of family clauses into concrete instances."""

from __future__ import annotations

import glob
import re
from dataclasses import dataclass, field
from functools import lru_cache
from pathlib import Path
from typing import Any, Iterator, Optional

import networkx as nx

from .errors import ConfigError
from .matroid import Matroid, add_loops, direct_sum, dual, graphic, uniform

DEFAULT_MAX_BASES = 200_000


@dataclass
class FamilySpec:
    clauses: list[dict[str, Any]]
    max_n: Optional[int] = None
    max_bases: int = DEFAULT_MAX_BASES
    base_dir: Path = field(default_factory=Path)


@dataclass(frozen=True)
class Instance:
    ident: str
    matroid: Matroid


def complete_graph_edges(v: int) -> list[tuple[int, int]]:
    return [(a, b) for a in range(v) for b in range(a + 1, v)]


def cycle_edges(v: int) -> list[tuple[int, int]]:
    if v == 1:
        return [(0, 0)]
    if v == 2:
        return [(0, 1), (0, 1)]
    return [(i, (i + 1) % v) for i in range(v)]


def wheel_edges(spokes: int) -> list[tuple[int, int]]:
    rim = [(1 + i, 1 + (i + 1) % spokes) for i in range(spokes)]
    return rim + [(0, 1 + i) for i in range(spokes)]


@lru_cache(maxsize=None)
def connected_graphs(max_vertices: int) -> tuple[tuple[str, int, tuple], ...]:
    """Connected simple graphs on 1..max_vertices vertices, one per isomorphism class."""
    if max_vertices > 7:
        raise ConfigError("the graph atlas only covers graphs on at most 7 vertices")
    out = []
    for idx, g in enumerate(nx.graph_atlas_g()):
        v = g.number_of_nodes()
        if 1 <= v <= max_vertices and nx.is_connected(g):
            out.append((f"G{idx}", v, tuple(sorted(tuple(sorted(e)) for e in g.edges()))))
    return tuple(out)


_UNIFORM = re.compile(r"U(\d+),(\d+)$")
_SIMPLE = re.compile(r"([KCW])(\d+)$")
_POWER = re.compile(r"U12\^(\d+)$")
_GROUP = re.compile(r"(uniform|connected)<=(\d+)$")


def u12_power(k: int) -> Matroid:
    M = uniform(0, 0)
    for _ in range(k):
        M = direct_sum(M, uniform(1, 2))
    return M


def named(name: str) -> list[Instance]:
    """Resolve a name such as ``U2,4``, ``K4``, ``C5``, ``W4``, ``U12^3``,
    ``G17`` (graph-atlas index) or a group ``uniform<=4`` / ``connected<=4``."""
    if m := _UNIFORM.match(name):
        r, n = int(m[1]), int(m[2])
        return [Instance(name, uniform(r, n))]
    if m := _SIMPLE.match(name):
        kind, v = m[1], int(m[2])
        edges = {"K": complete_graph_edges, "C": cycle_edges, "W": wheel_edges}[kind](v)
        verts = v + 1 if kind == "W" else v
        return [Instance(name, graphic(verts, edges))]
    if m := _POWER.match(name):
        return [Instance(name, u12_power(int(m[1])))]
    if m := _GROUP.match(name):
        bound = int(m[2])
        if m[1] == "uniform":
            return [Instance(f"U{r},{n}", uniform(r, n)) for n in range(2, bound + 1) for r in range(1, n)]
        return [Instance(gid, graphic(v, edges)) for gid, v, edges in connected_graphs(bound)]
    if re.fullmatch(r"G\d+", name):
        g = nx.graph_atlas(int(name[1:]))
        return [Instance(name, graphic(g.number_of_nodes(), sorted(g.edges())))]
    raise ConfigError(f"unknown matroid name {name!r}")


def _range(clause, key, default=None):
    val = clause.get(key, default)
    if val is None:
        raise ConfigError(f"clause {clause.get('kind')!r} needs {key!r}")
    if isinstance(val, int):
        return val, val
    if isinstance(val, list) and len(val) == 2 and all(isinstance(x, int) for x in val):
        return val[0], val[1]
    raise ConfigError(f"{key!r} must be an integer or [lo, hi]")


def _base_instances(clause: dict, base_dir: Path) -> list[Instance]:
    # imported here: catalog depends on corpus for FamilySpec parsing
    from .catalog import parse_graph, parse_matroid

    kind = clause.get("kind")
    if kind == "uniform":
        rlo, rhi = _range(clause, "r")
        nlo, nhi = _range(clause, "n")
        proper = clause.get("proper", False)
        return [
            Instance(f"U{r},{n}", uniform(r, n))
            for n in range(nlo, nhi + 1)
            for r in range(rlo, min(rhi, n) + 1)
            if not proper or 0 < r < n
        ]
    if kind == "graphic":
        out = []
        for name in clause.get("builtin", []):
            out.extend(named(name))
        for pattern in clause.get("files", []):
            for path in sorted(glob.glob(str(base_dir / pattern))):
                out.append(Instance(f"file:{Path(path).name}", parse_graph(Path(path).read_text())))
        return out
    if kind == "named":
        out = []
        for name in clause.get("names", []):
            out.extend(named(name))
        return out
    if kind == "u12_power":
        lo, hi = _range(clause, "k")
        return [Instance(f"U12^{k}", u12_power(k)) for k in range(lo, hi + 1)]
    if kind == "matroid_files":
        out = []
        for pattern in clause.get("files", []):
            for path in sorted(glob.glob(str(base_dir / pattern))):
                out.append(Instance(f"file:{Path(path).name}", parse_matroid(Path(path).read_text())))
        return out
    if kind == "sum":
        seeds = []
        for name in clause.get("of", []):
            seeds.extend(named(name))
        out = []
        for i, a in enumerate(seeds):
            for b in seeds[i:]:
                out.append(Instance(f"{a.ident}+{b.ident}", direct_sum(a.matroid, b.matroid)))
        return out
    raise ConfigError(f"unknown family kind {kind!r}")


def _loop_counts(clause, M: Matroid) -> list[int]:
    spec = clause.get("add_loops", [])
    if spec == "upto_r":
        return list(range(1, M.r + 1))
    if isinstance(spec, list) and all(isinstance(k, int) and k >= 0 for k in spec):
        return [k for k in spec if k > 0]
    raise ConfigError("add_loops must be a list of non-negative integers or 'upto_r'")


def expand_clause(clause: dict, base_dir: Path = Path()) -> list[Instance]:
    base = _base_instances(clause, base_dir)
    if clause.get("dualize", False):
        base = base + [Instance(f"{i.ident}*", dual(i.matroid)) for i in base]
    out = list(base)
    for inst in base:
        for k in _loop_counts(clause, inst.matroid):
            out.append(Instance(f"{inst.ident}+{k}L", add_loops(inst.matroid, k)))
    return out


def expand(spec: FamilySpec) -> Iterator[Instance]:
    """Instances of every clause in order, dropping exact repeats of an earlier matroid."""
    seen = set()
    for clause in spec.clauses:
        for inst in expand_clause(clause, spec.base_dir):
            key = (inst.matroid.n, inst.matroid.basis_set)
            if key in seen:
                continue
            seen.add(key)
            yield inst


def default_family_spec() -> FamilySpec:
    """The standard verification corpus."""
    return FamilySpec(
        clauses=[
            {"kind": "uniform", "r": [1, 8], "n": [2, 9], "proper": True,
             "dualize": True, "add_loops": "upto_r"},
            {"kind": "graphic", "builtin": ["connected<=5"], "dualize": True, "add_loops": "upto_r"},
            {"kind": "sum", "of": ["uniform<=4", "connected<=4"]},
            {"kind": "u12_power", "k": [1, 5]},
        ],
    )
