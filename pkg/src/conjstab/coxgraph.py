"""Coxeter matrices, Coxeter graphs and the catalog of spherical types.

Vertices are strings.  Catalog graphs use the names ``s1 .. sn`` with the
following numbering:

* ``A_n``: the path s1 - s2 - ... - sn.
* ``B_n``: the path s1 -4- s2 - s3 - ... - sn.
* ``D_n``: s1 and s2 both joined to s3, then the path s3 - s4 - ... - sn.
* ``E_n``: the path s1 - s3 - s4 - ... - sn with s2 joined to s4.
* ``F_4``: s1 - s2 -4- s3 - s4.
* ``H_n``: s1 -5- s2 - s3 (- s4).
* ``I_2(m)``: s1 -m- s2.
"""
from __future__ import annotations

import itertools
import json
import math
import re
from dataclasses import dataclass
from typing import Iterable, Mapping, NamedTuple, Sequence

from .errors import (
    BadDiagonal,
    BadEntry,
    NotSymmetric,
    UnknownType,
    UnknownVertex,
)

INF = math.inf

_TYPE_RE = re.compile(r"^\s*([A-Z])\s*(\d+)\s*(?:\(\s*(\d+)\s*\))?\s*$")


@dataclass(frozen=True)
class SphericalType:
    """An irreducible spherical type such as ``E6`` or ``I2(7)``."""

    family: str
    rank: int
    i2_label: int | None = None

    def __post_init__(self):
        if not _admissible(self.family, self.rank, self.i2_label):
            raise UnknownType(f"inadmissible type {self.family}{self.rank}")

    @property
    def name(self) -> str:
        if self.family == "I":
            return f"I2({self.i2_label})"
        return f"{self.family}{self.rank}"

    def __str__(self):
        return self.name

    @classmethod
    def parse(cls, name: str) -> "SphericalType":
        """Parse a type name, canonicalizing ``I2(3)``, ``I2(4)`` and ``G2``."""
        if not isinstance(name, str):
            raise UnknownType(f"type name must be a string, got {name!r}")
        m = _TYPE_RE.match(name)
        if m is None:
            raise UnknownType(f"cannot parse type name {name!r}")
        family, rank, label = m.group(1), int(m.group(2)), m.group(3)
        if family == "G" and rank == 2 and label is None:
            return cls("I", 2, 6)
        if family == "I":
            if rank != 2 or label is None:
                raise UnknownType(f"unknown type {name!r}")
            label = int(label)
            if label == 3:
                return cls("A", 2)
            if label == 4:
                return cls("B", 2)
            if label < 3:
                raise UnknownType(f"unknown type {name!r}")
            return cls("I", 2, label)
        if label is not None:
            raise UnknownType(f"unknown type {name!r}")
        if not _admissible(family, rank, None):
            raise UnknownType(f"unknown type {name!r}")
        return cls(family, rank)

    def order(self) -> int:
        """Order of the Coxeter group (product of the degrees)."""
        f, n = self.family, self.rank
        if f == "A":
            return math.factorial(n + 1)
        if f == "B":
            return 2**n * math.factorial(n)
        if f == "D":
            return 2 ** (n - 1) * math.factorial(n)
        if f == "I":
            return 2 * self.i2_label
        return {"E6": 51840, "E7": 2903040, "E8": 696729600, "F4": 1152,
                "H3": 120, "H4": 14400}[self.name]


def _admissible(family, rank, label):
    if family == "A":
        return rank >= 1 and label is None
    if family == "B":
        return rank >= 2 and label is None
    if family == "D":
        return rank >= 4 and label is None
    if family == "E":
        return rank in (6, 7, 8) and label is None
    if family == "F":
        return rank == 4 and label is None
    if family == "H":
        return rank in (3, 4) and label is None
    if family == "I":
        return rank == 2 and label is not None and label >= 5
    return False


class CoxeterGraph:
    """A Coxeter matrix over an ordered, finite set of named vertices.

    Absent pairs have ``m = 2``.  ``INF`` stands for an infinite label.
    Instances are immutable and hashable.
    """

    __slots__ = ("_vertices", "_index", "_m", "_hash")

    def __init__(self, vertices: Sequence[str], labels: Mapping[tuple[str, str], int | float] = None):
        vertices = tuple(vertices)
        if len(set(vertices)) != len(vertices):
            raise BadEntry("duplicate vertex names")
        self._vertices = vertices
        self._index = {v: i for i, v in enumerate(vertices)}
        n = len(vertices)
        m = [[2] * n for _ in range(n)]
        for i in range(n):
            m[i][i] = 1
        for (s, t), label in (labels or {}).items():
            i, j = self.index(s), self.index(t)
            if i == j:
                raise BadDiagonal(f"label given for the pair ({s}, {t})")
            _check_label(label)
            if m[i][j] != 2 and m[i][j] != label:
                raise NotSymmetric(f"conflicting labels for ({s}, {t})")
            m[i][j] = m[j][i] = label
        self._m = tuple(tuple(row) for row in m)
        self._hash = hash((self._vertices, self._m))

    @property
    def vertices(self) -> tuple[str, ...]:
        return self._vertices

    @property
    def rank(self) -> int:
        return len(self._vertices)

    @property
    def matrix(self) -> tuple[tuple, ...]:
        return self._m

    def __len__(self):
        return len(self._vertices)

    def __contains__(self, v):
        return v in self._index

    def __eq__(self, other):
        if not isinstance(other, CoxeterGraph):
            return NotImplemented
        return self._vertices == other._vertices and self._m == other._m

    def __hash__(self):
        return self._hash

    def __repr__(self):
        edges = ", ".join(
            f"{s}-{t}" if m == 3 else f"{s}-{t}:{m}" for s, t, m in self.edges()
        )
        return f"CoxeterGraph([{', '.join(self._vertices)}]; {edges})"

    def index(self, v: str) -> int:
        try:
            return self._index[v]
        except (KeyError, TypeError):
            raise UnknownVertex(f"unknown vertex {v!r}") from None

    def m(self, s: str, t: str):
        return self._m[self.index(s)][self.index(t)]

    def edges(self) -> list[tuple[str, str, int | float]]:
        """Pairs with ``m >= 3``, in vertex order."""
        out = []
        for i, j in itertools.combinations(range(len(self)), 2):
            if self._m[i][j] >= 3:
                out.append((self._vertices[i], self._vertices[j], self._m[i][j]))
        return out

    def neighbors(self, v: str) -> list[str]:
        i = self.index(v)
        return [w for j, w in enumerate(self._vertices) if j != i and self._m[i][j] >= 3]

    def commute(self, s: str, t: str) -> bool:
        return self.m(s, t) <= 2

    def sort(self, subset: Iterable[str]) -> tuple[str, ...]:
        """Return the members of ``subset`` in graph order."""
        return tuple(sorted(set(subset), key=self.index))

    def check_subset(self, subset: Iterable[str]) -> frozenset[str]:
        subset = frozenset(subset)
        for v in subset:
            self.index(v)
        return subset

    def subset_key(self, subset: Iterable[str]) -> tuple[int, ...]:
        return tuple(sorted(self.index(v) for v in subset))

    def components(self, subset: Iterable[str] | None = None) -> list[tuple[str, ...]]:
        """Connected components of the graph (or of the subgraph on ``subset``)."""
        verts = self._vertices if subset is None else self.sort(subset)
        remaining = set(verts)
        comps = []
        for v in verts:
            if v not in remaining:
                continue
            comp, stack = {v}, [v]
            remaining.discard(v)
            while stack:
                u = stack.pop()
                for w in self.neighbors(u):
                    if w in remaining:
                        remaining.discard(w)
                        comp.add(w)
                        stack.append(w)
            comps.append(self.sort(comp))
        return comps

    def is_connected(self) -> bool:
        return len(self.components()) <= 1

    def relabel(self, mapping: Mapping[str, str]) -> "CoxeterGraph":
        """Rename vertices; vertex order is preserved."""
        names = [mapping.get(v, v) for v in self._vertices]
        labels = {(mapping.get(s, s), mapping.get(t, t)): m for s, t, m in self.edges()}
        return CoxeterGraph(names, labels)

    def to_json(self) -> dict:
        return {
            "vertices": list(self._vertices),
            "edges": [[s, t, "inf" if m == INF else m] for s, t, m in self.edges()],
        }

    @classmethod
    def from_json(cls, data: dict | str) -> "CoxeterGraph":
        """Build a graph from the JSON graph format (dict or JSON text).

        Edges are ``[s, t]`` (label 3) or ``[s, t, m]`` with ``m`` an integer
        or ``"inf"``; absent pairs have ``m = 2``.
        """
        if isinstance(data, str):
            data = json.loads(data)
        labels = {}
        for edge in data.get("edges", []):
            if len(edge) == 2:
                s, t, m = edge[0], edge[1], 3
            elif len(edge) == 3:
                s, t, m = edge
            else:
                raise BadEntry(f"malformed edge {edge!r}")
            if m in ("inf", "∞", None):
                m = INF
            labels[(s, t)] = m
        return cls(data["vertices"], labels)


def _check_label(label):
    if label == INF:
        return
    if isinstance(label, bool) or not isinstance(label, int):
        if isinstance(label, float) and label.is_integer():
            label = int(label)
        else:
            raise BadEntry(f"label must be an integer or INF, got {label!r}")
    if label < 2:
        raise BadEntry(f"off-diagonal entry {label} < 2")


def from_matrix(matrix, names: Sequence[str] | None = None) -> CoxeterGraph:
    """Validate a square Coxeter matrix and build its graph."""
    rows = [list(r) for r in matrix]
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise BadEntry("matrix is not square")
    if names is None:
        names = [f"s{i + 1}" for i in range(n)]
    if len(names) != n:
        raise BadEntry("number of names does not match the matrix size")
    labels = {}
    for i in range(n):
        if rows[i][i] != 1:
            raise BadDiagonal(f"diagonal entry m[{i}][{i}] = {rows[i][i]} != 1")
        for j in range(i + 1, n):
            a, b = rows[i][j], rows[j][i]
            if a != b:
                raise NotSymmetric(f"m[{i}][{j}] = {a} but m[{j}][{i}] = {b}")
            _check_label(a)
            if a != 2:
                labels[(names[i], names[j])] = INF if a == INF else int(a)
    return CoxeterGraph(names, labels)


def _catalog_edges(t: SphericalType):
    n = t.rank
    if t.family == "I":
        return {(1, 2): t.i2_label}
    if t.family == "A":
        return {(i, i + 1): 3 for i in range(1, n)}
    if t.family == "B":
        e = {(i, i + 1): 3 for i in range(2, n)}
        e[(1, 2)] = 4
        return e
    if t.family == "D":
        e = {(i, i + 1): 3 for i in range(3, n)}
        e[(1, 3)] = e[(2, 3)] = 3
        return e
    if t.family == "E":
        e = {(i, i + 1): 3 for i in range(3, n)}
        e[(1, 3)] = e[(2, 4)] = 3
        return e
    if t.family == "F":
        return {(1, 2): 3, (2, 3): 4, (3, 4): 3}
    if t.family == "H":
        e = {(i, i + 1): 3 for i in range(2, n)}
        e[(1, 2)] = 5
        return e
    raise UnknownType(t.name)


def from_type(t: SphericalType, prefix: str = "s") -> CoxeterGraph:
    names = [f"{prefix}{i}" for i in range(1, t.rank + 1)]
    labels = {(f"{prefix}{i}", f"{prefix}{j}"): m for (i, j), m in _catalog_edges(t).items()}
    return CoxeterGraph(names, labels)


def from_name(name: str, prefix: str = "s") -> CoxeterGraph:
    """Catalog graph for a type name like ``"E6"``, ``"B3"`` or ``"I2(7)"``.

    Reducible types may be written as products, e.g. ``"A2xB2"``; the vertices
    of the k-th factor are then prefixed with the k-th letter of the alphabet
    (``a1, a2, b1, b2``).
    """
    if isinstance(name, str) and re.search(r"[x×*]", name):
        parts = [p for p in re.split(r"\s*[x×*]\s*", name.strip()) if p]
        if len(parts) > 1:
            graphs = [from_type(SphericalType.parse(p), prefix=chr(ord("a") + k)) for k, p in enumerate(parts)]
            return disjoint_union(graphs)
    return from_type(SphericalType.parse(name), prefix=prefix)


def disjoint_union(graphs: Sequence[CoxeterGraph]) -> CoxeterGraph:
    names, labels = [], {}
    for g in graphs:
        names.extend(g.vertices)
        labels.update({(s, t): m for s, t, m in g.edges()})
    return CoxeterGraph(names, labels)


def induced(graph: CoxeterGraph, subset: Iterable[str]) -> CoxeterGraph:
    """The subgraph on ``subset``, keeping the ambient vertex order."""
    verts = graph.sort(graph.check_subset(subset))
    keep = set(verts)
    labels = {(s, t): m for s, t, m in graph.edges() if s in keep and t in keep}
    return CoxeterGraph(verts, labels)


class Component(NamedTuple):
    """A recognized connected component.

    ``relabel`` maps each vertex of the component to its catalog name
    (``s1 .. sn``) in :func:`from_type` numbering.
    """

    type: SphericalType
    relabel: dict[str, str]

    @property
    def inverse(self) -> dict[str, str]:
        return {c: v for v, c in self.relabel.items()}


def recognize(graph: CoxeterGraph) -> list[Component] | None:
    """Match each connected component against the catalog.

    Returns one :class:`Component` per connected component (ordered by first
    vertex), or ``None`` when some component is not of spherical type.
    """
    out = []
    for comp in graph.components():
        found = _recognize_component(graph, comp)
        if found is None:
            return None
        out.append(found)
    return out


def is_spherical(graph: CoxeterGraph) -> bool:
    return recognize(graph) is not None


def type_name(graph: CoxeterGraph) -> str | None:
    """``"A2xB3"``-style name of a spherical graph (components in graph order)."""
    comps = recognize(graph)
    if comps is None:
        return None
    return "x".join(c.type.name for c in comps) or "trivial"


def _component(t: SphericalType, order: Sequence[str]) -> Component:
    return Component(t, {v: f"s{i + 1}" for i, v in enumerate(order)})


def _recognize_component(graph, comp):
    n = len(comp)
    if n == 1:
        return _component(SphericalType("A", 1), comp)
    edges = [(s, t, m) for s, t, m in graph.edges() if s in comp and t in comp]
    if any(m == INF for _, _, m in edges):
        return None
    if n == 2:
        (s, t, m), = edges
        if m == 3:
            return _component(SphericalType("A", 2), (s, t))
        if m == 4:
            return _component(SphericalType("B", 2), (s, t))
        return _component(SphericalType("I", 2, m), (s, t))
    if len(edges) != n - 1:
        return None  # contains a cycle
    if any(m > 5 for _, _, m in edges):
        return None
    special = [(s, t, m) for s, t, m in edges if m >= 4]
    if len(special) > 1:
        return None
    adj = {v: [] for v in comp}
    for s, t, _ in edges:
        adj[s].append(t)
        adj[t].append(s)
    degrees = {v: len(adj[v]) for v in comp}
    if max(degrees.values()) > 3:
        return None
    branch = [v for v in comp if degrees[v] == 3]
    if len(branch) > 1:
        return None
    if branch:
        if special:
            return None
        return _recognize_branched(graph, branch[0], adj)
    # a path
    ends = [v for v in comp if degrees[v] == 1]
    ends.sort(key=graph.index)
    if not special:
        return _component(SphericalType("A", n), _walk(ends[0], adj))
    s, t, m = special[0]
    if m == 4:
        for end in ends:
            path = _walk(end, adj)
            if {path[0], path[1]} == {s, t}:
                return _component(SphericalType("B", n), path)
        if n == 4:
            path = _walk(ends[0], adj)
            if {path[1], path[2]} == {s, t}:
                return _component(SphericalType("F", 4), path)
        return None
    # m == 5
    if n > 4:
        return None
    for end in ends:
        path = _walk(end, adj)
        if {path[0], path[1]} == {s, t}:
            return _component(SphericalType("H", n), path)
    return None


def _walk(start, adj):
    path, prev = [start], None
    while True:
        nxt = [w for w in adj[path[-1]] if w != prev]
        if not nxt:
            return path
        prev = path[-1]
        path.append(nxt[0])


def _recognize_branched(graph, center, adj):
    arms = []
    for first in adj[center]:
        arm, prev = [first], center
        while True:
            nxt = [w for w in adj[arm[-1]] if w != prev]
            if not nxt:
                break
            prev = arm[-1]
            arm.append(nxt[0])
        arms.append(arm)
    # stable order: by length, then by earliest vertex in the arm
    arms.sort(key=lambda a: (len(a), min(graph.index(v) for v in a)))
    lengths = tuple(len(a) for a in arms)
    n = 1 + sum(lengths)
    if lengths[0] == 1 and lengths[1] == 1:
        # D_n: fork ends s1, s2, center s3, long arm s4 ...
        forks = sorted([arms[0][0], arms[1][0]], key=graph.index)
        return _component(SphericalType("D", n), [*forks, center, *arms[2]])
    if lengths[0] == 1 and lengths[1] == 2 and lengths[2] in (2, 3, 4):
        # E_n: s1 - s3 - s4(center) - s5 ..., s2 on the center
        short, mid, long_ = arms
        order = [mid[1], short[0], mid[0], center, *long_]
        return _component(SphericalType("E", n), order)
    return None


def odd_components(graph: CoxeterGraph) -> list[tuple[str, ...]]:
    """Classes of vertices joined by paths of odd-labelled edges."""
    parent = {v: v for v in graph.vertices}

    def find(v):
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    for s, t, m in graph.edges():
        if m != INF and m % 2 == 1:
            parent[find(s)] = find(t)
    classes: dict[str, list[str]] = {}
    for v in graph.vertices:
        classes.setdefault(find(v), []).append(v)
    return sorted((tuple(c) for c in classes.values()), key=lambda c: graph.index(c[0]))


def odd_connected(graph: CoxeterGraph, s: str, t: str) -> bool:
    """True iff s and t are joined by a path using only odd labels."""
    graph.index(s)
    graph.index(t)
    return any(s in c and t in c for c in odd_components(graph))


def automorphisms(graph: CoxeterGraph) -> list[dict[str, str]]:
    """All label-preserving vertex permutations (brute force over small graphs)."""
    verts = graph.vertices
    degs = {v: sorted(graph.m(v, w) for w in verts if w != v) for v in verts}
    out = []

    def extend(i, current, used):
        if i == len(verts):
            out.append(dict(current))
            return
        v = verts[i]
        for w in verts:
            if w in used or degs[w] != degs[v]:
                continue
            if all(graph.m(v, u) == graph.m(w, current[u]) for u in verts[:i]):
                current[v] = w
                used.add(w)
                extend(i + 1, current, used)
                used.discard(w)
                del current[v]

    extend(0, {}, set())
    return out


def catalog(max_rank: int = 8, i2_max: int = 12) -> list[SphericalType]:
    """Catalog types of rank at most ``max_rank``, plus ``I2(m)`` for 5 <= m <= i2_max."""
    out = []
    for n in range(1, max_rank + 1):
        out.append(SphericalType("A", n))
    for n in range(2, max_rank + 1):
        out.append(SphericalType("B", n))
    for n in range(4, max_rank + 1):
        out.append(SphericalType("D", n))
    for name in ("E6", "E7", "E8", "F4", "H3", "H4"):
        t = SphericalType.parse(name)
        if t.rank <= max_rank:
            out.append(t)
    if max_rank >= 2:
        out.extend(SphericalType("I", 2, m) for m in range(5, i2_max + 1))
    return out
