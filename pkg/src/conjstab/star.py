"""Deciding Property star_W for a standard parabolic pair (W_X, W_S).

The pair has the property when every pointwise conjugation ``Y1 -> Y2``
(``Y1, Y2`` subsets of X) induced by an element of ``W_S`` is also induced
by an element of ``W_X``.  Two independent routes compute the induced maps:

* the oracle enumerates the whole group and reads ``y^w`` off the root
  permutation of ``w^-1`` for every element;
* the ribbon route runs the BFS of :mod:`conjstab.ribbons`.
"""
from __future__ import annotations

import itertools
import time
from dataclasses import dataclass, field
from typing import Iterable, Iterator

import numpy as np

from .coxgraph import CoxeterGraph, induced, recognize
from .engine import RootSystem, iter_inverse_levels
from .errors import BadSubset, CapExceeded, InvalidInput, NotSphericalInput
from .ribbons import RibbonChain, SubsetMap, chain_element, reachable_maps

DEFAULT_CAP = 4_000_000
STRATEGIES = ("oracle", "ribbon", "hybrid")


def subsets(verts: Iterable[str], proper: bool = False, nonempty: bool = False) -> Iterator[tuple[str, ...]]:
    """All subsets of ``verts`` (kept in the given order), by size then lexicographically."""
    verts = tuple(verts)
    lo = 1 if nonempty else 0
    hi = len(verts) - 1 if proper else len(verts)
    for k in range(lo, hi + 1):
        yield from itertools.combinations(verts, k)


_rows_cache: dict[CoxeterGraph, tuple[frozenset, int]] = {}


def oracle_rows(graph: CoxeterGraph, cap: int = DEFAULT_CAP) -> tuple[frozenset, int]:
    """Distinct conjugation patterns of the elements of ``W(graph)``.

    Returns ``(rows, order)``.  A row lists, for every vertex ``y`` in graph
    order, the position of ``y^w`` when it is a simple reflection and ``-1``
    otherwise.  The whole group is enumerated.
    """
    hit = _rows_cache.get(graph)
    if hit is not None:
        if hit[1] > cap:
            raise CapExceeded(cap, hit[1])
        return hit
    rs = RootSystem(graph)
    simple = np.array(rs.simple, dtype=np.intp)
    rows: set[tuple[int, ...]] = set()
    order = 0
    for level in iter_inverse_levels(rs, cap):
        order += len(level)
        pattern = rs.simple_lookup[level[:, simple]]
        for row in np.unique(pattern, axis=0):
            rows.add(tuple(int(x) for x in row))
    result = (frozenset(rows), order)
    _rows_cache[graph] = result
    return result


class _ComponentOracle:
    """Realized maps of a possibly reducible graph, one component at a time."""

    def __init__(self, graph: CoxeterGraph, cap: int):
        self.graph = graph
        comps = graph.components()
        self.parts = [induced(graph, c) for c in comps]
        self.order = 1
        self.rows = []
        for part in self.parts:
            rows, order = oracle_rows(part, cap)
            self.rows.append(rows)
            self.order *= order
        if self.order > cap:
            raise CapExceeded(cap, self.order)
        self._cache = {}

    def _part_maps(self, k: int, Y: tuple[str, ...]) -> list[tuple[str, ...]]:
        key = (k, Y)
        hit = self._cache.get(key)
        if hit is None:
            part = self.parts[k]
            pos = [part.index(y) for y in Y]
            names = part.vertices
            hit = sorted({tuple(names[row[p]] for p in pos)
                          for row in self.rows[k] if all(row[p] >= 0 for p in pos)})
            self._cache[key] = hit
        return hit

    def maps(self, Y1: Iterable[str]) -> set[SubsetMap]:
        Y1 = set(Y1)
        pieces = []
        for k, part in enumerate(self.parts):
            Y = tuple(v for v in part.vertices if v in Y1)
            if Y:
                pieces.append([dict(zip(Y, img)) for img in self._part_maps(k, Y)])
        out = set()
        for combo in itertools.product(*pieces):
            merged = {}
            for d in combo:
                merged.update(d)
            out.add(SubsetMap(merged))
        return out


_oracle_cache: dict[CoxeterGraph, _ComponentOracle] = {}


def _oracle(graph: CoxeterGraph, cap: int) -> _ComponentOracle:
    hit = _oracle_cache.get(graph)
    if hit is None:
        hit = _ComponentOracle(graph, cap)
        _oracle_cache[graph] = hit
    elif hit.order > cap:
        raise CapExceeded(cap, hit.order)
    return hit


def clear_caches():
    _rows_cache.clear()
    _oracle_cache.clear()


def realized_maps_oracle(graph: CoxeterGraph, Y1: Iterable[str], cap: int = DEFAULT_CAP) -> set[SubsetMap]:
    """Every map ``y -> y^w`` on ``Y1`` with all images simple, over all ``w`` in W.

    For a reducible graph the group is the direct product of its components
    and the maps are assembled factor by factor.
    """
    if recognize(graph) is None:
        raise NotSphericalInput(f"{graph!r} is not of spherical type")
    Y1 = graph.check_subset(Y1)
    return _oracle(graph, cap).maps(Y1)


def group_order_of(graph: CoxeterGraph) -> int:
    comps = recognize(graph)
    if comps is None:
        raise NotSphericalInput(f"{graph!r} is not of spherical type")
    order = 1
    for c in comps:
        order *= c.type.order()
    return order


def realized_maps_ribbon(graph: CoxeterGraph, Y1: Iterable[str]) -> set[SubsetMap]:
    """Maps reachable from the identity on ``Y1`` by ribbons and component flips."""
    return reachable_maps(graph, Y1).maps()


@dataclass
class Witness:
    """A map realized in W_S between subsets of X but not realized in W_X."""

    Y1: tuple
    map: SubsetMap
    chain_in_S: RibbonChain | None
    certificate: dict

    def to_json(self, graph: CoxeterGraph) -> dict:
        return {
            "Y1": list(self.Y1),
            "map": self.map.to_json(graph),
            "chain_in_S": None if self.chain_in_S is None else self.chain_in_S.to_json(graph),
            "certificate": self.certificate,
        }


@dataclass
class StarVerdict:
    holds: bool
    graph: CoxeterGraph
    X: tuple
    strategy: str
    witness: Witness | None = None
    conditional: bool = False
    stats: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "holds": self.holds,
            "X": list(self.X),
            "strategy": self.strategy,
            "conditional": self.conditional,
            "witness": None if self.witness is None else self.witness.to_json(self.graph),
        }


def _check_pair(graph, X):
    if recognize(graph) is None:
        raise NotSphericalInput(f"{graph!r} is not of spherical type")
    X = graph.check_subset(X)
    if not X or X == frozenset(graph.vertices):
        raise BadSubset("X must be a nonempty proper subset of S")
    return graph.sort(X)


def _map_key(graph, m: SubsetMap):
    return tuple(graph.index(m(y)) for y in graph.sort(m.source))


def decide_star(graph: CoxeterGraph, X: Iterable[str], strategy: str = "hybrid",
                cap: int = DEFAULT_CAP) -> StarVerdict:
    """Decide Property star_W for ``(W_X, W_S)`` with ``S`` the vertices of ``graph``.

    ``oracle`` enumerates both groups; ``ribbon`` uses reachability in both
    graphs; ``hybrid`` takes candidate maps from reachability in ``graph``
    and checks them against an enumeration of ``W_X`` (falling back to
    reachability in ``Gamma_X`` when ``|W_X| > cap``).
    """
    strategy = strategy.lower()
    if strategy not in STRATEGIES:
        raise InvalidInput(f"unknown strategy {strategy!r}")
    X = _check_pair(graph, X)
    Xset = frozenset(X)
    gx = induced(graph, X)
    t0 = time.perf_counter()

    s_method = "oracle" if strategy == "oracle" else "ribbon"
    if strategy == "oracle":
        s_oracle = _oracle(graph, cap)
        s_maps = s_oracle.maps
    else:
        s_maps = lambda Y1: realized_maps_ribbon(graph, Y1)

    x_method = "ribbon" if strategy == "ribbon" else "oracle"
    x_order = None
    if x_method == "oracle":
        try:
            x_oracle = _oracle(gx, cap)
            x_order = x_oracle.order
            x_maps = x_oracle.maps
        except CapExceeded:
            if strategy == "oracle":
                raise
            x_method = "ribbon"
    if x_method == "ribbon":
        x_maps = lambda Y1: realized_maps_ribbon(gx, Y1)

    checked = 0
    for Y1 in subsets(X):
        candidates = [m for m in s_maps(Y1) if m.target <= Xset]
        if not candidates:
            continue
        inner = x_maps(Y1)
        for m in sorted(candidates, key=lambda m: _map_key(graph, m)):
            checked += 1
            if m in inner:
                continue
            reach = reachable_maps(graph, Y1)
            chain = reach.chain(m)
            if x_method == "oracle":
                cert = {"kind": "ExhaustiveEnumeration", "count": x_order}
            else:
                cert = {"kind": "RibbonExhaustion", "states": len(reachable_maps(gx, Y1).states())}
            witness = Witness(Y1, m, chain, cert)
            return StarVerdict(False, graph, X, strategy, witness,
                               conditional=(x_method == "ribbon"),
                               stats={"maps_checked": checked, "time_ms": _ms(t0)})
    return StarVerdict(True, graph, X, strategy, None,
                       conditional=(s_method == "ribbon"),
                       stats={"maps_checked": checked, "time_ms": _ms(t0)})


def _ms(t0):
    return round(1000 * (time.perf_counter() - t0), 3)


def witness_is_sound(verdict: StarVerdict) -> bool:
    """Check a failure witness: its chain composes to an element of W_S realizing the map."""
    w = verdict.witness
    if w is None or w.chain_in_S is None:
        return False
    if w.chain_in_S.composite != w.map:
        return False
    g = chain_element(verdict.graph, w.chain_in_S.moves)
    return all(g.simple_conjugate(y) == w.map(y) for y in w.Y1)


@dataclass
class Discrepancy:
    side: str  # "S" or "X"
    X: tuple | None
    Y1: tuple
    only_oracle: list
    only_ribbon: list


@dataclass
class CrossValidationReport:
    graph: CoxeterGraph
    subsets_checked: int = 0
    maps_compared: int = 0
    verdicts: dict = field(default_factory=dict)
    discrepancies: list = field(default_factory=list)
    verdict_mismatches: list = field(default_factory=list)

    @property
    def agree(self) -> bool:
        return not self.discrepancies and not self.verdict_mismatches


def cross_validate(graph: CoxeterGraph, cap: int = 60_000) -> CrossValidationReport:
    """Compare oracle and ribbon realized-map sets and verdicts for every proper X."""
    if recognize(graph) is None:
        raise NotSphericalInput(f"{graph!r} is not of spherical type")
    s_oracle = _oracle(graph, cap)
    report = CrossValidationReport(graph)
    verts = graph.vertices

    for Y1 in subsets(verts, proper=True):
        a, b = s_oracle.maps(Y1), realized_maps_ribbon(graph, Y1)
        report.maps_compared += len(a)
        if a != b:
            report.discrepancies.append(Discrepancy("S", None, Y1, sorted(map(repr, a - b)), sorted(map(repr, b - a))))

    for X in subsets(verts, proper=True, nonempty=True):
        report.subsets_checked += 1
        gx = induced(graph, X)
        x_oracle = _oracle(gx, cap)
        for Y1 in subsets(X):
            a, b = x_oracle.maps(Y1), realized_maps_ribbon(gx, Y1)
            report.maps_compared += len(a)
            if a != b:
                report.discrepancies.append(Discrepancy("X", X, Y1, sorted(map(repr, a - b)), sorted(map(repr, b - a))))
        v_oracle = decide_star(graph, X, "oracle", cap).holds
        v_ribbon = decide_star(graph, X, "ribbon", cap).holds
        report.verdicts[X] = v_oracle
        if v_oracle != v_ribbon:
            report.verdict_mismatches.append((X, v_oracle, v_ribbon))
    return report
