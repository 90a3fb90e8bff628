"""Letterwise conjugation by longest elements and ribbons.

Every move acts on the current subset of generators through its image in
the Coxeter group: conjugation by ``Delta_Z`` acts as ``w0(W_Z)`` and the
ribbon ``r(t, Z) = Delta_Z^-1 Delta_{Z+t}`` acts as ``w0(W_Z) w0(W_{Z+t})``.
Since conjugating a letter by the lift of ``w`` yields the letter of ``y^w``
whenever that is simple, these letter maps are also the maps induced on the
Artin generators.
"""
from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Mapping, Sequence, Union

from .coxgraph import CoxeterGraph
from .engine import GroupElement, RootSystem, longest_element
from .errors import ChainMismatch, NotContained, UnknownVertex, VertexInSubset


class SubsetMap:
    """A bijection between two subsets of generators, given pointwise."""

    __slots__ = ("_map", "_key")

    def __init__(self, mapping: Mapping[str, str]):
        self._map = dict(mapping)
        if len(set(self._map.values())) != len(self._map):
            raise ValueError(f"not a bijection: {self._map}")
        self._key = frozenset(self._map.items())

    @classmethod
    def identity(cls, subset: Iterable[str]) -> "SubsetMap":
        return cls({y: y for y in subset})

    @property
    def source(self) -> frozenset[str]:
        return frozenset(self._map)

    @property
    def target(self) -> frozenset[str]:
        return frozenset(self._map.values())

    def __call__(self, y: str) -> str:
        return self._map[y]

    def items(self):
        return self._map.items()

    def as_dict(self) -> dict[str, str]:
        return dict(self._map)

    def is_identity(self) -> bool:
        return all(a == b for a, b in self._map.items())

    def then(self, other: "SubsetMap | Mapping[str, str]") -> "SubsetMap":
        """Apply ``self`` first, then ``other``."""
        return SubsetMap({y: other[z] if isinstance(other, Mapping) else other(z)
                          for y, z in self._map.items()})

    def restrict(self, subset: Iterable[str]) -> "SubsetMap":
        return SubsetMap({y: self._map[y] for y in subset})

    def image_word(self, word: Iterable[str]) -> tuple[str, ...]:
        return tuple(self._map[y] for y in word)

    def is_graph_isomorphism(self, graph: CoxeterGraph) -> bool:
        items = list(self._map.items())
        return all(graph.m(a, b) == graph.m(fa, fb) for a, fa in items for b, fb in items)

    def __eq__(self, other):
        if not isinstance(other, SubsetMap):
            return NotImplemented
        return self._key == other._key

    def __hash__(self):
        return hash(self._key)

    def __len__(self):
        return len(self._map)

    def format(self, graph: CoxeterGraph | None = None) -> str:
        keys = graph.sort(self._map) if graph is not None else sorted(self._map)
        return " ".join(f"{y}->{self._map[y]}" for y in keys)

    def __repr__(self):
        return f"SubsetMap({self.format()})"

    def to_json(self, graph: CoxeterGraph | None = None) -> dict[str, str]:
        keys = graph.sort(self._map) if graph is not None else sorted(self._map)
        return {y: self._map[y] for y in keys}


@dataclass(frozen=True)
class Ribbon:
    t: str
    Z: frozenset

    def __init__(self, t: str, Z: Iterable[str]):
        object.__setattr__(self, "t", t)
        object.__setattr__(self, "Z", frozenset(Z))

    def to_json(self, graph: CoxeterGraph | None = None):
        zs = graph.sort(self.Z) if graph is not None else sorted(self.Z)
        return {"ribbon": [self.t, list(zs)]}

    def __str__(self):
        return f"r({self.t},{{{','.join(sorted(self.Z))}}})"


@dataclass(frozen=True)
class W0Conj:
    Z: frozenset

    def __init__(self, Z: Iterable[str]):
        object.__setattr__(self, "Z", frozenset(Z))

    def to_json(self, graph: CoxeterGraph | None = None):
        zs = graph.sort(self.Z) if graph is not None else sorted(self.Z)
        return {"w0conj": list(zs)}

    def __str__(self):
        return f"Delta{{{','.join(sorted(self.Z))}}}"


Move = Union[Ribbon, W0Conj]


def move_from_json(item) -> Move:
    if "ribbon" in item:
        t, zs = item["ribbon"]
        return Ribbon(t, zs)
    if "w0conj" in item:
        return W0Conj(item["w0conj"])
    raise ValueError(f"unknown move {item!r}")


def moves_to_json(moves: Sequence[Move], graph: CoxeterGraph | None = None) -> str:
    return json.dumps([m.to_json(graph) for m in moves])


def moves_from_json(text: str) -> list[Move]:
    return [move_from_json(item) for item in json.loads(text)]


@dataclass
class RibbonChain:
    """A sequence of moves applied to ``source`` and the composed letter map."""

    source: frozenset
    moves: list = field(default_factory=list)
    composite: SubsetMap = None

    def image_word(self, word: Iterable[str]) -> tuple[str, ...]:
        return self.composite.image_word(word)

    def to_json(self, graph: CoxeterGraph | None = None) -> list:
        return [m.to_json(graph) for m in self.moves]


class Calculus:
    """Cached longest-element actions for one root system."""

    def __init__(self, rs: RootSystem):
        self.rs = rs
        self.graph = rs.graph
        self._w0 = {}
        self._w0_elem = {}
        self._ribbon = {}

    def w0_element(self, Z: frozenset) -> GroupElement:
        Z = frozenset(Z)
        if Z not in self._w0_elem:
            self._w0_elem[Z] = longest_element(self.rs, Z)
        return self._w0_elem[Z]

    def w0_action(self, Z: frozenset) -> dict[str, str]:
        """``z -> z^{w0(W_Z)}`` for z in Z."""
        Z = frozenset(Z)
        act = self._w0.get(Z)
        if act is None:
            w = self.w0_element(Z)
            act = {}
            for z in Z:
                img = w.simple_conjugate(z)
                assert img in Z, "w0(W_Z) must permute Z"
                act[z] = img
            self._w0[Z] = act
        return act

    def ribbon_action(self, t: str, Z: frozenset) -> dict[str, str]:
        key = (t, frozenset(Z))
        act = self._ribbon.get(key)
        if act is None:
            first = self.w0_action(key[1])
            second = self.w0_action(key[1] | {t})
            act = {z: second[first[z]] for z in key[1]}
            self._ribbon[key] = act
        return act

    def move_action(self, move: Move, current: frozenset) -> dict[str, str]:
        if isinstance(move, Ribbon):
            return self.ribbon_action(move.t, move.Z)
        act = self.w0_action(move.Z)
        return {z: act.get(z, z) for z in current}

    def move_element(self, move: Move) -> GroupElement:
        if isinstance(move, Ribbon):
            return self.w0_element(move.Z) * self.w0_element(move.Z | {move.t})
        return self.w0_element(move.Z)


@lru_cache(maxsize=None)
def calculus_for(graph: CoxeterGraph) -> Calculus:
    return Calculus(RootSystem(graph))


def _calculus(rs_or_graph) -> Calculus:
    if isinstance(rs_or_graph, RootSystem):
        return calculus_for(rs_or_graph.graph)
    return calculus_for(rs_or_graph)


def _w0conj_legal(graph: CoxeterGraph, Z: frozenset, current: frozenset) -> bool:
    # vertices outside Z must commute with all of Z, so w0(W_Z) fixes them
    return all(c in Z or all(graph.commute(c, z) for z in Z) for c in current)


def w0_map(rs: RootSystem | CoxeterGraph, Z: Iterable[str], current: Iterable[str]) -> SubsetMap:
    """The map ``y -> y^{w0(W_Z)}`` on ``current``.

    ``current`` must lie in ``Z`` up to vertices commuting with every element
    of ``Z`` (those are fixed).
    """
    calc = _calculus(rs)
    Z = calc.graph.check_subset(Z)
    current = calc.graph.check_subset(current)
    if not _w0conj_legal(calc.graph, Z, current):
        raise NotContained(f"{sorted(current)} is not contained in {sorted(Z)}")
    act = calc.w0_action(Z)
    return SubsetMap({y: act.get(y, y) for y in current})


def ribbon_map(rs: RootSystem | CoxeterGraph, t: str, Z: Iterable[str]) -> SubsetMap:
    """Letter map of the ribbon ``r(t, Z)`` on ``Z``."""
    calc = _calculus(rs)
    Z = calc.graph.check_subset(Z)
    calc.graph.index(t)
    if t in Z:
        raise VertexInSubset(f"{t} belongs to {sorted(Z)}")
    return SubsetMap(calc.ribbon_action(t, Z))


def is_adjacent(graph: CoxeterGraph, t: str, Z: Iterable[str]) -> bool:
    """True iff ``r(t, Z)`` is an adjacent ribbon."""
    return any(not graph.commute(t, z) for z in Z)


def apply_chain(rs: RootSystem | CoxeterGraph, Y: Iterable[str], moves: Sequence[Move]) -> RibbonChain:
    """Compose ``moves`` starting from the identity on ``Y``.

    Raises :class:`ChainMismatch` if a ribbon's subset differs from the
    running target or a ``W0Conj`` does not apply to it.
    """
    calc = _calculus(rs)
    graph = calc.graph
    Y = graph.check_subset(Y)
    current = SubsetMap.identity(Y)
    for i, move in enumerate(moves):
        target = current.target
        try:
            if isinstance(move, Ribbon):
                graph.check_subset(move.Z | {move.t})
                if move.Z != target:
                    raise ChainMismatch(i, f"ribbon subset {sorted(move.Z)} != current {sorted(target)}")
                if move.t in move.Z:
                    raise ChainMismatch(i, f"{move.t} belongs to {sorted(move.Z)}")
            elif isinstance(move, W0Conj):
                graph.check_subset(move.Z)
                if not _w0conj_legal(graph, move.Z, target):
                    raise ChainMismatch(i, f"current {sorted(target)} not contained in {sorted(move.Z)}")
            else:
                raise ChainMismatch(i, f"unknown move {move!r}")
        except UnknownVertex as exc:
            raise ChainMismatch(i, str(exc)) from None
        current = current.then(calc.move_action(move, target))
    return RibbonChain(Y, list(moves), current)


def chain_element(rs: RootSystem | CoxeterGraph, moves: Sequence[Move]) -> GroupElement:
    """The Coxeter-group element obtained by multiplying the moves in order."""
    calc = _calculus(rs)
    w = calc.rs.identity()
    for move in moves:
        w = w * calc.move_element(move)
    return w


class Reachability:
    """BFS closure of ``(Y, identity)`` under ribbon and component-flip moves.

    States are pointwise maps from ``Y``; ``parent`` stores, for each state,
    the predecessor and the move, so that :meth:`chain` returns a witness.
    """

    def __init__(self, graph: CoxeterGraph, Y: Iterable[str], adjacent_only: bool = False,
                 flips: bool = True):
        self.graph = graph
        self.Y = graph.sort(graph.check_subset(Y))
        self.adjacent_only = adjacent_only
        self.flips = flips
        calc = calculus_for(graph)
        start = self.Y
        self.parent: dict[tuple, tuple | None] = {start: None}
        self.edges: set[tuple[frozenset, Move, frozenset]] = set()
        queue = deque([start])
        verts = graph.vertices
        while queue:
            state = queue.popleft()
            Z = frozenset(state)
            for move in self._moves(Z, verts):
                act = calc.move_action(move, Z)
                new = tuple(act[z] for z in state)
                if isinstance(move, Ribbon):
                    self.edges.add((Z, move, frozenset(new)))
                if new not in self.parent:
                    self.parent[new] = (state, move)
                    queue.append(new)

    def _moves(self, Z, verts):
        graph = self.graph
        if self.flips:
            for comp in graph.components(Z):
                if len(comp) > 1:
                    yield W0Conj(comp)
        for t in verts:
            if t in Z:
                continue
            if self.adjacent_only and not is_adjacent(graph, t, Z):
                continue
            yield Ribbon(t, Z)

    def maps(self) -> set[SubsetMap]:
        return {SubsetMap(zip(self.Y, state)) for state in self.parent}

    def targets(self) -> set[frozenset]:
        return {frozenset(state) for state in self.parent}

    def states(self) -> list[tuple]:
        return list(self.parent)

    def ribbon_edges(self) -> set[tuple[frozenset, str, frozenset]]:
        """Subset-level arrows ``(Z, t, Z')`` of the ribbon moves seen."""
        return {(a, m.t, b) for a, m, b in self.edges}

    def moves_to(self, state: tuple) -> list[Move]:
        moves = []
        while self.parent[state] is not None:
            state, move = self.parent[state]
            moves.append(move)
        return moves[::-1]

    def chain(self, target_map: SubsetMap | Mapping[str, str]) -> RibbonChain | None:
        """Witness chain realizing ``target_map``, or ``None`` if unreachable."""
        if isinstance(target_map, SubsetMap):
            target_map = target_map.as_dict()
        state = tuple(target_map[y] for y in self.Y)
        if state not in self.parent:
            return None
        return apply_chain(self.graph, self.Y, self.moves_to(state))


@lru_cache(maxsize=4096)
def reachable(graph: CoxeterGraph, Y: frozenset, adjacent_only: bool = False, flips: bool = True) -> Reachability:
    return Reachability(graph, Y, adjacent_only, flips)


def reachable_maps(graph: CoxeterGraph, Y: Iterable[str], adjacent_only: bool = False,
                   flips: bool = True) -> Reachability:
    """All letter maps from ``Y`` reachable by moves, with witness chains."""
    return reachable(graph, graph.check_subset(Y), adjacent_only, flips)
