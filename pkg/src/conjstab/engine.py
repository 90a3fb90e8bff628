"""Finite Coxeter groups acting on their root systems.

An element ``w`` is stored as the permutation ``perm`` of root indices with
``perm[i] = index of w(root_i)``.  Words are read left to right, so the word
``(s, t)`` is the element ``s*t`` and acts on roots as ``s(t(alpha))``.
Conjugation is the right action ``x^g = g^-1 x g``; for a simple reflection
``y`` the conjugate ``y^w`` is the reflection in ``w^-1(alpha_y)``.

Roots are built with exact coordinates in the simple-root basis: integers
for the crystallographic labels 3 and 4, elements of ``Z[phi]`` for label 5.
Dihedral components ``I2(m)`` use the 2m root directions ``k*pi/m`` as an
abstract set; no coordinates are needed there.
"""
from __future__ import annotations

from functools import cached_property
from typing import Iterable, Iterator, Sequence

import numpy as np

from .coxgraph import CoxeterGraph, recognize
from .errors import CapExceeded, NotSphericalInput, UnknownVertex
from .golden import PHI, Golden

Word = tuple  # a tuple of vertex names


def _cartan_entry(m, i_first):
    """Coefficient c with s_i(alpha_j) = alpha_j - c*alpha_i for an edge label m."""
    if m == 2:
        return Golden(0)
    if m == 3:
        return Golden(-1)
    if m == 4:
        return Golden(-1) if i_first else Golden(-2)
    if m == 5:
        return -PHI
    raise NotSphericalInput(f"label {m} needs the dihedral model")


def _vector_component(graph: CoxeterGraph, verts: Sequence[str]):
    r = len(verts)
    c = [[Golden(2) if i == j else _cartan_entry(graph.m(verts[i], verts[j]), i < j)
          for j in range(r)] for i in range(r)]

    def reflect(i, beta):
        k = sum((beta[j] * c[i][j] for j in range(r)), Golden(0))
        if not k:
            return beta
        out = list(beta)
        out[i] = out[i] - k
        return tuple(out)

    zero = Golden(0)
    simple = [tuple(Golden(1) if j == i else zero for j in range(r)) for i in range(r)]
    depth = {b: 0 for b in simple}
    frontier = list(simple)
    d = 0
    while frontier:
        d += 1
        nxt = []
        for beta in frontier:
            for i in range(r):
                gamma = reflect(i, beta)
                if gamma in depth or any(x.sign() < 0 for x in gamma):
                    continue
                depth[gamma] = d
                nxt.append(gamma)
        frontier = nxt
    rest = sorted((b for b in depth if depth[b] > 0),
                  key=lambda b: (depth[b], tuple((x.a, x.b) for x in b)))
    positives = simple + rest
    negatives = [tuple(-x for x in b) for b in positives]
    roots = positives + negatives
    index = {b: k for k, b in enumerate(roots)}
    refl = [[index[reflect(i, b)] for b in roots] for i in range(r)]
    return roots, len(positives), refl


def _dihedral_component(m: int):
    # direction k*pi/m, positives k = 0..m-1, simple roots at k = 0 and k = m-1
    pos = [0, m - 1] + list(range(1, m - 1))
    dirs = pos + [k + m for k in pos]
    index = {k: i for i, k in enumerate(dirs)}
    refl = []
    for simple_dir in (0, m - 1):
        refl.append([index[(2 * simple_dir + m - k) % (2 * m)] for k in dirs])
    return [None] * (2 * m), m, refl


class RootSystem:
    """Root system of a spherical Coxeter graph, with simple reflections as permutations.

    Positive roots come first (simple roots, then by depth, then by
    coordinates); root ``i + n_positive`` is the negative of root ``i``
    inside each component block.
    """

    def __init__(self, graph: CoxeterGraph):
        comps = recognize(graph)
        if comps is None:
            raise NotSphericalInput(f"{graph!r} is not of spherical type")
        self.graph = graph
        rank = graph.rank
        roots, positive, blocks = [], [], []
        simple = [0] * rank
        refl_rows = {}
        offset = 0
        for comp in comps:
            verts = [comp.inverse[f"s{i + 1}"] for i in range(comp.type.rank)]
            if comp.type.family == "I":
                croots, npos, crefl = _dihedral_component(comp.type.i2_label)
            else:
                croots, npos, crefl = _vector_component(graph, verts)
            n = len(croots)
            for k, v in enumerate(verts):
                simple[graph.index(v)] = offset + k
                refl_rows[v] = [offset + x for x in crefl[k]]
            roots.extend(croots)
            positive.extend([True] * npos + [False] * (n - npos))
            blocks.append((offset, n, verts))
            offset += n
        self.n_roots = offset
        self.roots = roots
        self.positive = np.array(positive, dtype=bool)
        self.n_positive = int(self.positive.sum())
        self.simple = tuple(simple)
        self.components = [tuple(v) for _, _, v in blocks]
        neg = np.empty(offset, dtype=np.intp)
        refl = np.tile(np.arange(offset, dtype=np.intp), (rank, 1))
        for start, n, verts in blocks:
            half = n // 2
            idx = np.arange(start, start + n)
            neg[start:start + n] = np.where(idx < start + half, idx + half, idx - half)
            for v in verts:
                refl[graph.index(v), start:start + n] = refl_rows[v]
        self.neg = neg
        self.refl = refl
        lookup = np.full(offset, -1, dtype=np.intp)
        for pos, root in enumerate(simple):
            lookup[root] = pos
            lookup[neg[root]] = pos
        self.simple_lookup = lookup
        self._refl_tuples = [tuple(int(x) for x in row) for row in refl]
        self.dtype = np.int16 if offset < 2**15 else np.int32

    def __repr__(self):
        return f"RootSystem({self.graph!r}, {self.n_roots} roots)"

    @property
    def rank(self) -> int:
        return self.graph.rank

    def vertex_position(self, v: str) -> int:
        return self.graph.index(v)

    def identity(self) -> "GroupElement":
        return GroupElement(tuple(range(self.n_roots)), self)

    def generator(self, v: str) -> "GroupElement":
        return GroupElement(self._refl_tuples[self.graph.index(v)], self)

    @cached_property
    def generators(self) -> dict[str, "GroupElement"]:
        return {v: self.generator(v) for v in self.graph.vertices}

    def root_string(self, i: int) -> str:
        coords = self.roots[i]
        if coords is None:
            return f"root#{i}"
        return "(" + ", ".join(str(x) for x in coords) + ")"


class GroupElement:
    """An element of a finite Coxeter group, acting on the root indices."""

    __slots__ = ("perm", "rs", "_hash")

    def __init__(self, perm: tuple[int, ...], rs: RootSystem):
        self.perm = perm
        self.rs = rs
        self._hash = hash(perm)

    def __eq__(self, other):
        if not isinstance(other, GroupElement):
            return NotImplemented
        return self.perm == other.perm and self.rs is other.rs

    def __hash__(self):
        return self._hash

    def __mul__(self, other: "GroupElement") -> "GroupElement":
        p = self.perm
        return GroupElement(tuple(p[i] for i in other.perm), self.rs)

    def __repr__(self):
        word = " ".join(self.reduced_word()) or "e"
        return f"<{word}>"

    def times_generator(self, v: str) -> "GroupElement":
        p = self.perm
        return GroupElement(tuple(p[i] for i in self.rs._refl_tuples[self.rs.graph.index(v)]), self.rs)

    def inverse(self) -> "GroupElement":
        inv = [0] * len(self.perm)
        for i, j in enumerate(self.perm):
            inv[j] = i
        return GroupElement(tuple(inv), self.rs)

    def conjugate_by(self, g: "GroupElement") -> "GroupElement":
        """``self^g = g^-1 * self * g``."""
        return g.inverse() * self * g

    def length(self) -> int:
        pos = self.rs.positive
        return sum(1 for i, j in enumerate(self.perm) if pos[i] and not pos[j])

    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self.perm))

    def right_descent(self, v: str) -> bool:
        """True iff ``l(w s) < l(w)``."""
        return not self.rs.positive[self.perm[self.rs.simple[self.rs.graph.index(v)]]]

    def left_descent(self, v: str) -> bool:
        """True iff ``l(s w) < l(w)``."""
        target = self.rs.simple[self.rs.graph.index(v)]
        return not self.rs.positive[self.perm.index(target)]

    def reduced_word(self) -> Word:
        """Greedy reduced word: strip the smallest left descent repeatedly."""
        word = []
        w = self
        verts = self.rs.graph.vertices
        while True:
            for v in verts:
                if w.left_descent(v):
                    word.append(v)
                    w = self.rs.generator(v) * w
                    break
            else:
                return tuple(word)

    word = reduced_word

    def simple_conjugate(self, y: str) -> str | None:
        """The simple reflection ``y^w``, or ``None`` when it is not simple."""
        rs = self.rs
        target = rs.simple[rs.graph.index(y)]
        pos = rs.simple_lookup[self.perm.index(target)]
        return None if pos < 0 else rs.graph.vertices[pos]


def build_root_system(graph: CoxeterGraph) -> RootSystem:
    return RootSystem(graph)


def _check_letters(rs, word):
    for v in word:
        if v not in rs.graph:
            raise UnknownVertex(f"unknown letter {v!r}")


def evaluate_word(rs: RootSystem, word: Iterable[str]) -> GroupElement:
    """The product of the simple reflections in ``word``, left to right."""
    word = tuple(word)
    _check_letters(rs, word)
    perm = list(range(rs.n_roots))
    for v in word:
        r = rs._refl_tuples[rs.graph.index(v)]
        perm = [perm[i] for i in r]
    return GroupElement(tuple(perm), rs)


def length(w: GroupElement) -> int:
    return w.length()


def reduced_word(w: GroupElement) -> Word:
    return w.reduced_word()


def simple_conjugate(w: GroupElement, y: str) -> str | None:
    w.rs.graph.index(y)
    return w.simple_conjugate(y)


def longest_element(rs: RootSystem, subset: Iterable[str] | None = None) -> GroupElement:
    """Longest element of the standard parabolic subgroup on ``subset`` (greedy ascent)."""
    verts = rs.graph.vertices if subset is None else rs.graph.sort(rs.graph.check_subset(subset))
    perm = list(range(rs.n_roots))
    pos = rs.positive
    cols = [(rs.simple[rs.graph.index(v)], rs._refl_tuples[rs.graph.index(v)]) for v in verts]
    while True:
        for root, r in cols:
            if pos[perm[root]]:
                perm = [perm[i] for i in r]
                break
        else:
            return GroupElement(tuple(perm), rs)


def support(word: Iterable[str]) -> frozenset[str]:
    """Set of letters of a positive word."""
    return frozenset(word)


def iter_inverse_levels(rs: RootSystem, cap: int | None = None) -> Iterator[np.ndarray]:
    """Yield, length by length, the inverse permutations of all group elements.

    Each element ``u`` of length ``k+1`` is generated exactly once, as
    ``s*u'`` where ``s`` is the smallest left descent of ``u``.  Within a
    level the rows are sorted by the greedy reduced word of ``u``.  Rows are
    permutations of ``u^-1``; column ``simple[y]`` gives ``u^-1(alpha_y)``.
    """
    n, r = rs.n_roots, rs.rank
    simple = np.array(rs.simple, dtype=np.intp)
    pos = rs.positive
    level = np.arange(n, dtype=rs.dtype)[None, :]
    count = 1
    if cap is not None and count > cap:
        raise CapExceeded(cap, count)
    while len(level):
        yield level
        children = []
        for k in range(r):
            ok = pos[level[:, simple[k]]]
            if not ok.any():
                continue
            child = level[ok][:, rs.refl[k]]
            if k:
                keep = pos[child[:, simple[:k]]].all(axis=1)
                child = child[keep]
            if len(child):
                children.append(child)
        level = np.concatenate(children) if children else np.empty((0, n), dtype=rs.dtype)
        count += len(level)
        if cap is not None and count > cap:
            raise CapExceeded(cap, count)


def group_order(rs: RootSystem, cap: int | None = None) -> int:
    return sum(len(level) for level in iter_inverse_levels(rs, cap))


def enumerate_elements(rs: RootSystem, cap: int) -> list[GroupElement]:
    """All elements, ordered by length and then by greedy reduced word.

    Raises :class:`CapExceeded` once more than ``cap`` elements are found.
    """
    if cap < 1:
        raise ValueError("cap must be >= 1")
    out = []
    for level in iter_inverse_levels(rs, cap):
        perms = np.argsort(level, axis=1)
        out.extend(GroupElement(tuple(int(x) for x in row), rs) for row in perms)
    return out


def poincare_levels(rs: RootSystem, cap: int | None = None) -> list[int]:
    """Number of elements of each length."""
    return [len(level) for level in iter_inverse_levels(rs, cap)]
