"""Reference computations that share no code with the package internals.

* group orders and Poincare polynomials from the degrees of the
  fundamental invariants;
* a floating-point geometric representation (bilinear form
  ``B(a_s, a_t) = -cos(pi / m)``) with its own root closure, lengths and
  conjugation of simple reflections.
"""
from __future__ import annotations

import math

import numpy as np

DEGREES = {
    "E6": (2, 5, 6, 8, 9, 12),
    "E7": (2, 6, 8, 10, 12, 14, 18),
    "E8": (2, 8, 12, 14, 18, 20, 24, 30),
    "F4": (2, 6, 8, 12),
    "H3": (2, 6, 10),
    "H4": (2, 12, 20, 30),
}


def degrees(name: str) -> tuple[int, ...]:
    if name in DEGREES:
        return DEGREES[name]
    if name.startswith("I2("):
        return (2, int(name[3:-1]))
    fam, n = name[0], int(name[1:])
    if fam == "A":
        return tuple(range(2, n + 2))
    if fam == "B":
        return tuple(range(2, 2 * n + 1, 2))
    if fam == "D":
        return tuple(range(2, 2 * n - 1, 2)) + (n,)
    raise ValueError(name)


def order(name: str) -> int:
    return math.prod(degrees(name))


def n_reflections(name: str) -> int:
    return sum(d - 1 for d in degrees(name))


def poincare(name: str) -> list[int]:
    """Coefficients of prod (1 + q + .. + q^(d-1)): elements per length."""
    poly = np.array([1], dtype=object)
    for d in degrees(name):
        poly = np.convolve(poly, np.ones(d, dtype=object))
    return [int(c) for c in poly]


class FloatCoxeter:
    """Geometric representation of W on the span of the simple roots."""

    def __init__(self, vertices, m):
        self.vertices = list(vertices)
        n = len(self.vertices)
        B = np.eye(n)
        for i in range(n):
            for j in range(n):
                if i != j:
                    mij = m(self.vertices[i], self.vertices[j])
                    B[i, j] = -1.0 if mij == math.inf else -math.cos(math.pi / mij)
        self.B = B
        self.gens = {}
        for i, v in enumerate(self.vertices):
            S = np.eye(n)
            S[i, :] -= 2 * B[i, :]
            self.gens[v] = S
        self.positive = self._positive_roots()

    @classmethod
    def of(cls, graph):
        return cls(graph.vertices, graph.m)

    def _positive_roots(self):
        n = len(self.vertices)
        seen = {}
        frontier = [np.eye(n)[i] for i in range(n)]
        while frontier:
            nxt = []
            for r in frontier:
                key = tuple(np.round(r, 6))
                if key in seen:
                    continue
                seen[key] = r
                for S in self.gens.values():
                    nxt.append(S @ r)
            frontier = nxt
            if len(seen) > 5000:
                raise RuntimeError("root closure did not terminate")
        return [r for r in seen.values() if r.min() > -1e-9]

    def element(self, word):
        M = np.eye(len(self.vertices))
        for a in word:
            M = M @ self.gens[a]
        return M

    def length(self, M) -> int:
        return sum(1 for r in self.positive if (M @ r).max() < 1e-9)

    def simple_conjugate(self, M, y):
        """Vertex ``x`` with ``M^-1 y M = x``, or None."""
        v = np.linalg.solve(M, np.eye(len(self.vertices))[self.vertices.index(y)])
        for i, x in enumerate(self.vertices):
            e = np.eye(len(self.vertices))[i]
            if np.allclose(v, e, atol=1e-7) or np.allclose(v, -e, atol=1e-7):
                return x
        return None

    def elements(self, limit=20000):
        """All elements as matrices (BFS over right multiplication)."""
        key = lambda M: tuple(np.round(M, 6).ravel())
        start = np.eye(len(self.vertices))
        seen = {key(start): start}
        frontier = [start]
        while frontier:
            nxt = []
            for M in frontier:
                for S in self.gens.values():
                    N = M @ S
                    k = key(N)
                    if k not in seen:
                        seen[k] = N
                        nxt.append(N)
            frontier = nxt
            if len(seen) > limit:
                raise RuntimeError("group too large for the float oracle")
        return list(seen.values())

    def realized_maps(self, Y, elements=None):
        """Every ``{y: y^w}`` with all images simple, as frozensets of pairs."""
        out = set()
        for M in elements if elements is not None else self.elements():
            imgs = {y: self.simple_conjugate(M, y) for y in Y}
            if all(v is not None for v in imgs.values()):
                out.add(frozenset(imgs.items()))
        return out


def float_longest(fc: FloatCoxeter, Z):
    """Longest element of the parabolic subgroup on ``Z``, by brute force."""
    sub = FloatCoxeter(list(Z), lambda a, b: _label(fc, a, b))
    best = max(sub.elements(), key=sub.length)
    word = _word_of(sub, best)
    return fc.element(word)


def _label(fc, a, b):
    i, j = fc.vertices.index(a), fc.vertices.index(b)
    c = -fc.B[i, j]
    if c >= 1 - 1e-12:
        return math.inf
    return round(math.pi / math.acos(c))


def _word_of(fc, M):
    """A reduced word of M, by stripping right descents."""
    word = []
    while fc.length(M) > 0:
        for v, S in fc.gens.items():
            N = M @ S
            if fc.length(N) < fc.length(M):
                word.append(v)
                M = N
                break
    return word[::-1]
