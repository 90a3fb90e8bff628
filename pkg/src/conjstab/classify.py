"""Classification rules for conjugacy-stable standard parabolic subgroups,
componentwise reduction, and catalog sweeps comparing them with the decider.
"""
from __future__ import annotations

import csv
import io
import json
import time
from dataclasses import asdict, dataclass
from typing import Iterable, Sequence

from .coxgraph import CoxeterGraph, SphericalType, catalog, from_type, induced, recognize
from .errors import BadSubset, CapExceeded, NotSphericalInput
from .star import DEFAULT_CAP, decide_star, subsets

# (X type, ambient types or None for any ambient)
IRREDUCIBLE_EXCEPTIONS = (
    ("1a", "D5", ("E6", "E7", "E8")),
    ("1b", "D7", ("E8",)),
    ("1c", "E7", ("E8",)),
    ("1e", "H3", ("H4",)),
)

F4_REDUCIBLE = (
    ("s1", "s3"), ("s1", "s4"), ("s1", "s3", "s4"), ("s1", "s2", "s4"), ("s2", "s4"),
)


def _ambient(graph: CoxeterGraph):
    comps = recognize(graph)
    if comps is None:
        raise NotSphericalInput(f"{graph!r} is not of spherical type")
    if len(comps) != 1:
        raise BadSubset("the ambient graph must be connected")
    return comps[0]


def expected_rule(graph: CoxeterGraph, X: Iterable[str]) -> str | None:
    """Name of the exception rule that makes ``A_X`` unstable, or ``None``.

    Rules: ``1a``-``1e`` for irreducible X, ``2`` for reducible X outside
    the two exempt families (``B_n`` with ``X = {s1} + Z``, and ``F_4``).
    """
    comp = _ambient(graph)
    X = graph.check_subset(X)
    if not X or len(X) == graph.rank:
        raise BadSubset("X must be a nonempty proper subset of S")
    ambient = comp.type
    canon = {comp.relabel[x] for x in X}
    parts = recognize(induced(graph, X))
    if len(parts) == 1:
        xtype = parts[0].type
        for rule, xt, amb in IRREDUCIBLE_EXCEPTIONS:
            if xtype.name == xt and ambient.name in amb:
                return rule
        if xtype.family == "D" and xtype.rank % 2 == 0:
            return "1d"
        return None
    if ambient.name == "F4":
        return None
    if ambient.family == "B" and ambient.rank >= 3 and len(parts) == 2 and "s1" in canon:
        rest = canon - {"s1"}
        if "s2" not in rest:
            return None  # {s1} + Z, Z inside {s3..sn} and connected (two parts)
    return "2"


def expected_verdict(graph: CoxeterGraph, X: Iterable[str]) -> bool:
    """True when ``A_X`` is conjugacy stable in ``A_S`` according to the classification.

    Reducible ambients are handled componentwise.
    """
    if recognize(graph) is None:
        raise NotSphericalInput(f"{graph!r} is not of spherical type")
    X = graph.check_subset(X)
    if not X or len(X) == graph.rank:
        raise BadSubset("X must be a nonempty proper subset of S")
    return all(
        expected_rule(part, Xi) is None
        for part, Xi in reducible_reduction(graph, X)
        if Xi and len(Xi) < part.rank
    )


def reducible_reduction(graph: CoxeterGraph, X: Iterable[str]) -> list[tuple[CoxeterGraph, tuple[str, ...]]]:
    """Split ``(S, X)`` along the connected components ``S_i`` of ``S``."""
    X = graph.check_subset(X)
    return [(induced(graph, comp), tuple(v for v in comp if v in X)) for comp in graph.components()]


@dataclass
class SweepRow:
    type: str
    X: tuple
    X_component_types: str
    decided: bool | None
    expected: bool
    rule_fired: str | None
    strategy: str
    time_ms: float
    conditional: bool = False
    skipped: bool = False

    @property
    def agree(self) -> bool | None:
        return None if self.skipped else self.decided == self.expected


def sweep_type(t: SphericalType | str, strategy: str = "hybrid", cap: int = DEFAULT_CAP,
               timing: bool = True) -> list[SweepRow]:
    if isinstance(t, str):
        t = SphericalType.parse(t)
    graph = from_type(t)
    rows = []
    for X in subsets(graph.vertices, proper=True, nonempty=True):
        xtypes = "x".join(c.type.name for c in recognize(induced(graph, X)))
        expected = expected_verdict(graph, X)
        rule = expected_rule(graph, X)
        t0 = time.perf_counter()
        try:
            v = decide_star(graph, X, strategy, cap)
            decided, conditional, skipped = v.holds, v.conditional, False
        except CapExceeded:
            decided, conditional, skipped = None, False, True
        ms = round(1000 * (time.perf_counter() - t0), 3) if timing else 0.0
        rows.append(SweepRow(t.name, X, xtypes, decided, expected, rule, strategy, ms, conditional, skipped))
    return rows


def sweep(max_rank: int = 8, i2_max: int = 12, strategy: str = "hybrid", cap: int = DEFAULT_CAP,
          types: Sequence[str] | None = None, timing: bool = True, progress=None) -> list[SweepRow]:
    """Decide every nonempty proper X of every catalog type and compare with the rules.

    Rows are ordered by type (catalog order) and then by X (size, then
    lexicographic).  Rows whose decision exceeds ``cap`` are marked skipped.
    """
    if max_rank < 1:
        raise ValueError("max_rank must be >= 1")
    kinds = [SphericalType.parse(n) for n in types] if types else catalog(max_rank, i2_max)
    rows = []
    for t in kinds:
        if progress is not None:
            progress(t.name)
        rows.extend(sweep_type(t, strategy, cap, timing))
    return rows


def summarize(rows: Sequence[SweepRow]) -> dict:
    return {
        "rows": len(rows),
        "agree": sum(1 for r in rows if r.agree is True),
        "disagree": sum(1 for r in rows if r.agree is False),
        "skipped": sum(1 for r in rows if r.skipped),
        "conditional": sum(1 for r in rows if r.conditional),
    }


TSV_COLUMNS = ("type", "X", "X_component_types", "decided", "expected", "rule_fired", "strategy", "time_ms")


def _cell(value):
    if value is None:
        return "-"
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, tuple):
        return ",".join(value)
    return str(value)


def rows_to_tsv(rows: Sequence[SweepRow]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, delimiter="\t", lineterminator="\n")
    w.writerow(TSV_COLUMNS)
    for r in rows:
        d = asdict(r)
        w.writerow([_cell("skipped" if k == "decided" and r.skipped else d[k]) for k in TSV_COLUMNS])
    return buf.getvalue()


def rows_to_json(rows: Sequence[SweepRow]) -> str:
    out = []
    for r in rows:
        d = asdict(r)
        d["X"] = list(r.X)
        d["agree"] = r.agree
        out.append(d)
    return json.dumps({"rows": out, "summary": summarize(rows)}, indent=2)


def f4_reducible_subsets() -> list[tuple[str, ...]]:
    """Nonempty proper subsets of F4 whose induced graph is disconnected."""
    g = from_type(SphericalType("F", 4))
    return [X for X in subsets(g.vertices, proper=True, nonempty=True)
            if len(g.components(X)) > 1]
