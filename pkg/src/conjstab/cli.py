"""Command-line front end: ``conjstab <subcommand> ...``.

Exit codes: 0 success, 1 verification mismatch, 2 invalid input, 3 cap exceeded.
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import asdict, dataclass, fields

from . import classify, verify
from .coxgraph import CoxeterGraph, from_name, induced, recognize, type_name
from .engine import RootSystem, longest_element
from .errors import CapExceeded, InvalidInput
from .ribbons import SubsetMap, reachable_maps, ribbon_map
from .star import DEFAULT_CAP, STRATEGIES, decide_star, subsets

EXIT_OK, EXIT_MISMATCH, EXIT_INVALID, EXIT_CAP = 0, 1, 2, 3
OUTPUTS = ("json", "tsv", "text")


@dataclass
class CliConfig:
    enumeration_cap: int = DEFAULT_CAP
    strategy: str = "hybrid"
    output: str | None = None
    max_rank: int = 8
    i2_max: int = 12

    def __post_init__(self):
        if not isinstance(self.enumeration_cap, int) or self.enumeration_cap < 1:
            raise InvalidInput("enumeration_cap must be a positive integer")
        self.strategy = str(self.strategy).lower()
        if self.strategy not in STRATEGIES:
            raise InvalidInput(f"unknown strategy {self.strategy!r}")
        if self.output is not None and self.output not in OUTPUTS:
            raise InvalidInput(f"unknown output format {self.output!r}")

    def to_json(self) -> str:
        return json.dumps(asdict(self), sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> "CliConfig":
        data = json.loads(text)
        known = {f.name for f in fields(cls)}
        unknown = set(data) - known
        if unknown:
            raise InvalidInput(f"unknown config keys: {sorted(unknown)}")
        return cls(**data)


def _split(text: str | None) -> list[str]:
    if not text:
        return []
    return [p.strip() for p in text.replace(" ", ",").split(",") if p.strip()]


def _graph(args) -> CoxeterGraph:
    if getattr(args, "graph", None):
        with open(args.graph) as fh:
            return CoxeterGraph.from_json(json.load(fh))
    if not args.type:
        raise InvalidInput("give --type or --graph")
    return from_name(args.type)


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True)


def _config(args) -> CliConfig:
    cfg = CliConfig()
    if args.config:
        with open(args.config) as fh:
            cfg = CliConfig.from_json(fh.read())
    updates = {}
    for name, attr in (("cap", "enumeration_cap"), ("strategy", "strategy"), ("output", "output"),
                       ("max_rank", "max_rank"), ("i2_max", "i2_max")):
        value = getattr(args, name, None)
        if value is not None:
            updates[attr] = value
    return CliConfig(**{**asdict(cfg), **updates})


# ---------------------------------------------------------------- subcommands

def cmd_star(args, cfg, out):
    graph = _graph(args)
    if args.x_type:
        placements = [X for X in subsets(graph.vertices, proper=True, nonempty=True)
                      if _same_type(induced(graph, X), args.x_type)]
        if not placements:
            raise InvalidInput(f"no subset of type {args.x_type} in {type_name(graph)}")
        verdicts = [decide_star(graph, X, cfg.strategy, cfg.enumeration_cap) for X in placements]
    else:
        verdicts = [decide_star(graph, _split(args.subset), cfg.strategy, cfg.enumeration_cap)]
    fmt = cfg.output or "json"
    if fmt == "json":
        payload = [v.to_json() for v in verdicts]
        out.write(_dump(payload if args.x_type else payload[0]) + "\n")
    else:
        for v in verdicts:
            line = f"X={','.join(v.X)}\t{'holds' if v.holds else 'fails'}"
            if v.conditional:
                line += "\t(conditional)"
            if v.witness is not None:
                line += f"\twitness {v.witness.map.format(graph)}"
            out.write(line + "\n")
    return EXIT_OK


def _same_type(graph: CoxeterGraph, name: str) -> bool:
    comps = recognize(graph)
    want = recognize(from_name(name))
    if comps is None or want is None:
        return False
    return sorted(c.type.name for c in comps) == sorted(c.type.name for c in want)


def cmd_sweep(args, cfg, out):
    types = _split(args.types) or None
    progress = (lambda name: print(f"# {name}", file=sys.stderr)) if args.progress else None
    rows = classify.sweep(cfg.max_rank, cfg.i2_max, cfg.strategy, cfg.enumeration_cap,
                          types=types, timing=args.timing, progress=progress)
    fmt = cfg.output or "tsv"
    if fmt == "tsv":
        out.write(classify.rows_to_tsv(rows))
    elif fmt == "json":
        out.write(classify.rows_to_json(rows) + "\n")
    else:
        s = classify.summarize(rows)
        out.write(" ".join(f"{k}={v}" for k, v in s.items()) + "\n")
        for r in rows:
            if r.agree is False:
                out.write(f"DISAGREE {r.type} X={','.join(r.X)} decided={r.decided} expected={r.expected}\n")
    return EXIT_MISMATCH if any(r.agree is False for r in rows) else EXIT_OK


def _print_map(m: SubsetMap, graph, cfg, out):
    if (cfg.output or "text") == "json":
        out.write(_dump(m.to_json(graph)) + "\n")
    else:
        out.write(m.format(graph) + "\n")


def cmd_w0(args, cfg, out):
    graph = _graph(args)
    subset = _split(args.subset) or None
    w0 = longest_element(RootSystem(graph), subset)
    verts = graph.vertices if subset is None else graph.sort(graph.check_subset(subset))
    _print_map(SubsetMap({s: w0.simple_conjugate(s) for s in verts}), graph, cfg, out)
    return EXIT_OK


def cmd_ribbon(args, cfg, out):
    graph = _graph(args)
    _print_map(ribbon_map(graph, args.t, _split(args.Z)), graph, cfg, out)
    return EXIT_OK


def cmd_reach(args, cfg, out):
    graph = _graph(args)
    reach = reachable_maps(graph, _split(args.Y), adjacent_only=args.adjacent_only, flips=not args.no_flips)
    maps = sorted(reach.maps(), key=lambda m: [graph.index(m(y)) for y in reach.Y])
    targets = sorted((graph.sort(t) for t in reach.targets()), key=lambda t: [graph.index(v) for v in t])
    arrows = sorted(([list(graph.sort(a)), t, list(graph.sort(b))] for a, t, b in reach.ribbon_edges()),
                    key=lambda e: ([graph.index(v) for v in e[0]], graph.index(e[1])))
    if (cfg.output or "text") == "json":
        out.write(_dump({
            "Y": list(reach.Y),
            "states": [{"map": m.to_json(graph), "chain": reach.chain(m).to_json(graph)} for m in maps],
            "targets": [list(t) for t in targets],
            "arrows": arrows,
        }) + "\n")
    else:
        out.write(f"{len(maps)} states, {len(targets)} subsets\n")
        for m in maps:
            chain = " ".join(str(mv) for mv in reach.chain(m).moves) or "(start)"
            out.write(f"{m.format(graph)}\t{chain}\n")
    return EXIT_OK


def cmd_verify(args, cfg, out):
    checks = verify.verify_all()
    if args.junit:
        with open(args.junit, "w") as fh:
            fh.write(verify.checks_to_junit(checks))
    if (cfg.output or "text") == "json":
        out.write(verify.checks_to_json(checks) + "\n")
    else:
        for c in checks:
            out.write(f"{c.status.upper():4} {c.id}\n")
        out.write(f"{sum(c.passed for c in checks)}/{len(checks)} checks passed\n")
    return EXIT_OK if all(c.passed for c in checks) else EXIT_MISMATCH


def cmd_recognize(args, cfg, out):
    graph = _graph(args)
    comps = recognize(graph)
    if (cfg.output or "text") == "json":
        payload = None if comps is None else [{"type": c.type.name, "relabel": c.relabel} for c in comps]
        out.write(_dump({"spherical": comps is not None, "components": payload}) + "\n")
    elif comps is None:
        out.write("not spherical\n")
    else:
        out.write(type_name(graph) + "\n")
        for c in comps:
            out.write(f"{c.type.name}: " + " ".join(f"{v}={s}" for v, s in c.relabel.items()) + "\n")
    return EXIT_OK


# ---------------------------------------------------------------- parser

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="JSON file with CliConfig fields")
    common.add_argument("--cap", type=int, help="largest group order to enumerate")
    common.add_argument("--strategy", type=str.lower, choices=STRATEGIES)
    common.add_argument("--output", choices=OUTPUTS)

    graph = argparse.ArgumentParser(add_help=False)
    graph.add_argument("--type", help="type name such as E6, I2(5) or A2xB3")
    graph.add_argument("--graph", help="JSON Coxeter graph file")

    p = argparse.ArgumentParser(prog="conjstab", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("star", parents=[common, graph], help="decide one pair (W_X, W_S)")
    s.add_argument("--subset", help="comma-separated X")
    s.add_argument("--x-type", help="decide every placement of this type")
    s.set_defaults(func=cmd_star)

    s = sub.add_parser("sweep", parents=[common], help="classification table over the catalog")
    s.add_argument("--max-rank", type=int)
    s.add_argument("--i2-max", type=int)
    s.add_argument("--types", help="comma-separated type names instead of the catalog")
    s.add_argument("--timing", action="store_true", help="fill time_ms (output no longer reproducible)")
    s.add_argument("--progress", action="store_true")
    s.set_defaults(func=cmd_sweep)

    s = sub.add_parser("w0", parents=[common, graph], help="conjugation by a longest element")
    s.add_argument("--subset")
    s.set_defaults(func=cmd_w0)

    s = sub.add_parser("ribbon", parents=[common, graph], help="letter map of r(t, Z)")
    s.add_argument("-t", required=True)
    s.add_argument("-Z", required=True)
    s.set_defaults(func=cmd_ribbon)

    s = sub.add_parser("reach", parents=[common, graph], help="maps reachable from Y")
    s.add_argument("-Y", required=True)
    s.add_argument("--adjacent-only", action="store_true")
    s.add_argument("--no-flips", action="store_true", help="ribbons only")
    s.set_defaults(func=cmd_reach)

    s = sub.add_parser("verify-paper", parents=[common], help="replay the published tables and examples")
    s.add_argument("--junit", help="write a JUnit XML report here")
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("recognize", parents=[common, graph], help="identify the type of a graph")
    s.set_defaults(func=cmd_recognize)
    return p


def run(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_OK if e.code in (0, None) else EXIT_INVALID
    try:
        if getattr(args, "max_rank", None) is not None and args.max_rank < 1:
            raise InvalidInput("--max-rank must be >= 1")
        cfg = _config(args)
        return args.func(args, cfg, out)
    except CapExceeded as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_CAP
    except (InvalidInput, OSError, json.JSONDecodeError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INVALID


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
