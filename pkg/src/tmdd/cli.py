"""Command-line front end.

Subcommands: ``gen``, ``tm``, ``class``, ``oracle`` and ``export-dd``.
Exit status is 0 on success, 1 on usage or parse errors and 2 when a
resource guard refuses the input.
"""
from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Optional, Sequence

from . import ddops, oracle, pipeline
from .cfbs import ConstraintError, construct
from .graph import (
    Graph,
    GraphError,
    complete_bipartite_graph,
    complete_graph,
    compute_frontiers,
    king_graph,
    parse_edge_list,
    reorder_edges,
)
from .mdd import DDStore, Mdd, MddError, count_members, export_text, format_count, iter_members, level_sizes
from .profiles import ProfileError

EXACT_LIMIT = 10**18
DEFAULT_ORACLE_EDGES = 40


class UsageError(Exception):
    pass


class GuardError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # argparse would exit with status 2
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


@dataclass
class RunReport:
    command: str
    host: dict
    profiles: list = field(default_factory=list)
    dd: dict = field(default_factory=dict)
    count: int = 0
    seconds: float = 0.0

    def lines(self) -> list[str]:
        out = [f"command: {self.command}"]
        out.append(f"host: n={self.host['n']} m={self.host['m']} width={self.host['width']}")
        for p in self.profiles:
            out.append(f"profile: {p['query']} c={p['c']} |s|={p['s_total']} distinct_s={p['s_distinct']} |t|={p['t']}")
        if self.dd:
            out.append(f"dd_nodes: {self.dd['nodes']}")
            out.append(f"dd_width: {self.dd['width']}")
            if "levels" in self.dd:
                out.append("dd_levels: " + " ".join(map(str, self.dd["levels"])))
        if self.count <= EXACT_LIMIT:
            out.append(f"count: {self.count}")
        out.append(f"count_sci: {format_count(self.count)}")
        out.append(f"seconds: {self.seconds:.3f}")
        return out

    def as_json(self) -> str:
        data = asdict(self)
        data["count"] = str(self.count)
        data["count_sci"] = format_count(self.count)
        return json.dumps(data, indent=2)


def _load_host(path: str, order: str) -> Graph:
    try:
        text = sys.stdin.read() if path == "-" else Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    try:
        return reorder_edges(parse_edge_list(text), order)
    except GraphError as exc:
        raise UsageError(f"{path}: {exc}") from None


def _resolve_query(spec: str) -> pipeline.NamedQuery:
    if spec.lower() in pipeline.QUERIES:
        return pipeline.QUERIES[spec.lower()]
    path = Path(spec)
    if not path.exists():
        raise UsageError(f"query {spec!r} is neither a shorthand {sorted(pipeline.QUERIES)} nor a file")
    try:
        h = parse_edge_list(path.read_text())
    except GraphError as exc:
        raise UsageError(f"{spec}: {exc}") from None
    if h.isolated_vertices():
        raise UsageError(f"{spec}: query graph has isolated vertices")
    return pipeline.resolve_query(h)


def _host_summary(g: Graph) -> dict:
    return {"n": g.n, "m": g.m, "width": compute_frontiers(g).width}


def _profile_summary(name: str, profile) -> dict:
    con = profile.constraint
    return {
        "query": name,
        "c": con.c,
        "s_total": con.size(),
        "s_distinct": len(con.s),
        "t": len(con.t),
    }


def _dd_summary(d: Mdd, levels: bool) -> dict:
    sizes = level_sizes(d)
    out = {"nodes": sum(sizes), "width": max(sizes, default=0)}
    if levels:
        out["levels"] = sizes
    return out


def _emit(report: RunReport, d: Optional[Mdd], args) -> None:
    if args.mode == "enumerate" and d is not None:
        for member in iter_members(d):
            print(" ".join(map(str, sorted(member[0]))))
            args.limit -= 1
            if args.limit <= 0:
                break
    if args.json:
        print(report.as_json())
    else:
        print("\n".join(report.lines()))


def _profile_choice(args, query: pipeline.NamedQuery) -> str:
    if args.profile:
        return args.profile
    return "special" if query.name != "H" else "vertex"


def cmd_gen(args) -> int:
    try:
        if args.kind == "complete":
            _need(args.params, 1)
            g = complete_graph(args.params[0])
        elif args.kind == "complete-bipartite":
            _need(args.params, 2)
            g = complete_bipartite_graph(*args.params)
        else:
            _need(args.params, 2)
            g = king_graph(*args.params)
    except GraphError as exc:
        raise UsageError(str(exc)) from None
    text = g.to_edge_list()
    if args.out and args.out != "-":
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return 0


def _need(params: Sequence[int], k: int) -> None:
    if len(params) != k:
        raise UsageError(f"expected {k} integer parameter(s), got {len(params)}")


def _build_tm(args):
    g = _load_host(args.host, args.order)
    q = _resolve_query(args.query)
    choice = _profile_choice(args, q)
    profile = pipeline.query_profile(q, choice)
    store = DDStore(g.m)
    d = ddops.decolorize(construct(g, profile.constraint, store=store))
    return g, [(q.name, profile)], d


def _build_class(args):
    g = _load_host(args.host, args.order)
    spec = pipeline.CLASSES[args.cls]
    profiles = [(q.name, pipeline.query_profile(q, args.profile or "special")) for q in spec.queries()]
    d = pipeline.ftm_subgraphs(g, spec, args.profile or "special")
    return g, profiles, d


def _run_dd(args, builder, name: str) -> int:
    start = time.perf_counter()
    g, profiles, d = builder(args)
    count = count_members(d)
    report = RunReport(
        command=name,
        host=_host_summary(g),
        profiles=[_profile_summary(n, p) for n, p in profiles],
        dd=_dd_summary(d, args.mode == "stats"),
        count=count,
        seconds=time.perf_counter() - start,
    )
    if args.export:
        Path(args.export).write_text(export_text(d))
    _emit(report, d, args)
    return 0


def cmd_tm(args) -> int:
    return _run_dd(args, _build_tm, "tm")


def cmd_class(args) -> int:
    return _run_dd(args, _build_class, "class")


def cmd_oracle(args) -> int:
    g = _load_host(args.host, args.order)
    if g.m > args.max_edges:
        raise GuardError(f"host has {g.m} edges; backtracking is limited to {args.max_edges}")
    start = time.perf_counter()
    if args.cls == "planar":
        pred = oracle.planarity_predicate(g)
    else:
        try:
            pred = oracle.forbidden_tm_predicate(g, [q.graph for q in pipeline.CLASSES[args.cls].queries()])
        except oracle.OracleGuardError as exc:
            raise GuardError(str(exc)) from None
    count, members = oracle.backtrack_enumerate(g, pred, collect=args.mode == "enumerate")
    report = RunReport(command="oracle", host=_host_summary(g), count=count, seconds=time.perf_counter() - start)
    if members is not None:
        for mask in members[: args.limit]:
            print(" ".join(str(i + 1) for i in range(g.m) if mask >> i & 1))
    if args.json:
        print(report.as_json())
    else:
        print("\n".join(report.lines()))
    return 0


def cmd_export(args) -> int:
    if args.cls:
        _, _, d = _build_class(args)
    elif args.query:
        _, _, d = _build_tm(args)
    else:
        raise UsageError("export-dd needs --query or --class")
    text = export_text(d)
    if args.out and args.out != "-":
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return 0


def _add_common(p: argparse.ArgumentParser, modes: bool = True) -> None:
    p.add_argument("host", help="edge-list file of the host graph ('-' for stdin)")
    p.add_argument("--order", choices=["as-given", "bfs"], default="as-given", help="edge order")
    p.add_argument("--profile", choices=["vertex", "edge", "special"], default=None)
    if modes:
        p.add_argument("--mode", choices=["count", "stats", "enumerate"], default="count")
        p.add_argument("--limit", type=int, default=10, help="members printed in enumerate mode")
        p.add_argument("--json", action="store_true", help="print a JSON report")
        p.add_argument("--export", metavar="PATH", help="also write the final DD in text form")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="tmdd", description="Topological-minor embeddings and graph-class subgraphs via decision diagrams.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("gen", help="write a synthetic host graph")
    p.add_argument("kind", choices=["complete", "complete-bipartite", "king"])
    p.add_argument("params", type=int, nargs="+")
    p.add_argument("--out", "-o", help="output path (default stdout)")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("tm", help="TM-embeddings of a query graph")
    _add_common(p)
    p.add_argument("--query", "-q", required=True, help=f"one of {sorted(pipeline.QUERIES)} or an edge-list file")
    p.set_defaults(func=cmd_tm)

    p = sub.add_parser("class", help="subgraphs in a forbidden-topological-minor class")
    _add_common(p)
    p.add_argument("--class", dest="cls", required=True, choices=sorted(pipeline.CLASSES))
    p.set_defaults(func=cmd_class)

    p = sub.add_parser("oracle", help="backtracking count of class subgraphs")
    p.add_argument("host")
    p.add_argument("--order", choices=["as-given", "bfs"], default="as-given")
    p.add_argument("--class", dest="cls", default="planar", choices=sorted(pipeline.CLASSES))
    p.add_argument("--mode", choices=["count", "enumerate"], default="count")
    p.add_argument("--limit", type=int, default=10)
    p.add_argument("--json", action="store_true")
    p.add_argument("--max-edges", type=int, default=DEFAULT_ORACLE_EDGES)
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("export-dd", help="dump a DD in text form")
    _add_common(p, modes=False)
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--query", "-q")
    group.add_argument("--class", dest="cls", choices=sorted(pipeline.CLASSES))
    p.add_argument("--out", "-o")
    p.set_defaults(func=cmd_export, mode="count")
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    if getattr(args, "limit", 1) is not None and getattr(args, "limit", 1) < 1:
        print("tmdd: error: --limit must be positive", file=sys.stderr)
        return 1
    try:
        return args.func(args)
    except (UsageError, ProfileError, ConstraintError, MddError) as exc:
        print(f"tmdd: error: {exc}", file=sys.stderr)
        return 1
    except GuardError as exc:
        print(f"tmdd: refused: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
