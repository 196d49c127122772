"""Command-line entry point.

Exit codes: 0 success, 1 usage error, 2 I/O or format error, 3 hypothesis
violation, 4 inequality violation.  Diagnostics are one line on stderr of the
form ``error: <kind>: <message>``.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from typing import Sequence

from .bounds import VARIANTS as BOUND_VARIANTS
from .bounds import BoundParams, evaluate_bound
from .constructions import (
    ConstructionError,
    bipartite_chain,
    c4_chain,
    clique_chain,
    modified_polarity_graph,
    polarity_graph,
)
from .enumeration import EnumerationLimitError
from .gf import FieldError
from .graph import DisconnectedGraphError, Graph, degree_stats, is_connected, structural_predicates
from .harness import UPPER_VARIANTS, BoundViolation, SweepConfig, rows_to_csv, rows_to_json, sweep, verify_small
from .io import FormatError, from_graph6, read_graph_file, to_graph6, write_edge_list, write_graph_file
from .metrics import frac_decimal, frac_str, metric_report
from .pipeline import VARIANTS as CERT_VARIANTS
from .pipeline import HypothesisError, certify

EXIT_OK, EXIT_USAGE, EXIT_IO, EXIT_HYPOTHESIS, EXIT_VIOLATION = 0, 1, 2, 3, 4


class CliError(Exception):
    def __init__(self, code: int, kind: str, message: str) -> None:
        super().__init__(message)
        self.code = code
        self.kind = kind


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        raise CliError(EXIT_USAGE, "usage", message)


def _emit(record: dict, fmt: str, out) -> None:
    if fmt == "json":
        out.write(json.dumps(record, indent=2) + "\n")
    elif fmt == "csv":
        flat = {k: v for k, v in record.items() if not isinstance(v, (dict, list))}
        w = csv.DictWriter(out, fieldnames=list(flat), lineterminator="\n")
        w.writeheader()
        w.writerow(flat)
    else:
        for k, v in record.items():
            if isinstance(v, dict):
                v = " ".join(f"{a}={b}" for a, b in v.items())
            out.write(f"{k}: {v}\n")


def _load_graph(args) -> Graph:
    try:
        if args.g6 is not None:
            return from_graph6(args.g6)
        return read_graph_file(args.input)
    except FormatError as exc:
        raise CliError(EXIT_IO, "format", str(exc)) from None
    except OSError as exc:
        raise CliError(EXIT_IO, "io", f"{args.input}: {exc.strerror or exc}") from None


def _add_input(p: argparse.ArgumentParser) -> None:
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--in", dest="input", metavar="FILE", help="graph file (graph6 or edge list)")
    src.add_argument("--g6", metavar="STR", help="inline graph6 string")


def _graph_summary(g: Graph) -> dict:
    if g.n == 0:
        raise CliError(EXIT_HYPOTHESIS, "hypothesis", "graph has no vertices")
    delta, Delta, _ = degree_stats(g)
    tri, c4 = structural_predicates(g)
    return {"n": g.n, "edges": g.edge_count, "delta": delta, "Delta": Delta,
            "connected": is_connected(g), "triangle_free": tri, "c4_free": c4}


# -- subcommands ---------------------------------------------------------

def cmd_compute(args, out) -> int:
    g = _load_graph(args)
    record = _graph_summary(g)
    if not record["connected"]:
        raise CliError(EXIT_HYPOTHESIS, "hypothesis", "graph is disconnected; W and mu are undefined")
    if g.n < 2:
        raise CliError(EXIT_HYPOTHESIS, "hypothesis", "average distance needs at least two vertices")
    m = metric_report(g)
    record.update({"wiener": frac_str(m.wiener), "mu": frac_str(m.avg_distance),
                   "mu_decimal": frac_decimal(m.avg_distance)})
    _emit(record, args.format, out)
    return EXIT_OK


def _construct(args) -> tuple[Graph, dict | None]:
    p = args.params
    arity = {"clique-chain": 3, "bipartite-chain": 3, "polarity": 1, "polarity-mod": 1, "c4-chain": 3}
    if len(p) != arity[args.family]:
        raise CliError(EXIT_USAGE, "usage", f"{args.family} takes {arity[args.family]} integer parameters")
    if args.family == "clique-chain":
        g, labels = clique_chain(*p)
        return g, labels.to_dict()
    if args.family == "bipartite-chain":
        g, labels = bipartite_chain(*p)
        return g, labels.to_dict()
    if args.family == "c4-chain":
        g, labels = c4_chain(*p)
        return g, labels.to_dict()
    if args.family == "polarity":
        return polarity_graph(p[0]), None
    g, u, v = modified_polarity_graph(p[0])
    return g, {"u": u, "v": v}


def cmd_construct(args, out) -> int:
    try:
        g, labels = _construct(args)
    except (ConstructionError, FieldError) as exc:
        raise CliError(EXIT_HYPOTHESIS, "hypothesis", str(exc)) from None
    file_fmt = "edges" if args.format == "edges" else "g6"
    if args.out:
        try:
            write_graph_file(g, args.out, file_fmt, labels)
        except OSError as exc:
            raise CliError(EXIT_IO, "io", f"{args.out}: {exc.strerror or exc}") from None
    if args.format == "json":
        record = _graph_summary(g)
        record["graph6"] = to_graph6(g)
        if labels is not None:
            record["labels"] = labels
        _emit(record, "json", out)
    elif not args.out:
        out.write(to_graph6(g) + "\n" if file_fmt == "g6" else write_edge_list(g))
    else:
        delta, Delta, _ = degree_stats(g)
        out.write(f"wrote {args.out}: n={g.n} delta={delta} Delta={Delta}\n")
    return EXIT_OK


def cmd_bound(args, out) -> int:
    try:
        b = evaluate_bound(args.variant, BoundParams(args.n, args.delta, args.Delta))
    except ValueError as exc:
        raise CliError(EXIT_USAGE, "usage", str(exc)) from None
    _emit(b.to_dict(), args.format, out)
    return EXIT_OK


def cmd_certify(args, out) -> int:
    g = _load_graph(args)
    try:
        cert = certify(g, args.variant)
    except HypothesisError as exc:
        raise CliError(EXIT_HYPOTHESIS, "hypothesis", str(exc)) from None
    if args.format == "json":
        out.write(cert.to_json() + "\n")
    elif args.format == "csv":
        w = csv.writer(out, lineterminator="\n")
        w.writerow(["name", "lhs", "relation", "rhs", "holds"])
        for c in cert.checks:
            d = c.to_dict()
            w.writerow([d["name"], d["lhs"], d["relation"], d["rhs"], d["holds"]])
    else:
        out.write(f"variant: {cert.variant}\nn: {cert.n}\ndelta: {cert.delta}\nDelta: {cert.Delta}\nk: {cert.k}\n")
        for c in cert.checks:
            out.write(f"{'PASS' if c.holds else 'FAIL'} {c.name}: {frac_str(c.lhs)} {c.relation} {frac_str(c.rhs)}\n")
    if not cert.ok:
        names = ",".join(c.name for c in cert.failed())
        raise CliError(EXIT_VIOLATION, "violation", f"{args.variant} checks failed: {names}; reproducer graph6={to_graph6(g)}")
    return EXIT_OK


def cmd_verify_small(args, out) -> int:
    variants = args.variant or ["plesnik", "kouider_winkler"]
    try:
        report = verify_small(args.n_max, variants, allow_n8=args.allow_n8)
    except EnumerationLimitError as exc:
        raise CliError(EXIT_USAGE, "usage", str(exc)) from None
    _emit(report.to_dict(), args.format, out)
    return EXIT_OK


def cmd_sweep(args, out) -> int:
    try:
        config = SweepConfig.load(args.config)
    except OSError as exc:
        raise CliError(EXIT_IO, "io", f"{args.config}: {exc.strerror or exc}") from None
    except ValueError as exc:
        raise CliError(EXIT_IO, "format", f"{args.config}: {exc}") from None
    try:
        rows = sweep(config)
    except OSError as exc:
        raise CliError(EXIT_IO, "io", f"cannot write report: {exc.strerror or exc}") from None
    out.write(rows_to_json(rows, config) if args.format == "json" else rows_to_csv(rows))
    for r in rows:
        if "failed" in r.cert_status:
            raise CliError(EXIT_VIOLATION, "violation", f"{r.cert_status}; reproducer graph6={r.graph6}")
        if r.bound_variant.endswith("_upper") and r.gap is not None and r.gap < 0:
            raise CliError(EXIT_VIOLATION, "violation",
                           f"{r.bound_variant} exceeded by mu={frac_str(r.mu)}; reproducer graph6={r.graph6}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="avgdist", description="Exact average-distance computations and proof certificates.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def fmt(p, choices=("text", "json", "csv"), default="text"):
        p.add_argument("--format", choices=choices, default=default)

    p = sub.add_parser("compute", help="n, degrees, structure flags, W and mu of a graph")
    _add_input(p)
    fmt(p)
    p.set_defaults(func=cmd_compute)

    p = sub.add_parser("construct", help="build an extremal construction")
    p.add_argument("family", choices=["clique-chain", "bipartite-chain", "polarity", "polarity-mod", "c4-chain"])
    p.add_argument("params", nargs="+", type=int,
                   help="clique-chain/bipartite-chain: n Delta delta; polarity(-mod): q; c4-chain: k ell q")
    p.add_argument("--out", metavar="FILE")
    fmt(p, ("g6", "edges", "json"), "g6")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("bound", help="evaluate a closed-form bound")
    p.add_argument("variant", choices=BOUND_VARIANTS)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--delta", type=int, required=True)
    p.add_argument("--Delta", type=int, required=True)
    fmt(p)
    p.set_defaults(func=cmd_bound)

    p = sub.add_parser("certify", help="run and check a constructive upper-bound argument")
    p.add_argument("variant", choices=CERT_VARIANTS)
    _add_input(p)
    fmt(p, default="json")
    p.set_defaults(func=cmd_certify)

    p = sub.add_parser("verify-small", help="check bounds on every connected graph with n <= n-max")
    p.add_argument("--n-max", type=int, default=7)
    p.add_argument("--variant", action="append", choices=UPPER_VARIANTS)
    p.add_argument("--allow-n8", action="store_true")
    fmt(p)
    p.set_defaults(func=cmd_verify_small)

    p = sub.add_parser("sweep", help="gap report over a parameter grid")
    p.add_argument("--config", required=True, metavar="FILE.json")
    fmt(p, ("csv", "json"), "csv")
    p.set_defaults(func=cmd_sweep)
    return parser


def main(argv: Sequence[str] | None = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        args = build_parser().parse_args(argv)
        return args.func(args, out)
    except CliError as exc:
        err.write(f"error: {exc.kind}: {exc}\n")
        return exc.code
    except BoundViolation as exc:
        err.write(f"error: violation: {exc}\n")
        return EXIT_VIOLATION
    except DisconnectedGraphError as exc:
        err.write(f"error: hypothesis: {exc}\n")
        return EXIT_HYPOTHESIS


def entry() -> None:
    sys.exit(main())
