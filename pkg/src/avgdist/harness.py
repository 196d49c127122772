"""Batch verification, exhaustive small-graph checks and gap sweeps."""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Iterable, Iterator, Sequence

import numpy as np

from .bounds import GRAPH_CLASS, BoundParams, BoundValue, evaluate_bound
from .constructions import ConstructionError, bipartite_chain, c4_chain, clique_chain
from .enumeration import _check_n, connected_graph_table, graph_from_mask
from .generators import infeasibility, random_bipartite_with_degrees, random_graph_with_degrees
from .graph import Graph, degree_stats, is_connected, structural_predicates
from .io import to_graph6
from .metrics import average_distance, frac_decimal, frac_str, pairs
from .pipeline import HypothesisError, certify
from .rng import SplitMix64

# bounds that every qualifying graph must satisfy; the *_lower variants are
# existence statements about particular constructions and only enter sweeps
UPPER_VARIANTS = ("plesnik", "kouider_winkler", "thm4_upper", "thm5_upper", "thm6_upper")

CSV_COLUMNS = ("family", "n", "delta", "Delta", "mu_exact", "mu_decimal", "bound_variant",
               "bound_exact", "gap_exact", "cert_status", "graph6")

FAMILIES = ("clique_chain", "bipartite_chain", "c4_chain", "random")


class BoundViolation(AssertionError):
    """A hypothesis-satisfied inequality failed; carries a reproducer."""

    def __init__(self, variant: str, graph6: str, seed: int | None, detail: str) -> None:
        self.variant = variant
        self.graph6 = graph6
        self.seed = seed
        self.detail = detail
        super().__init__(f"{variant} violated: {detail}; reproducer graph6={graph6} seed={seed}")


# -- batch verification --------------------------------------------------

@dataclass(frozen=True)
class BatchItem:
    graph: Graph
    source: str = ""
    seed: int | None = None


@dataclass
class VerificationRow:
    source: str
    n: int
    delta: int
    Delta: int
    connected: bool
    triangle_free: bool
    c4_free: bool
    mu: Fraction
    bounds: dict[str, BoundValue] = field(default_factory=dict)
    certificates: dict[str, str] = field(default_factory=dict)

    @property
    def gaps(self) -> dict[str, Fraction]:
        return {v: b.value - self.mu for v, b in self.bounds.items()}

    def to_dict(self) -> dict:
        return {
            "source": self.source,
            "n": self.n,
            "delta": self.delta,
            "Delta": self.Delta,
            "connected": self.connected,
            "triangle_free": self.triangle_free,
            "c4_free": self.c4_free,
            "mu": frac_str(self.mu),
            "mu_decimal": frac_decimal(self.mu),
            "bounds": {v: frac_str(b.value) for v, b in self.bounds.items()},
            "gaps": {v: frac_str(x) for v, x in self.gaps.items()},
            "certificates": dict(self.certificates),
        }


def _is_path(g: Graph) -> bool:
    return g.edge_count == g.n - 1 and max(g.degrees()) <= 2 and is_connected(g)


def applicable(variant: str, p: BoundParams, triangle_free: bool, c4_free: bool) -> BoundValue | None:
    """The bound value if its hypotheses and graph class hold, else None."""
    b = evaluate_bound(variant, p)
    cls = GRAPH_CLASS.get(variant)
    if cls == "triangle_free" and not triangle_free or cls == "c4_free" and not c4_free:
        return None
    return b if b.hypotheses_met else None


def verify_batch(graphs: Iterable[Graph | BatchItem], variants: Sequence[str],
                 certify_variants: Sequence[str] = ()) -> list[VerificationRow]:
    """Evaluate ``variants`` on every graph and stop at the first violation.

    Rows come back in input order.  A failed certificate check counts as a
    violation too; a certificate whose hypotheses do not hold is recorded as
    ``"n/a: reason"``.
    """
    for v in variants:
        if v not in UPPER_VARIANTS:
            raise ValueError(f"verify_batch checks upper bounds only ({', '.join(UPPER_VARIANTS)}), got {v!r}")
    rows = []
    for i, item in enumerate(graphs):
        if isinstance(item, Graph):
            item = BatchItem(item, source=f"#{i}")
        rows.append(_verify_one(item, variants, certify_variants))
    return rows


def _verify_one(item: BatchItem, variants, certify_variants) -> VerificationRow:
    g = item.graph
    if not is_connected(g) or g.n < 2:
        raise ValueError(f"{item.source}: verification needs a connected graph on at least two vertices")
    delta, Delta, _ = degree_stats(g)
    tri, c4 = structural_predicates(g)
    row = VerificationRow(item.source, g.n, delta, Delta, True, tri, c4, average_distance(g))
    p = BoundParams(g.n, delta, Delta)
    for variant in variants:
        b = applicable(variant, p, tri, c4)
        if b is None:
            continue
        row.bounds[variant] = b
        if row.mu > b.value:
            raise BoundViolation(variant, to_graph6(g), item.seed,
                                 f"mu={frac_str(row.mu)} > {frac_str(b.value)}")
        if variant == "plesnik" and (row.mu == b.value) != _is_path(g):
            raise BoundViolation(variant, to_graph6(g), item.seed,
                                 f"equality mu={frac_str(row.mu)} does not match path status")
    for variant in certify_variants:
        try:
            cert = certify(g, variant)
        except HypothesisError as exc:
            row.certificates[variant] = f"n/a: {exc}"
            continue
        if not cert.ok:
            names = ",".join(c.name for c in cert.failed())
            raise BoundViolation(variant, to_graph6(g), item.seed, f"certificate checks failed: {names}")
        row.certificates[variant] = "ok"
    return row


# -- exhaustive small graphs ---------------------------------------------

@dataclass
class SmallReport:
    n_max: int
    graphs: dict[int, int] = field(default_factory=dict)
    checked: dict[str, int] = field(default_factory=dict)
    plesnik_equalities: int = 0
    paths: int = 0

    def to_dict(self) -> dict:
        return {
            "n_max": self.n_max,
            "connected_graphs": {str(n): c for n, c in self.graphs.items()},
            "applicable_checks": dict(self.checked),
            "plesnik_equalities": self.plesnik_equalities,
            "paths": self.paths,
            "violations": 0,
        }


def verify_small(n_max: int = 7, variants: Sequence[str] = ("plesnik", "kouider_winkler"),
                 allow_n8: bool = False) -> SmallReport:
    """Check upper bounds over every labelled connected graph with ``2 <= n <= n_max``.

    Comparisons are integer-exact: ``W * den <= num * C(n,2)`` for a bound
    ``num/den``.  Raises :class:`BoundViolation` on the first failure.
    """
    for v in variants:
        if v not in UPPER_VARIANTS:
            raise ValueError(f"unknown upper-bound variant {v!r}")
    _check_n(n_max, allow_n8)
    report = SmallReport(n_max, checked={v: 0 for v in variants})
    for n in range(2, n_max + 1):
        t = connected_graph_table(n, allow_n8=allow_n8)
        report.graphs[n] = len(t["mask"])
        scale = int(pairs(n))
        is_path = (t["edges"] == n - 1) & (t["max_degree"] <= 2)
        report.paths += int(is_path.sum())
        groups = np.unique(np.stack([t["min_degree"], t["max_degree"]]), axis=1)
        for d, D in groups.T.tolist():
            sel = (t["min_degree"] == d) & (t["max_degree"] == D)
            p = BoundParams(n, d, D)
            for variant in variants:
                b = evaluate_bound(variant, p)
                if not b.hypotheses_met:
                    continue
                mask = sel.copy()
                cls = GRAPH_CLASS.get(variant)
                if cls:
                    mask &= t[cls]
                lhs = t["wiener"][mask] * b.value.denominator
                rhs = b.value.numerator * scale
                report.checked[variant] += int(mask.sum())
                bad = np.nonzero(lhs > rhs)[0]
                if bad.size:
                    g = graph_from_mask(n, int(t["mask"][mask][bad[0]]))
                    raise BoundViolation(variant, to_graph6(g), None,
                                         f"W={int(t['wiener'][mask][bad[0]])} exceeds {frac_str(b.value)}*C({n},2)")
                if variant == "plesnik":
                    eq = lhs == rhs
                    report.plesnik_equalities += int(eq.sum())
                    wrong = np.nonzero(eq != is_path[mask])[0]
                    if wrong.size:
                        g = graph_from_mask(n, int(t["mask"][mask][wrong[0]]))
                        raise BoundViolation(variant, to_graph6(g), None, "equality does not match path status")
    return report


# -- random streams ------------------------------------------------------

def random_graph_stream(count: int, seed: int, n_min: int = 8, n_max: int = 40,
                        delta_max: int = 5, bipartite: bool = False) -> Iterator[BatchItem]:
    """``count`` random graphs with ``delta >= 3``; parameters and per-graph seeds come from ``seed``."""
    rng = SplitMix64(seed)
    made = 0
    while made < count:
        n = rng.randint(n_min, n_max)
        top = n // 2 if bipartite else n - 1
        if top < 3:
            continue
        d = rng.randint(3, min(delta_max, top))
        D = rng.randint(d, (n + 1) // 2 if bipartite else n - 1)
        if infeasibility(n, d, D, bipartite):
            continue
        gseed = rng.next_u64()
        make = random_bipartite_with_degrees if bipartite else random_graph_with_degrees
        yield BatchItem(make(n, d, D, gseed), source=f"random({n},{d},{D})", seed=gseed)
        made += 1


# -- sweeps --------------------------------------------------------------

@dataclass(frozen=True)
class SweepConfig:
    """Parameter grid for one family.

    ``grid`` keys: ``n`` (list) or ``n_max`` (int), ``Delta``, ``delta`` for
    the chain and random families; ``k``, ``ell``, ``q`` for ``c4_chain``;
    ``count`` (graphs per point) for ``random``.
    """

    family: str
    grid: dict
    seed: int = 0
    output: str | None = None
    json_output: str | None = None

    @classmethod
    def from_dict(cls, d: dict) -> "SweepConfig":
        if not isinstance(d, dict):
            raise ValueError("sweep config must be a JSON object")
        unknown = set(d) - {"family", "grid", "seed", "output", "json_output"}
        if unknown:
            raise ValueError(f"unknown sweep config keys: {', '.join(sorted(unknown))}")
        if d.get("family") not in FAMILIES:
            raise ValueError(f"family must be one of {', '.join(FAMILIES)}")
        grid = d.get("grid")
        if not isinstance(grid, dict):
            raise ValueError("grid must be an object")
        need = ("k", "ell", "q") if d["family"] == "c4_chain" else ("Delta", "delta")
        for key in need:
            vals = grid.get(key)
            if not (isinstance(vals, list) and vals and all(isinstance(x, int) for x in vals)):
                raise ValueError(f"grid.{key} must be a non-empty list of integers")
        if d["family"] != "c4_chain":
            has_list = isinstance(grid.get("n"), list) and all(isinstance(x, int) for x in grid["n"])
            if has_list == isinstance(grid.get("n_max"), int):
                raise ValueError("grid needs exactly one of n (list of integers) or n_max (integer)")
        seed = d.get("seed", 0)
        if not isinstance(seed, int) or seed < 0:
            raise ValueError("seed must be a non-negative integer")
        return cls(d["family"], grid, seed, d.get("output"), d.get("json_output"))

    @classmethod
    def load(cls, path: str | Path) -> "SweepConfig":
        return cls.from_dict(json.loads(Path(path).read_text()))


@dataclass(frozen=True)
class SweepRow:
    family: str
    n: int
    delta: int
    Delta: int
    mu: Fraction | None
    bound_variant: str
    bound: Fraction | None
    cert_status: str
    graph6: str

    @property
    def gap(self) -> Fraction | None:
        return None if self.mu is None or self.bound is None else self.bound - self.mu

    def to_dict(self) -> dict:
        def fmt(x):
            return "" if x is None else frac_str(x)

        return {
            "family": self.family,
            "n": self.n,
            "delta": self.delta,
            "Delta": self.Delta,
            "mu_exact": fmt(self.mu),
            "mu_decimal": "" if self.mu is None else frac_decimal(self.mu),
            "bound_variant": self.bound_variant,
            "bound_exact": fmt(self.bound),
            "gap_exact": fmt(self.gap),
            "cert_status": self.cert_status,
            "graph6": self.graph6,
        }


_FAMILY_SPEC = {
    "clique_chain": (clique_chain, "thm4", ("thm4_lower", "thm4_upper")),
    "bipartite_chain": (bipartite_chain, "thm5", ("thm5_lower", "thm5_upper")),
}


def _chain_points(grid: dict, family: str) -> list[tuple[int, int, int]]:
    points = []
    for D in grid["Delta"]:
        for d in grid["delta"]:
            if "n" in grid:
                points.extend((n, D, d) for n in grid["n"])
                continue
            # n_max lists only the admissible orders
            step, base = (d + 1, D + d + 1) if family == "clique_chain" else (2 * d, D + 3 * d)
            points.extend((n, D, d) for n in range(base, grid["n_max"] + 1, step))
    return points


def _cert_status(g: Graph, variant: str) -> str:
    try:
        cert = certify(g, variant)
    except HypothesisError as exc:
        return f"n/a: {exc}"
    if cert.ok:
        return f"{variant} ok"
    return f"{variant} failed: " + ",".join(c.name for c in cert.failed())


def _rows_for_graph(family: str, g: Graph, variant: str, bounds: list[tuple[str, BoundParams]]) -> list[SweepRow]:
    delta, Delta, _ = degree_stats(g)
    mu = average_distance(g)
    status = _cert_status(g, variant)
    g6 = to_graph6(g)
    return [SweepRow(family, g.n, delta, Delta, mu, name, evaluate_bound(name, p).value, status, g6)
            for name, p in bounds]


def _skip(family: str, n: int, delta: int, Delta: int, reason: str) -> SweepRow:
    return SweepRow(family, n, delta, Delta, None, "", None, f"skipped: {reason}", "")


def sweep(config: SweepConfig) -> list[SweepRow]:
    """Rows in grid order; infeasible points become ``skipped`` rows.

    When ``config.output`` / ``config.json_output`` are set the CSV / JSON
    reports are written there.
    """
    fam = config.family
    rows: list[SweepRow] = []
    if fam in _FAMILY_SPEC:
        build, variant, names = _FAMILY_SPEC[fam]
        for n, D, d in _chain_points(config.grid, fam):
            try:
                g, _ = build(n, D, d)
            except ConstructionError as exc:
                rows.append(_skip(fam, n, d, D, str(exc)))
                continue
            rows.extend(_rows_for_graph(fam, g, variant, [(x, BoundParams(n, d, D)) for x in names]))
    elif fam == "c4_chain":
        for k in config.grid["k"]:
            for ell in config.grid["ell"]:
                for q in config.grid["q"]:
                    try:
                        g, _ = c4_chain(k, ell, q)
                    except ConstructionError as exc:
                        rows.append(_skip(fam, (k + ell - 1) * (q * q + q) + 1, q - 1, k * (q + 1) + 1, str(exc)))
                        continue
                    delta, Delta, _ = degree_stats(g)
                    theory = BoundParams(g.n, q - 1, k * (q + 1) + 1)
                    rows.extend(_rows_for_graph(fam, g, "thm6", [
                        ("thm63_lower", theory), ("thm6_upper", BoundParams(g.n, delta, Delta))]))
    else:
        rows = _random_rows(config)
    if config.output:
        Path(config.output).write_text(rows_to_csv(rows))
    if config.json_output:
        Path(config.json_output).write_text(rows_to_json(rows, config))
    return rows


def _random_rows(config: SweepConfig) -> list[SweepRow]:
    rng = SplitMix64(config.seed)
    count = config.grid.get("count", 1)
    fam = "random"
    rows = []
    for n, D, d in _random_points(config.grid):
        reason = infeasibility(n, d, D, bipartite=False)
        if reason:
            rows.append(_skip(fam, n, d, D, reason))
            continue
        for _ in range(count):
            g = random_graph_with_degrees(n, d, D, rng.next_u64())
            p = BoundParams(n, d, D)
            rows.extend(_rows_for_graph(fam, g, "thm4", [("kouider_winkler", p), ("thm4_upper", p)]))
    return rows


def _random_points(grid: dict) -> list[tuple[int, int, int]]:
    return [(n, D, d) for D in grid["Delta"] for d in grid["delta"]
            for n in (grid["n"] if "n" in grid else range(D + 1, grid["n_max"] + 1))]


def rows_to_csv(rows: Sequence[SweepRow]) -> str:
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=CSV_COLUMNS, lineterminator="\n")
    w.writeheader()
    for r in rows:
        w.writerow(r.to_dict())
    return buf.getvalue()


def rows_to_json(rows: Sequence[SweepRow], config: SweepConfig | None = None) -> str:
    doc = {"columns": list(CSV_COLUMNS), "rows": [r.to_dict() for r in rows]}
    if config is not None:
        doc["config"] = {"family": config.family, "grid": config.grid, "seed": config.seed}
    return json.dumps(doc, indent=2) + "\n"
