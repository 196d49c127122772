"""Exact Wiener index and average distance, plain and vertex-weighted."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from .graph import Graph, GraphError, _int_distance_rows, require_connected


def frac_str(x: Fraction | int) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def frac_decimal(x: Fraction | int) -> str:
    """Six significant digits, for display only."""
    return f"{float(x):.6g}"


def pairs(x: Fraction | int) -> Fraction:
    """``x choose 2`` over the rationals."""
    x = Fraction(x)
    return x * (x - 1) / 2


@dataclass(frozen=True)
class WeightFunction:
    weights: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        if any(w < 0 for w in self.weights):
            raise ValueError("vertex weights must be nonnegative")

    @classmethod
    def of(cls, values: Iterable) -> "WeightFunction":
        return cls(tuple(Fraction(v) for v in values))

    @classmethod
    def constant(cls, n: int, value=1) -> "WeightFunction":
        return cls((Fraction(value),) * n)

    @property
    def total(self) -> Fraction:
        return sum(self.weights, Fraction(0))

    def __len__(self) -> int:
        return len(self.weights)

    def __getitem__(self, v: int) -> Fraction:
        return self.weights[v]

    def support(self) -> list[int]:
        return [v for v, w in enumerate(self.weights) if w]

    def scaled(self, factor) -> "WeightFunction":
        return WeightFunction(tuple(w * Fraction(factor) for w in self.weights))

    def to_dict(self) -> dict[str, str]:
        return {str(v): frac_str(w) for v, w in enumerate(self.weights) if w}


@dataclass(frozen=True)
class MetricReport:
    n: int
    wiener: Fraction
    pair_count: Fraction
    avg_distance: Fraction

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "wiener": frac_str(self.wiener),
            "wiener_decimal": frac_decimal(self.wiener),
            "pair_count": frac_str(self.pair_count),
            "avg_distance": frac_str(self.avg_distance),
            "avg_distance_decimal": frac_decimal(self.avg_distance),
        }


def wiener_index(g: Graph) -> int:
    if g.n < 1:
        raise GraphError("Wiener index needs at least one vertex")
    rows = _int_distance_rows(g)
    return sum(sum(row) for row in rows) // 2


def average_distance(g: Graph) -> Fraction:
    if g.n < 2:
        raise GraphError("average distance needs at least two vertices")
    return Fraction(wiener_index(g)) / pairs(g.n)


def _check_weights(g: Graph, c: WeightFunction) -> None:
    if len(c) != g.n:
        raise GraphError(f"weight vector has length {len(c)}, graph has {g.n} vertices")


def weighted_wiener_from_rows(rows, c: WeightFunction) -> Fraction:
    """``W_c`` from precomputed distance rows (only the support is visited)."""
    support = c.support()
    total = Fraction(0)
    for i, u in enumerate(support):
        row, cu = rows[u], c[u]
        acc = Fraction(0)
        for v in support[i + 1:]:
            acc += c[v] * row[v]
        total += cu * acc
    return total


def weighted_wiener(g: Graph, c: WeightFunction) -> Fraction:
    """Sum over unordered pairs of ``c(u) c(v) d(u, v)``."""
    _check_weights(g, c)
    require_connected(g)
    return weighted_wiener_from_rows(_int_distance_rows(g), c)


def weighted_average_from_rows(rows, c: WeightFunction) -> Fraction:
    total = c.total
    if total <= 1:
        raise GraphError(f"weighted average distance needs total weight > 1, got {frac_str(total)}")
    return weighted_wiener_from_rows(rows, c) / pairs(total)


def weighted_average_distance(g: Graph, c: WeightFunction) -> Fraction:
    _check_weights(g, c)
    if c.total <= 1:
        raise GraphError(f"weighted average distance needs total weight > 1, got {frac_str(c.total)}")
    return weighted_wiener(g, c) / pairs(c.total)


def metric_report(g: Graph, c: WeightFunction | None = None) -> MetricReport:
    if c is None:
        w = Fraction(wiener_index(g))
        return MetricReport(g.n, w, pairs(g.n), w / pairs(g.n) if g.n >= 2 else Fraction(0))
    w = weighted_wiener(g, c)
    return MetricReport(g.n, w, pairs(c.total), weighted_average_distance(g, c))
