"""Closed-form average-distance bounds over exact rationals."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .gf import prime_power
from .metrics import frac_decimal, frac_str


def epsilon(d: int, delta: int) -> int:
    """Lower bound on the second neighbourhood of a degree-``d`` vertex in a C4-free graph."""
    if d < 1 or delta < 1:
        raise ValueError(f"epsilon needs d, delta >= 1, got d={d}, delta={delta}")
    return d * delta - 2 * (d // 2) + 1


@dataclass(frozen=True)
class BoundParams:
    n: int
    delta: int
    Delta: int

    @property
    def N(self) -> int:
        return self.n - self.Delta + self.delta

    @property
    def eps_delta(self) -> int:
        return epsilon(self.delta, self.delta)

    @property
    def eps_Delta(self) -> int:
        return epsilon(self.Delta, self.delta)

    @property
    def N6(self) -> int:
        return self.n - self.eps_Delta + self.eps_delta

    @property
    def theta_Delta(self) -> int:
        return (self.Delta - 1) * (self.delta + 1) + 1

    @property
    def theta_delta(self) -> int:
        return (self.delta + 2) * (self.delta + 1)

    @property
    def M(self) -> int:
        return self.n - self.theta_Delta + self.theta_delta

    def leading_ratio(self, N: int) -> Fraction:
        return Fraction(N * (N - 1), self.n * (self.n - 1))


@dataclass(frozen=True)
class BoundValue:
    variant: str
    value: Fraction
    hypotheses: tuple[tuple[str, bool], ...]

    @property
    def hypotheses_met(self) -> bool:
        return all(ok for _, ok in self.hypotheses)

    def to_dict(self) -> dict:
        return {
            "variant": self.variant,
            "value": frac_str(self.value),
            "decimal": frac_decimal(self.value),
            "hypotheses": {name: ok for name, ok in self.hypotheses},
            "hypotheses_met": self.hypotheses_met,
        }


def _thm4_lead(p: BoundParams) -> Fraction:
    return p.leading_ratio(p.N) * Fraction(p.n + 2 * p.Delta, p.delta + 1)


def _thm5_lead(p: BoundParams) -> Fraction:
    return Fraction(2, 3) * p.leading_ratio(p.N) * Fraction(p.n + 2 * p.Delta, p.delta)


def _thm6_lead(p: BoundParams) -> Fraction:
    return Fraction(5, 3) * p.leading_ratio(p.N6) * Fraction(p.n + 2 * p.eps_Delta, p.eps_delta)


def _thm63_lead(p: BoundParams) -> Fraction:
    return Fraction(5, 3) * p.leading_ratio(p.M) * Fraction(p.n + 2 * p.theta_Delta, p.theta_delta)


_FORMULAS = {
    "plesnik": lambda p: Fraction(p.n + 1, 3),
    "kouider_winkler": lambda p: Fraction(p.n, p.delta + 1) + 2,
    "thm4_upper": lambda p: _thm4_lead(p) + 4,
    "thm4_lower": lambda p: _thm4_lead(p) - 14,
    "thm5_upper": lambda p: _thm5_lead(p) + 7,
    "thm5_lower": lambda p: _thm5_lead(p) - 8,
    "thm6_upper": lambda p: _thm6_lead(p) + 8,
    "thm63_lower": lambda p: _thm63_lead(p) - 13,
}

VARIANTS = tuple(_FORMULAS)

# graph-class requirement per variant, checked by callers against the graph
GRAPH_CLASS = {
    "thm5_upper": "triangle_free",
    "thm5_lower": "triangle_free",
    "thm6_upper": "c4_free",
    "thm63_lower": "c4_free",
}


def _hypotheses(variant: str, p: BoundParams) -> list[tuple[str, bool]]:
    n, d, D = p.n, p.delta, p.Delta
    hyps = [("1<=delta<=Delta<=n-1", 1 <= d <= D <= n - 1)]
    if variant.startswith("thm"):
        hyps.append(("delta>=3", d >= 3))
    if variant == "thm4_lower":
        hyps.append(("n>=Delta+delta+1", n >= D + d + 1))
        hyps.append(("(delta+1)|(n-Delta)", (n - D) % (d + 1) == 0))
        hyps.append(("Delta>delta", D > d))
    elif variant == "thm5_lower":
        hyps.append(("n>=Delta+3delta", n >= D + 3 * d))
        hyps.append(("(2delta)|(n-Delta-delta)", (n - D - d) % (2 * d) == 0))
        hyps.append(("Delta>delta", D > d))
    elif variant == "thm63_lower":
        hyps.append(("delta+1 prime power", prime_power(d + 1) is not None))
        hyps.append(("(delta+2)|(Delta-1)>0", D - 1 > 0 and (D - 1) % (d + 2) == 0))
        rest = n - p.theta_Delta
        hyps.append(("theta_delta|(n-theta_Delta)>0", rest > 0 and rest % p.theta_delta == 0))
    return hyps


def evaluate_bound(variant: str, p: BoundParams) -> BoundValue:
    """Evaluate a bound; hypotheses are reported, not enforced."""
    try:
        formula = _FORMULAS[variant]
    except KeyError:
        raise ValueError(f"unknown bound variant {variant!r}; choose from {', '.join(VARIANTS)}") from None
    if p.n < 2 or p.delta < 1:
        raise ValueError(f"bound needs n >= 2 and delta >= 1, got n={p.n}, delta={p.delta}")
    return BoundValue(variant, formula(p), tuple(_hypotheses(variant, p)))


def lemma32_bound(N, k: int) -> Fraction:
    """Largest weighted average distance when every weight is at least ``k`` and the total is ``N``."""
    N = Fraction(N)
    if k < 1:
        raise ValueError(f"k must be a positive integer, got {k}")
    if N <= 1:
        raise ValueError(f"N must exceed 1, got {frac_str(N)}")
    if N.denominator != 1 or N.numerator % k:
        raise ValueError(f"N={frac_str(N)} is not a multiple of k={k}")
    return (N - k) / (N - 1) * (N + k) / (3 * k)
