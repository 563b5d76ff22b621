"""Randomized rounding by exponential clocks on the line graph.

Every edge with positive rate draws ``X_e ~ Exp(rate(e))`` and joins the
matching when its clock rings before the clock of every intersecting edge.
The draw for sample ``j`` of edge ``e`` is the ``j``-th 64-bit output of a
Philox counter-based stream keyed by ``(seed, e)``, mapped through the
inverse CDF. Equal clock values are broken by edge index.
"""

from __future__ import annotations

import math
from collections.abc import Sequence
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from hypermatch.errors import AllRatesZero, IndexOutOfRange
from hypermatch.hypergraph import Hypergraph

_MASK64 = (1 << 64) - 1


def exact_inclusion_probability(hypergraph: Hypergraph, rates: Sequence[Fraction], e: int) -> Fraction:
    """``rate(e) / (rate(e) + sum of rates over N(e))``, or 0 for a zero rate."""
    nb = hypergraph.neighborhood(e)
    if len(rates) != hypergraph.edge_count:
        raise IndexOutOfRange("one rate per edge required")
    lam = Fraction(rates[e])
    if lam <= 0:
        return Fraction(0)
    return lam / (lam + sum((Fraction(rates[f]) for f in nb), Fraction(0)))


def inclusion_lower_bound(size: int, xe: Fraction) -> Fraction:
    """``x / (|e| - (|e| - 1) x)``."""
    return xe / (size - (size - 1) * xe)


def _uniforms(seed: int, edge: int, count: int) -> np.ndarray:
    key = ((edge & _MASK64) << 64) | (seed & _MASK64)
    raw = np.random.Philox(key=key).random_raw(count)
    # top 53 bits, centred in their cell so the result lies strictly in (0, 1)
    return ((raw >> np.uint64(11)).astype(np.float64) + 0.5) * 2.0**-53


def clock_values(rates: Sequence[Fraction], seed: int, count: int) -> np.ndarray:
    """``count x m`` array of clock readings; zero-rate edges read ``inf``."""
    out = np.full((count, len(rates)), np.inf)
    for e, lam in enumerate(rates):
        if lam > 0:
            out[:, e] = -np.log(_uniforms(seed, e, count)) / float(lam)
    return out


def sample_matchings(
    hypergraph: Hypergraph, rates: Sequence[Fraction], seed: int, count: int
) -> np.ndarray:
    """Boolean ``count x m`` membership matrix of ``count`` independent samples."""
    if len(rates) != hypergraph.edge_count:
        raise IndexOutOfRange("one rate per edge required")
    if any(r < 0 for r in rates):
        raise ValueError("rates must be non-negative")
    if not any(r > 0 for r in rates):
        raise AllRatesZero("at least one rate must be positive")
    clocks = clock_values(rates, seed, count)
    chosen = np.zeros(clocks.shape, dtype=bool)
    for e, lam in enumerate(rates):
        if lam <= 0:
            continue
        mine = clocks[:, e]
        win = np.ones(count, dtype=bool)
        for f in hypergraph.neighborhood(e):
            if rates[f] <= 0:
                continue
            other = clocks[:, f]
            win &= (mine < other) | ((mine == other) & (e < f))
        chosen[:, e] = win
    return chosen


def sample_matching(hypergraph: Hypergraph, rates: Sequence[Fraction], seed: int) -> frozenset[int]:
    row = sample_matchings(hypergraph, rates, seed, 1)[0]
    return frozenset(int(i) for i in np.flatnonzero(row))


@dataclass(frozen=True)
class EdgeReport:
    edge: int
    x: Fraction
    exact: Fraction
    bound: Fraction
    bound_holds: bool
    frequency: float
    z: float


def _zscore(freq: float, p: Fraction, samples: int) -> float:
    sd = math.sqrt(float(p * (1 - p)) / samples)
    diff = freq - float(p)
    if sd == 0:
        return 0.0 if diff == 0 else math.copysign(math.inf, diff)
    return diff / sd


def check_inclusion_bound(
    hypergraph: Hypergraph, x: Sequence[Fraction], samples: int, seed: int
) -> list[EdgeReport]:
    """Compare exact, bound and empirical inclusion rates with ``rate = x``.

    Reports one row per edge with ``x(e) > 0``.
    """
    if not hypergraph.is_fractional_matching(x):
        raise ValueError("x is not a fractional matching")
    chosen = sample_matchings(hypergraph, x, seed, samples)
    freq = chosen.mean(axis=0)
    reports = []
    for e, xe in enumerate(x):
        if xe <= 0:
            continue
        exact = exact_inclusion_probability(hypergraph, x, e)
        bound = inclusion_lower_bound(len(hypergraph.edges[e]), Fraction(xe))
        f = float(freq[e])
        reports.append(EdgeReport(e, Fraction(xe), exact, bound, exact >= bound, f, _zscore(f, exact, samples)))
    return reports


@dataclass(frozen=True)
class SizeWeightedReport:
    mean: float
    sigma: float
    target: Fraction

    @property
    def holds(self) -> bool:
        return self.mean >= float(self.target) - 4 * self.sigma


def check_size_weighted_value(
    hypergraph: Hypergraph,
    x: Sequence[Fraction],
    weights: Sequence[Fraction],
    samples: int,
    seed: int,
) -> SizeWeightedReport:
    """Sample mean of ``sum_{e in M} |e| w(e)`` against ``w(x)``, with ``rate = x``.

    Only the expectation is claimed to dominate ``w(x)``; ``holds`` allows
    a 4-sigma margin.
    """
    chosen = sample_matchings(hypergraph, x, seed, samples)
    coef = np.array([len(e) * float(w) for e, w in zip(hypergraph.edges, weights)])
    values = chosen.astype(np.float64) @ coef
    sigma = float(values.std(ddof=1) / math.sqrt(samples)) if samples > 1 else math.inf
    target = sum((Fraction(w) * Fraction(xe) for w, xe in zip(weights, x)), Fraction(0))
    return SizeWeightedReport(float(values.mean()), sigma, target)
