"""Deterministic instance generators."""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

from hypermatch.errors import NotPrime, TooLarge, Unsatisfiable
from hypermatch.hypergraph import Hypergraph, WeightedInstance, build_hypergraph

FANO_LINES = ((0, 1, 2), (0, 3, 4), (0, 5, 6), (1, 3, 5), (1, 4, 6), (2, 3, 6), (2, 4, 5))

MAX_DENOMINATOR = 16
MAX_NUMERATOR = 48


def fano() -> Hypergraph:
    """The projective plane of order 2: 7 points, 7 lines of size 3."""
    return Hypergraph(7, FANO_LINES)


def triangle() -> Hypergraph:
    return Hypergraph(3, ((0, 1), (1, 2), (0, 2)))


def path(m: int) -> Hypergraph:
    """``m`` consecutive 2-edges ``{i, i+1}``."""
    return Hypergraph(m + 1 if m else 0, tuple((i, i + 1) for i in range(m)))


def disjoint(m: int, k: int) -> Hypergraph:
    return Hypergraph(m * k, tuple(tuple(range(i * k, (i + 1) * k)) for i in range(m)))


def _is_prime(p: int) -> bool:
    return p >= 2 and all(p % d for d in range(2, math.isqrt(p) + 1))


def projective_plane(p: int) -> Hypergraph:
    """PG(2, p) for a prime ``p <= 13``.

    Points and lines are the 1-dimensional subspaces of GF(p)^3, normalized
    so the first non-zero coordinate is 1; point ``a`` lies on line ``b``
    when ``a . b = 0 (mod p)``.
    """
    if not _is_prime(p):
        raise NotPrime(f"order {p} is not prime")
    if p > 13:
        raise TooLarge(f"order {p} exceeds 13")
    reps = []
    for v in itertools.product(range(p), repeat=3):
        nz = next((c for c in v if c), None)
        if nz == 1:
            reps.append(v)
    index = {v: i for i, v in enumerate(reps)}
    lines = []
    for b in reps:
        lines.append(
            tuple(sorted(index[a] for a in reps if sum(x * y for x, y in zip(a, b)) % p == 0))
        )
    return Hypergraph(len(reps), tuple(lines))


def _random_weight(rng: random.Random) -> Fraction:
    return Fraction(rng.randint(0, MAX_NUMERATOR), rng.randint(1, MAX_DENOMINATOR))


def random_hypergraph(
    n: int, m: int, size_min: int, size_max: int, seed: int
) -> WeightedInstance:
    """``m`` distinct random edges on ``n`` vertices with sizes in a range.

    Sizes are drawn uniformly from ``size_min..size_max``; weights are
    random rationals with denominators at most 16.
    """
    if not 2 <= size_min <= size_max <= 6:
        raise ValueError("edge size range must lie within [2, 6]")
    if size_max > n:
        raise ValueError(f"edge size {size_max} exceeds vertex count {n}")
    capacity = sum(math.comb(n, s) for s in range(size_min, size_max + 1))
    if m > capacity:
        raise Unsatisfiable(f"only {capacity} distinct edges exist, {m} requested")
    rng = random.Random(seed)
    edges: list[tuple[int, ...]] = []
    if 2 * m > capacity:
        pool = [c for s in range(size_min, size_max + 1) for c in itertools.combinations(range(n), s)]
        edges = rng.sample(pool, m)
    else:
        seen: set[tuple[int, ...]] = set()
        while len(edges) < m:
            s = rng.randint(size_min, size_max)
            e = tuple(sorted(rng.sample(range(n), s)))
            if e not in seen:
                seen.add(e)
                edges.append(e)
    weights = tuple(_random_weight(rng) for _ in edges)
    return WeightedInstance(build_hypergraph(n, edges), weights)


def biuniform_random(n: int, m_k: int, m_l: int, k: int, l: int, seed: int) -> WeightedInstance:
    """Exactly ``m_k`` random ``k``-edges and ``m_l`` random ``l``-edges."""
    if not 2 <= k < l <= 6:
        raise ValueError("need 2 <= k < l <= 6")
    if l > n:
        raise ValueError(f"edge size {l} exceeds vertex count {n}")
    for size, count in ((k, m_k), (l, m_l)):
        if count > math.comb(n, size):
            raise Unsatisfiable(f"only {math.comb(n, size)} distinct {size}-edges exist")
    rng = random.Random(seed)
    edges: list[tuple[int, ...]] = []
    for size, count in ((k, m_k), (l, m_l)):
        pool = list(itertools.combinations(range(n), size))
        edges.extend(rng.sample(pool, count))
    weights = tuple(_random_weight(rng) for _ in edges)
    return WeightedInstance(build_hypergraph(n, edges), weights)


@dataclass(frozen=True)
class GenSpec:
    kind: str
    params: dict[str, Any] = field(default_factory=dict)
    seed: int = 0


def generate(spec: GenSpec) -> WeightedInstance:
    """Build the instance described by ``spec``; fixed kinds get unit weights."""
    p = spec.params
    if spec.kind == "fano":
        return WeightedInstance.unit(fano())
    if spec.kind == "triangle":
        return WeightedInstance.unit(triangle())
    if spec.kind == "path":
        return WeightedInstance.unit(path(int(p["m"])))
    if spec.kind == "disjoint":
        return WeightedInstance.unit(disjoint(int(p["m"]), int(p["k"])))
    if spec.kind == "projective_plane":
        return WeightedInstance.unit(projective_plane(int(p["p"])))
    if spec.kind == "random":
        return random_hypergraph(
            int(p["n"]), int(p["m"]), int(p["size_min"]), int(p["size_max"]), spec.seed
        )
    if spec.kind == "biuniform":
        return biuniform_random(
            int(p["n"]), int(p["m_k"]), int(p["m_l"]), int(p["k"]), int(p["l"]), spec.seed
        )
    raise ValueError(f"unknown generator kind {spec.kind!r}")
