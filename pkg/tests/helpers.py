"""Shared test helpers."""

from __future__ import annotations

import random
from fractions import Fraction

from hypermatch.errors import Unsatisfiable
from hypermatch.generators import random_hypergraph
from hypermatch.hypergraph import Hypergraph, WeightedInstance, build_hypergraph


def random_suite(count: int, seed: int, size_max: int = 5, n_max: int = 12, m_max: int = 20, exact_rank=None):
    """Deterministic list of random weighted instances.

    ``exact_rank`` regenerates until the rank equals that value.
    """
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        n = rng.randint(max(3, exact_rank or 2), n_max)
        m = rng.randint(1, m_max)
        hi = min(size_max, n)
        try:
            inst = random_hypergraph(n, m, 2, hi, rng.randrange(2**32))
        except Unsatisfiable:
            continue
        if exact_rank is not None and inst.hypergraph.rank != exact_rank:
            continue
        out.append(inst)
    return out


def unit(h: Hypergraph) -> WeightedInstance:
    return WeightedInstance.unit(h)


def triangle() -> Hypergraph:
    return build_hypergraph(3, [[0, 1], [1, 2], [0, 2]])


def single() -> Hypergraph:
    return build_hypergraph(2, [[0, 1]])


def F(a, b=1) -> Fraction:
    return Fraction(a, b)


# criterion number -> (passed, detail); printed in the terminal summary
ACCEPTANCE: dict[int, tuple[bool, str]] = {}


def _solve_square(rows, rhs):
    """Exact Gauss-Jordan on a square system; ``None`` when singular."""
    n = len(rows)
    a = [[Fraction(v) for v in r] + [Fraction(b)] for r, b in zip(rows, rhs)]
    for c in range(n):
        p = next((i for i in range(c, n) if a[i][c] != 0), None)
        if p is None:
            return None
        a[c], a[p] = a[p], a[c]
        piv = a[c][c]
        a[c] = [v / piv for v in a[c]]
        for i in range(n):
            if i != c and a[i][c] != 0:
                f = a[i][c]
                a[i] = [u - f * v for u, v in zip(a[i], a[c])]
    return [a[i][n] for i in range(n)]


def naive_vertices(h: Hypergraph) -> set[tuple[Fraction, ...]]:
    """Polytope vertices by brute force over every ``m``-subset of all
    constraint rows (vertex rows, ``x >= 0`` and ``x <= 1``)."""
    from itertools import combinations

    m = h.edge_count
    rows = []
    for v in range(h.vertex_count):
        rows.append(([int(v in e) for e in h.edges], 1))
    for e in range(m):
        unit_row = [int(i == e) for i in range(m)]
        rows.append((unit_row, 0))
        rows.append((unit_row, 1))
    found = set()
    for pick in combinations(rows, m):
        x = _solve_square([r for r, _ in pick], [b for _, b in pick])
        if x is not None and h.is_fractional_matching(x):
            found.add(tuple(x))
    return found
