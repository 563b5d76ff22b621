"""Exhaustive oracles for small instances.

Polytope vertices are enumerated from active constraint sets rather than by
pivoting. A vertex ``x`` splits its support into line-graph components:
a component that is a single edge must sit at ``x(e) = 1``, and every larger
component carries a *reduced* vertex of its own subgraph (all coordinates
strictly inside (0, 1)). A reduced vertex on edge set ``F`` is the unique
solution of ``A_T x = 1`` for some ``|F|`` linearly independent vertex rows
``T``, so those are found by choosing independent rows.
"""

from __future__ import annotations

import itertools
import math
from collections.abc import Sequence
from fractions import Fraction

import numpy as np

from hypermatch.errors import InstanceTooLarge
from hypermatch.hypergraph import Hypergraph, WeightedInstance
from hypermatch.rational_lp import max_weight_basic_fractional_matching
from hypermatch.rounding import StuckCertificate, stuck_slack

MAX_BRUTE_FORCE_EDGES = 22
MAX_ENUMERATION_EDGES = 10
_SCREEN_LIMIT = 50_000


def brute_force_max_matching(
    inst: WeightedInstance, max_edges: int = MAX_BRUTE_FORCE_EDGES
) -> tuple[frozenset[int], Fraction]:
    """Maximum-weight matching by depth-first search.

    Branches include-before-exclude in edge order and only replaces the
    incumbent on strict improvement, so ties resolve to the
    lexicographically first optimal edge set. Non-positive edges are never
    taken.
    """
    h = inst.hypergraph
    if h.edge_count > max_edges:
        raise InstanceTooLarge(f"{h.edge_count} edges exceeds the cap of {max_edges}")
    order = [e for e in range(h.edge_count) if inst.weights[e] > 0]
    w = inst.weights
    suffix = [Fraction(0)] * (len(order) + 1)
    for i in range(len(order) - 1, -1, -1):
        suffix[i] = suffix[i + 1] + w[order[i]]
    vsets = [frozenset(h.edges[e]) for e in range(h.edge_count)]

    best: list = [Fraction(0), ()]

    def dfs(i: int, used: frozenset[int], chosen: tuple[int, ...], value: Fraction) -> None:
        if value > best[0]:
            best[0], best[1] = value, chosen
        if i == len(order) or value + suffix[i] <= best[0]:
            return
        e = order[i]
        if used.isdisjoint(vsets[e]):
            dfs(i + 1, used | vsets[e], chosen + (e,), value + w[e])
        dfs(i + 1, used, chosen, value)

    dfs(0, frozenset(), (), Fraction(0))
    return frozenset(best[1]), best[0]


def _components(h: Hypergraph, subset: Sequence[int]) -> list[list[int]]:
    """Connected components of the line graph induced on ``subset``."""
    inside = set(subset)
    comps, seen = [], set()
    for s in subset:
        if s in seen:
            continue
        comp, stack = [], [s]
        seen.add(s)
        while stack:
            e = stack.pop()
            comp.append(e)
            for f in h.neighborhood(e):
                if f in inside and f not in seen:
                    seen.add(f)
                    stack.append(f)
        comps.append(sorted(comp))
    return comps


def _add_row(
    basis: list[tuple[int, list[Fraction]]], row: list[Fraction]
) -> list[tuple[int, list[Fraction]]] | None:
    """Insert an augmented row into a reduced row-echelon basis.

    Returns the new basis, or ``None`` if the coefficient part of ``row`` is
    dependent on the rows already present.
    """
    row = list(row)
    for col, b in basis:
        f = row[col]
        if f:
            row = [a - f * c if c else a for a, c in zip(row, b)]
    width = len(row) - 1
    col = next((j for j in range(width) if row[j] != 0), None)
    if col is None:
        return None
    piv = row[col]
    if piv != 1:
        row = [a / piv if a else a for a in row]
    out = []
    for c, b in basis:
        f = b[col]
        out.append((c, [a - f * r if r else a for a, r in zip(b, row)] if f else b))
    out.append((col, row))
    return out


def reduced_vertices(h: Hypergraph, subset: Sequence[int]) -> list[tuple[Fraction, ...]]:
    """Vertices of the subgraph ``(V, subset)`` polytope with every
    coordinate strictly between 0 and 1, aligned with ``subset``."""
    subset = list(subset)
    s = len(subset)
    if s < 2:
        return []
    pos = {e: i for i, e in enumerate(subset)}
    patterns: set[tuple[int, ...]] = set()
    for v in range(h.vertex_count):
        cols = tuple(sorted(pos[e] for e in h.incidence[v] if e in pos))
        if len(cols) >= 2:
            patterns.add(cols)
    rows = sorted(patterns)
    if len(rows) < s:
        return []
    if math.comb(len(rows), s) <= _SCREEN_LIMIT:
        return sorted(_screened_vertices(rows, s))
    return sorted(_exhaustive_vertices(rows, s))


def _feasible_reduced(x: Sequence[Fraction], rows: Sequence[tuple[int, ...]]) -> bool:
    return all(0 < xi < 1 for xi in x) and all(sum(x[c] for c in cols) <= 1 for cols in rows)


def _augmented(cols: tuple[int, ...], s: int) -> list[Fraction]:
    r = [Fraction(0)] * (s + 1)
    for c in cols:
        r[c] = Fraction(1)
    r[s] = Fraction(1)
    return r


def _exhaustive_vertices(rows: Sequence[tuple[int, ...]], s: int) -> set[tuple[Fraction, ...]]:
    aug = [_augmented(cols, s) for cols in rows]
    found: set[tuple[Fraction, ...]] = set()

    def dfs(start: int, basis: list[tuple[int, list[Fraction]]]) -> None:
        if len(basis) == s:
            x = [Fraction(0)] * s
            for col, b in basis:
                x[col] = b[s]
            if _feasible_reduced(x, rows):
                found.add(tuple(x))
            return
        need = s - len(basis)
        for i in range(start, len(rows) - need + 1):
            nb = _add_row(basis, aug[i])
            if nb is not None:
                dfs(i + 1, nb)

    dfs(0, [])
    return found


def _exact_solve(rows: Sequence[tuple[int, ...]], s: int) -> list[Fraction] | None:
    basis: list[tuple[int, list[Fraction]]] = []
    for cols in rows:
        nb = _add_row(basis, _augmented(cols, s))
        if nb is None:
            return None
        basis = nb
    x = [Fraction(0)] * s
    for col, b in basis:
        x[col] = b[s]
    return x


def _screened_vertices(rows: Sequence[tuple[int, ...]], s: int) -> set[tuple[Fraction, ...]]:
    # Floating point only discards row sets; every survivor is re-solved and
    # re-checked exactly. Determinants of 0/1 matrices are integers, so
    # |det| > 1/2 separates singular from nonsingular choices, and solutions
    # have denominators bounded by |det|, far above the tolerance used here.
    a = np.zeros((len(rows), s))
    for i, cols in enumerate(rows):
        a[i, list(cols)] = 1.0
    combos = np.array(list(itertools.combinations(range(len(rows)), s)), dtype=np.intp)
    mats = a[combos]
    keep = np.abs(np.linalg.det(mats)) > 0.5
    combos, mats = combos[keep], mats[keep]
    if len(combos) == 0:
        return set()
    sols = np.linalg.solve(mats, np.ones((len(mats), s, 1)))[..., 0]
    eps = 1e-9
    ok = np.all(sols > eps, axis=1) & np.all(sols < 1 - eps, axis=1)
    ok &= np.all(sols @ a.T <= 1 + eps, axis=1)
    found: set[tuple[Fraction, ...]] = set()
    tried: set[tuple[float, ...]] = set()
    for idx, sol in zip(combos[ok], sols[ok]):
        key = tuple(np.round(sol, 7))
        if key in tried:
            continue
        tried.add(key)
        x = _exact_solve([rows[i] for i in idx], s)
        if x is not None and _feasible_reduced(x, rows):
            found.add(tuple(x))
    return found


def enumerate_polytope_vertices(
    h: Hypergraph, max_edges: int = MAX_ENUMERATION_EDGES
) -> list[tuple[Fraction, ...]]:
    """All extreme points of ``{x in [0,1]^E : every vertex load <= 1}``."""
    m = h.edge_count
    if m > max_edges:
        raise InstanceTooLarge(f"{m} edges exceeds the cap of {max_edges}")
    cache: dict[tuple[int, ...], list[tuple[Fraction, ...]]] = {}
    out: list[tuple[Fraction, ...]] = []
    for size in range(0, m + 1):
        for support in itertools.combinations(range(m), size):
            options: list[list[tuple[tuple[int, ...], tuple[Fraction, ...]]]] = []
            for comp in _components(h, support):
                key = tuple(comp)
                if len(comp) == 1:
                    options.append([(key, (Fraction(1),))])
                    continue
                if key not in cache:
                    cache[key] = reduced_vertices(h, comp)
                if not cache[key]:
                    break
                options.append([(key, y) for y in cache[key]])
            else:
                for combo in itertools.product(*options):
                    x = [Fraction(0)] * m
                    for key, y in combo:
                        for e, ye in zip(key, y):
                            x[e] = ye
                    out.append(tuple(x))
    return out


def _connected(h: Hypergraph, subset: Sequence[int]) -> bool:
    return len(_components(h, subset)) == 1


def search_stuck(
    h: Hypergraph, g: Sequence[Fraction], max_edges: int = MAX_ENUMERATION_EDGES
) -> StuckCertificate | None:
    """First stuck reduced basic fractional matching over all edge subsets.

    Subsets are visited by increasing size, then lexicographically. A stuck
    point on a disconnected subset is stuck on each component, so only
    connected subsets of at least two edges are examined; an edge with no
    neighbour can never be stuck.
    """
    m = h.edge_count
    if m > max_edges:
        raise InstanceTooLarge(f"{m} edges exceeds the cap of {max_edges}")
    for size in range(2, m + 1):
        for subset in itertools.combinations(range(m), size):
            if not _connected(h, subset):
                continue
            sub = h.subgraph(subset)
            gs = [g[e] for e in subset]
            for y in reduced_vertices(h, subset):
                slack = [stuck_slack(sub, gs, y, i) for i in range(size)]
                if all(sl > 0 for sl in slack):
                    return StuckCertificate(tuple(subset), tuple(y), tuple(slack))
    return None


def fks_factor(size: int) -> Fraction:
    """``|e| - 1 + 1/|e|``."""
    return size - 1 + Fraction(1, size)


def fks_primal_value(inst: WeightedInstance) -> tuple[frozenset[int], Fraction]:
    """Best matching under the weights ``(|e| - 1 + 1/|e|) w(e)``."""
    h = inst.hypergraph
    scaled = WeightedInstance(h, tuple(fks_factor(len(e)) * w for e, w in zip(h.edges, inst.weights)))
    return brute_force_max_matching(scaled)


def fks_primal_check(inst: WeightedInstance) -> bool:
    """Does some matching reach ``sum (|e|-1+1/|e|) w(e) >= w*``?"""
    _, value = fks_primal_value(inst)
    return value >= max_weight_basic_fractional_matching(inst).objective
