"""Exact simplex for the fractional matching LP.

Maximize ``sum w(e) x(e)`` subject to ``sum_{e ∋ v} x(e) <= 1`` for every
vertex and ``0 <= x <= 1``. Every edge is non-empty, so ``x(e) <= 1`` is
implied by any of its vertex rows and is not carried as a separate row; the
feasible region is unchanged.

The tableau is kept fraction-free (integer pivoting): all entries are
integers and the true tableau is the integer tableau divided by the current
pivot determinant. Each update divides exactly. Pivot selection follows
Bland's rule, so the method terminates and is deterministic.
"""

from __future__ import annotations

import math
from collections.abc import Sequence
from dataclasses import dataclass
from fractions import Fraction

from hypermatch.errors import InfeasiblePoint, NotBasic, NotReduced
from hypermatch.hypergraph import Edge, Hypergraph, WeightedInstance

Constraint = tuple[str, int]  # ("vertex", v) | ("lower", e) | ("upper", e)


@dataclass(frozen=True)
class BasicSolution:
    x: tuple[Fraction, ...]
    objective: Fraction
    active_rows: frozenset[Constraint]


def _solve(
    vertex_count: int, edges: Sequence[Edge], weights: Sequence[Fraction]
) -> tuple[list[Fraction], Fraction]:
    m = len(edges)
    if m == 0:
        return [], Fraction(0)
    rows_of = sorted({v for e in edges for v in e})
    row_index = {v: i for i, v in enumerate(rows_of)}
    n = len(rows_of)

    scale = math.lcm(*(Fraction(w).denominator for w in weights))
    cost = [int(Fraction(w) * scale) for w in weights]

    ncols = m + n
    rhs = ncols
    # rows 0..n-1 constraints, row n objective (stored as -c)
    tab: list[list[int]] = []
    for i in range(n):
        row = [0] * (ncols + 1)
        row[m + i] = 1
        row[rhs] = 1
        tab.append(row)
    for j, e in enumerate(edges):
        for v in e:
            tab[row_index[v]][j] = 1
    tab.append([-c for c in cost] + [0] * n + [0])
    obj = tab[n]
    basis = [m + i for i in range(n)]
    det = 1

    while True:
        col = next((j for j in range(ncols) if obj[j] < 0), None)
        if col is None:
            break
        best = None
        for i in range(n):
            a = tab[i][col]
            if a > 0:
                b = tab[i][rhs]
                if best is None:
                    best = i
                    continue
                bb, ba = tab[best][rhs], tab[best][col]
                # compare b/a with bb/ba; ties go to the smaller basic variable
                lhs, rhs_ = b * ba, bb * a
                if lhs < rhs_ or (lhs == rhs_ and basis[i] < basis[best]):
                    best = i
        # the feasible region is bounded, so some row always limits the step
        assert best is not None
        r = best
        prow = tab[r]
        p = prow[col]
        for i in range(n + 1):
            if i == r:
                continue
            row = tab[i]
            f = row[col]
            if f == 0:
                tab[i] = [(a * p) // det for a in row]
            else:
                tab[i] = [(a * p - f * b) // det for a, b in zip(row, prow)]
        obj = tab[n]
        det = p
        basis[r] = col

    x = [Fraction(0)] * m
    for i, var in enumerate(basis):
        if var < m:
            x[var] = Fraction(tab[i][rhs], det)
    objective = Fraction(obj[rhs], det * scale)
    return x, objective


def active_constraints(hypergraph: Hypergraph, x: Sequence[Fraction]) -> frozenset[Constraint]:
    active: set[Constraint] = set()
    for v, load in enumerate(hypergraph.vertex_loads(x)):
        if load == 1:
            active.add(("vertex", v))
    for e, xe in enumerate(x):
        if xe == 0:
            active.add(("lower", e))
        elif xe == 1:
            active.add(("upper", e))
    return frozenset(active)


def max_weight_basic_fractional_matching(inst: WeightedInstance) -> BasicSolution:
    """Return an optimal extreme point of the fractional matching polytope.

    Weights may be any rationals. The result is exact and deterministic.
    """
    h = inst.hypergraph
    x, objective = _solve(h.vertex_count, h.edges, inst.weights)
    xt = tuple(x)
    return BasicSolution(xt, objective, active_constraints(h, xt))


def rational_rank(rows: Sequence[Sequence[Fraction | int]]) -> int:
    """Rank over the rationals by Gaussian elimination."""
    mat = [[Fraction(a) for a in row] for row in rows]
    if not mat:
        return 0
    ncols = len(mat[0])
    rank = 0
    for c in range(ncols):
        pivot = next((i for i in range(rank, len(mat)) if mat[i][c] != 0), None)
        if pivot is None:
            continue
        mat[rank], mat[pivot] = mat[pivot], mat[rank]
        pr = mat[rank]
        for i in range(rank + 1, len(mat)):
            f = mat[i][c]
            if f:
                f = f / pr[c]
                mat[i] = [a - f * b for a, b in zip(mat[i], pr)]
        rank += 1
        if rank == len(mat):
            break
    return rank


def verify_basic(hypergraph: Hypergraph, x: Sequence[Fraction]) -> bool:
    """True iff ``x`` is an extreme point of the fractional matching polytope.

    The active constraints (tight vertex rows and tight bounds) must have
    rank equal to the number of edges. Degenerate points with surplus active
    constraints are accepted. Raises :class:`InfeasiblePoint` if ``x`` is
    not a fractional matching.
    """
    if not hypergraph.is_fractional_matching(x):
        raise InfeasiblePoint("point violates the fractional matching constraints")
    m = hypergraph.edge_count
    if m == 0:
        return True
    rows: list[list[int]] = []
    for c in active_constraints(hypergraph, x):
        kind, idx = c
        row = [0] * m
        if kind == "vertex":
            for e in hypergraph.incidence[idx]:
                row[e] = 1
        else:
            row[idx] = 1
        rows.append(row)
    return rational_rank(rows) == m


def check_L_B_inequality(
    hypergraph: Hypergraph, x: Sequence[Fraction], subset: Sequence[int]
) -> bool:
    """For a reduced basic ``x``: is ``|L|`` at most the number of tight
    vertices covered by ``L``?"""
    if not hypergraph.is_reduced(x):
        raise NotReduced("x has a coordinate at 0 or 1")
    if not verify_basic(hypergraph, x):
        raise NotBasic("x is not an extreme point")
    tight = hypergraph.tight_vertices(x)
    chosen = set(subset)
    covered = {v for e in chosen for v in hypergraph.edges[e] if v in tight}
    return len(chosen) <= len(covered)
