"""Iterated rounding with per-edge discounts (local-ratio peeling).

:func:`find_matching` repeatedly solves the fractional matching LP, picks an
edge whose discounted neighbourhood load leaves room for it, charges its
weight to the neighbours and recurses on the remaining edges. On success the
returned matching ``M`` satisfies ``sum_{f in M} w(f)/g(f) >= w*`` exactly.
If every edge is stuck the outcome carries a certificate instead.
"""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from hypermatch.errors import IndexOutOfRange, InfeasiblePoint
from hypermatch.hypergraph import Hypergraph, WeightedInstance
from hypermatch.rational_lp import _solve, max_weight_basic_fractional_matching, verify_basic


@dataclass(frozen=True)
class PeelStep:
    """One level of the recursion.

    ``action`` is ``"drop"`` for a discarded non-positive edge or
    ``"select"`` for a peeled edge; ``added`` records whether a selected
    edge made it into the final matching.
    """

    action: str
    edge: int
    weight: Fraction
    added: bool = False


@dataclass(frozen=True)
class StuckCertificate:
    """A subgraph ``(V, E')`` with a basic fractional matching stuck on every edge.

    ``x`` and ``slack`` are aligned with ``edges`` (indices into the original
    edge list). ``slack[i] = sum_{f in N(e)} g(f)x(f) - (1 - g(e)x(e)) > 0``.
    """

    edges: tuple[int, ...]
    x: tuple[Fraction, ...]
    slack: tuple[Fraction, ...]


@dataclass(frozen=True)
class Success:
    matching: frozenset[int]
    guarantee: Fraction
    wstar: Fraction
    trace: tuple[PeelStep, ...] = ()


@dataclass(frozen=True)
class Stuck:
    certificate: StuckCertificate
    trace: tuple[PeelStep, ...] = ()


RoundingOutcome = Union[Success, Stuck]


def _load(hypergraph: Hypergraph, g: Sequence[Fraction], x: Sequence[Fraction], e: int) -> Fraction:
    return sum((g[f] * x[f] for f in hypergraph.neighborhood(e)), Fraction(0))


def stuck_slack(hypergraph: Hypergraph, g: Sequence[Fraction], x: Sequence[Fraction], e: int) -> Fraction:
    """Positive exactly when edge ``e`` is stuck."""
    return _load(hypergraph, g, x, e) - (1 - g[e] * x[e])


def is_stuck_edge(hypergraph: Hypergraph, g: Sequence[Fraction], x: Sequence[Fraction], e: int) -> bool:
    return stuck_slack(hypergraph, g, x, e) > 0


def find_unstuck_edge(
    hypergraph: Hypergraph, g: Sequence[Fraction], x: Sequence[Fraction]
) -> int | None:
    """Lowest-index edge with ``sum_{f in N(e)} g(f)x(f) <= 1 - g(e)x(e)``."""
    for e in range(hypergraph.edge_count):
        if not is_stuck_edge(hypergraph, g, x, e):
            return e
    return None


def peel_weights(
    w: Sequence[Fraction], hypergraph: Hypergraph, e: int, g: Sequence[Fraction]
) -> list[Fraction]:
    """``w'(f) = w(f) - w(e) g(f)/g(e)`` on ``N(e)``, unchanged elsewhere."""
    nb = hypergraph.neighborhood(e)
    ratio = Fraction(w[e]) / g[e]
    return [Fraction(wf) - ratio * g[f] if f in nb else Fraction(wf) for f, wf in enumerate(w)]


def find_matching(inst: WeightedInstance, g: Sequence[Fraction]) -> RoundingOutcome:
    """Run the iterated rounding algorithm on ``inst`` with discounts ``g``.

    The recursion is unrolled: the descent records the selected edges and
    the ascent adds each one back when none of its neighbours was taken.
    Non-positive edges are dropped lowest index first, and among selectable
    edges the lowest index is peeled.
    """
    h = inst.hypergraph
    inst.require_nonnegative()
    if len(g) != h.edge_count:
        raise IndexOutOfRange(f"{len(g)} discounts for {h.edge_count} edges")
    g = tuple(Fraction(v) for v in g)
    if any(not 0 < v <= 1 for v in g):
        raise ValueError("discounts must lie in (0, 1]")

    wstar = max_weight_basic_fractional_matching(inst).objective
    w = list(inst.weights)
    alive = list(range(h.edge_count))
    steps: list[PeelStep] = []

    while alive:
        dropped = next((e for e in alive if w[e] <= 0), None)
        if dropped is not None:
            steps.append(PeelStep("drop", dropped, w[dropped]))
            alive.remove(dropped)
            continue

        x_alive, _ = _solve(h.vertex_count, [h.edges[e] for e in alive], [w[e] for e in alive])
        x = {e: xe for e, xe in zip(alive, x_alive)}
        alive_set = set(alive)

        chosen = None
        for e in alive:
            load = sum((g[f] * x[f] for f in h.neighborhood(e) if f in alive_set), Fraction(0))
            if load <= 1 - g[e] * x[e]:
                chosen = e
                break
        if chosen is None:
            return Stuck(_certificate(h, g, x), tuple(steps))

        steps.append(PeelStep("select", chosen, w[chosen]))
        ratio = w[chosen] / g[chosen]
        for f in h.neighborhood(chosen):
            if f in alive_set:
                w[f] -= ratio * g[f]
        alive.remove(chosen)

    matching: set[int] = set()
    used: set[int] = set()
    final = list(steps)
    for pos in range(len(steps) - 1, -1, -1):
        step = steps[pos]
        if step.action != "select":
            continue
        edge = h.edges[step.edge]
        if used.isdisjoint(edge):
            matching.add(step.edge)
            used.update(edge)
            final[pos] = PeelStep("select", step.edge, step.weight, True)

    guarantee = sum((inst.weights[f] / g[f] for f in matching), Fraction(0))
    return Success(frozenset(matching), guarantee, wstar, tuple(final))


def _certificate(h: Hypergraph, g: Sequence[Fraction], x: dict[int, Fraction]) -> StuckCertificate:
    # Zero coordinates contribute nothing to any load, so the restriction to
    # the support is still stuck, still basic on its own subgraph, and has
    # no coordinate equal to 1 (such an edge would have no live neighbour).
    support = sorted(e for e, xe in x.items() if xe > 0)
    sub = h.subgraph(support)
    xs = tuple(x[e] for e in support)
    gs = tuple(g[e] for e in support)
    slack = tuple(stuck_slack(sub, gs, xs, i) for i in range(len(support)))
    assert all(s > 0 for s in slack), "support restriction lost stuckness"
    return StuckCertificate(tuple(support), xs, slack)


def verify_certificate(hypergraph: Hypergraph, g: Sequence[Fraction], cert: StuckCertificate) -> bool:
    """Independent check of a certificate: feasible, basic, reduced and
    strictly stuck on every edge, with the recorded slacks."""
    edges = list(cert.edges)
    if not edges or len(set(edges)) != len(edges):
        return False
    if len(cert.x) != len(edges) or len(cert.slack) != len(edges):
        return False
    if any(not 0 <= e < hypergraph.edge_count for e in edges):
        return False
    sub = hypergraph.subgraph(edges)
    gs = [g[e] for e in edges]
    try:
        if not verify_basic(sub, cert.x):
            return False
    except InfeasiblePoint:
        return False
    if not sub.is_reduced(cert.x):
        return False
    for i in range(len(edges)):
        s = stuck_slack(sub, gs, cert.x, i)
        if s <= 0 or s != cert.slack[i]:
            return False
    return True


def verify_outcome(inst: WeightedInstance, g: Sequence[Fraction], outcome: RoundingOutcome) -> bool:
    """Re-check an outcome from scratch.

    A success must be a matching whose recorded guarantee equals the
    recomputed ``sum w(f)/g(f)``, whose recorded ``w*`` equals a fresh LP
    solve, and with guarantee at least ``w*``. A stuck outcome must carry a
    valid certificate.
    """
    h = inst.hypergraph
    if len(g) != h.edge_count:
        return False
    if isinstance(outcome, Success):
        if any(not 0 <= e < h.edge_count for e in outcome.matching):
            return False
        if not h.is_matching(outcome.matching):
            return False
        guarantee = sum((inst.weights[f] / g[f] for f in outcome.matching), Fraction(0))
        wstar = max_weight_basic_fractional_matching(inst).objective
        return guarantee == outcome.guarantee and wstar == outcome.wstar and guarantee >= wstar
    if isinstance(outcome, Stuck):
        return verify_certificate(h, g, outcome.certificate)
    return False
