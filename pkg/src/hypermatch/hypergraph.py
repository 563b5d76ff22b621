"""Hypergraphs, matchings and fractional matchings.

Edges are stored as sorted tuples of vertex indices and identified by their
position in the edge list. All values handled here are exact
:class:`fractions.Fraction` instances.
"""

from __future__ import annotations

from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property

from hypermatch.errors import (
    DuplicateEdge,
    EmptyEdge,
    IndexOutOfRange,
    VertexOutOfRange,
)

Edge = tuple[int, ...]


@dataclass(frozen=True)
class Hypergraph:
    """A finite hypergraph on vertices ``0 .. vertex_count - 1``.

    Edges must already be in canonical form (strictly increasing vertex
    tuples); use :func:`build_hypergraph` to canonicalize raw input.
    Isolated vertices are allowed.
    """

    vertex_count: int
    edges: tuple[Edge, ...] = field(default=())

    def __post_init__(self) -> None:
        if self.vertex_count < 0:
            raise VertexOutOfRange("vertex_count must be non-negative")
        seen: set[Edge] = set()
        for i, e in enumerate(self.edges):
            if not e:
                raise EmptyEdge(f"edge {i} is empty")
            if any(a >= b for a, b in zip(e, e[1:])):
                raise ValueError(f"edge {i} is not strictly sorted: {e}")
            if e[0] < 0 or e[-1] >= self.vertex_count:
                raise VertexOutOfRange(f"edge {i} = {e} leaves [0, {self.vertex_count})")
            if e in seen:
                raise DuplicateEdge(f"edge {e} appears twice")
            seen.add(e)

    def __len__(self) -> int:
        return len(self.edges)

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    @property
    def rank(self) -> int:
        return max((len(e) for e in self.edges), default=0)

    @cached_property
    def incidence(self) -> tuple[tuple[int, ...], ...]:
        """``incidence[v]`` lists the edges containing ``v`` (that is, N(v))."""
        inc: list[list[int]] = [[] for _ in range(self.vertex_count)]
        for i, e in enumerate(self.edges):
            for v in e:
                inc[v].append(i)
        return tuple(tuple(row) for row in inc)

    @cached_property
    def _neighbors(self) -> tuple[frozenset[int], ...]:
        out = []
        for i, e in enumerate(self.edges):
            nb: set[int] = set()
            for v in e:
                nb.update(self.incidence[v])
            nb.discard(i)
            out.append(frozenset(nb))
        return tuple(out)

    def _check_edge(self, e: int) -> None:
        if not 0 <= e < len(self.edges):
            raise IndexOutOfRange(f"edge index {e} out of range for {len(self.edges)} edges")

    def edges_of_size(self, k: int) -> list[int]:
        return [i for i, e in enumerate(self.edges) if len(e) == k]

    def vertex_neighborhood(self, v: int) -> tuple[int, ...]:
        if not 0 <= v < self.vertex_count:
            raise VertexOutOfRange(f"vertex {v} out of range")
        return self.incidence[v]

    def neighborhood(self, e: int) -> frozenset[int]:
        """Edges other than ``e`` that share a vertex with it."""
        self._check_edge(e)
        return self._neighbors[e]

    def neighborhood_k(self, e: int, k: int) -> frozenset[int]:
        self._check_edge(e)
        return frozenset(f for f in self._neighbors[e] if len(self.edges[f]) == k)

    def is_matching(self, selected: Iterable[int]) -> bool:
        used: set[int] = set()
        for i in set(selected):
            self._check_edge(i)
            for v in self.edges[i]:
                if v in used:
                    return False
                used.add(v)
        return True

    def vertex_loads(self, x: Sequence[Fraction]) -> list[Fraction]:
        self._check_vector(x)
        return [sum((x[i] for i in row), Fraction(0)) for row in self.incidence]

    def is_fractional_matching(self, x: Sequence[Fraction]) -> bool:
        self._check_vector(x)
        if any(not 0 <= xe <= 1 for xe in x):
            return False
        return all(load <= 1 for load in self.vertex_loads(x))

    def tight_vertices(self, x: Sequence[Fraction]) -> frozenset[int]:
        return frozenset(v for v, load in enumerate(self.vertex_loads(x)) if load == 1)

    def is_reduced(self, x: Sequence[Fraction]) -> bool:
        self._check_vector(x)
        return all(0 < xe < 1 for xe in x)

    def subgraph(self, edge_indices: Iterable[int]) -> Hypergraph:
        """The hypergraph ``(V, E')`` keeping the given edges in the given order."""
        idx = list(edge_indices)
        for i in idx:
            self._check_edge(i)
        return Hypergraph(self.vertex_count, tuple(self.edges[i] for i in idx))

    def _check_vector(self, x: Sequence[Fraction]) -> None:
        if len(x) != len(self.edges):
            raise IndexOutOfRange(f"vector of length {len(x)} for {len(self.edges)} edges")


def build_hypergraph(vertex_count: int, raw_edges: Iterable[Iterable[int]]) -> Hypergraph:
    """Validate raw vertex lists and return a canonical :class:`Hypergraph`.

    Each edge has its vertices sorted and repeated vertices collapsed; edge
    order is preserved. Raises :class:`EmptyEdge`, :class:`DuplicateEdge`
    or :class:`VertexOutOfRange`.
    """
    edges: list[Edge] = []
    for i, raw in enumerate(raw_edges):
        vs = sorted(set(int(v) for v in raw))
        if not vs:
            raise EmptyEdge(f"edge {i} is empty")
        if vs[0] < 0 or vs[-1] >= vertex_count:
            raise VertexOutOfRange(f"edge {i} = {vs} leaves [0, {vertex_count})")
        edges.append(tuple(vs))
    return Hypergraph(vertex_count, tuple(edges))


@dataclass(frozen=True)
class WeightedInstance:
    """A hypergraph with one exact weight per edge.

    Weights may be negative here because the rounding algorithm produces
    negative intermediate weights; entry points that need non-negative
    input call :meth:`require_nonnegative`.
    """

    hypergraph: Hypergraph
    weights: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "weights", tuple(Fraction(w) for w in self.weights))
        if len(self.weights) != len(self.hypergraph.edges):
            raise ValueError(
                f"{len(self.weights)} weights for {len(self.hypergraph.edges)} edges"
            )

    @classmethod
    def unit(cls, hypergraph: Hypergraph) -> WeightedInstance:
        return cls(hypergraph, (Fraction(1),) * len(hypergraph.edges))

    def require_nonnegative(self) -> None:
        for i, w in enumerate(self.weights):
            if w < 0:
                raise ValueError(f"edge {i} has negative weight {w}")

    def value(self, x: Sequence[Fraction]) -> Fraction:
        return sum((w * xe for w, xe in zip(self.weights, x)), Fraction(0))
