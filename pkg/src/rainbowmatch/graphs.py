"""Edge-coloured graphs, matchings, and colour statistics.

Vertices are dense integer ids ``0..n-1``.  Edges are ``(u, v, colour)``
triples with ``u < v`` and positive integer colours.  Graphs are immutable
after construction; every function in this module is pure, so values can be
shared freely between concurrent workers.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction

from .errors import DuplicateEdge, ImproperColoring, LoopEdge, UnknownEdge

Edge = tuple[int, int, int]


class EdgeColoredGraph:
    """Simple graph carrying a proper edge colouring.

    Construction validates simplicity (no loops, no repeated vertex pair)
    and properness (edges sharing a vertex have distinct colours); invalid
    input raises :class:`LoopEdge`, :class:`DuplicateEdge` or
    :class:`ImproperColoring`.  Input edge order never matters: edges are
    normalised to ``u < v`` and stored sorted, so equal graphs compare and
    serialise identically.
    """

    __slots__ = ("n", "edges", "incidence", "_color_by_pair")

    def __init__(self, n: int, edges) -> None:
        if n < 0:
            raise ValueError("vertex count must be non-negative")
        normalised: list[Edge] = []
        for u, v, color in edges:
            if u == v:
                raise LoopEdge(f"loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) outside vertex range 0..{n - 1}")
            if color < 1:
                raise ValueError(f"colour must be a positive integer, got {color}")
            if u > v:
                u, v = v, u
            normalised.append((int(u), int(v), int(color)))
        normalised.sort()
        by_pair: dict[tuple[int, int], int] = {}
        for u, v, color in normalised:
            if (u, v) in by_pair:
                raise DuplicateEdge(f"vertex pair ({u}, {v}) appears more than once")
            by_pair[(u, v)] = color
        incidence: list[list[int]] = [[] for _ in range(n)]
        for idx, (u, v, _color) in enumerate(normalised):
            incidence[u].append(idx)
            incidence[v].append(idx)
        for idxs in incidence:
            seen: dict[int, Edge] = {}
            for idx in idxs:
                edge = normalised[idx]
                clash = seen.get(edge[2])
                if clash is not None:
                    raise ImproperColoring(clash, edge)
                seen[edge[2]] = edge
        self.n = n
        self.edges: tuple[Edge, ...] = tuple(normalised)
        self.incidence: tuple[tuple[int, ...], ...] = tuple(tuple(ix) for ix in incidence)
        self._color_by_pair = by_pair

    def degree(self, v: int) -> int:
        return len(self.incidence[v])

    def degrees(self) -> tuple[int, ...]:
        return tuple(len(ix) for ix in self.incidence)

    @property
    def colors(self) -> frozenset[int]:
        return frozenset(e[2] for e in self.edges)

    def color_of(self, u: int, v: int) -> int | None:
        """Colour of the edge joining u and v, or None if absent."""
        if u > v:
            u, v = v, u
        return self._color_by_pair.get((u, v))

    def has_edge(self, u: int, v: int, color: int | None = None) -> bool:
        found = self.color_of(u, v)
        if found is None:
            return False
        return color is None or found == color

    def without_vertex(self, v: int) -> "EdgeColoredGraph":
        """Copy with every edge at v removed (vertex ids are preserved)."""
        return EdgeColoredGraph(self.n, [e for e in self.edges if v not in (e[0], e[1])])

    def __eq__(self, other) -> bool:
        if not isinstance(other, EdgeColoredGraph):
            return NotImplemented
        return self.n == other.n and self.edges == other.edges

    def __hash__(self) -> int:
        return hash((self.n, self.edges))

    def __repr__(self) -> str:
        return f"EdgeColoredGraph(n={self.n}, m={len(self.edges)})"


def build_graph(n: int, edges) -> EdgeColoredGraph:
    """Validate and build an :class:`EdgeColoredGraph` from raw triples."""
    return EdgeColoredGraph(n, edges)


class Matching:
    """An edge set meant to be pairwise vertex-disjoint.

    The class itself stores any edge tuple collection (sorted, canonical);
    use :func:`is_rainbow_matching` to test disjointness and colour
    distinctness against a host graph.
    """

    __slots__ = ("edges",)

    def __init__(self, edges=()) -> None:
        self.edges: tuple[Edge, ...] = tuple(sorted(tuple(e) for e in edges))

    @property
    def vertices(self) -> frozenset[int]:
        return frozenset(v for e in self.edges for v in (e[0], e[1]))

    @property
    def colors(self) -> tuple[int, ...]:
        return tuple(e[2] for e in self.edges)

    def is_vertex_disjoint(self) -> bool:
        seen: set[int] = set()
        for u, v, _c in self.edges:
            if u in seen or v in seen:
                return False
            seen.add(u)
            seen.add(v)
        return True

    def has_distinct_colors(self) -> bool:
        cols = self.colors
        return len(set(cols)) == len(cols)

    def __len__(self) -> int:
        return len(self.edges)

    def __iter__(self):
        return iter(self.edges)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Matching):
            return NotImplemented
        return self.edges == other.edges

    def __hash__(self) -> int:
        return hash(self.edges)

    def __repr__(self) -> str:
        return f"Matching({list(self.edges)!r})"


@dataclass(frozen=True)
class ColorProfile:
    """Per-colour class sizes plus the largest class size."""

    class_sizes: dict[int, int]
    max_class_size: int


def min_degree(graph: EdgeColoredGraph) -> int:
    if graph.n == 0:
        return 0
    return min(len(ix) for ix in graph.incidence)


def max_degree(graph: EdgeColoredGraph) -> int:
    if graph.n == 0:
        return 0
    return max(len(ix) for ix in graph.incidence)


def color_profile(graph: EdgeColoredGraph) -> ColorProfile:
    sizes = Counter(e[2] for e in graph.edges)
    biggest = max(sizes.values()) if sizes else 0
    return ColorProfile(dict(sizes), biggest)


def color_classes(graph: EdgeColoredGraph) -> dict[int, tuple[Edge, ...]]:
    """Edges grouped by colour.  Properness makes each class a matching."""
    classes: dict[int, list[Edge]] = {}
    for e in graph.edges:
        classes.setdefault(e[2], []).append(e)
    return {c: tuple(es) for c, es in classes.items()}


def is_rainbow_matching(graph: EdgeColoredGraph, matching: Matching) -> bool:
    """True iff the edges are vertex-disjoint with pairwise distinct colours.

    Every edge must exist in the host graph with the stated colour,
    otherwise :class:`UnknownEdge` is raised.  The empty matching is a
    rainbow matching.
    """
    for u, v, c in matching.edges:
        if not graph.has_edge(u, v, c):
            raise UnknownEdge(f"edge ({u}, {v}, {c}) is not in the graph")
    return matching.is_vertex_disjoint() and matching.has_distinct_colors()


def bound_n(delta: int) -> int:
    """Smallest order at which minimum degree ``delta`` forces a rainbow
    matching of size ``delta``: the ceiling of (9*delta - 5) / 2."""
    if delta < 1:
        raise ValueError("delta must be at least 1")
    return (9 * delta - 4) // 2


def diemunsch_bound(delta: int) -> int:
    """Older published order threshold, kept for comparison tables.

    Evaluates floor(13d/2 - 23/2 + 41/(8d)) + 1 exactly over rationals.
    """
    if delta < 1:
        raise ValueError("delta must be at least 1")
    value = Fraction(13 * delta, 2) - Fraction(23, 2) + Fraction(41, 8 * delta)
    return math.floor(value) + 1
