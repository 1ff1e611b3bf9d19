"""Seeded instance generators.

Every generator is a pure function of its parameters and seed, so equal
calls reproduce identical objects and shards can derive their own seeds
independently.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .errors import InfeasibleDegree, OrderTooLarge
from .graphs import EdgeColoredGraph, build_graph
from .latin import LatinSquare


@dataclass(frozen=True)
class SimpleGraph:
    """Uncoloured simple graph: edge pairs normalised to u < v, sorted."""

    n: int
    edges: tuple[tuple[int, int], ...]

    @staticmethod
    def from_pairs(n: int, pairs) -> "SimpleGraph":
        return SimpleGraph(n, tuple(sorted({(min(u, v), max(u, v)) for u, v in pairs})))


def random_graph_min_degree(n: int, delta: int, seed: int,
                            extra_edge_prob: float = 0.0) -> SimpleGraph:
    """Random simple graph on n vertices with minimum degree >= delta.

    Each vertex proposes ``delta`` distinct neighbours; vertices still
    deficient afterwards are repaired by joining them to their
    lowest-degree non-neighbours.  Each remaining pair is then added
    independently with probability ``extra_edge_prob``.  ``delta >= n``
    raises :class:`InfeasibleDegree`; n == delta + 1 forces the complete
    graph.
    """
    if delta < 0:
        raise ValueError("minimum degree must be non-negative")
    if delta >= n:
        raise InfeasibleDegree(f"minimum degree {delta} impossible on {n} vertices")
    rng = random.Random(seed)
    edges: set[tuple[int, int]] = set()
    adj: list[set[int]] = [set() for _ in range(n)]

    def add(u: int, v: int) -> None:
        if u > v:
            u, v = v, u
        if (u, v) not in edges:
            edges.add((u, v))
            adj[u].add(v)
            adj[v].add(u)

    others = list(range(n))
    for v in range(n):
        pool = others[:v] + others[v + 1:]
        for w in rng.sample(pool, delta):
            add(v, w)
    while True:
        deficient = [v for v in range(n) if len(adj[v]) < delta]
        if not deficient:
            break
        v = min(deficient, key=lambda x: (len(adj[x]), x))
        candidates = [w for w in range(n) if w != v and w not in adj[v]]
        w = min(candidates, key=lambda x: (len(adj[x]), x))
        add(v, w)
    if extra_edge_prob > 0.0:
        for u in range(n):
            for v in range(u + 1, n):
                if v not in adj[u] and rng.random() < extra_edge_prob:
                    add(u, v)
    return SimpleGraph(n, tuple(sorted(edges)))


def greedy_proper_coloring(graph: SimpleGraph, seed: int) -> EdgeColoredGraph:
    """Proper edge colouring: seeded random edge order, least free colour.

    Each edge sees at most 2*(max degree - 1) occupied colours, so the
    palette never exceeds 2*max_degree - 1.
    """
    rng = random.Random(seed)
    order = list(range(len(graph.edges)))
    rng.shuffle(order)
    at_vertex: dict[int, set[int]] = {}
    colored = {}
    for idx in order:
        u, v = graph.edges[idx]
        used = at_vertex.setdefault(u, set()) | at_vertex.setdefault(v, set())
        color = 1
        while color in used:
            color += 1
        colored[(u, v)] = color
        at_vertex[u].add(color)
        at_vertex[v].add(color)
    return build_graph(graph.n, [(u, v, colored[(u, v)]) for u, v in graph.edges])


def one_factorization(k: int) -> EdgeColoredGraph:
    """K_{2k} coloured by a round-robin one-factorisation.

    2k - 1 colours, each class a perfect matching; minimum degree 2k - 1.
    """
    if k < 1:
        raise ValueError("k must be positive")
    m = 2 * k - 1
    edges = []
    for rnd in range(m):
        color = rnd + 1
        edges.append((m, rnd, color))
        for i in range(1, k):
            edges.append(((rnd + i) % m, (rnd - i) % m, color))
    return build_graph(2 * k, edges)


def random_latin(n: int, seed: int) -> LatinSquare:
    """Uniform-ish random Latin square by randomised backtracking.

    Cells fill row-major; candidate symbols are shuffled per cell with the
    seeded generator.  Orders above 9 raise :class:`OrderTooLarge`.
    """
    if n < 1:
        raise ValueError("order must be positive")
    if n > 9:
        raise OrderTooLarge(f"order {n} exceeds backtracking cap 9")
    rng = random.Random(seed)
    grid = [[0] * n for _ in range(n)]
    row_used = [set() for _ in range(n)]
    col_used = [set() for _ in range(n)]

    def fill(pos: int) -> bool:
        if pos == n * n:
            return True
        r, c = divmod(pos, n)
        options = [s for s in range(1, n + 1)
                   if s not in row_used[r] and s not in col_used[c]]
        rng.shuffle(options)
        for s in options:
            grid[r][c] = s
            row_used[r].add(s)
            col_used[c].add(s)
            if fill(pos + 1):
                return True
            col_used[c].discard(s)
            row_used[r].discard(s)
            grid[r][c] = 0
        return False

    fill(0)
    return LatinSquare(grid)
