"""Exact rainbow-matching search by depth-first branch and bound.

Edges are ordered by endpoint degree sum (descending, ties by edge id) and
the search branches include/exclude on each edge in turn.  A branch is cut
when the matching built so far plus an optimistic completion bound (the
smaller of half the free endpoints ahead and the fresh colours ahead)
cannot beat the incumbent.  The search is deterministic: identical inputs
give identical traces and node counts.  Each solve is single-threaded;
solves on different graphs can run concurrently.
"""

from __future__ import annotations

import sys
from dataclasses import dataclass

from .errors import BudgetExceeded
from .graphs import Edge, EdgeColoredGraph, Matching


@dataclass(frozen=True)
class SearchEvent:
    """One solver milestone: a new incumbent or a budget stop."""

    event: str
    size: int
    node: int

    def to_json_dict(self) -> dict:
        return {"event": self.event, "size": self.size, "node": self.node}


@dataclass(frozen=True)
class SolveResult:
    """Outcome of a solve or an engine run.

    ``optimal`` is True only when an exhaustive search finished within
    budget; the rule engine always reports False.  ``trace`` holds
    :class:`SearchEvent` entries for the solver and rule steps for the
    engine.
    """

    best: Matching
    size: int
    optimal: bool
    nodes_explored: int
    trace: tuple = ()


class _Stop(Exception):
    pass


class _Search:
    """Shared include/exclude search core for the three public entry points."""

    def __init__(self, graph: EdgeColoredGraph, target: int | None = None,
                 node_budget: int | None = None):
        self.edges = graph.edges
        deg = graph.degrees()
        self.order = sorted(
            range(len(self.edges)),
            key=lambda i: (-(deg[self.edges[i][0]] + deg[self.edges[i][1]]), i),
        )
        self.target = target
        self.node_budget = node_budget
        self.nodes = 0
        self.budget_hit = False
        self.best: list[int] = []
        self.current: list[int] = []
        self.used_v: set[int] = set()
        self.used_c: set[int] = set()
        self.events: list[SearchEvent] = []

    def run(self) -> None:
        needed = 2 * len(self.edges) + 100
        if sys.getrecursionlimit() < needed:
            sys.setrecursionlimit(needed)
        try:
            self._visit(0)
        except _Stop:
            pass

    def _visit(self, i: int) -> None:
        if self.node_budget is not None and self.nodes >= self.node_budget:
            self.budget_hit = True
            self.events.append(SearchEvent("budget", len(self.current), self.nodes))
            raise _Stop
        self.nodes += 1
        if len(self.current) > len(self.best):
            self.best = list(self.current)
            self.events.append(SearchEvent("incumbent", len(self.best), self.nodes))
            if self.target is not None and len(self.best) >= self.target:
                raise _Stop
        if i == len(self.order):
            return
        reachable = len(self.current) + self._potential(i)
        if self.target is None:
            if reachable <= len(self.best):
                return
        elif reachable < self.target:
            return
        u, v, c = self.edges[self.order[i]]
        if u not in self.used_v and v not in self.used_v and c not in self.used_c:
            self.current.append(self.order[i])
            self.used_v.add(u)
            self.used_v.add(v)
            self.used_c.add(c)
            self._visit(i + 1)
            self.used_c.discard(c)
            self.used_v.discard(v)
            self.used_v.discard(u)
            self.current.pop()
        self._visit(i + 1)

    def _potential(self, i: int) -> int:
        # Optimistic completion: undecided edges can add at most
        # floor(free endpoints / 2) edges and at most one per fresh colour.
        free: set[int] = set()
        fresh: set[int] = set()
        for j in self.order[i:]:
            u, v, c = self.edges[j]
            if c not in self.used_c:
                fresh.add(c)
            if u not in self.used_v:
                free.add(u)
            if v not in self.used_v:
                free.add(v)
        return min(len(free) // 2, len(fresh))

    def best_matching(self) -> Matching:
        return Matching(self.edges[i] for i in self.best)


def max_rainbow_matching(graph: EdgeColoredGraph,
                         node_budget: int | None = None) -> SolveResult:
    """Maximum rainbow matching of a properly edge-coloured graph.

    With a node budget the search may stop early; the result then carries
    the incumbent with ``optimal=False``.
    """
    search = _Search(graph, node_budget=node_budget)
    search.run()
    return SolveResult(
        best=search.best_matching(),
        size=len(search.best),
        optimal=not search.budget_hit,
        nodes_explored=search.nodes,
        trace=tuple(search.events),
    )


def rainbow_matching_at_least(graph: EdgeColoredGraph, k: int,
                              node_budget: int | None = None) -> Matching | None:
    """First rainbow matching of size >= k, or None when none exists.

    The search exits as soon as a witness appears.  ``k == 0`` returns the
    empty matching.  Exhausting the node budget before resolution raises
    :class:`BudgetExceeded`.
    """
    result = solve_decision(graph, k, node_budget)
    if result.size >= k:
        return result.best
    if not result.optimal:
        raise BudgetExceeded(f"node budget {node_budget} hit before deciding size {k}")
    return None


def solve_decision(graph: EdgeColoredGraph, k: int,
                   node_budget: int | None = None) -> SolveResult:
    """Decision-form solve with node telemetry.

    ``optimal`` means the question was resolved: either ``size >= k``
    (witness found) or the whole tree was exhausted below k.
    """
    if k <= 0:
        return SolveResult(Matching(), 0, True, 0, ())
    search = _Search(graph, target=k, node_budget=node_budget)
    search.run()
    resolved = len(search.best) >= k or not search.budget_hit
    return SolveResult(
        best=search.best_matching(),
        size=len(search.best),
        optimal=resolved,
        nodes_explored=search.nodes,
        trace=tuple(search.events),
    )


def max_matching(graph: EdgeColoredGraph) -> Matching:
    """Maximum (uncoloured) matching, via a fresh distinct colour per edge."""
    recolored = EdgeColoredGraph(
        graph.n, [(u, v, i + 1) for i, (u, v, _c) in enumerate(graph.edges)]
    )
    found = max_rainbow_matching(recolored).best
    return Matching((u, v, graph.color_of(u, v)) for u, v, _c in found.edges)


def count_rainbow_matchings(graph: EdgeColoredGraph, size: int,
                            node_budget: int | None = None) -> int:
    """Number of rainbow matchings with exactly ``size`` edges.

    Exhaustive include/exclude count with a capacity cut; used as the
    graph-side cross-check for transversal counting.
    """
    if size < 0:
        return 0
    if size == 0:
        return 1
    edges = graph.edges
    m = len(edges)
    needed = 2 * m + 100
    if sys.getrecursionlimit() < needed:
        sys.setrecursionlimit(needed)
    used_v: set[int] = set()
    used_c: set[int] = set()
    state = {"count": 0, "nodes": 0}

    def potential(i: int) -> int:
        free: set[int] = set()
        fresh: set[int] = set()
        for j in range(i, m):
            u, v, c = edges[j]
            if c not in used_c:
                fresh.add(c)
            if u not in used_v:
                free.add(u)
            if v not in used_v:
                free.add(v)
        return min(len(free) // 2, len(fresh))

    def visit(i: int, picked: int) -> None:
        state["nodes"] += 1
        if node_budget is not None and state["nodes"] > node_budget:
            raise BudgetExceeded(f"node budget {node_budget} hit while counting")
        if picked == size:
            state["count"] += 1
            return
        if i == m or picked + potential(i) < size:
            return
        u, v, c = edges[i]
        if u not in used_v and v not in used_v and c not in used_c:
            used_v.add(u)
            used_v.add(v)
            used_c.add(c)
            visit(i + 1, picked + 1)
            used_c.discard(c)
            used_v.discard(v)
            used_v.discard(u)
        visit(i + 1, picked)

    visit(0, 0)
    return state["count"]
