"""Rule engine that grows a rainbow matching by local moves.

The engine seeds with a greedy pass, then repeatedly applies the first
applicable rule in a fixed priority order until a target size is reached
or nothing fires:

* direct: add an edge whose endpoints are free and whose colour is unused;
* mono: trade a matched edge for a same-coloured free edge plus a
  fresh-coloured pendant at one of the freed endpoints;
* exchange: remove up to ``k`` matched edges and insert ``k + 1``
  replacement edges keeping the matching rainbow;
* vertex reduce: delete one vertex of very high degree, solve the smaller
  target recursively, and extend back through that vertex by pigeonhole.

Every rule either returns a rainbow matching exactly one edge larger or
reports non-applicability, so a trace replays deterministically.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .errors import BudgetExceeded, RecursionBudget
from .graphs import Edge, EdgeColoredGraph, Matching
from .solver import SolveResult, rainbow_matching_at_least

RULE_SEED = "R-seed"
RULE_DIRECT = "R-direct"
RULE_MONO = "R-mono"
RULE_VERTEX_REDUCE = "R-vertex-reduce"


def rule_exchange_name(depth: int) -> str:
    return f"R-exchange-{depth}"


@dataclass(frozen=True)
class RuleStep:
    """One trace entry: which rule fired and the edge delta it applied."""

    rule: str
    removed: tuple[Edge, ...]
    added: tuple[Edge, ...]
    note: str = ""

    def to_json_dict(self) -> dict:
        obj = {
            "rule": self.rule,
            "removed": [list(e) for e in self.removed],
            "added": [list(e) for e in self.added],
        }
        if self.note:
            obj["note"] = self.note
        return obj


def greedy_rainbow(graph: EdgeColoredGraph) -> Matching:
    """Scan edges in canonical order, keeping each vertex- and
    colour-compatible edge."""
    chosen: list[Edge] = []
    used_v: set[int] = set()
    used_c: set[int] = set()
    for u, v, c in graph.edges:
        if u in used_v or v in used_v or c in used_c:
            continue
        chosen.append((u, v, c))
        used_v.add(u)
        used_v.add(v)
        used_c.add(c)
    return Matching(chosen)


def rule_direct(graph: EdgeColoredGraph, matching: Matching) -> Matching | None:
    """First edge (by id) with both endpoints free and an unused colour."""
    used_v = matching.vertices
    used_c = set(matching.colors)
    for e in graph.edges:
        u, v, c = e
        if u not in used_v and v not in used_v and c not in used_c:
            return Matching(matching.edges + (e,))
    return None


def rule_exchange(graph: EdgeColoredGraph, matching: Matching, depth: int = 3,
                  candidate_cap: int | None = None) -> Matching | None:
    """Remove up to ``depth`` matched edges, insert one more than removed.

    Removal subsets are tried smallest first, in index order over the
    matched edges; replacement edges are searched lexicographically by
    edge id.  Returns the first strictly larger rainbow matching found.
    ``candidate_cap`` bounds the replacement-search node count and raises
    :class:`BudgetExceeded` when hit.
    """
    counter = [0]
    result = None
    for d in range(1, depth + 1):
        result = _exchange_exact(graph, matching, d, counter, candidate_cap)
        if result is not None:
            return result
    return None


def _exchange_exact(graph, matching, removals, counter, cap):
    medges = matching.edges
    if removals > len(medges):
        return None
    in_matching = set(medges)
    for removed_idx in combinations(range(len(medges)), removals):
        removed = set(removed_idx)
        keep = [medges[i] for i in range(len(medges)) if i not in removed]
        used_v = {x for e in keep for x in (e[0], e[1])}
        used_c = {e[2] for e in keep}
        candidates = [
            e for e in graph.edges
            if e not in in_matching
            and e[0] not in used_v and e[1] not in used_v and e[2] not in used_c
        ]
        added = _first_disjoint_rainbow(candidates, removals + 1, counter, cap)
        if added is not None:
            return Matching(keep + added)
    return None


def _first_disjoint_rainbow(candidates, need, counter, cap):
    # Lexicographically first subset of `need` mutually compatible edges.
    chosen: list[Edge] = []
    used_v: set[int] = set()
    used_c: set[int] = set()

    def go(start: int) -> bool:
        if len(chosen) == need:
            return True
        if len(candidates) - start < need - len(chosen):
            return False
        for j in range(start, len(candidates)):
            counter[0] += 1
            if cap is not None and counter[0] > cap:
                raise BudgetExceeded(f"exchange candidate cap {cap} hit")
            u, v, c = candidates[j]
            if u in used_v or v in used_v or c in used_c:
                continue
            chosen.append(candidates[j])
            used_v.add(u)
            used_v.add(v)
            used_c.add(c)
            if go(j + 1):
                return True
            used_c.discard(c)
            used_v.discard(v)
            used_v.discard(u)
            chosen.pop()
        return False

    return list(chosen) if go(0) else None


def rule_mono(graph: EdgeColoredGraph, matching: Matching) -> Matching | None:
    """Swap a matched edge for a free edge of the same colour plus a
    fresh-coloured pendant at a freed endpoint.

    Pattern: matched xy of colour i, a free edge uv also coloured i, and
    an edge from x or y to a free vertex w outside {u, v} whose colour is
    absent from the matching.  Nets exactly one extra edge.
    """
    used_v = matching.vertices
    used_c = set(matching.colors)
    for matched in matching.edges:
        x, y, color = matched
        for free_edge in graph.edges:
            u, v, c = free_edge
            if c != color or free_edge == matched:
                continue
            if u in used_v or v in used_v:
                continue
            for z in (x, y):
                for idx in graph.incidence[z]:
                    pendant = graph.edges[idx]
                    w = pendant[1] if pendant[0] == z else pendant[0]
                    if w in used_v or w == u or w == v:
                        continue
                    if pendant[2] in used_c:
                        continue
                    keep = tuple(e for e in matching.edges if e != matched)
                    return Matching(keep + (free_edge, pendant))
    return None


def rule_vertex_reduce(graph: EdgeColoredGraph, target: int,
                       max_exchange_depth: int = 3,
                       candidate_cap: int | None = None,
                       node_budget: int | None = None,
                       recursion_budget: int = 8) -> Matching | None:
    """Reach ``target`` through a vertex of degree above 3*(target - 1).

    Deletes the single highest-degree qualifying vertex (ties broken by
    lowest id), finds a rainbow matching of size ``target - 1`` in the rest
    (engine first, exact search as fallback), then adds a pigeonhole edge
    back at the deleted vertex: with degree above 3*(target - 1), at most
    2*(target - 1) incident edges are blocked by matched vertices and at
    most target - 1 by used colours, so a compatible edge survives whenever
    the smaller matching exists.
    """
    if target < 1:
        return None
    threshold = 3 * (target - 1)
    pivot = None
    for v in range(graph.n):
        d = graph.degree(v)
        if d > threshold and (pivot is None or d > graph.degree(pivot)):
            pivot = v
    if pivot is None:
        return None
    if recursion_budget <= 0:
        raise RecursionBudget("vertex reduction nested too deeply")
    rest = graph.without_vertex(pivot)
    sub = run_engine(rest, target - 1, max_exchange_depth, candidate_cap,
                     node_budget=node_budget,
                     _recursion_budget=recursion_budget - 1).best
    if len(sub) > target - 1:
        sub = Matching(sub.edges[: target - 1])
    elif len(sub) < target - 1:
        exact = rainbow_matching_at_least(rest, target - 1, node_budget)
        if exact is None:
            return None
        sub = exact
    used_v = sub.vertices
    used_c = set(sub.colors)
    for idx in graph.incidence[pivot]:
        e = graph.edges[idx]
        other = e[1] if e[0] == pivot else e[0]
        if other not in used_v and e[2] not in used_c:
            return Matching(sub.edges + (e,))
    return None


def run_engine(graph: EdgeColoredGraph, target: int,
               max_exchange_depth: int = 3,
               candidate_cap: int | None = None,
               node_budget: int | None = None,
               _recursion_budget: int = 8) -> SolveResult:
    """Greedy seed, then rules in priority order until target or no rule
    fires.

    Priority: direct, mono, exchange at depths 1..max_exchange_depth,
    vertex reduce (aimed one past the current size, so every step nets
    exactly +1).  Budget exhaustion is recorded in the trace, never
    raised.  The result is a heuristic: ``optimal`` is always False.
    """
    if target <= 0:
        return SolveResult(Matching(), 0, False, 0,
                           (RuleStep(RULE_SEED, (), ()),))
    current = greedy_rainbow(graph)
    steps = [RuleStep(RULE_SEED, (), current.edges)]
    exchange_counter = [0]
    while len(current) < target:
        improved, rule, note = _next_move(
            graph, current, max_exchange_depth, candidate_cap,
            node_budget, _recursion_budget, exchange_counter)
        if note:
            steps.append(RuleStep(rule, (), (), note=note))
        if improved is None:
            break
        before = set(current.edges)
        after = set(improved.edges)
        steps.append(RuleStep(
            rule,
            removed=tuple(sorted(before - after)),
            added=tuple(sorted(after - before)),
        ))
        current = improved
    return SolveResult(
        best=current,
        size=len(current),
        optimal=False,
        nodes_explored=exchange_counter[0],
        trace=tuple(steps),
    )


def _next_move(graph, current, max_depth, cap, node_budget, recursion_budget,
               counter):
    found = rule_direct(graph, current)
    if found is not None:
        return found, RULE_DIRECT, ""
    found = rule_mono(graph, current)
    if found is not None:
        return found, RULE_MONO, ""
    for depth in range(1, max_depth + 1):
        try:
            found = _exchange_exact(graph, current, depth, counter, cap)
        except BudgetExceeded:
            return None, rule_exchange_name(depth), "candidate cap hit"
        if found is not None:
            return found, rule_exchange_name(depth), ""
    try:
        found = rule_vertex_reduce(graph, len(current) + 1, max_depth, cap,
                                   node_budget, recursion_budget)
    except (RecursionBudget, BudgetExceeded) as exc:
        return None, RULE_VERTEX_REDUCE, str(exc)
    if found is not None:
        return found, RULE_VERTEX_REDUCE, ""
    return None, "", ""


def replay_trace(trace) -> Matching:
    """Re-apply a trace from the empty matching; strict about edge sets."""
    edges: set[Edge] = set()
    for step in trace:
        for e in step.removed:
            if e not in edges:
                raise ValueError(f"trace removes absent edge {e}")
            edges.discard(e)
        for e in step.added:
            if e in edges:
                raise ValueError(f"trace adds duplicate edge {e}")
            edges.add(e)
    return Matching(edges)


def trace_to_json_lines(trace) -> str:
    """One JSON object per line, in application order."""
    import json

    return "\n".join(json.dumps(step.to_json_dict(), sort_keys=True)
                     for step in trace) + ("\n" if trace else "")
