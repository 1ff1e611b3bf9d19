"""Structural audit of stuck matching states and counting-bound certification.

Given a graph whose rule engine stalled one short of a target size, the
audit measures the structure that blocks further growth.  With a stuck
rainbow matching M of size delta - 1 and a largest monochromatic matching
whose colour is unused by M:

* ``uncovered`` is the vertex set missed by M;
* a *good* edge has a colour unused by M and an endpoint uncovered;
* a matched vertex is *good* when at least 7 good edges meet it, which
  orients its pair and extends the uncovered side by its partner;
* a *nice* edge has a colour outside the non-good pairs' colours and an
  endpoint in the extended uncovered set; *nice* vertices are defined
  analogously among the remaining pairs;
* among the leftover pairs, the *mono-touched* ones send an edge of the
  monochromatic colour into the uncovered set.

The audit then evaluates a battery of inequalities between those counts.
``certify_counting_bound`` closes the loop numerically: over every
admissible count tuple, the same inequalities force the host order below
the rainbow-matching threshold of :func:`rainbowmatch.graphs.bound_n`.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .engine import (
    rule_direct,
    rule_exchange,
    rule_mono,
    rule_vertex_reduce,
    run_engine,
)
from .errors import CapUnsafe, InvalidState, NotStuck, UnknownEdge
from .graphs import (
    Edge,
    EdgeColoredGraph,
    Matching,
    color_classes,
    is_rainbow_matching,
    max_degree,
    min_degree,
)

GOOD_EDGE_THRESHOLD = 7   # incident good/nice edges that qualify a vertex
DICHOTOMY_THRESHOLD = 3   # this many at one endpoint forbids any at the other


@dataclass(frozen=True)
class ClaimCheck:
    """Verdict for one audited structural statement."""

    name: str
    holds: bool
    witness: tuple = ()
    note: str = ""

    def to_json_dict(self) -> dict:
        return {
            "name": self.name,
            "holds": self.holds,
            "witness": _jsonable(self.witness),
            "note": self.note,
        }


@dataclass
class MatchedPair:
    """One matched edge with its audit role.

    ``kind`` is one of good, nice, mono-touched, plain.  ``x`` is the
    qualifying endpoint when the pair is oriented, otherwise the lower id.
    """

    x: int
    y: int
    color: int
    kind: str = "plain"
    oriented: bool = False
    good_at_x: int = 0
    good_at_y: int = 0
    nice_at_x: int = 0
    nice_at_y: int = 0
    index: int = 0

    def to_json_dict(self) -> dict:
        return {
            "index": self.index,
            "x": self.x,
            "y": self.y,
            "color": self.color,
            "kind": self.kind,
            "oriented": self.oriented,
            "good_at_x": self.good_at_x,
            "good_at_y": self.good_at_y,
            "nice_at_x": self.nice_at_x,
            "nice_at_y": self.nice_at_y,
        }


@dataclass
class AuditReport:
    """Counts, labelled pairs and check verdicts for one stuck state."""

    delta: int
    n: int
    matching: Matching
    mono: Matching
    mono_color: int | None
    max_class_size: int
    uncovered: frozenset[int]
    extended_uncovered: frozenset[int] = frozenset()
    pairs: list[MatchedPair] = field(default_factory=list)
    good_edges: tuple[Edge, ...] = ()
    nice_edges: tuple[Edge, ...] = ()
    good_pair_count: int = 0
    nice_pair_count: int = 0
    mono_touched_count: int = 0
    checks: list[ClaimCheck] = field(default_factory=list)

    def check(self, name: str) -> ClaimCheck | None:
        for c in self.checks:
            if c.name == name:
                return c
        return None

    def add_check(self, name, holds, witness=(), note="") -> None:
        self.checks.append(ClaimCheck(name, bool(holds), tuple(witness), note))

    def to_json_dict(self) -> dict:
        return {
            "delta": self.delta,
            "n": self.n,
            "matching": [list(e) for e in self.matching.edges],
            "mono": [list(e) for e in self.mono.edges],
            "mono_color": self.mono_color,
            "max_class_size": self.max_class_size,
            "uncovered": sorted(self.uncovered),
            "extended_uncovered": sorted(self.extended_uncovered),
            "pairs": [p.to_json_dict() for p in self.pairs],
            "good_edges": [list(e) for e in self.good_edges],
            "nice_edges": [list(e) for e in self.nice_edges],
            "good_pair_count": self.good_pair_count,
            "nice_pair_count": self.nice_pair_count,
            "mono_touched_count": self.mono_touched_count,
            "checks": [c.to_json_dict() for c in self.checks],
        }


def _jsonable(value):
    if isinstance(value, (tuple, list)):
        return [_jsonable(v) for v in value]
    if isinstance(value, frozenset):
        return sorted(value)
    if isinstance(value, Fraction):
        return str(value)
    return value


def compute_good_structure(graph: EdgeColoredGraph, matching: Matching,
                           mono: Matching, delta: int | None = None) -> AuditReport:
    """First audit stage: uncovered set, good edges, good pairs.

    ``matching`` must be rainbow with exactly ``delta - 1`` edges (delta
    defaults to its size plus one); ``mono`` must be a monochromatic
    matching whose colour the rainbow matching does not use.  Violations
    raise :class:`InvalidState`.  A good edge lying entirely inside the
    uncovered set is not an error: it is recorded as a failed
    ``matching-maximality`` check with the offending edges as witness.
    """
    if not is_rainbow_matching(graph, matching):
        raise InvalidState("the matching must be a rainbow matching of the graph")
    if delta is None:
        delta = len(matching) + 1
    elif len(matching) != delta - 1:
        raise InvalidState(
            f"matching has {len(matching)} edges, expected delta - 1 = {delta - 1}")
    matched_colors = set(matching.colors)
    mono_color = None
    if len(mono) > 0:
        mono_colors = set(mono.colors)
        if len(mono_colors) != 1:
            raise InvalidState("the comparison matching must be monochromatic")
        mono_color = next(iter(mono_colors))
        if mono_color in matched_colors:
            raise InvalidState("the monochromatic colour must be unused by the matching")
        if not mono.is_vertex_disjoint():
            raise InvalidState("the monochromatic edge set must be a matching")
        for u, v, c in mono.edges:
            if not graph.has_edge(u, v, c):
                raise UnknownEdge(f"edge ({u}, {v}, {c}) is not in the graph")

    covered = matching.vertices
    uncovered = frozenset(range(graph.n)) - covered
    good_edges = tuple(
        e for e in graph.edges
        if e[2] not in matched_colors and (e[0] in uncovered or e[1] in uncovered)
    )
    report = AuditReport(
        delta=delta,
        n=graph.n,
        matching=matching,
        mono=mono,
        mono_color=mono_color,
        max_class_size=len(mono),
        uncovered=uncovered,
    )

    inside = tuple(e for e in good_edges
                   if e[0] in uncovered and e[1] in uncovered)
    report.add_check(
        "matching-maximality", not inside, inside,
        note="every good edge must meet a matched vertex; a failure means a direct extension exists",
    )

    good_at: dict[int, int] = {v: 0 for v in covered}
    for e in good_edges:
        for v in (e[0], e[1]):
            if v in covered:
                good_at[v] += 1

    dichotomy_bad = []
    partners = []
    for u, v, c in matching.edges:
        gu, gv = good_at[u], good_at[v]
        pair = MatchedPair(x=u, y=v, color=c, good_at_x=gu, good_at_y=gv)
        if max(gu, gv) >= GOOD_EDGE_THRESHOLD:
            pair.kind = "good"
            if gv > gu:
                pair.x, pair.y = v, u
                pair.good_at_x, pair.good_at_y = gv, gu
            pair.oriented = (gu >= GOOD_EDGE_THRESHOLD) != (gv >= GOOD_EDGE_THRESHOLD)
            partners.append(pair.y)
        if (gu >= DICHOTOMY_THRESHOLD and gv >= 1) or (gv >= DICHOTOMY_THRESHOLD and gu >= 1):
            dichotomy_bad.append((u, v, c))
        report.pairs.append(pair)
    report.good_pair_count = sum(1 for p in report.pairs if p.kind == "good")
    report.good_edges = good_edges
    report.extended_uncovered = uncovered | frozenset(partners)
    report.add_check(
        "good-pair-dichotomy", not dichotomy_bad, tuple(dichotomy_bad),
        note=f"{DICHOTOMY_THRESHOLD} good edges at one endpoint forbid any at the partner; "
             "a failure means a one-for-two exchange exists",
    )
    return report


def compute_nice_structure(graph: EdgeColoredGraph, report: AuditReport) -> AuditReport:
    """Second stage: nice edges and nice pairs over the extended set.

    With no good pair the extended set equals the uncovered set, nice
    coincides with good and no nice pair can appear.
    """
    excluded = {p.color for p in report.pairs if p.kind != "good"}
    extended = report.extended_uncovered
    nice_edges = tuple(
        e for e in graph.edges
        if e[2] not in excluded and (e[0] in extended or e[1] in extended)
    )
    report.nice_edges = nice_edges

    good_set = set(report.good_edges)
    not_nice = tuple(e for e in good_set if e not in set(nice_edges))
    report.add_check(
        "good-nice-inclusion", not not_nice, not_nice,
        note="every good edge is nice by construction",
    )
    inside = tuple(e for e in nice_edges if e[0] in extended and e[1] in extended)
    report.add_check(
        "nice-separation", not inside, inside,
        note="nice edges must leave the extended uncovered set",
    )

    covered = report.matching.vertices
    nice_at: dict[int, int] = {v: 0 for v in covered}
    for e in nice_edges:
        for v in (e[0], e[1]):
            if v in covered:
                nice_at[v] += 1
    dichotomy_bad = []
    for pair in report.pairs:
        pair.nice_at_x = nice_at[pair.x]
        pair.nice_at_y = nice_at[pair.y]
        if pair.kind == "good":
            continue
        nx, ny = pair.nice_at_x, pair.nice_at_y
        if max(nx, ny) >= GOOD_EDGE_THRESHOLD:
            pair.kind = "nice"
            if ny > nx:
                pair.x, pair.y = pair.y, pair.x
                pair.good_at_x, pair.good_at_y = pair.good_at_y, pair.good_at_x
                pair.nice_at_x, pair.nice_at_y = ny, nx
            pair.oriented = (nx >= GOOD_EDGE_THRESHOLD) != (ny >= GOOD_EDGE_THRESHOLD)
        if (nx >= DICHOTOMY_THRESHOLD and ny >= 1) or (ny >= DICHOTOMY_THRESHOLD and nx >= 1):
            dichotomy_bad.append((pair.x, pair.y, pair.color))
    report.nice_pair_count = sum(1 for p in report.pairs if p.kind == "nice")
    report.add_check(
        "nice-pair-dichotomy", not dichotomy_bad, tuple(dichotomy_bad),
        note="same dichotomy as good pairs, over nice edges and the remaining pairs; "
             "a failure means a deeper exchange exists",
    )
    return report


def compute_t(graph: EdgeColoredGraph, report: AuditReport) -> AuditReport:
    """Third stage: mono-touched pairs and the count bounds tying the
    monochromatic class size to the pair counts."""
    delta = report.delta
    r = report.good_pair_count
    s = report.nice_pair_count
    a = report.max_class_size
    if report.mono_color is not None:
        uncovered = report.uncovered
        for pair in report.pairs:
            if pair.kind != "plain":
                continue
            for z in (pair.x, pair.y):
                hit = False
                for idx in graph.incidence[z]:
                    e = graph.edges[idx]
                    w = e[1] if e[0] == z else e[0]
                    if e[2] == report.mono_color and w in uncovered:
                        hit = True
                        break
                if hit:
                    pair.kind = "mono-touched"
                    break
    t = sum(1 for p in report.pairs if p.kind == "mono-touched")
    report.mono_touched_count = t

    # Lower bound is half-integer; compare at twice the scale, which is the
    # same as rounding the bound up to the next integer.
    lower_ok = 2 * t >= 2 * (a - delta + 1) - (r + s)
    upper_ok = r + s + t <= delta - 1
    lb = Fraction(2 * (a - delta + 1) - (r + s), 2)
    report.add_check(
        "touched-count-bounds", lower_ok and upper_ok,
        note=f"touched={t}, lower bound {lb}, and good+nice+touched <= {delta - 1}",
    )

    rank = {"good": 0, "nice": 1, "mono-touched": 2, "plain": 3}
    report.pairs.sort(key=lambda p: rank[p.kind])
    for i, pair in enumerate(report.pairs, start=1):
        pair.index = i
    return report


def check_claims(graph: EdgeColoredGraph, report: AuditReport) -> AuditReport:
    """Final stage: colour-absence, count caps and the order inequality."""
    delta = report.delta
    n = report.n
    r = report.good_pair_count
    s = report.nice_pair_count
    t = report.mono_touched_count
    a = report.max_class_size
    extended = report.extended_uncovered
    uncovered = report.uncovered

    cap = 3 * (delta - 1)
    heavy = tuple((v, graph.degree(v)) for v in range(n) if graph.degree(v) > cap)
    report.add_check(
        "degree-cap", not heavy, heavy,
        note=f"max degree {max_degree(graph)} vs cap {cap}; conditional: "
             "a failure only means the vertex-reduction move applies",
    )

    good_colors = {p.color for p in report.pairs if p.kind == "good"}
    nice_colors = {p.color for p in report.pairs if p.kind == "nice"}
    inside_edges = [e for e in graph.edges if e[0] in extended and e[1] in extended]
    bad_good = tuple(e for e in inside_edges if e[2] in good_colors)
    report.add_check(
        "good-color-absence", not bad_good, bad_good,
        note="good pair colours may not appear inside the extended uncovered set",
    )
    bad_nice = tuple(e for e in inside_edges if e[2] in good_colors | nice_colors)
    report.add_check(
        "nice-color-absence", not bad_nice, bad_nice,
        note="good and nice pair colours may not appear inside the extended uncovered set",
    )

    nice_cap = (3 * delta - 9 + s) * r + 6 * (delta - 1)
    report.add_check(
        "nice-edge-cap", len(report.nice_edges) <= nice_cap,
        ((len(report.nice_edges), nice_cap),),
        note=f"{len(report.nice_edges)} nice edges vs cap {nice_cap}",
    )

    multiplicity_bad = []
    for pair in report.pairs:
        if pair.kind != "mono-touched":
            continue
        inside_same = [e for e in graph.edges
                       if e[2] == pair.color
                       and e[0] in uncovered and e[1] in uncovered]
        if len(inside_same) > 1:
            multiplicity_bad.append((pair.color, tuple(inside_same)))
    report.add_check(
        "mono-color-multiplicity", not multiplicity_bad, tuple(multiplicity_bad),
        note="a mono-touched pair colour fits at most one edge inside the uncovered set",
    )

    lhs = delta * n
    rhs = ((3 * delta - 10 - r) * r - (a - 2) * t
           + 2 * (delta + 3) * (delta - 1)
           + (a - 1) * (2 * delta - 2 - 2 * r - s))
    report.add_check(
        "order-inequality", lhs <= rhs,
        note=f"delta*n = {lhs} vs structural bound {rhs}",
    )

    report.add_check(
        "pair-count-slack", 5 * r + 3 * s < 2 * (delta + 1),
        note=f"5*good + 3*nice = {5 * r + 3 * s} vs {2 * (delta + 1)}; diagnostic",
    )
    return report


def audit_state(graph: EdgeColoredGraph, matching: Matching, mono: Matching,
                delta: int | None = None) -> AuditReport:
    """Run all four audit stages on an explicit state."""
    report = compute_good_structure(graph, matching, mono, delta)
    compute_nice_structure(graph, report)
    compute_t(graph, report)
    return check_claims(graph, report)


def pick_mono_class(graph: EdgeColoredGraph, matching: Matching) -> Matching:
    """Largest colour class whose colour the matching does not use
    (ties: smallest colour).  Properness makes every class a matching."""
    used = set(matching.colors)
    best: tuple[int, int] | None = None
    classes = color_classes(graph)
    for color, edges in classes.items():
        if color in used:
            continue
        key = (-len(edges), color)
        if best is None or key < best:
            best = key
    if best is None:
        return Matching()
    return Matching(classes[best[1]])


def audit_stuck_state(graph: EdgeColoredGraph, target: int | None = None,
                      max_exchange_depth: int = 3,
                      candidate_cap: int | None = None,
                      node_budget: int | None = None):
    """Drive the engine toward ``target`` (default: the minimum degree) and
    audit the stuck state.  Returns ``(report, engine_result)``; raises
    :class:`NotStuck` when the engine reaches the target."""
    if target is None:
        target = min_degree(graph)
    if target < 1:
        raise ValueError("target must be at least 1")
    result = run_engine(graph, target, max_exchange_depth, candidate_cap,
                        node_budget=node_budget)
    if result.size >= target:
        raise NotStuck(f"engine reached size {result.size}, target {target}")
    mono = pick_mono_class(graph, result.best)
    report = audit_state(graph, result.best, mono)
    return report, result


def applicable_rules(graph: EdgeColoredGraph, matching: Matching,
                     target: int | None = None,
                     max_exchange_depth: int = 5) -> list[str]:
    """Names of the engine rules that fire on this state; audit helper."""
    names = []
    if rule_direct(graph, matching) is not None:
        names.append("direct")
    if rule_mono(graph, matching) is not None:
        names.append("mono")
    if rule_exchange(graph, matching, max_exchange_depth) is not None:
        names.append("exchange")
    goal = target if target is not None else len(matching) + 1
    if rule_vertex_reduce(graph, goal, max_exchange_depth) is not None:
        names.append("vertex-reduce")
    return names


@dataclass(frozen=True)
class CertResult:
    """Outcome of the exhaustive counting-bound certification for one delta."""

    delta: int
    holds: bool
    worst_tuple: tuple  # (good pairs, nice pairs, class size, touched as Fraction)
    worst_n: Fraction
    margin: Fraction
    forms_agree: bool
    tuples_checked: int
    a_cap: int


def certify_counting_bound(delta: int, a_cap: int | None = None) -> CertResult:
    """Certify that every admissible count tuple keeps the order below the
    rainbow threshold (9*delta - 5) / 2.

    Enumerates good-pair count r >= 0, nice-pair count s >= 0 (a nice pair
    requires a good one), class size a in 2..a_cap, and the least touched
    count t = max(0, a - delta + 1 - (r+s)/2) allowed by the audit bounds,
    skipping tuples with r + s + t > delta - 1.  The order bound is
    evaluated twice, once from the printed closed form and once re-derived
    from the nice-edge count (cap minus the counted lower bound); the two
    must agree everywhere.  Arithmetic is exact: everything is an integer
    at twice the natural scale.

    Beyond ``a_cap`` (default 6*delta) the bound must be provably
    decreasing in a, else :class:`CapUnsafe` is raised: the cap has to
    clear both the activation point of t and the stationary point of the
    resulting quadratic.
    """
    if delta < 2:
        raise ValueError("delta must be at least 2")
    if a_cap is None:
        a_cap = 6 * delta
    if a_cap < 2:
        raise ValueError("a_cap must be at least 2")
    # Tail certificate.  t activates at a = delta - 1 + (r+s)/2, worst case
    # r + s = delta - 1; the quadratic's stationary point is
    # (3*delta - 1)/2 - (3r + s)/4, worst case r = s = 0.
    if 2 * a_cap < 3 * (delta - 1) or 4 * a_cap < 2 * (3 * delta - 1):
        raise CapUnsafe(
            f"a_cap {a_cap} does not clear the activation/stationary points for delta {delta}")

    pair_list = [(r, s)
                 for r in range(delta)
                 for s in range(delta - r)
                 if not (s >= 1 and r == 0)]
    rs = np.array([p[0] for p in pair_list], dtype=np.int64)
    ss = np.array([p[1] for p in pair_list], dtype=np.int64)
    avals = np.arange(2, a_cap + 1, dtype=np.int64)
    two_a_minus = 2 * (avals - delta + 1)          # shape (K,)
    very_small = np.int64(-(2 ** 62))

    best_val: int | None = None
    best_pos: tuple[int, int, int, int] | None = None  # (r, s, a, 2t)
    checked = 0
    forms_agree = True
    chunk = max(1, 4_000_000 // max(1, len(avals)))
    for lo in range(0, len(pair_list), chunk):
        r = rs[lo:lo + chunk, None]
        s = ss[lo:lo + chunk, None]
        # Printed closed form vs the form re-derived from the nice-edge
        # count; they differ only in this a-free part.
        const_printed = (3 * delta - 10 - r) * r + 2 * (delta + 3) * (delta - 1)
        const_counts = ((3 * delta - 9 + s) * r + 6 * (delta - 1)
                        + 2 * delta * (delta - 1) - (r + s + 1) * r)
        if not np.array_equal(const_printed, const_counts):
            forms_agree = False
        t2 = np.maximum(two_a_minus[None, :] - (r + s), 0)
        feasible = 2 * (r + s) + t2 <= 2 * (delta - 1)
        rhs2 = (2 * const_counts
                + 2 * (avals[None, :] - 1) * (2 * delta - 2 - 2 * r - s)
                - (avals[None, :] - 2) * t2)
        vals = np.where(feasible, rhs2, very_small)
        checked += int(feasible.sum())
        flat = int(vals.argmax())
        top = int(vals.flat[flat])
        if best_val is None or top > best_val:
            i, j = divmod(flat, len(avals))
            best_val = top
            best_pos = (int(rs[lo + i]), int(ss[lo + i]), int(avals[j]),
                        int(t2[i, j]))
    assert best_val is not None and best_pos is not None
    worst_n = Fraction(best_val, 2 * delta)
    threshold = Fraction(9 * delta - 5, 2)
    worst_tuple = (best_pos[0], best_pos[1], best_pos[2], Fraction(best_pos[3], 2))
    return CertResult(
        delta=delta,
        holds=bool(best_val < delta * (9 * delta - 5)) and forms_agree,
        worst_tuple=worst_tuple,
        worst_n=worst_n,
        margin=threshold - worst_n,
        forms_agree=forms_agree,
        tuples_checked=checked,
        a_cap=a_cap,
    )
