import json
import math
from fractions import Fraction

import pytest

from rainbowmatch import (
    CapUnsafe,
    InvalidState,
    Matching,
    NotStuck,
    UnknownEdge,
    applicable_rules,
    audit_state,
    audit_stuck_state,
    bound_n,
    build_graph,
    certify_counting_bound,
    min_degree,
    pick_mono_class,
    rule_direct,
    rule_mono,
    run_engine,
)

from conftest import k33_cyclic, k4_one_factorization, random_instance


def stuck_k4_state():
    g = k4_one_factorization()
    res = run_engine(g, 2)
    assert res.size == 1
    mono = pick_mono_class(g, res.best)
    return g, res.best, mono


# ------------------------------------------------------------- basic audit

def test_k4_stuck_audit_quantities():
    g, matching, mono = stuck_k4_state()
    report = audit_state(g, matching, mono)
    assert report.delta == 2
    assert report.n == 4
    assert len(report.uncovered) == 2 == report.n - 2 * (report.delta - 1)
    assert report.max_class_size == 2
    assert report.good_pair_count == 0
    assert report.nice_pair_count == 0
    assert report.mono_touched_count == 1
    assert len(report.good_edges) == 4
    assert set(report.nice_edges) == set(report.good_edges)
    assert report.extended_uncovered == report.uncovered
    assert all(c.holds for c in report.checks)
    assert len(report.checks) == 13


def test_k4_order_inequality_numbers():
    g, matching, mono = stuck_k4_state()
    report = audit_state(g, matching, mono)
    check = report.check("order-inequality")
    assert check.holds
    assert "8" in check.note and "12" in check.note


def test_report_serialises_to_json():
    g, matching, mono = stuck_k4_state()
    report = audit_state(g, matching, mono)
    payload = json.loads(json.dumps(report.to_json_dict()))
    assert payload["delta"] == 2
    assert {c["name"] for c in payload["checks"]} >= {
        "matching-maximality", "order-inequality", "nice-edge-cap"}


def test_pair_indices_are_relabelled_by_kind():
    g, matching, mono = stuck_k4_state()
    report = audit_state(g, matching, mono)
    assert [p.index for p in report.pairs] == [1]
    assert report.pairs[0].kind == "mono-touched"


# -------------------------------------------------------------- good stage

def test_seven_pendants_make_a_good_pair():
    edges = [(0, 1, 1)] + [(0, 2 + i, 2 + i) for i in range(7)]
    g = build_graph(9, edges)
    matching = Matching([(0, 1, 1)])
    report = audit_state(g, matching, pick_mono_class(g, matching))
    assert report.good_pair_count == 1
    pair = report.pairs[0]
    assert pair.kind == "good" and pair.x == 0 and pair.oriented
    assert pair.good_at_x == 7 and pair.good_at_y == 0
    assert report.extended_uncovered == report.uncovered | {1}


def test_six_pendants_stay_plain():
    edges = [(0, 1, 1)] + [(0, 2 + i, 2 + i) for i in range(6)]
    g = build_graph(8, edges)
    matching = Matching([(0, 1, 1)])
    report = audit_state(g, matching, pick_mono_class(g, matching))
    assert report.good_pair_count == 0


def test_planted_inside_edge_fails_maximality_and_direct_rule_fires():
    g = build_graph(5, [(0, 1, 1), (2, 3, 2)])
    matching = Matching([(0, 1, 1)])
    report = audit_state(g, matching, pick_mono_class(g, matching))
    check = report.check("matching-maximality")
    assert not check.holds
    assert (2, 3, 2) in {tuple(w) for w in check.witness}
    assert rule_direct(g, matching) is not None


def test_good_dichotomy_violation_detected():
    edges = [(0, 1, 1),
             (0, 2, 2), (0, 3, 3), (0, 4, 4),
             (1, 5, 5)]
    g = build_graph(6, edges)
    matching = Matching([(0, 1, 1)])
    report = audit_state(g, matching, pick_mono_class(g, matching))
    assert not report.check("good-pair-dichotomy").holds


# -------------------------------------------------------------- nice stage

def test_no_good_pairs_means_nice_equals_good():
    g, matching, mono = stuck_k4_state()
    report = audit_state(g, matching, mono)
    assert report.good_pair_count == 0
    assert set(report.nice_edges) == set(report.good_edges)
    assert report.nice_pair_count == 0


def test_nice_edge_cap_attained_with_equality():
    # One good pair carrying 8 fresh pendants (plus its own matched edge,
    # which is nice once the pair is good) and two plain pairs carrying 6
    # pendants each: 21 nice edges, exactly the cap for delta=4, r=1, s=0.
    edges = [(0, 1, 1), (2, 3, 2), (4, 5, 3)]
    edges += [(0, 6 + i, 4 + i) for i in range(8)]
    edges += [(2, 14 + i, 12 + i) for i in range(6)]
    edges += [(4, 20 + i, 18 + i) for i in range(6)]
    g = build_graph(26, edges)
    matching = Matching([(0, 1, 1), (2, 3, 2), (4, 5, 3)])
    report = audit_state(g, matching, pick_mono_class(g, matching))
    assert report.good_pair_count == 1
    assert report.nice_pair_count == 0
    assert len(report.nice_edges) == 21
    check = report.check("nice-edge-cap")
    assert check.holds and tuple(check.witness[0]) == (21, 21)


# ------------------------------------------------------------ touch counts

def test_touched_lower_bound_achieved_exactly():
    # Three same-coloured edges: two touch the first pair, one sits inside
    # the uncovered set, so exactly one pair is touched and the bound
    # t >= a - delta + 1 is tight at 1.
    edges = [(0, 1, 1), (2, 3, 2), (0, 4, 5), (1, 5, 5), (6, 7, 5)]
    g = build_graph(8, edges)
    matching = Matching([(0, 1, 1), (2, 3, 2)])
    mono = Matching([(0, 4, 5), (1, 5, 5), (6, 7, 5)])
    report = audit_state(g, matching, mono)
    assert report.max_class_size == 3
    assert report.mono_touched_count == 1 == report.max_class_size - report.delta + 1
    assert report.check("touched-count-bounds").holds
    # the in-uncovered mono edge also breaks maximality, jointly detectable
    assert not report.check("matching-maximality").holds
    assert rule_direct(g, matching) is not None


def test_mono_multiplicity_violation_and_mono_rule_fire_jointly():
    g = build_graph(8, [(0, 1, 1), (2, 3, 1), (4, 5, 1), (0, 6, 2), (1, 7, 3)])
    matching = Matching([(0, 1, 1)])
    mono = Matching([(0, 6, 2)])
    report = audit_state(g, matching, mono)
    assert report.mono_touched_count == 1
    check = report.check("mono-color-multiplicity")
    assert not check.holds
    witness_edges = {tuple(e) for _, pair in check.witness for e in pair}
    assert witness_edges == {(2, 3, 1), (4, 5, 1)}
    assert rule_mono(g, matching) is not None
    assert "mono" in applicable_rules(g, matching)


# --------------------------------------------------------------- validation

def test_non_rainbow_matching_rejected():
    g = k4_one_factorization()
    with pytest.raises(InvalidState):
        audit_state(g, Matching([(0, 1, 1), (2, 3, 1)]), Matching())


def test_delta_mismatch_rejected():
    g, matching, mono = stuck_k4_state()
    with pytest.raises(InvalidState):
        audit_state(g, matching, mono, delta=3)


def test_mono_sharing_colour_rejected():
    g = k4_one_factorization()
    matching = Matching([(0, 1, 1)])
    with pytest.raises(InvalidState):
        audit_state(g, matching, Matching([(2, 3, 1)]))


def test_mono_with_two_colours_rejected():
    g = k4_one_factorization()
    matching = Matching([(0, 1, 1)])
    with pytest.raises(InvalidState):
        audit_state(g, matching, Matching([(0, 2, 2), (1, 2, 3)]))


def test_mono_foreign_edge_rejected():
    g = k4_one_factorization()
    matching = Matching([(0, 1, 1)])
    with pytest.raises(UnknownEdge):
        audit_state(g, matching, Matching([(0, 3, 9)]))


def test_empty_mono_allowed():
    g = build_graph(4, [(0, 1, 1), (2, 3, 2)])
    matching = Matching([(0, 1, 1), (2, 3, 2)])
    report = audit_state(g, matching, Matching(), delta=3)
    assert report.max_class_size == 0
    assert report.mono_touched_count == 0


# ---------------------------------------------------------- mono selection

def test_pick_mono_class_largest_then_smallest_colour():
    g = k4_one_factorization()
    mono = pick_mono_class(g, Matching([(0, 1, 1)]))
    assert mono.colors == (2, 2)  # classes 2 and 3 tie at size 2
    assert len(mono) == 2


def test_pick_mono_class_empty_when_all_colours_used():
    g = build_graph(4, [(0, 1, 1), (2, 3, 2)])
    mono = pick_mono_class(g, Matching([(0, 1, 1), (2, 3, 2)]))
    assert len(mono) == 0


# ------------------------------------------------------------- stuck audits

def test_audit_stuck_state_on_k4():
    report, engine_res = audit_stuck_state(k4_one_factorization(), 2)
    assert report.delta == 2
    assert engine_res.size == 1
    assert all(c.holds for c in report.checks)


def test_audit_not_stuck_on_k33():
    with pytest.raises(NotStuck):
        audit_stuck_state(k33_cyclic(), 3)


def test_audit_target_must_be_positive():
    with pytest.raises(ValueError):
        audit_stuck_state(k4_one_factorization(), 0)


def test_stuck_states_satisfy_maximality_checks_or_a_rule_fires():
    # Spot-check over seeded instances: on engine-stuck states the checks
    # justified by maximality alone hold, unless a deeper rule still fires.
    guarded = ("matching-maximality", "good-pair-dichotomy",
               "nice-pair-dichotomy")
    audited = 0
    for seed in range(2000, 2600):
        g = random_instance(seed)
        target = min_degree(g)
        if target < 1:
            continue
        try:
            report, _ = audit_stuck_state(g, target)
        except NotStuck:
            continue
        audited += 1
        assert len(report.uncovered) == report.n - 2 * (report.delta - 1)
        assert set(report.good_edges) <= set(report.nice_edges)
        assert report.good_pair_count + report.nice_pair_count \
            + report.mono_touched_count <= report.delta - 1 or \
            not report.check("touched-count-bounds").holds
        for name in guarded:
            check = report.check(name)
            if not check.holds:
                assert applicable_rules(g, report.matching, target, 5), \
                    f"{name} failed with no applicable rule (seed {seed})"
    assert audited >= 20


# ----------------------------------------------------------- certification

def oracle_certify(delta, a_cap=None):
    """Independent exact maximiser over the same admissible tuples.

    For fixed pair counts the bound is linear then concave-quadratic in the
    class size, so its integer maximum sits at an interval endpoint, at the
    activation point of the touched count, or beside the quadratic's apex;
    evaluating those candidates with exact fractions finds the true
    maximum of worst_n = bound / delta.
    """
    if a_cap is None:
        a_cap = 6 * delta
    best = None
    for r in range(delta):
        for s in range(delta - r):
            if s >= 1 and r == 0:
                continue
            activation = Fraction(2 * (delta - 1) + (r + s), 2)
            apex = Fraction(3 * delta - 1, 2) - Fraction(3 * r + s, 4)
            feas_max = Fraction(2 * delta - 2) - Fraction(r + s, 2)
            candidates = {2, a_cap}
            for x in (activation, apex, feas_max):
                candidates.add(math.floor(x))
                candidates.add(math.ceil(x))
            for a in candidates:
                if a < 2 or a > a_cap:
                    continue
                t = max(Fraction(0), Fraction(2 * (a - delta + 1) - (r + s), 2))
                if r + s + t > delta - 1:
                    continue
                rhs = (Fraction((3 * delta - 10 - r) * r
                                + 2 * (delta + 3) * (delta - 1))
                       + (a - 1) * (2 * delta - 2 - 2 * r - s)
                       - (a - 2) * t)
                value = Fraction(rhs, delta)
                if best is None or value > best:
                    best = value
    return best


def oracle_certify_full(delta, a_cap=None):
    """Slow variant scanning every class size; validates the grid above."""
    if a_cap is None:
        a_cap = 6 * delta
    best = None
    for r in range(delta):
        for s in range(delta - r):
            if s >= 1 and r == 0:
                continue
            for a in range(2, a_cap + 1):
                t = max(Fraction(0), Fraction(2 * (a - delta + 1) - (r + s), 2))
                if r + s + t > delta - 1:
                    continue
                rhs = (Fraction((3 * delta - 10 - r) * r
                                + 2 * (delta + 3) * (delta - 1))
                       + (a - 1) * (2 * delta - 2 - 2 * r - s)
                       - (a - 2) * t)
                value = Fraction(rhs, delta)
                if best is None or value > best:
                    best = value
    return best


def test_oracle_grid_matches_full_scan_for_small_delta():
    for delta in range(2, 13):
        assert oracle_certify(delta) == oracle_certify_full(delta)


def test_certify_matches_oracle():
    for delta in (2, 3, 4, 5, 8, 12, 20, 50):
        res = certify_counting_bound(delta)
        assert res.worst_n == oracle_certify(delta), f"delta={delta}"
        assert res.holds
        assert res.margin == Fraction(9 * delta - 5, 2) - res.worst_n
        assert res.margin > 0
        assert res.forms_agree


def test_certify_delta_two_exactly():
    res = certify_counting_bound(2)
    assert res.worst_n == 6
    assert res.margin == Fraction(1, 2)
    assert res.worst_tuple == (0, 0, 2, Fraction(1))
    assert res.tuples_checked == 1


def test_certify_delta_five_below_twenty():
    res = certify_counting_bound(5)
    assert res.holds and res.worst_n < 20
    # the apex branch dominates here: (17*5 - 6)/4 - 7/(4*5)
    assert res.worst_n == Fraction(97, 5)


def test_certify_large_delta_boundary_quadratic():
    # At delta=200 the touched count stays at zero and the maximum sits on
    # the activation boundary: r=98 gives (-2r^2 + 393r + 159598) / 200.
    res = certify_counting_bound(200)
    assert res.worst_n == Fraction(178904, 200) == Fraction(22363, 25)
    assert res.worst_tuple == (98, 0, 248, Fraction(0))
    assert res.holds


def test_certify_respects_a_cap_argument():
    res = certify_counting_bound(4, a_cap=30)
    assert res.a_cap == 30
    assert res.worst_n == oracle_certify(4, a_cap=30)


def test_cap_unsafe_raised_for_small_caps():
    with pytest.raises(CapUnsafe):
        certify_counting_bound(10, a_cap=5)
    with pytest.raises(CapUnsafe):
        certify_counting_bound(2, a_cap=2)


def test_certify_rejects_bad_arguments():
    with pytest.raises(ValueError):
        certify_counting_bound(1)
    with pytest.raises(ValueError):
        certify_counting_bound(5, a_cap=1)
