import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rainbowmatch import (
    ColorProfile,
    DuplicateEdge,
    EdgeColoredGraph,
    ImproperColoring,
    LoopEdge,
    Matching,
    UnknownEdge,
    bound_n,
    build_graph,
    color_classes,
    color_profile,
    diemunsch_bound,
    is_rainbow_matching,
    max_degree,
    min_degree,
)

from conftest import c4, k33_cyclic, k4_one_factorization, two_edge_path


# ------------------------------------------------------------ construction

def test_path_builds_with_expected_degrees():
    g = two_edge_path()
    assert g.n == 3
    assert min_degree(g) == 1
    assert max_degree(g) == 2


def test_k4_one_factorization_is_three_regular():
    g = k4_one_factorization()
    assert min_degree(g) == 3
    assert max_degree(g) == 3
    assert len(g.colors) == 3


def test_c4_is_two_regular():
    g = c4()
    assert min_degree(g) == 2 == max_degree(g)


def test_loop_rejected():
    with pytest.raises(LoopEdge):
        build_graph(2, [(0, 0, 1)])


def test_duplicate_pair_rejected():
    with pytest.raises(DuplicateEdge):
        build_graph(3, [(0, 1, 1), (1, 0, 2)])


def test_improper_coloring_rejected_and_reports_both_edges():
    with pytest.raises(ImproperColoring) as exc:
        build_graph(3, [(0, 1, 1), (1, 2, 1)])
    message = str(exc.value)
    assert "(0, 1, 1)" in message and "(1, 2, 1)" in message


def test_vertex_out_of_range_rejected():
    with pytest.raises(ValueError):
        build_graph(2, [(0, 2, 1)])


def test_nonpositive_color_rejected():
    with pytest.raises(ValueError):
        build_graph(2, [(0, 1, 0)])


def test_edges_normalised_lower_vertex_first():
    g = build_graph(3, [(2, 0, 1)])
    assert g.edges == ((0, 2, 1),)
    assert g.has_edge(0, 2, 1) and g.has_edge(2, 0, 1)


def test_edgeless_graph_degrees_are_zero():
    g = build_graph(0, [])
    assert min_degree(g) == 0 and max_degree(g) == 0


# ---------------------------------------------------------- colour profile

def test_profile_k4_every_class_has_two_edges():
    prof = color_profile(k4_one_factorization())
    assert isinstance(prof, ColorProfile)
    assert prof.max_class_size == 2
    assert set(prof.class_sizes.values()) == {2}


def test_profile_all_distinct_colours_gives_one():
    g = build_graph(4, [(0, 1, 1), (2, 3, 2)])
    assert color_profile(g).max_class_size == 1


def test_profile_k33_cyclic_gives_three():
    assert color_profile(k33_cyclic()).max_class_size == 3


def test_profile_edgeless_gives_zero():
    assert color_profile(build_graph(3, [])).max_class_size == 0


def test_color_classes_partition_edges():
    g = k33_cyclic()
    classes = color_classes(g)
    assert sorted(e for edges in classes.values() for e in edges) == list(g.edges)


# -------------------------------------------------------------- matchings

def test_rainbow_predicate_on_c4_colourings():
    same = c4((1, 2, 1, 2))
    opposite = [(0, 1, 1), (2, 3, 1)]
    assert is_rainbow_matching(same, Matching(opposite)) is False
    mixed = c4((1, 2, 3, 2))
    assert is_rainbow_matching(mixed, Matching([(0, 1, 1), (2, 3, 3)])) is True


def test_empty_matching_is_rainbow():
    assert is_rainbow_matching(c4(), Matching()) is True


def test_unknown_edge_raises():
    with pytest.raises(UnknownEdge):
        is_rainbow_matching(c4(), Matching([(0, 2, 9)]))


def test_matching_properties():
    m = Matching([(2, 3, 3), (0, 1, 1)])
    assert m.edges == ((0, 1, 1), (2, 3, 3))
    assert m.vertices == frozenset({0, 1, 2, 3})
    assert m.colors == (1, 3)
    assert m.is_vertex_disjoint() and m.has_distinct_colors()
    assert len(m) == 2


def test_overlapping_matching_detected():
    m = Matching([(0, 1, 1), (1, 2, 2)])
    assert not m.is_vertex_disjoint()
    n = Matching([(0, 1, 1), (2, 3, 1)])
    assert not n.has_distinct_colors()


# ------------------------------------------------------------------ bounds

def test_bound_n_known_values():
    assert bound_n(2) == 7
    assert bound_n(3) == 11
    assert bound_n(4) == 16
    assert bound_n(5) == 20


def test_bound_n_rejects_nonpositive():
    with pytest.raises(ValueError):
        bound_n(0)


@given(st.integers(min_value=1, max_value=10_000))
def test_bound_n_is_ceiling_and_dominates_twice_delta(delta):
    value = bound_n(delta)
    assert 2 * value >= 9 * delta - 5 > 2 * (value - 1)
    assert value >= 2 * delta


def test_diemunsch_known_values():
    # delta=10 evaluates to floor(54.0125) + 1; the formula is authoritative.
    assert diemunsch_bound(5) == 23
    assert diemunsch_bound(10) == 55


def test_bound_improves_on_diemunsch_for_five_and_up():
    for delta in range(5, 101):
        assert bound_n(delta) < diemunsch_bound(delta)


# ----------------------------------------------------- hypothesis strategy

@st.composite
def proper_graphs(draw, max_n=8, max_m=14):
    n = draw(st.integers(min_value=0, max_value=max_n))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True, max_size=max_m)
                  if pairs else st.just([]))
    incident: dict[int, set[int]] = {v: set() for v in range(n)}
    edges = []
    for u, v in chosen:
        banned = incident[u] | incident[v]
        palette = [c for c in range(1, 2 * n + 2) if c not in banned]
        c = draw(st.sampled_from(palette[:4]))
        edges.append((u, v, c))
        incident[u].add(c)
        incident[v].add(c)
    return build_graph(n, edges)


@settings(max_examples=100)
@given(proper_graphs())
def test_every_color_class_is_vertex_disjoint(g):
    for edges in color_classes(g).values():
        assert Matching(edges).is_vertex_disjoint()


@settings(max_examples=100)
@given(proper_graphs())
def test_graph_equality_and_hash_agree(g):
    same = EdgeColoredGraph(g.n, list(reversed(g.edges)))
    assert same == g and hash(same) == hash(g)
