import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rainbowmatch import (
    LatinSquare,
    NotCompleteBipartite,
    OrderTooLarge,
    ParseError,
    WrongColourCount,
    build_graph,
    color_profile,
    count_rainbow_matchings,
    count_transversals,
    cyclic_square,
    dumps_square,
    graph_to_latin,
    latin_to_graph,
    parse_square,
)
from rainbowmatch.generators import random_latin

from conftest import brute_transversals


# -------------------------------------------------------------- validation

def test_rejects_non_latin_rows():
    with pytest.raises(ValueError):
        LatinSquare(((1, 1), (2, 2)))


def test_rejects_non_latin_columns():
    with pytest.raises(ValueError):
        LatinSquare(((1, 2), (1, 2)))


def test_rejects_ragged_and_empty():
    with pytest.raises(ValueError):
        LatinSquare(((1, 2), (2,)))
    with pytest.raises(ValueError):
        LatinSquare(())


def test_from_rows_remaps_arbitrary_symbols():
    square = LatinSquare.from_rows([["a", "b"], ["b", "a"]])
    assert square.cells == ((1, 2), (2, 1))


def test_cyclic_squares():
    assert cyclic_square(1).cells == ((1,),)
    assert cyclic_square(2).cells == ((1, 2), (2, 1))
    z4 = cyclic_square(4)
    assert z4.cells[0] == (1, 2, 3, 4)
    assert z4.cells[3] == (4, 1, 2, 3)


# ------------------------------------------------------------------ bridge

def test_latin_to_graph_z3_structure():
    g = latin_to_graph(cyclic_square(3))
    assert g.n == 6 and len(g.edges) == 9
    prof = color_profile(g)
    assert set(prof.class_sizes) == {1, 2, 3}
    assert all(size == 3 for size in prof.class_sizes.values())  # perfect matchings


def test_latin_to_graph_order_one():
    g = latin_to_graph(cyclic_square(1))
    assert g.edges == ((0, 1, 1),)


def test_round_trip_z4():
    square = cyclic_square(4)
    assert graph_to_latin(latin_to_graph(square)).cells == square.cells


def test_round_trip_survives_vertex_relabelling():
    # K_{2,2} with rows {0,3} and columns {1,2}: side detection must follow
    # the bipartition, not the id order.
    g = build_graph(4, [(0, 1, 1), (0, 2, 2), (1, 3, 2), (2, 3, 1)])
    square = graph_to_latin(g)
    assert square.n == 2
    assert {square.cells[0], square.cells[1]} == {(1, 2), (2, 1)}


def test_graph_to_latin_rejects_odd_cycle():
    g = build_graph(3, [(0, 1, 1), (1, 2, 2), (0, 2, 3)])
    with pytest.raises(NotCompleteBipartite):
        graph_to_latin(g)


def test_graph_to_latin_rejects_wrong_colour_count():
    g = build_graph(4, [(0, 2, 1), (0, 3, 2), (1, 2, 2), (1, 3, 3)])
    with pytest.raises(WrongColourCount):
        graph_to_latin(g)


def test_graph_to_latin_rejects_incomplete_bipartite():
    g = build_graph(4, [(0, 2, 1), (1, 3, 1)])
    with pytest.raises(NotCompleteBipartite):
        graph_to_latin(g)


# ------------------------------------------------------------- transversals

def test_known_transversal_counts():
    assert count_transversals(cyclic_square(3)) == 3
    assert count_transversals(cyclic_square(4)) == 0
    assert count_transversals(cyclic_square(5)) == 15


def test_transversal_count_matches_permutation_oracle():
    for n in (1, 2, 3, 4, 5):
        square = cyclic_square(n)
        assert count_transversals(square) == brute_transversals(square)
    for seed in range(10):
        square = random_latin(5, seed)
        assert count_transversals(square) == brute_transversals(square)


def test_transversal_count_matches_rainbow_matching_counter():
    for n in (1, 2, 3, 4, 5):
        square = cyclic_square(n)
        graph = latin_to_graph(square)
        assert count_transversals(square) == count_rainbow_matchings(graph, n)


def test_order_cap_enforced():
    with pytest.raises(OrderTooLarge):
        count_transversals(cyclic_square(10))


def test_ryser_desk_scale():
    for n in (1, 3, 5, 7):
        assert count_transversals(cyclic_square(n)) > 0
    for n in (2, 4, 6, 8):
        assert count_transversals(cyclic_square(n)) == 0


# ---------------------------------------------------------------- text form

def test_parse_and_dump_square():
    text = "# comment\n3\n1 2 3\n2 3 1\n3 1 2\n"
    square = parse_square(text)
    assert square.cells == cyclic_square(3).cells
    assert parse_square(dumps_square(square)).cells == square.cells


def test_parse_square_errors():
    with pytest.raises(ParseError):
        parse_square("2\n1 2\n")           # missing row
    with pytest.raises(ParseError):
        parse_square("2\n1 2\n2 x\n")      # bad symbol
    with pytest.raises(ParseError):
        parse_square("")


# -------------------------------------------------------------- properties

@settings(max_examples=30, deadline=None)
@given(st.integers(min_value=1, max_value=6), st.integers(min_value=0, max_value=10_000))
def test_random_square_round_trips_and_graph_is_proper(n, seed):
    square = random_latin(n, seed)
    graph = latin_to_graph(square)       # construction validates properness
    assert graph.n == 2 * n and len(graph.edges) == n * n
    assert graph_to_latin(graph).cells == square.cells
