import networkx as nx
import pytest

from sqfree.graph import build, dead_ends
from sqfree.mina import (
    CoarseningSearch,
    candidate_coarsenings,
    chromatic_number,
    dead_end_words_from,
    difference_graph,
    find_k_coloring,
    forced_difference_graph,
    minA_exact,
    primary_difference_graph,
)
from sqfree.partitions import orbit_closure, primary_pairs, refines
from sqfree.structure import VerdictKind
from sqfree.utils.error_classes import (
    BudgetExceededError,
    ContractViolationError,
)
from sqfree.words import LengthSeq, parse_word, reverse


def seq(*lengths: int) -> LengthSeq:
    return LengthSeq.of(*lengths)


# --------------------------------------------------Difference graphs--------------------------------------------------


def test_unit_edges_close_a_triangle():
    graph = difference_graph(seq(1, 2))
    assert graph.edge_set() == {
        frozenset({1, 2}),
        frozenset({2, 4}),
        frozenset({1, 4}),
    }
    assert graph.conflicts == ()
    assert chromatic_number(graph) == 3


def test_primary_difference_graph(s35):
    graph = primary_difference_graph(s35)
    assert graph.edge_set() == {
        frozenset({3, 2}),
        frozenset({3, 1}),
        frozenset({2, 10}),
    }
    assert chromatic_number(graph) == 2


def test_primary_graph_of_doubling_pair_is_a_path():
    graph = primary_difference_graph(seq(2, 4))
    assert graph.edge_set() == {frozenset({2, 4}), frozenset({4, 8})}


def test_forced_edges_close_the_doubling_triangle():
    graph = forced_difference_graph(seq(2, 4))
    assert graph.edge_set() == {
        frozenset({2, 4}),
        frozenset({4, 8}),
        frozenset({2, 8}),
    }
    assert chromatic_number(graph) == 3


def test_forced_graph_of_doubling_chain_holds_k4():
    graph = forced_difference_graph(seq(2, 4, 8))
    square = graph.graph.subgraph([2, 4, 8, 16])
    assert square.number_of_edges() == 6
    assert chromatic_number(graph) == 4


def test_forced_graph_of_single_length():
    graph = forced_difference_graph(seq(3))
    assert graph.edge_set() == {frozenset({3, 6})}


def test_difference_graph_conflicts():
    graph = difference_graph(seq(2, 3, 5))
    assert (2, 5) in graph.conflicts


@pytest.mark.parametrize(
    "graph, expected",
    [
        (nx.complete_graph(4), 4),
        (nx.path_graph(4), 2),
        (nx.cycle_graph(5), 3),
        (nx.cycle_graph(6), 2),
        (nx.empty_graph(3), 1),
        (nx.Graph(), 0),
    ],
)
def test_chromatic_number(graph, expected):
    assert chromatic_number(graph) == expected


def test_find_k_coloring_is_proper():
    graph = nx.petersen_graph()
    coloring = find_k_coloring(graph, 3)
    assert coloring is not None
    assert all(coloring[u] != coloring[v] for u, v in graph.edges)
    assert find_k_coloring(graph, 2) is None
    with pytest.raises(ContractViolationError):
        find_k_coloring(graph, 0)


def test_chromatic_number_budget():
    with pytest.raises(BudgetExceededError) as exc_info:
        chromatic_number(nx.path_graph(25))
    assert exc_info.value.budget == "chromatic_vertices"
    assert exc_info.value.exit_code == 3


# --------------------------------------------------Exact minA--------------------------------------------------


@pytest.mark.parametrize(
    "lengths, expected",
    [
        ((3,), "Finite(2)"),
        ((1, 2), "Finite(3)"),
        ((3, 5), "Finite(2)"),
        ((3, 6), "Finite(3)"),
        ((1, 2, 4), "Finite(4)"),
        ((1, 2, 5), "Finite(4)"),
        ((1, 3, 5), "Finite(3)"),
        ((2, 4, 8), "Finite(4)"),
        ((2, 3, 5), "Infinite"),
        ((2, 4, 5), "Infinite"),
    ],
)
def test_minA_exact(lengths, expected):
    assert str(minA_exact(LengthSeq(lengths)).verdict) == expected


def test_minA_witness_and_profile(s35):
    result = minA_exact(s35)
    assert str(result.witness) == "{1,2,4,5,6,7,9},{3,8,10}"
    assert result.profile == {1: False, 2: True, 3: True, 4: True}
    assert result.nodes > 0


def test_minA_infinite_profile():
    result = minA_exact(seq(2, 3, 5), k_max=3)
    assert result.verdict.kind is VerdictKind.INFINITE
    assert result.witness is None
    assert result.profile == {1: False, 2: False, 3: False}


def test_minA_exceeds_k_max():
    result = minA_exact(seq(1, 2, 4), k_max=3)
    assert result.verdict.kind is VerdictKind.EXCEEDS
    assert result.verdict.value == 3
    assert not any(result.profile.values())


def test_minA_node_budget():
    with pytest.raises(BudgetExceededError) as exc_info:
        minA_exact(seq(1, 2, 4), node_budget=2)
    assert exc_info.value.budget == "search_nodes"


def test_explicit_zero_node_budget_is_kept(s35):
    with pytest.raises(BudgetExceededError) as exc_info:
        minA_exact(s35, node_budget=0)
    assert exc_info.value.context["limit"] == 0


def test_minA_rejects_k_max():
    with pytest.raises(ContractViolationError):
        minA_exact(seq(3, 5), k_max=0)


def test_candidates_are_coarsenings(s35):
    o = orbit_closure(s35)
    found = list(candidate_coarsenings(s35, 2))
    assert found
    for p in found:
        assert p.num_blocks == 2
        assert refines(o, p)
        assert all(not p.similar(a, b) for a, b in primary_pairs(s35))


def test_infeasible_search_yields_nothing():
    s = seq(2, 3, 5)
    search = CoarseningSearch(orbit_closure(s), primary_pairs(s), s)
    assert not search.feasible
    assert list(search.candidates(2)) == []


# --------------------------------------------------Dead-end words--------------------------------------------------


@pytest.mark.parametrize(
    "lengths, letters",
    [((2, 3), 2), ((3, 5), 2), ((1, 2), 2), ((2, 4), 2), ((1, 3, 5), 3)],
)
def test_dead_end_words_match_graph(lengths, letters):
    s = LengthSeq(lengths)
    assert dead_end_words_from(s, letters) == dead_ends(build(s, letters))


def test_dead_end_words_golden():
    words = dead_end_words_from(seq(2, 3), 2)
    assert parse_word("abaabb") in words
    appended = dead_end_words_from(seq(2, 3), 2, orientation="append")
    assert appended == sorted(reverse(w) for w in words)


def test_dead_end_words_contract():
    with pytest.raises(ContractViolationError):
        dead_end_words_from(seq(2, 3), 2, orientation="sideways")
    with pytest.raises(ContractViolationError):
        dead_end_words_from(seq(2, 3), 0)
