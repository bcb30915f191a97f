import numpy as np
import pytest

from sqfree.graph import (
    GraphStats,
    build,
    dead_ends,
    dead_starts,
    prune_core,
    stats,
    to_dot,
    to_json_dict,
    to_networkx,
)
from sqfree.utils.error_classes import (
    BudgetExceededError,
    ContractViolationError,
)
from sqfree.words import (
    LengthSeq,
    format_word,
    is_s_squarefree,
    parse_word,
    reverse,
)


def seq(*lengths: int) -> LengthSeq:
    return LengthSeq.of(*lengths)


@pytest.fixture
def g23():
    return build(seq(2, 3), 2)


def test_single_length_graph():
    graph = build(seq(1), 2)
    assert [format_word(w) for w in graph.words()] == ["ab", "ba"]
    assert graph.successors(parse_word("ab")) == [parse_word("ba")]
    assert graph.predecessors(parse_word("ab")) == [parse_word("ba")]
    assert stats(graph) == GraphStats(
        vertices=2, arcs=2, dead_ends=0, dead_starts=0, core=2
    )


def test_vertices_are_squarefree(g23):
    s = seq(2, 3)
    words = list(g23.words())
    assert words == sorted(words)
    assert all(len(w) == 6 and is_s_squarefree(w, s) for w in words)
    assert g23.contains(parse_word("abaabb"))
    assert not g23.contains(parse_word("ababaa"))


def test_encode_decode(g23):
    w = parse_word("abaabb")
    assert g23.encode(w) == 0b010011
    assert g23.decode(0b010011) == w
    with pytest.raises(ContractViolationError):
        g23.encode(parse_word("abc"))
    with pytest.raises(ContractViolationError):
        g23.encode(parse_word("abcabc"))


def test_golden_dead_ends(g23):
    ends = dead_ends(g23)
    assert parse_word("abaabb") in ends
    assert parse_word("babbaa") in ends
    assert all(g23.successors(w) == [] for w in ends)


@pytest.mark.parametrize(
    "lengths, words",
    [((3, 5), ["aabaaaabab", "bbabbbbaba"]), ((2, 4, 5), ["bbbaabbbab"])],
)
def test_known_dead_ends(lengths, words):
    found = {format_word(w) for w in dead_ends(build(LengthSeq(lengths), 2))}
    assert set(words) <= found


def test_empty_graph():
    graph = build(seq(1, 2), 2)
    assert len(graph) == 0
    assert dead_ends(graph) == []
    assert stats(graph) == GraphStats(0, 0, 0, 0, 0)
    assert len(prune_core(graph)) == 0


def test_reversal_duality(g23):
    ends = dead_ends(g23)
    assert dead_starts(g23) == sorted(reverse(w) for w in ends)
    appended = build(seq(2, 3), 2, orientation="append")
    assert np.array_equal(appended.codes, g23.codes)
    assert dead_starts(appended) == ends
    assert dead_ends(appended) == dead_starts(g23)


def test_degree_sums(g23):
    assert g23.out_degree().sum() == g23.in_degree().sum()
    assert g23.out_degree().max() <= 2


def test_core(g23):
    core = prune_core(g23)
    assert 0 < len(core) < len(g23)
    again = prune_core(core)
    assert np.array_equal(again.codes, core.codes)
    for w in core.words():
        assert any(core.contains(v) for v in g23.successors(w))
        assert any(core.contains(v) for v in g23.predecessors(w))
    assert stats(g23).core == len(core)


def test_ternary_core_is_nonempty():
    graph = build(seq(1, 2), 3)
    assert dead_ends(graph) == []
    assert len(prune_core(graph)) > 0


def test_vertex_cap():
    with pytest.raises(BudgetExceededError) as exc_info:
        build(seq(3, 5), 2, vertex_cap=100)
    assert exc_info.value.context["requested"] == 1024
    assert exc_info.value.exit_code == 3


def test_codes_wider_than_64_bits_are_refused(monkeypatch):
    monkeypatch.setenv("SQFREE_BUDGET", f"vertex_cap={10**21}")
    with pytest.raises(BudgetExceededError) as exc_info:
        build(seq(1, 20), 3)
    assert exc_info.value.context["budget"] == "code_width"
    assert exc_info.value.context["requested"] == 3**40


def test_explicit_zero_vertex_cap_is_kept():
    with pytest.raises(BudgetExceededError) as exc_info:
        build(seq(1), 2, vertex_cap=0)
    assert exc_info.value.context["limit"] == 0


def test_vertex_cap_from_environment(monkeypatch):
    monkeypatch.setenv("SQFREE_BUDGET", "vertex_cap=64")
    with pytest.raises(BudgetExceededError):
        build(seq(2, 4), 2)
    assert len(build(seq(2, 3), 2)) > 0


def test_bad_arguments():
    with pytest.raises(ContractViolationError):
        build(seq(2, 3), 2, orientation="sideways")
    with pytest.raises(ContractViolationError):
        build(seq(2, 3), 0)


def test_exports():
    graph = build(seq(1), 2)
    data = to_json_dict(graph)
    assert data["vertices"] == ["ab", "ba"]
    assert sorted(data["arcs"]) == [[0, 1], [1, 0]]
    assert data["orientation"] == "prepend"

    digraph = to_networkx(graph)
    assert digraph.edges["ab", "ba"]["letter"] == "b"
    assert digraph.edges["ba", "ab"]["letter"] == "a"

    dot = to_dot(graph)
    assert dot.startswith("digraph")
    assert "->" in dot
    assert "ab" in dot and "ba" in dot
