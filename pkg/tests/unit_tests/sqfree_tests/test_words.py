import re

import pytest
from hypothesis import given
from hypothesis import strategies as st

from sqfree.utils.error_classes import (
    ContractViolationError,
    InvalidSequenceError,
)
from sqfree.words import (
    Alphabet,
    LengthSeq,
    SquareHit,
    find_squares,
    format_word,
    has_square_at,
    is_s_squarefree,
    parse_word,
    reverse,
    square_created_by_append,
    square_created_by_prepend,
)


def _regex_squarefree(text: str, s: LengthSeq) -> bool:
    return not any(re.search(rf"(.{{{i}}})\1", text) for i in s)


length_seqs = st.lists(
    st.integers(min_value=1, max_value=5), min_size=1, max_size=3, unique=True
).map(lambda xs: LengthSeq(tuple(sorted(xs))))


# --------------------------------------------------LengthSeq--------------------------------------------------


def test_length_seq_indexing():
    s = LengthSeq.of(2, 5, 11)
    assert s.r == 3
    assert s.i(1) == 11
    assert s.i(3) == 2
    assert s.N == 22
    assert s.head(2) == LengthSeq.of(5, 11)
    assert str(s) == "(2,5,11)"
    assert 5 in s and 4 not in s


def test_length_seq_parse():
    assert LengthSeq.parse("3,5") == LengthSeq.of(3, 5)


@pytest.mark.parametrize("text", ["5,3", "3,3", "0,2", "a,b", ""])
def test_length_seq_parse_rejects(text):
    with pytest.raises(InvalidSequenceError):
        LengthSeq.parse(text)


def test_length_seq_index_out_of_range():
    with pytest.raises(ContractViolationError):
        LengthSeq.of(3, 5).i(3)


def test_subsequences_keep_order():
    subs = list(LengthSeq.of(1, 3, 5).subsequences(2))
    assert subs == [LengthSeq.of(1, 3), LengthSeq.of(1, 5), LengthSeq.of(3, 5)]


def test_alphabet_needs_letters():
    assert list(Alphabet(3).letters()) == [0, 1, 2]
    with pytest.raises(ContractViolationError):
        Alphabet(0)


# --------------------------------------------------Square tests--------------------------------------------------


def test_parse_and_format_word():
    assert parse_word("abca") == (0, 1, 2, 0)
    assert format_word((0, 1, 2, 0)) == "abca"
    with pytest.raises(ContractViolationError):
        parse_word("aB")


def test_has_square_at():
    w = parse_word("cabab")
    assert has_square_at(w, 2, 2)
    assert not has_square_at(w, 2, 1)
    with pytest.raises(ContractViolationError):
        has_square_at(w, 2, 3)


def test_find_squares_order():
    w = parse_word("aabaab")
    assert find_squares(w, LengthSeq.of(1, 3)) == [
        SquareHit(1, 1),
        SquareHit(1, 4),
        SquareHit(3, 1),
    ]


@pytest.mark.parametrize("letter, length", [("a", 5), ("b", 3), ("c", 1)])
def test_append_to_squarefree_word(letter, length):
    """Each letter appended to cbacacbac closes a square of a different length."""
    s = LengthSeq.of(1, 3, 5)
    w = parse_word("cbacacbac")
    assert is_s_squarefree(w, s)
    hit = square_created_by_append(w, parse_word(letter)[0], s)
    assert hit is not None
    assert hit.length == length
    assert hit.start == len(w) + 2 - 2 * length


def test_prepend_mirrors_append():
    s = LengthSeq.of(2, 3)
    w = parse_word("abaab")
    assert square_created_by_prepend(w, 0, s) == SquareHit(3, 1)
    assert square_created_by_prepend(w, 1, s) == SquareHit(2, 1)
    assert square_created_by_append(reverse(w), 1, s) == SquareHit(2, 3)


@given(text=st.text(alphabet="abc", max_size=14), s=length_seqs)
def test_squarefree_matches_regex(text, s):
    w = parse_word(text)
    expected = _regex_squarefree(text, s)
    assert is_s_squarefree(w, s) == expected
    assert (not find_squares(w, s)) == expected


@given(text=st.text(alphabet="ab", min_size=1, max_size=14), s=length_seqs)
def test_append_check_matches_regex(text, s):
    w = parse_word(text)
    if is_s_squarefree(w[:-1], s):
        created = square_created_by_append(w[:-1], w[-1], s)
        assert (created is None) == _regex_squarefree(text, s)
