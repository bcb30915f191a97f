"""Words, length sequences and square tests.

A word is a tuple of letter indices ``0..l-1``. Positions in every public
signature are 1-based. Letter strings (``"aabab"``) only appear at the
input/output boundary through :func:`parse_word` and :func:`format_word`.
"""

from collections.abc import Iterable, Iterator, Sequence
from dataclasses import dataclass
from typing import Optional

from sqfree import default_config
from sqfree.utils.error_classes import (
    ContractViolationError,
    InvalidSequenceError,
)

Word = tuple[int, ...]


@dataclass(frozen=True)
class Alphabet:
    """A finite alphabet of ``size`` letters."""

    size: int

    def __post_init__(self) -> None:
        if self.size < 1:
            raise ContractViolationError(
                "Alphabet needs at least one letter", {"size": self.size}
            )

    def letters(self) -> range:
        """Letter indices ``0..size-1``."""
        return range(self.size)


@dataclass(frozen=True)
class LengthSeq:
    """A strictly increasing sequence of square half-lengths.

    ``lengths`` is stored ascending, ``(i_r, ..., i_2, i_1)``, so that the
    largest length ``i_1`` comes last. :meth:`i` gives the 1-based index used
    throughout the theory, where ``i(1)`` is the largest length.
    """

    lengths: tuple[int, ...]

    def __post_init__(self) -> None:
        if not self.lengths:
            raise InvalidSequenceError("Length sequence is empty")
        if any(i < 1 for i in self.lengths):
            raise InvalidSequenceError(
                "Square lengths must be positive",
                {"lengths": list(self.lengths)},
            )
        if any(a >= b for a, b in zip(self.lengths, self.lengths[1:])):
            raise InvalidSequenceError(
                "Square lengths must be strictly increasing",
                {"lengths": list(self.lengths)},
            )

    @classmethod
    def of(cls, *lengths: int) -> "LengthSeq":
        return cls(tuple(lengths))

    @classmethod
    def parse(cls, text: str) -> "LengthSeq":
        """Parse the command-line form ``"3,5"`` (ascending, largest last).

        Raises:
            InvalidSequenceError: If an item is not an integer or the
                sequence is not strictly increasing.
        """
        try:
            lengths = tuple(int(part) for part in text.split(",") if part)
        except ValueError as err:
            raise InvalidSequenceError(
                "Length sequence must be comma-separated integers",
                {"value": text},
            ) from err
        return cls(lengths)

    @property
    def r(self) -> int:
        return len(self.lengths)

    @property
    def largest(self) -> int:
        return self.lengths[-1]

    @property
    def smallest(self) -> int:
        return self.lengths[0]

    @property
    def N(self) -> int:
        """Vertex word length, twice the largest length."""
        return 2 * self.largest

    def i(self, t: int) -> int:
        """Return ``i_t`` (1-based, ``i(1)`` is the largest length)."""
        if not 1 <= t <= self.r:
            raise ContractViolationError(
                "Length index out of range", {"t": t, "r": self.r}
            )
        return self.lengths[self.r - t]

    def head(self, t: int) -> "LengthSeq":
        """The sequence ``(i_t, ..., i_1)`` of the ``t`` largest lengths."""
        return LengthSeq(self.lengths[self.r - t :])

    def subsequences(self, size: int) -> Iterator["LengthSeq"]:
        from itertools import combinations

        for combo in combinations(self.lengths, size):
            yield LengthSeq(combo)

    def __iter__(self) -> Iterator[int]:
        return iter(self.lengths)

    def __len__(self) -> int:
        return self.r

    def __contains__(self, item: object) -> bool:
        return item in self.lengths

    def __str__(self) -> str:
        return "(" + ",".join(map(str, self.lengths)) + ")"


@dataclass(frozen=True)
class SquareHit:
    """A square of half-length ``length`` starting at 1-based ``start``."""

    length: int
    start: int


def parse_word(text: str) -> Word:
    """Convert ``"aabab"`` to letter indices."""
    letters = default_config.LETTERS
    try:
        return tuple(letters.index(ch) for ch in text)
    except ValueError as err:
        raise ContractViolationError(
            "Words are written with lowercase letters", {"word": text}
        ) from err


def format_word(w: Iterable[int]) -> str:
    """Convert letter indices to ``"aabab"``."""
    return "".join(default_config.LETTERS[a] for a in w)


def has_square_at(w: Sequence[int], i: int, j: int) -> bool:
    """Test whether ``w`` has an ``i``-square starting at position ``j``.

    Args:
        w: The word.
        i: Half-length of the square.
        j: 1-based start position.

    Returns:
        True iff ``w[j+t] == w[j+t+i]`` for ``0 <= t < i``.

    Raises:
        ContractViolationError: If the window does not fit inside ``w``.
    """
    if i < 1 or j < 1 or j + 2 * i - 1 > len(w):
        raise ContractViolationError(
            "Square window out of range",
            {"i": i, "j": j, "word_length": len(w)},
        )
    start = j - 1
    return tuple(w[start : start + i]) == tuple(w[start + i : start + 2 * i])


def is_s_squarefree(w: Sequence[int], s: LengthSeq) -> bool:
    """True iff ``w`` contains no ``i``-square for any ``i`` in ``s``."""
    w = tuple(w)
    n = len(w)
    for i in s:
        for start in range(n - 2 * i + 1):
            if w[start : start + i] == w[start + i : start + 2 * i]:
                return False
    return True


def find_squares(w: Sequence[int], s: LengthSeq) -> list[SquareHit]:
    """All ``i``-squares of ``w`` with ``i`` in ``s``, by length then start."""
    w = tuple(w)
    return [
        SquareHit(i, start + 1)
        for i in s
        for start in range(len(w) - 2 * i + 1)
        if w[start : start + i] == w[start + i : start + 2 * i]
    ]


def square_created_by_append(
    w: Sequence[int], a: int, s: LengthSeq
) -> Optional[SquareHit]:
    """Find a square of ``w·a`` ending at the appended letter.

    Only the suffix windows of length ``2i`` are inspected, so the result
    equals "``w·a`` is not s-squarefree" whenever ``w`` is s-squarefree.

    Returns:
        The square with the smallest half-length, or None.
    """
    n = len(w) + 1
    for i in s:
        if 2 * i > n:
            break
        window = tuple(w[n - 2 * i :]) + (a,)
        if window[:i] == window[i:]:
            return SquareHit(i, n - 2 * i + 1)
    return None


def square_created_by_prepend(
    w: Sequence[int], a: int, s: LengthSeq
) -> Optional[SquareHit]:
    """Find a square of ``a·w`` starting at the prepended letter."""
    hit = square_created_by_append(reverse(w), a, s)
    return None if hit is None else SquareHit(hit.length, 1)


def reverse(w: Sequence[int]) -> Word:
    """The mirror image of ``w``; squares map to squares of the same length."""
    return tuple(reversed(w))
