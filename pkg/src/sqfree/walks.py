"""Walks on the core of G(s) and the naive sequential method.

Every run takes an integer seed and draws from a numpy PCG64 generator
(``np.random.default_rng(seed)``), so a seed reproduces its run exactly.
"""

from collections.abc import Iterator, Sequence
from dataclasses import dataclass, field
from typing import Literal

import numpy as np

from sqfree.config import get_logger
from sqfree.graph import AvoidanceGraph, Orientation
from sqfree.utils.error_classes import (
    ContractViolationError,
    EmptyCoreError,
    SqfreeError,
)
from sqfree.words import (
    LengthSeq,
    Word,
    format_word,
    is_s_squarefree,
    square_created_by_append,
)

logger = get_logger(__name__)


@dataclass(frozen=True)
class Walk:
    """A finished walk: its start vertex and the letters it added."""

    start: Word
    letters: tuple[int, ...]
    orientation: Orientation
    seed: int

    def word(self) -> Word:
        """The word the walk spells out.

        Prepending walks grow the word to the left, so the letters come
        out reversed in front of the start vertex.
        """
        if self.orientation == "prepend":
            return tuple(reversed(self.letters)) + self.start
        return self.start + self.letters


@dataclass
class WalkState:
    """Position of a running walk on ``core``."""

    core: AvoidanceGraph
    seed: int
    steps: int = 0
    current: int = field(init=False)
    _rng: np.random.Generator = field(init=False, repr=False)
    _members: frozenset[int] = field(init=False, repr=False)

    def __post_init__(self) -> None:
        if len(self.core) == 0:
            raise EmptyCoreError(
                context={"s": str(self.core.s), "letters": self.core.letters}
            )
        self._rng = np.random.default_rng(self.seed)
        self._members = frozenset(self.core.codes.tolist())
        self.current = int(
            self.core.codes[self._rng.integers(len(self.core))]
        )

    def _next_code(self, a: int) -> int:
        letters = self.core.letters
        shift = letters ** (self.core.N - 1)
        if self.core.orientation == "prepend":
            return a * shift + self.current // letters
        return (self.current % shift) * letters + a

    def step(self) -> int:
        """Move along a uniformly chosen arc and return the added letter."""
        options = [
            (a, code)
            for a in range(self.core.letters)
            if (code := self._next_code(a)) in self._members
        ]
        if not options:
            raise SqfreeError(
                "Walk reached a vertex without successors in the core",
                {"vertex": format_word(self.core.decode(self.current))},
            )
        a, self.current = options[int(self._rng.integers(len(options)))]
        self.steps += 1
        return a


def iter_walk(core: AvoidanceGraph, seed: int) -> Iterator[int]:
    """Endless stream of letters from a seeded walk on ``core``."""
    state = WalkState(core, seed)
    while True:
        yield state.step()


def random_walk(core: AvoidanceGraph, seed: int, n_steps: int) -> Walk:
    """Walk ``n_steps`` arcs inside ``core``.

    Raises:
        EmptyCoreError: If the core has no vertices.
    """
    if n_steps < 0:
        raise ContractViolationError(
            "Number of steps must be non-negative", {"n_steps": n_steps}
        )
    state = WalkState(core, seed)
    start = core.decode(state.current)
    letters = tuple(state.step() for _ in range(n_steps))
    logger.info(
        "walk on core of G%s: seed %d, %d steps", core.s, seed, n_steps
    )
    return Walk(start, letters, core.orientation, seed)


@dataclass(frozen=True)
class SimOutcome:
    """Result of one run of the sequential method.

    ``steps`` is the number of append attempts made; for a dead-end the
    last attempt is the one that found no letter, and ``word`` is the
    dead-end word.
    """

    kind: Literal["dead_end", "survived"]
    steps: int
    word: Word
    seed: int

    @property
    def is_dead_end(self) -> bool:
        return self.kind == "dead_end"

    def __str__(self) -> str:
        if self.is_dead_end:
            return f"DeadEnd(step={self.steps}, word={format_word(self.word)})"
        return f"Survived({self.steps})"


def safe_letters(word: Sequence[int], s: LengthSeq, letters: int) -> list[int]:
    """Letters that can be appended to ``word`` without an s-square."""
    tail = word[max(0, len(word) - (2 * s.largest - 1)) :]
    return [
        a
        for a in range(letters)
        if square_created_by_append(tail, a, s) is None
    ]


def sequential_simulate(
    s: LengthSeq,
    letters: int,
    seed: int,
    max_steps: int,
    prefix: Sequence[int] = (),
) -> SimOutcome:
    """Append uniformly random safe letters until none is left.

    Args:
        s: The length sequence.
        letters: Alphabet size.
        seed: Generator seed.
        max_steps: Largest number of append attempts.
        prefix: Starting word, which must be s-squarefree.

    Returns:
        A dead-end outcome at the first attempt without a safe letter, or
        a surviving outcome after ``max_steps`` attempts.
    """
    if not is_s_squarefree(prefix, s):
        raise ContractViolationError(
            "Prefix is not s-squarefree",
            {"prefix": format_word(prefix), "s": str(s)},
        )
    rng = np.random.default_rng(seed)
    word = list(prefix)
    for step in range(1, max_steps + 1):
        allowed = safe_letters(word, s, letters)
        if not allowed:
            logger.debug("sequential run seed %d: dead-end at %d", seed, step)
            return SimOutcome("dead_end", step, tuple(word), seed)
        word.append(allowed[int(rng.integers(len(allowed)))])
    return SimOutcome("survived", max_steps, tuple(word), seed)


@dataclass(frozen=True)
class SequentialExploration:
    """Every choice sequence of the sequential method up to a depth.

    Attributes:
        dead_end_steps: Attempt numbers at which some branch dead-ends.
        dead_ends: Number of dead-end branches.
        survivors: Number of branches still alive at the depth limit.
    """

    dead_end_steps: frozenset[int]
    dead_ends: int
    survivors: int

    @property
    def always_dead_ends(self) -> bool:
        return self.survivors == 0


def explore_sequential(
    s: LengthSeq, letters: int, max_steps: int
) -> SequentialExploration:
    """Depth-first search over all runs of the sequential method."""
    steps: set[int] = set()
    dead = 0
    alive = 0
    stack: list[list[int]] = [[]]
    while stack:
        word = stack.pop()
        if len(word) == max_steps:
            alive += 1
            continue
        allowed = safe_letters(word, s, letters)
        if not allowed:
            steps.add(len(word) + 1)
            dead += 1
            continue
        stack.extend(word + [a] for a in reversed(allowed))
    return SequentialExploration(frozenset(steps), dead, alive)
