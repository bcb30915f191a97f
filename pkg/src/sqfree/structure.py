"""Closed-form structure of orbit partitions.

m-values, conditions C and D, the recursive construction of generic words
and orbits, and the verdicts that follow from them: the predicted minimal
alphabet size and whether the sequential method can reach a dead-end.
Indices follow the theory: ``i_1`` is the largest length, ``i_r`` the
smallest (see :meth:`LengthSeq.i`).
"""

from collections.abc import Iterator
from dataclasses import dataclass, field
from enum import Enum
from functools import lru_cache
from typing import Optional

import numpy as np

from sqfree.config import get_budgets, get_logger
from sqfree.partitions import (
    GenericWord,
    SetPartition,
    UnionFind,
)
from sqfree.utils.error_classes import ContractViolationError
from sqfree.words import LengthSeq

logger = get_logger(__name__)


class VerdictKind(str, Enum):
    FINITE = "finite"
    INFINITE = "infinite"
    UNKNOWN_BOUNDED = "unknown_bounded"
    # search stopped at k_max without a candidate
    EXCEEDS = "exceeds"


@dataclass(frozen=True)
class MinAVerdict:
    """A statement about minA(s).

    ``value`` is the exact size for FINITE, the proven upper bound for
    UNKNOWN_BOUNDED and the largest size searched for EXCEEDS.
    """

    kind: VerdictKind
    value: Optional[int] = None
    rule: str = ""

    @classmethod
    def finite(cls, k: int, rule: str = "") -> "MinAVerdict":
        return cls(VerdictKind.FINITE, k, rule)

    @classmethod
    def infinite(cls, rule: str = "") -> "MinAVerdict":
        return cls(VerdictKind.INFINITE, None, rule)

    @classmethod
    def unknown_bounded(cls, upper: int, rule: str = "") -> "MinAVerdict":
        return cls(VerdictKind.UNKNOWN_BOUNDED, upper, rule)

    @property
    def is_finite(self) -> bool:
        return self.kind is VerdictKind.FINITE

    def agrees_with(self, exact: "MinAVerdict") -> bool:
        """Whether a search result is consistent with this prediction.

        A search that stopped at k_max agrees with any prediction above
        k_max; an upper bound agrees with every finite value within it.
        """
        if exact.kind is VerdictKind.EXCEEDS:
            assert exact.value is not None
            return (
                self.kind in (VerdictKind.FINITE, VerdictKind.UNKNOWN_BOUNDED)
                and self.value is not None
                and self.value > exact.value
            )
        if self.kind is VerdictKind.INFINITE:
            return exact.kind is VerdictKind.INFINITE
        if not exact.is_finite or exact.value is None or self.value is None:
            return False
        if self.kind is VerdictKind.FINITE:
            return exact.value == self.value
        return exact.value <= self.value

    def __str__(self) -> str:
        if self.kind is VerdictKind.FINITE:
            return f"Finite({self.value})"
        if self.kind is VerdictKind.INFINITE:
            return "Infinite"
        if self.kind is VerdictKind.UNKNOWN_BOUNDED:
            return f"UnknownBounded({self.value})"
        return f"Exceeds({self.value})"


class DeadEndKind(str, Enum):
    NO_DEAD_ENDS = "no_dead_ends"
    HAS_DEAD_ENDS = "has_dead_ends"
    UNKNOWN = "unknown"


class DeadEndRule(str, Enum):
    """The clause a dead-end verdict rests on."""

    FEWER_LENGTHS = "fewer lengths than letters"
    SEQUENCE_PRODUCES = "the sequence itself has minA equal to l"
    SEQUENCE_EXCLUDED = "the sequence has minA above l or infinite"
    SUBSEQUENCES_EXCLUDED = (
        "every length-l subsequence has minA above l or infinite"
    )
    UNDECIDED = "a subsequence verdict is undecided"


@dataclass(frozen=True)
class DeadEndVerdict:
    """Prediction for the existence of dead-ends in G(s) over l letters."""

    kind: DeadEndKind
    rule: DeadEndRule
    producing: tuple[LengthSeq, ...] = field(default=())
    undecided: tuple[LengthSeq, ...] = field(default=())

    def __str__(self) -> str:
        return {
            DeadEndKind.NO_DEAD_ENDS: "NoDeadEnds",
            DeadEndKind.HAS_DEAD_ENDS: "HasDeadEnds",
            DeadEndKind.UNKNOWN: "Unknown",
        }[self.kind]


def condition_c(s: LengthSeq) -> bool:
    """True iff ``i_t > i_{t+1} + ... + i_r`` for every ``t < r``."""
    lengths = s.lengths
    return all(lengths[k] > sum(lengths[:k]) for k in range(1, s.r))


def condition_d(s: LengthSeq) -> bool:
    """Condition D: ``i_2+...+i_{r-1} < i_1 < i_2+...+i_r`` with
    ``(i_r, ..., i_2)`` satisfying condition C.
    """
    if s.r < 2:
        raise ContractViolationError(
            "Condition D needs at least two lengths", {"s": str(s)}
        )
    rest = s.lengths[:-1]
    return (
        s.largest < sum(rest)
        and s.largest > sum(rest[1:])
        and condition_c(LengthSeq(rest))
    )


def is_geometric_doubling(s: LengthSeq) -> bool:
    """True iff ``s = (k, 2k, 4k, ...)``."""
    lengths = s.lengths
    return all(b == 2 * a for a, b in zip(lengths, lengths[1:]))


def equal_sum(s: LengthSeq) -> bool:
    """True iff ``i_1 = i_2 + ... + i_r``."""
    return s.r >= 2 and s.largest == sum(s.lengths[:-1])


def has_unit_difference(s: LengthSeq) -> bool:
    """True iff ``i_a - i_{a+1} - ... - i_b = 1`` for some ``a < b``."""
    return any(
        s.i(a) - sum(s.i(t) for t in range(a + 1, b + 1)) == 1
        for a in range(1, s.r)
        for b in range(a + 1, s.r + 1)
    )


def _require_condition_c(s: LengthSeq) -> None:
    if not condition_c(s):
        raise ContractViolationError(
            "m-values are defined under condition C", {"s": str(s)}
        )


def m_value(s: LengthSeq, u: int, v: int) -> int:
    """The m-value m(u, v) of ``s``.

    Args:
        s: A sequence satisfying condition C.
        u: Row index, ``1 <= u <= v + 1``.
        v: Column index, ``1 <= v <= r``.

    Returns:
        ``i_v`` for ``u = v``, ``2·i_v`` for ``u = v + 1``, and otherwise
        the smallest of ``i_t - i_{t+1} - ... - i_v`` (``u <= t < v``)
        and ``i_v``.

    Raises:
        ContractViolationError: If the indices are out of range or ``s``
            fails condition C.
    """
    _require_condition_c(s)
    if not (1 <= v <= s.r and 1 <= u <= v + 1):
        raise ContractViolationError(
            "m-value index out of range", {"u": u, "v": v, "r": s.r}
        )
    return _m(s.lengths, u, v)


@lru_cache(maxsize=4096)
def _m(lengths: tuple[int, ...], u: int, v: int) -> int:
    r = len(lengths)

    def i(t: int) -> int:
        return lengths[r - t]

    if u == v + 1:
        return 2 * i(v)
    tail = 0
    best = i(v)
    for t in range(v - 1, u - 1, -1):
        tail += i(t + 1)
        best = min(best, i(t) - tail)
    return best


def m_table(s: LengthSeq) -> dict[tuple[int, int], int]:
    """Every m(u, v), keyed by ``(u, v)``."""
    _require_condition_c(s)
    return {
        (u, v): _m(s.lengths, u, v)
        for v in range(1, s.r + 1)
        for u in range(1, v + 2)
    }


def euclid_split(x: int, m: int) -> tuple[int, int]:
    """Write ``x = p·m + q`` with ``0 < q <= m``."""
    if x < 1 or m < 1:
        raise ContractViolationError(
            "Division needs positive operands", {"x": x, "m": m}
        )
    p, q = divmod(x - 1, m)
    return p, q + 1


def _base_labels(i1: int) -> list[int]:
    # w(i): positions 1..i, then the period again up to 2i-1, then 2i
    labels = [0] * (2 * i1 + 1)
    for x in range(1, 2 * i1 + 1):
        labels[x] = x if x <= i1 else x - i1
    labels[2 * i1] = 2 * i1
    return labels


def _inner_prefix(s: LengthSeq, r: int) -> list[int]:
    """Labels of ``w[1..i_r]`` for the sequence ``(i_r, ..., i_1)``."""
    lengths = s.lengths[s.r - r :]
    size = lengths[0]
    inner = [0] * (size + 1)
    for x in range(1, _m(lengths, 1, r) + 1):
        inner[x] = x
    for t in range(1, r):
        low, high = _m(lengths, t, r), _m(lengths, t + 1, r)
        for x in range(low + 1, high):
            _, q = euclid_split(x, low)
            inner[x] = inner[q]
        inner[high] = high
    return inner


def generic_word_recursive(s: LengthSeq) -> GenericWord:
    """Build w(s) by substitution, one length at a time.

    Starting from w(i_1), each further length ``i_r`` rewrites the letters
    named by positions up to ``max(m(1, r-1), 2·i_r - 1)``: the first
    ``i_r`` follow the periodic inner maps driven by m(t, r), the next
    ``i_r - 1`` repeat them, and the remaining letters stay put.

    Raises:
        ContractViolationError: If ``s`` fails condition C or contains 1.
    """
    _require_condition_c(s)
    if s.smallest < 2:
        raise ContractViolationError(
            "The recursive construction needs lengths of at least 2",
            {"s": str(s)},
        )
    labels = _base_labels(s.largest)
    for r in range(2, s.r + 1):
        head = s.lengths[s.r - r :]
        outer = _m(head[1:], 1, r - 1)
        size = head[0]
        inner = _inner_prefix(s, r)
        # letters below 2·i_r are tied to x - i_r even past m(1, r-1)
        limit = max(outer, 2 * size - 1)
        prefix = [0] * (limit + 1)
        for x in range(1, limit + 1):
            if x <= size:
                prefix[x] = inner[x]
            elif x < 2 * size:
                prefix[x] = inner[x - size]
            else:
                prefix[x] = x
        labels = [
            prefix[y] if 0 < y <= limit else y for y in labels
        ]
    return SetPartition.from_labels(labels[1:]).generic_word()


def orbit_representatives(s: LengthSeq) -> list[int]:
    """Positions whose orbits change when ``i_r`` joins ``(i_{r-1}, ..., i_1)``:
    every ``x < m(1, r)`` and every ``m(t, r)`` below ``i_r``.
    """
    _require_condition_c(s)
    r = s.r
    reps = set(range(1, _m(s.lengths, 1, r)))
    reps.update(
        m
        for t in range(1, r)
        if (m := _m(s.lengths, t, r)) < _m(s.lengths, r, r)
    )
    return sorted(reps)


def orbit_partition_from_formula(s: LengthSeq) -> SetPartition:
    """Rebuild o(s) from the orbits of the shorter sequence.

    The orbit of a representative ``x`` is the union, over ``t = 1..r`` and
    ``n >= 0`` with ``x + n·m(t, r) < m(t+1, r)``, of the orbits of
    ``x + n·m(t, r)`` under ``(i_{r-1}, ..., i_1)``; the other orbits are
    unchanged.

    Raises:
        ContractViolationError: If ``s`` fails condition C.
    """
    _require_condition_c(s)
    if s.r == 1:
        return SetPartition.from_labels(_base_labels(s.largest)[1:])
    previous = orbit_partition_from_formula(s.head(s.r - 1))
    n = s.N
    uf = UnionFind(n)
    first: dict[int, int] = {}
    for x, label in enumerate(previous.labels, start=1):
        uf.union(first.setdefault(label, x), x)
    r = s.r
    for x in orbit_representatives(s):
        for t in range(1, r + 1):
            step = _m(s.lengths, t, r)
            bound = _m(s.lengths, t + 1, r)
            y = x
            while y < bound:
                uf.union(x, y)
                y += step
    return SetPartition.from_labels(uf.find(x) for x in range(1, n + 1))


def predict_minA(s: LengthSeq) -> MinAVerdict:
    """Predict minA(s) from the closed-form rules.

    Returns:
        Finite(2) for a single length; Infinite when condition C fails;
        for ``i_r >= 2`` Finite(r+1) when the lengths double and Finite(r)
        otherwise; for ``i_r = 1`` Finite(3) for ``(1, i_1)``, Finite(r+1)
        for ``(1, k, 2k, ..., 2^{r-2}k)`` and UnknownBounded(r+1) otherwise.
    """
    r = s.r
    if r == 1:
        return MinAVerdict.finite(2, "single length")
    if not condition_c(s):
        if equal_sum(s):
            rule = "condition C fails: largest equals the sum of the rest"
        elif condition_d(s):
            rule = "condition C fails: condition D holds"
        else:
            rule = "condition C fails"
        return MinAVerdict.infinite(rule)
    if s.smallest >= 2:
        if is_geometric_doubling(s):
            return MinAVerdict.finite(r + 1, "condition C, doubling")
        return MinAVerdict.finite(r, "condition C, not doubling")
    if r == 2:
        return MinAVerdict.finite(3, "one and a single longer length")
    if is_geometric_doubling(LengthSeq(s.lengths[1:])):
        return MinAVerdict.finite(r + 1, "one followed by doubling lengths")
    return MinAVerdict.unknown_bounded(r + 1, "one with condition C")


def predict_dead_ends(s: LengthSeq, letters: int) -> DeadEndVerdict:
    """Predict whether G(s) over ``letters`` letters has dead-ends.

    Dead-ends over l letters come from candidate partitions with exactly
    l blocks built on a length-l subsequence of ``s``, so each such
    subsequence is classified by :func:`predict_minA` as producing (minA
    equal to l), excluded (minA above l or infinite) or undecided.

    Raises:
        ContractViolationError: If fewer than two letters are given or
            ``s`` is longer than the configured subsequence limit.
    """
    if letters < 2:
        raise ContractViolationError(
            "Dead-end analysis needs at least two letters",
            {"letters": letters},
        )
    limit = get_budgets().max_lengths
    if s.r > limit:
        raise ContractViolationError(
            "Too many lengths for subsequence analysis",
            {"r": s.r, "max_lengths": limit},
        )
    if s.r < letters:
        return DeadEndVerdict(
            DeadEndKind.NO_DEAD_ENDS, DeadEndRule.FEWER_LENGTHS
        )

    producing: list[LengthSeq] = []
    undecided: list[LengthSeq] = []
    for sub in s.subsequences(letters):
        verdict = predict_minA(sub)
        if verdict.kind is VerdictKind.UNKNOWN_BOUNDED:
            undecided.append(sub)
        elif verdict.is_finite and verdict.value == letters:
            producing.append(sub)
    logger.debug(
        "predict_dead_ends%s letters=%d: %d producing, %d undecided",
        s,
        letters,
        len(producing),
        len(undecided),
    )

    if s.r == letters:
        if producing:
            return DeadEndVerdict(
                DeadEndKind.HAS_DEAD_ENDS,
                DeadEndRule.SEQUENCE_PRODUCES,
                tuple(producing),
            )
        if undecided:
            return DeadEndVerdict(
                DeadEndKind.UNKNOWN, DeadEndRule.UNDECIDED, (), tuple(undecided)
            )
        return DeadEndVerdict(
            DeadEndKind.NO_DEAD_ENDS, DeadEndRule.SEQUENCE_EXCLUDED
        )
    if not producing and not undecided:
        return DeadEndVerdict(
            DeadEndKind.NO_DEAD_ENDS, DeadEndRule.SUBSEQUENCES_EXCLUDED
        )
    return DeadEndVerdict(
        DeadEndKind.UNKNOWN,
        DeadEndRule.UNDECIDED,
        tuple(producing),
        tuple(undecided),
    )


def condition_c_sequences(
    max_largest: int, max_r: int, min_length: int = 1
) -> Iterator[LengthSeq]:
    """Every sequence satisfying condition C with bounded size, ascending
    by length then lexicographically.
    """

    def grow(prefix: tuple[int, ...]) -> Iterator[tuple[int, ...]]:
        yield prefix
        if len(prefix) == max_r:
            return
        for nxt in range(sum(prefix) + 1, max_largest + 1):
            yield from grow(prefix + (nxt,))

    found = sorted(
        (
            seq
            for first in range(min_length, max_largest + 1)
            for seq in grow((first,))
        ),
        key=lambda seq: (len(seq), seq),
    )
    for seq in found:
        yield LengthSeq(seq)


def increasing_sequences(max_largest: int, max_r: int) -> Iterator[LengthSeq]:
    """Every strictly increasing sequence with ``r <= max_r`` and
    ``i_1 <= max_largest``.
    """
    from itertools import combinations

    for r in range(1, max_r + 1):
        for combo in combinations(range(1, max_largest + 1), r):
            yield LengthSeq(combo)




def sampled_sequences(
    count: int, r: int, max_largest: int, seed: int = 0
) -> list[LengthSeq]:
    """``count`` seeded draws of ``r`` distinct lengths from
    ``1..max_largest``; the same seed gives the same draws.
    """
    if not 1 <= r <= max_largest or count < 0:
        raise ContractViolationError(
            "Cannot draw that many distinct lengths",
            {"count": count, "r": r, "max_largest": max_largest},
        )
    rng = np.random.default_rng(seed)
    return [
        LengthSeq(
            tuple(
                int(x)
                for x in np.sort(
                    rng.choice(
                        np.arange(1, max_largest + 1), size=r, replace=False
                    )
                )
            )
        )
        for _ in range(count)
    ]
