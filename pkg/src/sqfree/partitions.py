"""Set partitions of positions, τ-permutations and orbit partitions.

A :class:`SetPartition` of ``[1..n]`` is stored as its canonical label
vector: position ``x`` carries the index of its block, blocks numbered by
their smallest element. That vector, read as a string, is the generic word
of the partition (a restricted-growth string).
"""

from collections import deque
from collections.abc import Iterable, Iterator, Sequence
from dataclasses import dataclass
from functools import cached_property
from typing import Optional

from scipy.special import stirling2 as _scipy_stirling2

from sqfree import default_config
from sqfree.config import get_logger
from sqfree.utils.error_classes import ContractViolationError
from sqfree.words import LengthSeq

logger = get_logger(__name__)


class UnionFind:
    """Disjoint sets over ``1..n`` with union by rank and path compression."""

    def __init__(self, n: int) -> None:
        self.parent = list(range(n + 1))
        self.rank = [0] * (n + 1)
        self.size = [1] * (n + 1)

    def find(self, x: int) -> int:
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, x: int, y: int) -> None:
        x, y = self.find(x), self.find(y)
        if x == y:
            return
        if self.rank[x] < self.rank[y]:
            x, y = y, x
        elif self.rank[x] == self.rank[y]:
            self.rank[x] += 1
        self.parent[y] = x
        self.size[x] += self.size[y]


@dataclass(frozen=True)
class SetPartition:
    """A partition of ``[1..n]`` in canonical restricted-growth form."""

    labels: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.labels and self.labels[0] != 0:
            raise ContractViolationError(
                "Partition labels are not canonical", {"labels": self.labels}
            )
        seen = -1
        for label in self.labels:
            if label > seen + 1:
                raise ContractViolationError(
                    "Partition labels are not canonical",
                    {"labels": self.labels},
                )
            seen = max(seen, label)

    @classmethod
    def from_labels(cls, labels: Iterable[object]) -> "SetPartition":
        """Build from any block key per position (canonicalised)."""
        mapping: dict[object, int] = {}
        return cls(tuple(mapping.setdefault(x, len(mapping)) for x in labels))

    @classmethod
    def from_blocks(
        cls, blocks: Iterable[Iterable[int]], n: int
    ) -> "SetPartition":
        """Build from explicit 1-based blocks covering ``[1..n]``."""
        owner = [-1] * n
        for b, block in enumerate(blocks):
            for x in block:
                if not 1 <= x <= n or owner[x - 1] != -1:
                    raise ContractViolationError(
                        "Blocks do not partition the ground set",
                        {"position": x, "n": n},
                    )
                owner[x - 1] = b
        if -1 in owner:
            raise ContractViolationError(
                "Blocks do not cover the ground set",
                {"missing": owner.index(-1) + 1, "n": n},
            )
        return cls.from_labels(owner)

    @classmethod
    def discrete(cls, n: int) -> "SetPartition":
        return cls(tuple(range(n)))

    @property
    def n(self) -> int:
        return len(self.labels)

    @cached_property
    def num_blocks(self) -> int:
        return max(self.labels) + 1 if self.labels else 0

    @cached_property
    def blocks(self) -> tuple[frozenset[int], ...]:
        members: list[list[int]] = [[] for _ in range(self.num_blocks)]
        for x, label in enumerate(self.labels, start=1):
            members[label].append(x)
        return tuple(frozenset(block) for block in members)

    def block_of(self, x: int) -> int:
        """0-based index of the block holding 1-based position ``x``."""
        if not 1 <= x <= self.n:
            raise ContractViolationError(
                "Position out of range", {"x": x, "n": self.n}
            )
        return self.labels[x - 1]

    def similar(self, x: int, y: int) -> bool:
        return self.block_of(x) == self.block_of(y)

    def generic_word(self) -> "GenericWord":
        return GenericWord(self.labels)

    def __str__(self) -> str:
        return ",".join(
            "{" + ",".join(map(str, sorted(block))) + "}"
            for block in self.blocks
        )


@dataclass(frozen=True)
class GenericWord:
    """A restricted-growth string; letter ``k`` is the ``k``-th new block."""

    rgs: tuple[int, ...]

    def to_partition(self) -> SetPartition:
        return SetPartition(self.rgs)

    def __len__(self) -> int:
        return len(self.rgs)

    def __str__(self) -> str:
        symbols = default_config.GENERIC_SYMBOLS
        if self.rgs and max(self.rgs) >= len(symbols):
            return " ".join(str(x) for x in self.rgs)
        return "".join(symbols[x] for x in self.rgs)


@dataclass(frozen=True)
class TauPerm:
    """The involution τ_i on ``[1..N]`` swapping ``t`` and ``t+i`` for t < i."""

    i: int
    N: int

    def __post_init__(self) -> None:
        if self.i < 1 or 2 * self.i > self.N:
            raise ContractViolationError(
                "τ needs 1 <= i and 2i <= N", {"i": self.i, "N": self.N}
            )

    def apply(self, t: int) -> int:
        if not 1 <= t <= self.N:
            raise ContractViolationError(
                "Position out of range", {"t": t, "N": self.N}
            )
        if t < self.i:
            return t + self.i
        if self.i < t < 2 * self.i:
            return t - self.i
        return t

    def orbit_pairs(self) -> Iterator[tuple[int, int]]:
        """The transpositions ``(t, t+i)`` for ``0 < t < i``."""
        return ((t, t + self.i) for t in range(1, self.i))


def tau_apply(i: int, t: int, N: int) -> int:
    """Image of position ``t`` under τ_i on ``[1..N]``."""
    return TauPerm(i, N).apply(t)


def tau_partition(i: int, p: SetPartition) -> SetPartition:
    """Blockwise image ``τ_i(p)``."""
    tau = TauPerm(i, p.n)
    image = [0] * p.n
    for x in range(1, p.n + 1):
        image[tau.apply(x) - 1] = p.labels[x - 1]
    return SetPartition.from_labels(image)


def refines(p: SetPartition, q: SetPartition) -> bool:
    """True iff every block of ``p`` lies inside a block of ``q``."""
    if p.n != q.n:
        raise ContractViolationError(
            "Partitions of different ground sets", {"p": p.n, "q": q.n}
        )
    image: dict[int, int] = {}
    return all(
        image.setdefault(a, b) == b for a, b in zip(p.labels, q.labels)
    )


def orbit_closure(s: LengthSeq, n: Optional[int] = None) -> SetPartition:
    """The orbit partition o(s): the finest partition of ``[1..2·i_1]``
    invariant under every τ_i with ``i`` in ``s``.

    Args:
        s: The length sequence.
        n: Ground set size when larger than ``2·i_1``; positions beyond
            ``2·i_1`` are fixed by every τ_i.
    """
    n = s.N if n is None else n
    if n < s.N:
        raise ContractViolationError(
            "Ground set smaller than 2·i_1", {"n": n, "N": s.N}
        )
    uf = UnionFind(n)
    for i in s:
        for x, y in TauPerm(i, n).orbit_pairs():
            uf.union(x, y)
    p = SetPartition.from_labels(uf.find(x) for x in range(1, n + 1))
    logger.debug("o%s has %d blocks", s, p.num_blocks)
    return p


def orbit_chain(s: LengthSeq, x: int, y: int) -> Optional[list[int]]:
    """Shortest chain ``x = t_0, ..., t_k = y`` where each step applies a
    single τ_i with ``i`` in ``s``; None when ``x`` and ``y`` lie in
    different orbits.
    """
    taus = [TauPerm(i, s.N) for i in s]
    previous: dict[int, Optional[int]] = {x: None}
    queue = deque([x])
    while queue:
        t = queue.popleft()
        if t == y:
            chain = [t]
            while (back := previous[chain[-1]]) is not None:
                chain.append(back)
            return chain[::-1]
        for tau in taus:
            u = tau.apply(t)
            if u not in previous:
                previous[u] = t
                queue.append(u)
    return None


def generic_word_of(p: SetPartition) -> GenericWord:
    """The restricted-growth string of ``p``; equal iff the partitions are."""
    return p.generic_word()


def partition_has_square(p: SetPartition, i: int) -> Optional[int]:
    """Smallest 1-based ``j`` with ``j+t ~ j+t+i`` for all ``0 <= t < i``.

    Raises:
        ContractViolationError: If ``2i`` exceeds the ground set.
    """
    if i < 1 or 2 * i > p.n:
        raise ContractViolationError(
            "Square length does not fit the partition", {"i": i, "n": p.n}
        )
    labels = p.labels
    for start in range(p.n - 2 * i + 1):
        if labels[start : start + i] == labels[start + i : start + 2 * i]:
            return start + 1
    return None


def is_partition_squarefree(p: SetPartition, s: LengthSeq) -> bool:
    return all(
        partition_has_square(p, i) is None for i in s if 2 * i <= p.n
    )


def primary_pairs(s: LengthSeq) -> list[tuple[int, int]]:
    """Position pairs ``(i_j, i_k)`` and ``(i_j, 2i_j)`` that must differ."""
    pairs = [(a, b) for k, a in enumerate(s) for b in s.lengths[k + 1 :]]
    return pairs + [(i, 2 * i) for i in s]


def primary_violations(
    p: SetPartition, s: LengthSeq
) -> list[tuple[int, int]]:
    """Pairs among ``{i_j, i_k}`` and ``{i_j, 2i_j}`` that share a block."""
    if p.n != s.N:
        raise ContractViolationError(
            "Primary conditions need a partition of [1..2·i_1]",
            {"n": p.n, "N": s.N},
        )
    return [(a, b) for a, b in primary_pairs(s) if p.similar(a, b)]


def primary_conditions_ok(p: SetPartition, s: LengthSeq) -> bool:
    """True iff no pair from :func:`primary_pairs` shares a block of ``p``."""
    return not primary_violations(p, s)


def is_candidate(p: SetPartition, s: LengthSeq) -> bool:
    """s-squarefree and satisfying the primary difference conditions."""
    return is_partition_squarefree(p, s) and primary_conditions_ok(p, s)


def restricted_growth_strings(m: int, k: int) -> Iterator[tuple[int, ...]]:
    """All RGS of length ``m`` using exactly ``k`` symbols, lexicographically."""
    if k < 1 or k > m:
        if m == 0 and k == 0:
            yield ()
        return
    rgs = [0] * m

    def extend(pos: int, used: int) -> Iterator[tuple[int, ...]]:
        if pos == m:
            if used == k:
                yield tuple(rgs)
            return
        # enough positions must remain to introduce the missing symbols
        if k - used > m - pos:
            return
        for symbol in range(min(used + 1, k)):
            rgs[pos] = symbol
            yield from extend(pos + 1, max(used, symbol + 1))

    rgs[0] = 0
    yield from extend(1, 1)


def merge_blocks(p: SetPartition, pattern: Sequence[int]) -> SetPartition:
    """Coarsen ``p`` by sending block ``b`` to group ``pattern[b]``."""
    return SetPartition.from_labels(pattern[label] for label in p.labels)


def coarsenings_with_k_blocks(
    p: SetPartition, k: int
) -> Iterator[SetPartition]:
    """Every coarsening of ``p`` with exactly ``k`` blocks.

    Yields S(|p|, k) partitions, ordered lexicographically by the merge
    pattern on the blocks of ``p``.
    """
    for pattern in restricted_growth_strings(p.num_blocks, k):
        yield merge_blocks(p, pattern)


def stirling2(n: int, k: int) -> int:
    """Stirling number of the second kind S(n, k), exact."""
    return int(_scipy_stirling2(n, k, exact=True))
