"""Exact minimal alphabet sizes and dead-end words from orbit partitions.

minA(s) is the least number of blocks of a coarsening of o(s) that is
still s-squarefree and keeps the primary pairs apart. The search colors the
blocks of the base partition in restricted-growth order, so candidates come
out in the same order as :func:`coarsenings_with_k_blocks` lists them, and
each constraint is checked as soon as its last block has a color.
"""

from collections.abc import Iterable, Iterator, Sequence
from dataclasses import dataclass, field
from itertools import combinations, permutations
from typing import Optional

import networkx as nx

from sqfree import default_config
from sqfree.config import get_budgets, get_logger
from sqfree.partitions import (
    SetPartition,
    is_candidate,
    is_partition_squarefree,
    orbit_closure,
    primary_pairs,
)
from sqfree.structure import MinAVerdict, VerdictKind
from sqfree.utils.error_classes import (
    BudgetExceededError,
    ContractViolationError,
)
from sqfree.words import (
    LengthSeq,
    Word,
    is_s_squarefree,
    reverse,
    square_created_by_prepend,
)

logger = get_logger(__name__)


@dataclass(frozen=True)
class DifferenceGraph:
    """Orbits that must receive distinct letters.

    Vertices are the orbits touched by a constraint, named by their smallest
    position. Constraints whose two positions already share an orbit cannot
    be edges and are kept in ``conflicts``.
    """

    graph: nx.Graph
    conflicts: tuple[tuple[int, int], ...] = ()

    def edge_set(self) -> set[frozenset[int]]:
        return {frozenset(edge) for edge in self.graph.edges}


def _orbit_names(p: SetPartition) -> list[int]:
    return [min(block) for block in p.blocks]


def difference_graph(s: LengthSeq, unit_edges: bool = True) -> DifferenceGraph:
    """Primary difference graph, plus ``{orbit(x), orbit(x+1)}`` edges when
    ``1`` is in ``s`` and ``unit_edges`` is set.
    """
    o = orbit_closure(s)
    names = _orbit_names(o)
    pairs = primary_pairs(s)
    if unit_edges and 1 in s:
        pairs += [(x, x + 1) for x in range(1, o.n)]
    graph = nx.Graph()
    conflicts = []
    for a, b in pairs:
        u, v = names[o.block_of(a)], names[o.block_of(b)]
        if u == v:
            conflicts.append((a, b))
        else:
            graph.add_edge(u, v)
    return DifferenceGraph(graph, tuple(conflicts))


def primary_difference_graph(s: LengthSeq) -> DifferenceGraph:
    return difference_graph(s, unit_edges=False)


def forced_difference_graph(s: LengthSeq) -> DifferenceGraph:
    """Difference graph plus every pair of orbits whose merge alone already
    puts an s-square into the generic word.

    Squares survive coarsening, so every candidate keeps these pairs apart
    as well; for ``(2,4)`` the path ``2-4-8`` closes into a triangle.
    """
    base = difference_graph(s)
    o = orbit_closure(s)
    names = _orbit_names(o)
    graph = base.graph.copy()
    for a, b in combinations(range(o.num_blocks), 2):
        merged = SetPartition.from_labels(
            a if label == b else label for label in o.labels
        )
        if not is_partition_squarefree(merged, s):
            graph.add_edge(names[a], names[b])
    return DifferenceGraph(graph, base.conflicts)


def find_k_coloring(
    graph: nx.Graph, k: int
) -> Optional[dict[int, int]]:
    """Proper coloring with at most ``k`` colors, or None.

    Vertices are colored largest degree first; each vertex tries the colors
    already in use before opening a new one.
    """
    if k <= 0:
        raise ContractViolationError("k should be greater than 0", {"k": k})
    ordering = sorted(graph.nodes, key=lambda v: (-graph.degree[v], v))
    coloring: dict[int, int] = {}

    def color_from(index: int, used: int) -> bool:
        if index == len(ordering):
            return True
        node = ordering[index]
        forbidden = {
            coloring[n] for n in graph.neighbors(node) if n in coloring
        }
        for color in range(used):
            if color not in forbidden:
                coloring[node] = color
                if color_from(index + 1, used):
                    return True
        if used < k:
            coloring[node] = used
            if color_from(index + 1, used + 1):
                return True
        coloring.pop(node, None)
        return False

    return dict(coloring) if color_from(0, 0) else None


def chromatic_number(graph: nx.Graph | DifferenceGraph) -> int:
    """Exact chromatic number by increasing k.

    Raises:
        BudgetExceededError: If the graph has more vertices than the
            configured chromatic bound.
    """
    if isinstance(graph, DifferenceGraph):
        graph = graph.graph
    limit = get_budgets().chromatic_vertices
    if graph.number_of_nodes() > limit:
        raise BudgetExceededError(
            "Graph too large for exact coloring",
            budget="chromatic_vertices",
            limit=limit,
            requested=graph.number_of_nodes(),
        )
    if graph.number_of_nodes() == 0:
        return 0
    k = 1 if graph.number_of_edges() == 0 else 2
    while find_k_coloring(graph, k) is None:
        k += 1
    return k


class CoarseningSearch:
    """Backtracking over the coarsenings of ``base``.

    A coarsening qualifies when every pair in ``differ`` lands in different
    blocks and no window of ``square_lengths`` becomes a square.

    Args:
        base: The partition whose blocks get merged.
        differ: 1-based position pairs that must stay apart.
        square_lengths: Half-lengths of the forbidden squares.
        node_budget: Largest number of search nodes over the lifetime of
            the instance; the configured budget when omitted.
    """

    def __init__(
        self,
        base: SetPartition,
        differ: Iterable[tuple[int, int]],
        square_lengths: Iterable[int],
        node_budget: Optional[int] = None,
    ) -> None:
        self.base = base
        self.size = base.num_blocks
        self.node_budget = (
            get_budgets().search_nodes if node_budget is None else node_budget
        )
        self.nodes = 0
        self.feasible = True
        self._differ_at: list[list[int]] = [[] for _ in range(self.size)]
        self._windows_at: list[list[tuple[tuple[int, int], ...]]] = [
            [] for _ in range(self.size)
        ]
        labels = base.labels

        for a, b in differ:
            x, y = sorted((labels[a - 1], labels[b - 1]))
            if x == y:
                self.feasible = False
            else:
                self._differ_at[y].append(x)

        seen: set[tuple[tuple[int, int], ...]] = set()
        n = base.n
        for i in square_lengths:
            for start in range(n - 2 * i + 1):
                pairs: set[tuple[int, int]] = set()
                for t in range(i):
                    x, y = labels[start + t], labels[start + t + i]
                    if x != y:
                        pairs.add((min(x, y), max(x, y)))
                window = tuple(sorted(pairs))
                if not window:
                    self.feasible = False
                elif window not in seen:
                    seen.add(window)
                    trigger = max(pair[1] for pair in window)
                    self._windows_at[trigger].append(window)

    def candidates(self, k: int) -> Iterator[SetPartition]:
        """Every qualifying coarsening with exactly ``k`` blocks, in
        lexicographic order of the merge pattern.

        Raises:
            BudgetExceededError: When the node budget runs out.
        """
        if not self.feasible or not 1 <= k <= self.size:
            return
        colors = [0] * self.size

        def ok(block: int) -> bool:
            c = colors[block]
            if any(colors[other] == c for other in self._differ_at[block]):
                return False
            return all(
                any(colors[x] != colors[y] for x, y in window)
                for window in self._windows_at[block]
            )

        def extend(block: int, used: int) -> Iterator[tuple[int, ...]]:
            if block == self.size:
                if used == k:
                    yield tuple(colors)
                return
            if k - used > self.size - block:
                return
            for c in range(min(used + 1, k)):
                self.nodes += 1
                if self.nodes > self.node_budget:
                    raise BudgetExceededError(
                        "Coarsening search exceeded its node budget",
                        budget="search_nodes",
                        limit=self.node_budget,
                        context={"blocks": self.size, "k": k},
                    )
                colors[block] = c
                if ok(block):
                    yield from extend(block + 1, max(used, c + 1))

        for pattern in extend(1, 1):
            yield SetPartition.from_labels(pattern[b] for b in self.base.labels)


@dataclass(frozen=True)
class MinAResult:
    """Outcome of the exact minA search.

    Attributes:
        s: The length sequence.
        verdict: Finite(k), Infinite, or Exceeds(k_max).
        witness: First candidate coarsening with the least block count.
        profile: For every ``k <= k_max``, whether a k-block candidate exists.
        nodes: Search nodes visited.
    """

    s: LengthSeq
    verdict: MinAVerdict
    witness: Optional[SetPartition] = None
    profile: dict[int, bool] = field(default_factory=dict)
    nodes: int = 0


def candidate_coarsenings(
    s: LengthSeq, k: int, node_budget: Optional[int] = None
) -> Iterator[SetPartition]:
    """Every k-block coarsening of o(s) that is a candidate for s."""
    search = CoarseningSearch(
        orbit_closure(s), primary_pairs(s), s, node_budget
    )
    yield from search.candidates(k)


def minA_exact(
    s: LengthSeq,
    k_max: Optional[int] = None,
    node_budget: Optional[int] = None,
) -> MinAResult:
    """Compute minA(s) by exhaustive search over coarsenings of o(s).

    Args:
        s: The length sequence.
        k_max: Largest block count to try; ``r + 2`` when omitted.
        node_budget: Search node cap; the configured budget when omitted.

    Returns:
        Infinite when o(s) itself is not a candidate (coarsening keeps every
        square and every merged pair), otherwise the least ``k`` with a
        candidate, the first such candidate, and the candidacy profile.

    Raises:
        BudgetExceededError: When the node budget runs out.
    """
    k_max = k_max if k_max is not None else s.r + default_config.K_MAX_MARGIN
    if k_max < 1:
        raise ContractViolationError("k_max must be positive", {"k_max": k_max})
    o = orbit_closure(s)
    if not is_candidate(o, s):
        logger.info("minA%s = Infinite (orbit partition fails)", s)
        return MinAResult(
            s,
            MinAVerdict.infinite("orbit partition is not a candidate"),
            profile=dict.fromkeys(range(1, k_max + 1), False),
        )

    search = CoarseningSearch(o, primary_pairs(s), s, node_budget)
    profile: dict[int, bool] = {}
    witness: Optional[SetPartition] = None
    for k in range(1, k_max + 1):
        first = next(search.candidates(k), None)
        profile[k] = first is not None
        if first is not None and witness is None:
            witness = first
    if witness is None:
        verdict = MinAVerdict(VerdictKind.EXCEEDS, k_max, "no candidate")
    else:
        verdict = MinAVerdict.finite(witness.num_blocks, "exact search")
    logger.info(
        "minA%s = %s (%d blocks, %d nodes)",
        s,
        verdict,
        o.num_blocks,
        search.nodes,
    )
    return MinAResult(s, verdict, witness, profile, search.nodes)


def dead_end_words_from(
    s: LengthSeq,
    letters: int,
    orientation: str = "prepend",
    node_budget: Optional[int] = None,
) -> list[Word]:
    """Dead-end words of G(s) over ``letters`` letters, built from orbit
    partitions instead of the graph.

    A word is a dead-end for prepending exactly when it is s-squarefree,
    its partition coarsens o(s') on ``[1..N]`` for a length-``letters``
    subsequence s', and the positions of s' carry pairwise different
    letters. Letters are assigned bijectively to the blocks of each such
    coarsening; under the append orientation the words are reversed.

    Returns:
        The words, sorted.
    """
    if orientation not in ("prepend", "append"):
        raise ContractViolationError(
            "Unknown orientation", {"orientation": orientation}
        )
    if letters < 1:
        raise ContractViolationError(
            "Alphabet needs at least one letter", {"letters": letters}
        )
    words: set[Word] = set()
    for sub in s.subsequences(letters) if s.r >= letters else ():
        base = orbit_closure(sub, s.N)
        search = CoarseningSearch(base, primary_pairs(sub), s, node_budget)
        for candidate in search.candidates(letters):
            for perm in permutations(range(letters)):
                word = tuple(perm[c] for c in candidate.labels)
                if _is_prepend_dead_end(word, s, letters):
                    words.add(word)
    result = sorted(words if orientation == "prepend" else map(reverse, words))
    logger.info(
        "%d dead-end words for %s over %d letters (%s)",
        len(result),
        s,
        letters,
        orientation,
    )
    return result


def _is_prepend_dead_end(w: Sequence[int], s: LengthSeq, letters: int) -> bool:
    return is_s_squarefree(w, s) and all(
        square_created_by_prepend(w[:-1], a, s) is not None
        for a in range(letters)
    )
