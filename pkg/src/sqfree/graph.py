"""The avoidance graph G(s) over an alphabet of l letters.

Vertices are the s-squarefree words of length N = 2·i_1, packed as base-l
integers (first letter most significant) in a sorted numpy array. Arcs are
implicit. With the default ``prepend`` orientation a word ``w`` points to
``a·w_1…w_{N-1}``; with ``append`` it points to ``w_2…w_N·a``. The two
graphs are edge-reversals of each other, so dead-ends of one are the
dead-starts of the other.
"""

from collections.abc import Iterator
from dataclasses import dataclass
from typing import Any, Literal, Optional, cast

import graphviz
import networkx as nx
import numpy as np
import numpy.typing as npt

from sqfree.config import get_budgets, get_logger
from sqfree.utils.error_classes import (
    BudgetExceededError,
    ContractViolationError,
)
from sqfree.words import LengthSeq, Word, format_word

logger = get_logger(__name__)

Orientation = Literal["prepend", "append"]
ORIENTATIONS: tuple[Orientation, ...] = ("prepend", "append")

Codes = npt.NDArray[np.int64]


@dataclass(frozen=True)
class GraphStats:
    vertices: int
    arcs: int
    dead_ends: int
    dead_starts: int
    core: int


@dataclass(frozen=True, eq=False)
class AvoidanceGraph:
    """Induced subgraph of G(s) on the vertex codes ``codes``.

    Attributes:
        s: The length sequence.
        letters: Alphabet size l.
        orientation: Arc direction, "prepend" or "append".
        codes: Sorted packed vertex words.
    """

    s: LengthSeq
    letters: int
    orientation: Orientation
    codes: Codes

    @property
    def N(self) -> int:
        return self.s.N

    @property
    def _shift(self) -> int:
        return int(self.letters ** (self.N - 1))

    def __len__(self) -> int:
        return int(self.codes.size)

    def encode(self, w: Word) -> int:
        if len(w) != self.N or any(not 0 <= a < self.letters for a in w):
            raise ContractViolationError(
                "Word does not fit the graph",
                {"word": format_word(w), "N": self.N, "letters": self.letters},
            )
        code = 0
        for a in w:
            code = code * self.letters + a
        return code

    def decode(self, code: int) -> Word:
        digits = []
        for _ in range(self.N):
            code, a = divmod(code, self.letters)
            digits.append(a)
        return tuple(reversed(digits))

    def words(self) -> Iterator[Word]:
        for code in self.codes.tolist():
            yield self.decode(code)

    def index_of(
        self, candidates: Codes
    ) -> tuple[npt.NDArray[np.intp], npt.NDArray[np.bool_]]:
        """Positions of ``candidates`` in ``codes`` and a membership mask."""
        idx = np.searchsorted(self.codes, candidates)
        if self.codes.size == 0:
            return idx, np.zeros(candidates.shape, dtype=bool)
        clipped = np.minimum(idx, self.codes.size - 1)
        return clipped, self.codes[clipped] == candidates

    def contains(self, w: Word) -> bool:
        _, found = self.index_of(np.array([self.encode(w)], dtype=np.int64))
        return bool(found[0])

    def _forward(self, codes: Codes, a: int) -> Codes:
        if self.orientation == "prepend":
            return a * self._shift + codes // self.letters
        return (codes % self._shift) * self.letters + a

    def _backward(self, codes: Codes, a: int) -> Codes:
        if self.orientation == "prepend":
            return (codes % self._shift) * self.letters + a
        return a * self._shift + codes // self.letters

    def degrees_within(
        self, alive: npt.NDArray[np.bool_], forward: bool
    ) -> npt.NDArray[np.int64]:
        """Out- (or in-) degrees counting only neighbours marked alive."""
        step = self._forward if forward else self._backward
        degree = np.zeros(self.codes.size, dtype=np.int64)
        for a in range(self.letters):
            idx, found = self.index_of(step(self.codes, a))
            degree += found & alive[idx]
        return degree

    def out_degree(self) -> npt.NDArray[np.int64]:
        return self.degrees_within(np.ones(self.codes.size, dtype=bool), True)

    def in_degree(self) -> npt.NDArray[np.int64]:
        return self.degrees_within(np.ones(self.codes.size, dtype=bool), False)

    def successors(self, w: Word) -> list[Word]:
        return self._neighbours(w, forward=True)

    def predecessors(self, w: Word) -> list[Word]:
        return self._neighbours(w, forward=False)

    def _neighbours(self, w: Word, forward: bool) -> list[Word]:
        code = np.array([self.encode(w)], dtype=np.int64)
        step = self._forward if forward else self._backward
        result = []
        for a in range(self.letters):
            nxt = step(code, a)
            _, found = self.index_of(nxt)
            if found[0]:
                result.append(self.decode(int(nxt[0])))
        return result

    def arcs(self) -> Iterator[tuple[int, int, int]]:
        """Arcs as ``(source index, target index, added letter)``."""
        for a in range(self.letters):
            idx, found = self.index_of(self._forward(self.codes, a))
            for source in np.flatnonzero(found).tolist():
                yield source, int(idx[source]), a

    def restrict(self, keep: npt.NDArray[np.bool_]) -> "AvoidanceGraph":
        return AvoidanceGraph(
            self.s, self.letters, self.orientation, self.codes[keep]
        )


def _check_orientation(orientation: str) -> Orientation:
    if orientation not in ORIENTATIONS:
        raise ContractViolationError(
            "Unknown orientation",
            {"orientation": orientation, "allowed": list(ORIENTATIONS)},
        )
    return cast(Orientation, orientation)


def build(
    s: LengthSeq,
    letters: int,
    orientation: str = "prepend",
    vertex_cap: Optional[int] = None,
) -> AvoidanceGraph:
    """Build G(s) over ``letters`` letters.

    Squarefree words are grown one letter at a time; at each length only
    the squares ending at the new letter need checking.

    Args:
        s: The length sequence.
        letters: Alphabet size, at least 1.
        orientation: "prepend" (default) or "append".
        vertex_cap: Largest ``letters**N`` allowed; the configured cap when
            omitted.

    Raises:
        BudgetExceededError: If ``letters**N`` exceeds the cap or does not
            fit a signed 64-bit code.
    """
    orient = _check_orientation(orientation)
    if letters < 1:
        raise ContractViolationError(
            "Alphabet needs at least one letter", {"letters": letters}
        )
    cap = get_budgets().vertex_cap if vertex_cap is None else vertex_cap
    n = s.N
    candidates = letters**n
    widest = int(np.iinfo(np.int64).max)
    if candidates > widest:
        raise BudgetExceededError(
            f"l**N = {letters}**{n} does not fit packed 64-bit codes",
            budget="code_width",
            limit=widest,
            requested=candidates,
            context={"s": str(s), "letters": letters},
        )
    if candidates > cap:
        raise BudgetExceededError(
            f"l**N = {letters}**{n} exceeds the vertex cap",
            budget="vertex_cap",
            limit=cap,
            requested=candidates,
            context={"s": str(s), "letters": letters},
        )

    codes = np.arange(letters, dtype=np.int64)
    for length in range(2, n + 1):
        grown = (codes[:, None] * letters + np.arange(letters)).ravel()
        checked = [i for i in s if 2 * i <= length]
        if checked:
            depth = 2 * checked[-1]
            # digits[k] is the letter k places before the end
            digits = [(grown // letters**k) % letters for k in range(depth)]
            keep = np.ones(grown.size, dtype=bool)
            for i in checked:
                square = np.ones(grown.size, dtype=bool)
                for t in range(i):
                    square &= digits[t] == digits[t + i]
                keep &= ~square
            grown = grown[keep]
        codes = grown
        if codes.size == 0:
            break
    graph = AvoidanceGraph(s, letters, orient, codes)
    logger.info(
        "G%s over %d letters: %d vertices (%s)", s, letters, len(graph), orient
    )
    return graph


def _as_words(
    graph: AvoidanceGraph, mask: npt.NDArray[np.bool_]
) -> list[Word]:
    return [graph.decode(code) for code in graph.codes[mask].tolist()]


def dead_ends(graph: AvoidanceGraph) -> list[Word]:
    """Vertices with out-degree 0, in code order."""
    return _as_words(graph, graph.out_degree() == 0)


def dead_starts(graph: AvoidanceGraph) -> list[Word]:
    """Vertices with in-degree 0, in code order."""
    return _as_words(graph, graph.in_degree() == 0)


def prune_core(graph: AvoidanceGraph) -> AvoidanceGraph:
    """Largest induced subgraph where every vertex has an in- and an
    out-neighbour, by deleting sources and sinks until nothing changes.
    """
    alive = np.ones(len(graph), dtype=bool)
    rounds = 0
    while True:
        out_deg = graph.degrees_within(alive, True)
        in_deg = graph.degrees_within(alive, False)
        remove = alive & ((out_deg == 0) | (in_deg == 0))
        if not remove.any():
            break
        alive &= ~remove
        rounds += 1
        logger.debug("prune round %d removed %d", rounds, int(remove.sum()))
    core = graph.restrict(alive)
    logger.info(
        "core of G%s: %d of %d vertices after %d rounds",
        graph.s,
        len(core),
        len(graph),
        rounds,
    )
    return core


def stats(graph: AvoidanceGraph) -> GraphStats:
    """Vertex, arc, dead-end and dead-start counts, and the core size."""
    out_deg = graph.out_degree()
    return GraphStats(
        vertices=len(graph),
        arcs=int(out_deg.sum()),
        dead_ends=int((out_deg == 0).sum()),
        dead_starts=int((graph.in_degree() == 0).sum()),
        core=len(prune_core(graph)),
    )


def to_networkx(graph: AvoidanceGraph) -> nx.DiGraph:
    """Explicit digraph on letter strings; arcs carry the added letter."""
    names = [format_word(w) for w in graph.words()]
    g = nx.DiGraph()
    g.add_nodes_from(names)
    for source, target, a in graph.arcs():
        g.add_edge(names[source], names[target], letter=format_word((a,)))
    return g


def to_dot(graph: AvoidanceGraph) -> str:
    """DOT source with letter-string vertex labels."""
    names = [format_word(w) for w in graph.words()]
    dot = graphviz.Digraph(
        name=f"G{graph.s}",
        graph_attr={
            "rankdir": "LR",
            "label": f"G{graph.s}, l={graph.letters}",
        },
        node_attr={"shape": "box", "fontname": "monospace"},
        edge_attr={"arrowsize": "0.5"},
    )
    for index, name in enumerate(names):
        dot.node(f"v{index}", name)
    for source, target, a in graph.arcs():
        dot.edge(f"v{source}", f"v{target}", label=format_word((a,)))
    return dot.source


def to_json_dict(graph: AvoidanceGraph) -> dict[str, Any]:
    """Vertices as letter strings, arcs as ``[source, target]`` indices."""
    return {
        "s": list(graph.s.lengths),
        "letters": graph.letters,
        "orientation": graph.orientation,
        "vertices": [format_word(w) for w in graph.words()],
        "arcs": [[source, target] for source, target, _ in graph.arcs()],
    }
