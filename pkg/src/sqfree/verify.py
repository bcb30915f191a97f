"""Audit suites cross-checking the closed-form results against brute force.

Each suite returns a :class:`SuiteResult` counting the checks it made and
describing every failure. The dead-end audit runs one case per ``(s, l)``
on the grid, optionally spread over worker processes; results are
collected in case order, so the report does not depend on the number of
workers.
"""

import re
from collections.abc import Iterable
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from itertools import product
from typing import Any, Optional

import numpy as np
import numpy.typing as npt
import pandas as pd
from tqdm import tqdm

from sqfree import default_config
from sqfree.config import get_logger
from sqfree.graph import build, dead_ends, dead_starts, prune_core
from sqfree.mina import (
    chromatic_number,
    dead_end_words_from,
    forced_difference_graph,
    minA_exact,
)
from sqfree.partitions import (
    SetPartition,
    generic_word_of,
    is_candidate,
    orbit_chain,
    orbit_closure,
    partition_has_square,
    refines,
    tau_partition,
)
from sqfree.structure import (
    DeadEndKind,
    VerdictKind,
    condition_c,
    condition_c_sequences,
    condition_d,
    equal_sum,
    generic_word_recursive,
    has_unit_difference,
    increasing_sequences,
    is_geometric_doubling,
    m_table,
    orbit_partition_from_formula,
    predict_minA,
    predict_dead_ends,
    sampled_sequences,
)
from sqfree.utils.error_classes import ContractViolationError
from sqfree.walks import explore_sequential, random_walk, sequential_simulate
from sqfree.words import (
    LengthSeq,
    find_squares,
    format_word,
    is_s_squarefree,
    parse_word,
    reverse,
    square_created_by_append,
    square_created_by_prepend,
)

logger = get_logger(__name__)

GRID_KEYS = ("r", "i1", "l")


@dataclass
class SuiteResult:
    name: str
    checked: int = 0
    failures: list[str] = field(default_factory=list)

    def check(self, ok: bool, detail: str) -> None:
        self.checked += 1
        if not ok:
            self.failures.append(detail)

    @property
    def passed(self) -> bool:
        return not self.failures

    def to_dict(self) -> dict[str, Any]:
        return {
            "name": self.name,
            "checked": self.checked,
            "failures": list(self.failures),
        }


@dataclass(frozen=True)
class AuditCase:
    """Outcome of the dead-end audit for one ``(s, l)``."""

    sequence: str
    letters: int
    predicted: str
    rule: str
    observed: int
    status: str
    checked: int
    failures: tuple[str, ...]


def parse_grid(text: Optional[str]) -> dict[str, int]:
    """Parse ``"r<=3,i1<=7,l<=3"``; missing keys keep their defaults.

    Raises:
        ContractViolationError: On unknown keys, malformed items or bounds
            outside their ranges.
    """
    grid = dict(default_config.AUDIT_GRID)
    if not text:
        return grid
    for item in text.split(","):
        key, sep, value = item.strip().partition("<=")
        key = key.strip()
        if not sep or key not in GRID_KEYS or not value.strip().isdigit():
            raise ContractViolationError(
                "Grid items look like r<=3, i1<=7 or l<=3",
                {"item": item, "grid": text},
            )
        grid[key] = int(value)
    if grid["r"] < 1 or grid["i1"] < 1 or grid["l"] < 2:
        raise ContractViolationError(
            "Grid needs r>=1, i1>=1 and l>=2", {"grid": grid}
        )
    return grid


def scan_squarefree(text: str, s: LengthSeq) -> bool:
    """Independent s-squarefreeness test with a backreference regex."""
    return not any(re.search(rf"(.{{{i}}})\1", text) for i in s)


def naive_square_table(
    words: npt.NDArray[np.int8], lengths: Iterable[int]
) -> tuple[list[tuple[int, int]], npt.NDArray[np.bool_]]:
    """Brute-force window scan over a stack of equal-length words.

    Returns:
        The ``(length, start)`` windows, 1-based and ordered by length then
        start, and a boolean table with one row per word and one column per
        window marking the squares.
    """
    n = words.shape[1]
    windows = [
        (i, start + 1)
        for i in lengths
        for start in range(n - 2 * i + 1)
    ]
    table = np.zeros((words.shape[0], len(windows)), dtype=bool)
    for col, (i, j) in enumerate(windows):
        left = words[:, j - 1 : j - 1 + i]
        right = words[:, j - 1 + i : j - 1 + 2 * i]
        table[:, col] = (left == right).all(axis=1)
    return windows, table


def word_oracle_suite(
    word_length: int, letters: Optional[int] = None
) -> SuiteResult:
    """Square tests against a brute-force window scan on every word over
    ``letters`` letters up to ``word_length``.

    Each word is checked under ``s = (1, ..., n/2)`` and under the same
    sequence without 1; squares created by appending or prepending are
    checked whenever the shorter word is squarefree.
    """
    if letters is None:
        letters = default_config.ORACLE_LETTERS
    suite = SuiteResult("word oracle")
    for n in range(2, word_length + 1):
        full = LengthSeq(tuple(range(1, n // 2 + 1)))
        sequences = [full]
        if full.r > 1:
            sequences.append(LengthSeq(full.lengths[1:]))
        words = np.array(
            list(product(range(letters), repeat=n)), dtype=np.int8
        )
        windows, table = naive_square_table(words, full)
        for row, w in zip(table, words.tolist()):
            text = format_word(w)
            hits = [windows[col] for col in np.flatnonzero(row)]
            found = [(hit.length, hit.start) for hit in find_squares(w, full)]
            suite.check(found == hits, f"find_squares({text}, {full})")
            for s in sequences:
                expected = not any(length in s for length, _ in hits)
                suite.check(
                    is_s_squarefree(w, s) == expected,
                    f"is_s_squarefree({text}, {s})",
                )
            if is_s_squarefree(w[:-1], full):
                ending = any(j + 2 * i - 1 == n for i, j in hits)
                created = square_created_by_append(w[:-1], w[-1], full)
                suite.check(
                    (created is not None) == ending,
                    f"square_created_by_append({text[:-1]}, "
                    f"{text[-1]}, {full})",
                )
            if is_s_squarefree(w[1:], full):
                starting = any(j == 1 for _, j in hits)
                created = square_created_by_prepend(w[1:], w[0], full)
                suite.check(
                    (created is not None) == starting,
                    f"square_created_by_prepend({text[1:]}, "
                    f"{text[0]}, {full})",
                )
    logger.debug("word oracle: %d checks", suite.checked)
    return suite


def golden_suite() -> SuiteResult:
    suite = SuiteResult("golden examples")
    for lengths, expected in (
        ((3, 5), "{1,4,6,9},{2,5,7},{3,8},{10}"),
        ((3,), "{1,4},{2,5},{3},{6}"),
        ((1,), "{1},{2}"),
    ):
        s = LengthSeq(lengths)
        found = str(orbit_closure(s))
        suite.check(found == expected, f"o{s} = {found}")

    s = LengthSeq.of(1, 3, 5)
    w = parse_word("cbacacbac")
    for letter, length in (("a", 5), ("b", 3), ("c", 1)):
        hit = square_created_by_append(w, parse_word(letter)[0], s)
        suite.check(
            hit is not None and hit.length == length,
            f"cbacacbac·{letter} under {s}: {hit}",
        )

    for lengths, words in (
        ((3, 5), ("aabaaaabab", "bbabbbbaba")),
        ((2, 4, 5), ("bbbaabbbab",)),
    ):
        s = LengthSeq(lengths)
        found = {format_word(v) for v in dead_ends(build(s, 2))}
        for word in words:
            suite.check(word in found, f"{word} is a dead-end of G{s}")
    return suite


def orbit_suite(sequences: Iterable[LengthSeq]) -> SuiteResult:
    """Invariance and minimality of o(s), and refinement by subsequences."""
    suite = SuiteResult("orbit closure")
    for s in sequences:
        o = orbit_closure(s)
        for i in s:
            suite.check(tau_partition(i, o) == o, f"τ_{i} moves o{s}")
        reps = [min(block) for block in o.blocks]
        for block, rep in zip(o.blocks, reps):
            for x in block:
                suite.check(
                    orbit_chain(s, rep, x) is not None,
                    f"no chain {rep} -> {x} in o{s}",
                )
        for a, b in zip(reps, reps[1:]):
            suite.check(
                orbit_chain(s, a, b) is None,
                f"chain between orbits of {a} and {b} in o{s}",
            )
        for size in range(1, s.r):
            for sub in s.subsequences(size):
                suite.check(
                    refines(orbit_closure(sub, s.N), o),
                    f"o{sub} does not refine o{s}",
                )
    return suite


def recursion_suite(sequences: Iterable[LengthSeq]) -> SuiteResult:
    suite = SuiteResult("recursive generic words")
    for s in sequences:
        expected = generic_word_of(orbit_closure(s))
        found = generic_word_recursive(s)
        suite.check(found == expected, f"w{s}: {found} != {expected}")
    return suite


def formula_suite(sequences: Iterable[LengthSeq]) -> SuiteResult:
    suite = SuiteResult("orbit union formula")
    for s in sequences:
        expected = orbit_closure(s)
        found = orbit_partition_from_formula(s)
        suite.check(found == expected, f"o{s}: {found} != {expected}")
    return suite


def m_value_suite(sequences: Iterable[LengthSeq]) -> SuiteResult:
    """Boundary values, both recurrences and the inequality chain of m,
    with the bound ``i_{v+1} < m(1, v)``."""
    suite = SuiteResult("m-values")
    for s in sequences:
        m = m_table(s)
        for v in range(1, s.r + 1):
            suite.check(m[v, v] == s.i(v), f"m({v},{v}) of {s}")
            suite.check(m[v + 1, v] == 2 * s.i(v), f"m({v + 1},{v}) of {s}")
            chain = [m[u, v] for u in range(1, v + 2)]
            suite.check(
                chain[0] >= 1
                and all(a <= b for a, b in zip(chain, chain[1:-1]))
                and chain[-2] < chain[-1],
                f"m(.,{v}) of {s} is not increasing: {chain}",
            )
            for u in range(1, v):
                gap = s.i(u) - sum(s.i(t) for t in range(u + 1, v + 1))
                suite.check(
                    m[u, v] == min(gap, m[u + 1, v]),
                    f"m({u},{v}) of {s} breaks the recurrence",
                )
            if v < s.r:
                step = s.i(v + 1)
                suite.check(
                    step < m[1, v], f"i_{v + 1} >= m(1,{v}) of {s}"
                )
                for u in range(1, v + 1):
                    suite.check(
                        m[u, v + 1] == min(m[u, v] - step, step),
                        f"m({u},{v + 1}) of {s} is not derived from m({u},{v})",
                    )
    return suite


def _has_adjacent_pair(o: SetPartition) -> bool:
    return any(o.similar(x, x + 1) for x in range(1, o.n))


def difference_suite(sequences: Iterable[LengthSeq]) -> SuiteResult:
    """Primary difference conditions of o(s) under condition C."""
    suite = SuiteResult("primary differences")
    for s in sequences:
        o = orbit_closure(s)
        lengths = list(s)
        for a in range(len(lengths)):
            for b in range(a + 1, len(lengths)):
                suite.check(
                    not o.similar(lengths[a], lengths[b]),
                    f"{lengths[a]} ~ {lengths[b]} in o{s}",
                )
            suite.check(
                not o.similar(lengths[a], 2 * lengths[a]),
                f"{lengths[a]} ~ {2 * lengths[a]} in o{s}",
            )
        suite.check(
            _has_adjacent_pair(o) == has_unit_difference(s),
            f"x ~ x+1 in o{s} disagrees with the unit difference test",
        )
    return suite


def non_candidate_suite(sequences: Iterable[LengthSeq]) -> SuiteResult:
    """Equal sums, condition D and failing condition C rule out o(s).

    Under an equal sum o(s) must also hold an s-square outright.
    """
    suite = SuiteResult("non-candidacy")
    for s in sequences:
        if s.r < 2:
            continue
        o = orbit_closure(s)
        if equal_sum(s):
            suite.check(not is_candidate(o, s), f"equal sum {s}")
            suite.check(
                any(partition_has_square(o, i) is not None for i in s),
                f"o{s} has no square although i_1 is the sum",
            )
        if condition_d(s):
            suite.check(not is_candidate(o, s), f"condition D {s}")
        if not condition_c(s):
            suite.check(
                not is_candidate(o, s), f"{s} fails condition C"
            )
    return suite


def mina_table() -> list[tuple[LengthSeq, str]]:
    """Known minA values for small sequences."""
    table = [(LengthSeq.of(i), "Finite(2)") for i in range(1, 6)]
    table += [
        (LengthSeq.of(a, b), "Finite(3)" if b == 2 * a else "Finite(2)")
        for a in range(2, 10)
        for b in range(a + 1, 10)
    ]
    table += [(LengthSeq.of(1, b), "Finite(3)") for b in range(2, 8)]
    table += [(LengthSeq.of(k, 2 * k, 4 * k), "Finite(4)") for k in (2, 3)]
    table += [
        (s, "Finite(3)")
        for s in condition_c_sequences(11, 3, min_length=2)
        if s.r == 3 and not is_geometric_doubling(s)
    ]
    table += [
        (LengthSeq.of(1, 2, 4), "Finite(4)"),
        (LengthSeq.of(1, 2, 5), "Finite(4)"),
        (LengthSeq.of(1, 3, 5), "Finite(3)"),
        (LengthSeq.of(2, 3, 5), "Infinite"),
        (LengthSeq.of(2, 4, 5), "Infinite"),
    ]
    return table


def mina_table_suite() -> SuiteResult:
    suite = SuiteResult("minA table")
    for s, expected in mina_table():
        found = str(minA_exact(s).verdict)
        suite.check(found == expected, f"minA{s} = {found}, not {expected}")
    return suite


def predictor_suite(
    sequences: Iterable[LengthSeq], name: str = "predicted vs exact minA"
) -> SuiteResult:
    suite = SuiteResult(name)
    for s in sequences:
        predicted = predict_minA(s)
        exact = minA_exact(s).verdict
        suite.check(
            predicted.agrees_with(exact),
            f"minA{s}: predicted {predicted}, searched {exact}",
        )
        if exact.kind is VerdictKind.FINITE and exact.value is not None:
            colors = chromatic_number(forced_difference_graph(s))
            suite.check(
                colors <= exact.value,
                f"minA{s} = {exact.value} below {colors} forced colors",
            )
    return suite


def audit_case(
    lengths: tuple[int, ...], letters: int, walk_steps: int, seed: int = 0
) -> AuditCase:
    """Dead-end prediction against G(s), plus graph properties of G(s)."""
    s = LengthSeq(lengths)
    failures: list[str] = []
    checked = 0

    def check(ok: bool, detail: str) -> None:
        nonlocal checked
        checked += 1
        if not ok:
            failures.append(f"{s} l={letters}: {detail}")

    graph = build(s, letters)
    ends = dead_ends(graph)
    verdict = predict_dead_ends(s, letters)
    if verdict.kind is DeadEndKind.UNKNOWN:
        status = "unknown"
    elif (verdict.kind is DeadEndKind.HAS_DEAD_ENDS) == bool(ends):
        status = "match"
    else:
        status = "mismatch"
    check(status != "mismatch", f"predicted {verdict}, found {len(ends)}")

    check(
        dead_starts(graph) == sorted(reverse(w) for w in ends),
        "dead-starts are not the reversed dead-ends",
    )
    check(
        dead_end_words_from(s, letters) == ends,
        "dead-end words from orbit partitions differ from the graph",
    )
    core = prune_core(graph)
    again = prune_core(core)
    check(
        np.array_equal(again.codes, core.codes),
        "pruning the core changes it",
    )
    if len(core):
        walk = random_walk(core, seed, walk_steps)
        check(
            scan_squarefree(format_word(walk.word()), s),
            "walk on the core creates a square",
        )
    return AuditCase(
        sequence=str(s),
        letters=letters,
        predicted=str(verdict),
        rule=verdict.rule.value,
        observed=len(ends),
        status=status,
        checked=checked,
        failures=tuple(failures),
    )


def _run_case(case: tuple[tuple[int, ...], int, int, int]) -> AuditCase:
    return audit_case(*case)


def dead_end_audit(
    grid: dict[str, int], walk_steps: int, threads: int = 1, seed: int = 0
) -> list[AuditCase]:
    """Run :func:`audit_case` for every s and l on ``grid``, in order."""
    cases = [
        (s.lengths, letters, walk_steps, seed)
        for s in increasing_sequences(grid["i1"], grid["r"])
        for letters in range(2, grid["l"] + 1)
    ]
    logger.info("dead-end audit: %d cases, %d workers", len(cases), threads)
    if threads <= 1:
        return _progress(map(_run_case, cases), len(cases))
    with ProcessPoolExecutor(max_workers=threads) as pool:
        return _progress(pool.map(_run_case, cases), len(cases))


def _progress(results: Iterable[AuditCase], total: int) -> list[AuditCase]:
    return list(
        tqdm(results, total=total, desc="dead-end audit", disable=None)
    )


def sequential_suite(max_steps: int) -> SuiteResult:
    suite = SuiteResult("sequential method")
    binary = explore_sequential(LengthSeq.of(1, 2), 2, 8)
    suite.check(
        binary.always_dead_ends and max(binary.dead_end_steps) == 4,
        f"(1,2) over 2 letters: {binary}",
    )
    ternary = explore_sequential(LengthSeq.of(1, 2), 3, 8)
    suite.check(ternary.dead_ends == 0, f"(1,2) over 3 letters: {ternary}")
    outcome = sequential_simulate(LengthSeq.of(1, 2), 3, 0, max_steps)
    suite.check(
        not outcome.is_dead_end
        and scan_squarefree(format_word(outcome.word), LengthSeq.of(1, 2)),
        f"(1,2) over 3 letters, seed 0: {outcome}",
    )
    return suite


def run_audit(
    grid: dict[str, int],
    word_length: int,
    walk_steps: int,
    threads: int = 1,
    seed: int = 0,
) -> dict[str, Any]:
    """Run every suite and the dead-end audit.

    Args:
        grid: Bounds on r, i_1 and l for the dead-end audit.
        word_length: Longest word checked by the word oracle.
        walk_steps: Length of the walk taken on every nonempty core.
        threads: Worker processes for the dead-end audit.
        seed: Seed of the core walks.

    Returns:
        The report body: suite results, the dead-end table with a summary
        by alphabet size, the undecided cases and the failure count.
    """
    c_family = list(condition_c_sequences(12, 4, min_length=2))
    small = list(increasing_sequences(9, 3))
    suites = [
        word_oracle_suite(word_length),
        golden_suite(),
        orbit_suite(increasing_sequences(grid["i1"], grid["r"])),
        recursion_suite(c_family),
        formula_suite(condition_c_sequences(12, 4)),
        m_value_suite(condition_c_sequences(12, 4)),
        difference_suite(c_family),
        non_candidate_suite(small),
        non_candidate_suite(
            s for s in increasing_sequences(20, 4) if equal_sum(s)
        ),
        mina_table_suite(),
        predictor_suite(small),
        predictor_suite(
            sampled_sequences(
                default_config.PREDICTOR_SAMPLE,
                4,
                default_config.PREDICTOR_SAMPLE_LARGEST,
                seed,
            ),
            name="predicted vs exact minA, sampled r = 4",
        ),
        sequential_suite(default_config.SIMULATE_STEPS),
    ]

    cases = dead_end_audit(grid, walk_steps, threads, seed)
    graph_suite = SuiteResult("dead-end audit")
    for case in cases:
        graph_suite.checked += case.checked
        graph_suite.failures.extend(case.failures)
    suites.append(graph_suite)

    table = pd.DataFrame([asdict(case) for case in cases])
    summary = (
        table.groupby(["letters", "status"]).size().reset_index(name="count")
    )
    rows = _records(table.drop(columns=["checked", "failures"]))
    unknown = [
        {"sequence": row["sequence"], "letters": row["letters"]}
        for row in rows
        if row["status"] == "unknown"
    ]
    failures = sum(len(suite.failures) for suite in suites)
    for suite in suites:
        logger.info(
            "%s: %d checks, %d failures",
            suite.name,
            suite.checked,
            len(suite.failures),
        )
    return {
        "grid": grid,
        "suites": [suite.to_dict() for suite in suites],
        "dead_end_verdicts": rows,
        "summary": _records(summary),
        "unknown": unknown,
        "failures": failures,
        "passed": failures == 0,
    }


def _records(frame: pd.DataFrame) -> list[dict[str, Any]]:
    return [
        {str(k): v.item() if hasattr(v, "item") else v for k, v in row.items()}
        for row in frame.to_dict("records")
    ]
