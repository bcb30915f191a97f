"""Command handlers behind the sqfree CLI.

Each ``cmd_*`` function turns a :class:`RunConfig` into a JSON-friendly
result dict; :func:`run` renders it in the requested format and returns the
process exit code.
"""

import sys
from collections.abc import Callable
from dataclasses import asdict
from typing import Any, TextIO

from rich.console import Console

from sqfree import default_config
from sqfree.config import get_logger
from sqfree.graph import (
    AvoidanceGraph,
    build,
    dead_ends,
    dead_starts,
    prune_core,
    stats,
    to_dot,
    to_json_dict,
)
from sqfree.mina import (
    chromatic_number,
    forced_difference_graph,
    minA_exact,
)
from sqfree.partitions import is_candidate, orbit_closure, primary_pairs
from sqfree.reports import RunConfig, dump_json, envelope, render_text
from sqfree.structure import (
    MinAVerdict,
    condition_c,
    condition_d,
    equal_sum,
    generic_word_recursive,
    has_unit_difference,
    is_geometric_doubling,
    m_table,
    orbit_representatives,
    predict_minA,
)
from sqfree.utils.error_classes import (
    BudgetExceededError,
    ContractViolationError,
    VerificationError,
)
from sqfree.utils.ui import SqfreeUI
from sqfree.verify import parse_grid, run_audit
from sqfree.walks import WalkState, sequential_simulate
from sqfree.words import format_word

logger = get_logger(__name__)


def _verdict(verdict: MinAVerdict) -> dict[str, Any]:
    return {
        "verdict": str(verdict),
        "kind": verdict.kind.value,
        "value": verdict.value,
        "rule": verdict.rule,
    }


def cmd_orbits(config: RunConfig) -> dict[str, Any]:
    """o(s), its generic word and the closed-form data of ``s``."""
    s = config.lengths()
    o = orbit_closure(s)
    c = condition_c(s)
    recursive = (
        str(generic_word_recursive(s)) if c and s.smallest >= 2 else None
    )
    return {
        "sequence": str(s),
        "lengths": list(s),
        "N": s.N,
        "partition": str(o),
        "blocks": [sorted(block) for block in o.blocks],
        "num_blocks": o.num_blocks,
        "generic_word": str(o.generic_word()),
        "recursive_generic_word": recursive,
        "condition_c": c,
        "condition_d": condition_d(s) if s.r >= 2 else None,
        "geometric_doubling": is_geometric_doubling(s),
        "equal_sum": equal_sum(s),
        "unit_difference": has_unit_difference(s),
        "candidate": is_candidate(o, s),
        "primary_pairs": [list(pair) for pair in primary_pairs(s)],
        "m_values": [
            {"u": u, "v": v, "m": m} for (u, v), m in sorted(m_table(s).items())
        ]
        if c
        else [],
        "representatives": orbit_representatives(s) if c else [],
    }


def cmd_mina(config: RunConfig) -> dict[str, Any]:
    """Predicted and exact minA with the search witness."""
    s = config.lengths()
    predicted = predict_minA(s)
    exact = minA_exact(s, config.k_max)
    graph = forced_difference_graph(s)
    colors = None
    if not graph.conflicts:
        try:
            colors = chromatic_number(graph)
        except BudgetExceededError as err:
            logger.warning("chromatic number skipped: %s", err.message)
    return {
        "sequence": str(s),
        "predicted": _verdict(predicted),
        "exact": {
            **_verdict(exact.verdict),
            "witness": str(exact.witness) if exact.witness else None,
            "profile": [
                {"k": k, "candidate": found}
                for k, found in sorted(exact.profile.items())
            ],
            "nodes": exact.nodes,
        },
        "agree": predicted.agrees_with(exact.verdict),
        "chromatic_number": colors,
        "difference_graph": {
            "vertices": sorted(graph.graph.nodes),
            "edges": sorted(sorted(edge) for edge in graph.graph.edges),
            "conflicts": [list(pair) for pair in graph.conflicts],
        },
    }


def _build_graph(config: RunConfig) -> AvoidanceGraph:
    return build(
        config.lengths(),
        config.letters,
        config.orientation,
        config.vertex_cap,
    )


def cmd_graph(config: RunConfig) -> dict[str, Any]:
    """Statistics of G(s), with the requested vertex lists."""
    graph = _build_graph(config)
    result: dict[str, Any] = {
        "sequence": str(graph.s),
        "letters": graph.letters,
        "orientation": graph.orientation,
        "stats": asdict(stats(graph)),
    }
    if config.dead_ends:
        result["dead_ends"] = [format_word(w) for w in dead_ends(graph)]
    if config.dead_starts:
        result["dead_starts"] = [format_word(w) for w in dead_starts(graph)]
    exported = graph
    if config.core:
        exported = prune_core(graph)
        result["core_vertices"] = [format_word(w) for w in exported.words()]
    if config.output_format == "json":
        result["graph"] = to_json_dict(exported)
    return result


def cmd_simulate(config: RunConfig) -> dict[str, Any]:
    """The sequential method over ``trials`` consecutive seeds."""
    s = config.lengths()
    steps = config.steps or default_config.SIMULATE_STEPS
    trials = []
    for trial in range(config.trials):
        seed = config.seed + trial
        outcome = sequential_simulate(s, config.letters, seed, steps)
        trials.append(
            {
                "trial": trial + 1,
                "seed": seed,
                "outcome": outcome.kind,
                "steps": outcome.steps,
                "word_length": len(outcome.word),
                "tail": format_word(outcome.word[-s.N :]),
            }
        )
    dead = sum(t["outcome"] == "dead_end" for t in trials)
    return {
        "sequence": str(s),
        "letters": config.letters,
        "max_steps": steps,
        "trials": trials,
        "dead_ends": dead,
        "survived": len(trials) - dead,
    }


def cmd_verify(config: RunConfig) -> dict[str, Any]:
    return run_audit(
        parse_grid(config.grid),
        config.word_length or default_config.ORACLE_WORD_LENGTH,
        config.walk_steps or default_config.VERIFY_WALK_STEPS,
        config.threads,
        config.seed,
    )


def cmd_walk(config: RunConfig, out: TextIO) -> None:
    """Stream the letters of a seeded walk on the core of G(s).

    Text output is the letters on one line. JSON output is one line per
    event: a report header with the start vertex, then every step.
    """
    core = prune_core(_build_graph(config))
    state = WalkState(core, config.seed)
    steps = default_config.WALK_STEPS if config.steps is None else config.steps
    as_json = config.output_format == "json"
    if as_json:
        header = {
            "event": "start",
            "start": format_word(core.decode(state.current)),
            "core_vertices": len(core),
        }
        out.write(dump_json(envelope(config, header), lines=True) + "\n")
    for step in range(1, steps + 1):
        letter = format_word((state.step(),))
        if as_json:
            event = {"event": "step", "step": step, "letter": letter}
            out.write(dump_json(event, lines=True) + "\n")
        else:
            out.write(letter)
    if as_json:
        out.write(dump_json({"event": "end", "steps": steps}, lines=True))
    out.write("\n")
    logger.info("walk on G%s: %d letters", core.s, steps)


Handler = Callable[[RunConfig], dict[str, Any]]

HANDLERS: dict[str, Handler] = {
    "orbits": cmd_orbits,
    "mina": cmd_mina,
    "graph": cmd_graph,
    "simulate": cmd_simulate,
    "verify": cmd_verify,
}


def run(
    config: RunConfig,
    out: TextIO | None = None,
    console: Console | None = None,
) -> int:
    """Execute one command and write its output.

    Returns:
        0 on success, or the verification exit code when an audit fails.

    Raises:
        SqfreeError: Any library error; the caller maps it to an exit code.
    """
    out = out or sys.stdout
    console = console or Console(file=out)
    if config.output_format == "dot" and config.command != "graph":
        raise ContractViolationError(
            "DOT output is only available for graph",
            {"command": config.command},
        )
    if config.command == "walk":
        cmd_walk(config, out)
        return 0
    if config.output_format == "dot":
        graph = _build_graph(config)
        out.write(to_dot(prune_core(graph) if config.core else graph) + "\n")
        return 0

    result = HANDLERS[config.command](config)
    if config.output_format == "json":
        out.write(dump_json(envelope(config, result)) + "\n")
    else:
        render_text(config, result, console)

    if config.command == "verify" and not result["passed"]:
        error = VerificationError(
            "Audit checks failed", {"failures": result["failures"]}
        )
        if config.output_format == "text":
            error.display(SqfreeUI(console=console))
        return error.exit_code
    return 0
