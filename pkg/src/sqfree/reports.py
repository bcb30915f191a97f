"""Run configuration, report envelopes and their text rendering.

Every command produces a JSON-friendly ``result`` dict. For ``--format json``
it is wrapped in an envelope carrying the tool version, the run
configuration and its hash; for ``--format text`` it is rendered with rich.

Main Functions:
    - RunConfig.from_args: Collects the parsed command-line values.
    - envelope / error_envelope: Machine-readable report wrappers.
    - dump_json: Deterministic JSON serialisation.
    - render_text: Dispatches to the per-command text renderers.
"""

import argparse
import hashlib
import json
from dataclasses import asdict, dataclass
from importlib.resources import files
from typing import Any, Callable, Optional

from rich.console import Console

from sqfree import __version__
from sqfree.config import get_budgets
from sqfree.utils.error_classes import ContractViolationError, SqfreeError
from sqfree.utils.ui import SqfreeUI, display_table
from sqfree.words import LengthSeq

TOOL_NAME = "sqfree"


@dataclass(frozen=True)
class RunConfig:
    """Parsed command-line values of one run.

    ``s`` is kept in its command-line form (ascending, largest last), so
    ``"3,5"`` means ``i_2 = 3`` and ``i_1 = 5``.
    """

    command: str
    s: Optional[str] = None
    letters: int = 2
    seed: int = 0
    steps: Optional[int] = None
    k_max: Optional[int] = None
    vertex_cap: Optional[int] = None
    output_format: str = "text"
    threads: int = 1
    orientation: str = "prepend"
    dead_ends: bool = False
    dead_starts: bool = False
    core: bool = False
    trials: int = 1
    grid: Optional[str] = None
    word_length: Optional[int] = None
    walk_steps: Optional[int] = None

    @classmethod
    def from_args(cls, args: argparse.Namespace) -> "RunConfig":
        names = cls.__dataclass_fields__
        values = {k: v for k, v in vars(args).items() if k in names}
        if values.get("s") is not None:
            values["s"] = ",".join(map(str, LengthSeq.parse(values["s"])))
        return cls(**values)

    def lengths(self) -> LengthSeq:
        """The length sequence, required by every command but ``verify``."""
        if self.s is None:
            raise ContractViolationError(
                "This command needs a length sequence (--s)",
                {"command": self.command},
            )
        return LengthSeq.parse(self.s)

    def to_dict(self) -> dict[str, Any]:
        data = asdict(self)
        data["budgets"] = asdict(get_budgets())
        return data

    def config_hash(self) -> str:
        """Short sha256 of the canonical JSON form of :meth:`to_dict`."""
        canonical = json.dumps(self.to_dict(), sort_keys=True)
        return hashlib.sha256(canonical.encode()).hexdigest()[:16]


def load_schema() -> dict[str, Any]:
    """The JSON schema every JSON output of the CLI validates against."""
    text = files("sqfree").joinpath("schema/report.schema.json").read_text()
    schema: dict[str, Any] = json.loads(text)
    return schema


def tool_info() -> dict[str, str]:
    return {"name": TOOL_NAME, "version": __version__}


def envelope(config: RunConfig, result: dict[str, Any]) -> dict[str, Any]:
    return {
        "tool": tool_info(),
        "command": config.command,
        "config": config.to_dict(),
        "config_hash": config.config_hash(),
        "result": result,
    }


def error_envelope(
    error: SqfreeError, config: Optional[RunConfig] = None
) -> dict[str, Any]:
    report: dict[str, Any] = {"tool": tool_info(), "error": error.to_dict()}
    if config is not None:
        report["command"] = config.command
        report["config_hash"] = config.config_hash()
    return report


def dump_json(data: Any, lines: bool = False) -> str:
    """Serialise with sorted keys; ``lines`` gives a compact NDJSON line."""
    if lines:
        return json.dumps(data, sort_keys=True, separators=(",", ":"))
    return json.dumps(data, sort_keys=True, indent=2)


def _header(ui: SqfreeUI, config: RunConfig, title: str) -> None:
    ui.section(
        title, f"{TOOL_NAME} {__version__}, config {config.config_hash()}"
    )


def render_orbits(ui: SqfreeUI, config: RunConfig, res: dict[str, Any]) -> None:
    _header(ui, config, f"Orbit partition o{res['sequence']}")
    ui.highlight("Blocks", res["partition"])
    ui.highlight("Generic word", res["generic_word"])
    if res["recursive_generic_word"] is not None:
        ui.highlight("Recursive generic word", res["recursive_generic_word"])
    ui.highlight("Number of orbits", str(res["num_blocks"]))
    ui.highlight("Condition C", str(res["condition_c"]))
    if res["condition_d"] is not None:
        ui.highlight("Condition D", str(res["condition_d"]))
    ui.highlight("Geometric doubling", str(res["geometric_doubling"]))
    ui.highlight("Some x ~ x+1", str(res["unit_difference"]))
    ui.highlight("Candidate", str(res["candidate"]))
    if res["m_values"]:
        display_table(
            ui.console,
            "m-values",
            [(m["u"], m["v"], m["m"]) for m in res["m_values"]],
            ["u", "v", "m(u,v)"],
            style_columns=[2],
        )
    if res["representatives"]:
        ui.highlight(
            "Representatives", ", ".join(map(str, res["representatives"]))
        )


def _verdict_text(verdict: dict[str, Any]) -> str:
    rule = verdict.get("rule")
    return f"{verdict['verdict']} ({rule})" if rule else verdict["verdict"]


def render_mina(ui: SqfreeUI, config: RunConfig, res: dict[str, Any]) -> None:
    _header(ui, config, f"minA{res['sequence']}")
    ui.highlight("Predicted", _verdict_text(res["predicted"]))
    exact = res["exact"]
    ui.highlight("Exact", _verdict_text(exact))
    if exact["witness"] is not None:
        ui.highlight("Witness", exact["witness"])
    ui.highlight("Search nodes", str(exact["nodes"]))
    if res["chromatic_number"] is not None:
        ui.highlight("Difference graph colors", str(res["chromatic_number"]))
    display_table(
        ui.console,
        "Candidates by alphabet size",
        [
            (row["k"], "yes" if row["candidate"] else "no")
            for row in exact["profile"]
        ],
        ["k", "candidate"],
    )
    if res["agree"]:
        ui.success("Prediction and search agree")
    else:
        ui.warning("Prediction and search disagree")


def render_graph(ui: SqfreeUI, config: RunConfig, res: dict[str, Any]) -> None:
    _header(
        ui,
        config,
        f"G{res['sequence']} over {res['letters']} letters "
        f"({res['orientation']})",
    )
    stats = res["stats"]
    display_table(
        ui.console,
        "Graph statistics",
        [(key.replace("_", " "), value) for key, value in stats.items()],
        ["quantity", "count"],
        style_columns=[1],
    )
    for key, title in (
        ("dead_ends", "Dead-ends"),
        ("dead_starts", "Dead-starts"),
        ("core_vertices", "Core vertices"),
    ):
        words = res.get(key)
        if words is None:
            continue
        ui.highlight(title, str(len(words)))
        for word in words:
            ui.console.print(f"  {word}", highlight=False)


def render_simulate(
    ui: SqfreeUI, config: RunConfig, res: dict[str, Any]
) -> None:
    _header(
        ui,
        config,
        f"Sequential method for {res['sequence']} over "
        f"{res['letters']} letters",
    )
    display_table(
        ui.console,
        "Trials",
        [
            (t["trial"], t["seed"], t["outcome"], t["steps"], t["tail"])
            for t in res["trials"]
        ],
        ["trial", "seed", "outcome", "steps", "last letters"],
        style_columns=[2],
    )
    ui.highlight("Dead-ends", str(res["dead_ends"]))
    ui.highlight("Survived", str(res["survived"]))


def render_verify(ui: SqfreeUI, config: RunConfig, res: dict[str, Any]) -> None:
    grid = res["grid"]
    _header(
        ui,
        config,
        f"Audit: r<={grid['r']}, i1<={grid['i1']}, l<={grid['l']}",
    )
    display_table(
        ui.console,
        "Suites",
        [
            (suite["name"], suite["checked"], len(suite["failures"]))
            for suite in res["suites"]
        ],
        ["suite", "checked", "failures"],
        style_columns=[2],
    )
    display_table(
        ui.console,
        "Dead-end verdicts",
        [
            (
                row["sequence"],
                row["letters"],
                row["predicted"],
                row["observed"],
                row["status"],
            )
            for row in res["dead_end_verdicts"]
        ],
        ["s", "l", "predicted", "dead-ends", "status"],
        style_columns=[4],
    )
    if res["unknown"]:
        ui.info(
            "Undecided by the closed-form rules: "
            + ", ".join(
                f"{u['sequence']} l={u['letters']}" for u in res["unknown"]
            )
        )
    for suite in res["suites"]:
        for failure in suite["failures"]:
            ui.error(f"{suite['name']}: {failure}")
    if res["passed"]:
        ui.success("All checks passed")


Renderer = Callable[[SqfreeUI, RunConfig, dict[str, Any]], None]

RENDERERS: dict[str, Renderer] = {
    "orbits": render_orbits,
    "mina": render_mina,
    "graph": render_graph,
    "simulate": render_simulate,
    "verify": render_verify,
}


def render_text(
    config: RunConfig,
    result: dict[str, Any],
    console: Optional[Console] = None,
) -> None:
    RENDERERS[config.command](SqfreeUI(console=console), config, result)
