from sqfree.cli import parse_args
from sqfree.commands import cmd_graph, cmd_mina, cmd_orbits, cmd_simulate
from sqfree.reports import (
    RunConfig,
    dump_json,
    envelope,
    error_envelope,
    render_text,
)
from sqfree.utils.error_classes import BudgetExceededError
from sqfree.utils.ui import display_table


def config_for(*argv: str) -> RunConfig:
    return RunConfig.from_args(parse_args(list(argv)))


def test_dump_json_sorts_keys():
    assert dump_json({"b": 1, "a": 2}, lines=True) == '{"a":2,"b":1}'
    assert dump_json({"b": 1, "a": 2}).index('"a"') < dump_json(
        {"b": 1, "a": 2}
    ).index('"b"')


def test_envelope_carries_budgets(monkeypatch):
    monkeypatch.setenv("SQFREE_BUDGET", "search_nodes=99")
    config = config_for("orbits", "--s", "3")
    report = envelope(config, {"ok": True})
    assert report["config"]["budgets"]["search_nodes"] == 99
    assert report["config_hash"] == config.config_hash()
    assert report["result"] == {"ok": True}


def test_budget_changes_config_hash(monkeypatch):
    config = config_for("orbits", "--s", "3")
    before = config.config_hash()
    monkeypatch.setenv("SQFREE_BUDGET", "1000")
    assert config.config_hash() != before


def test_error_envelope_without_config():
    err = BudgetExceededError("Too big", budget="vertex_cap", limit=1)
    report = error_envelope(err)
    assert set(report) == {"tool", "error"}
    assert report["error"]["exit_code"] == 3


def test_render_orbits(quiet_console):
    config = config_for("orbits", "--s", "2,5,11")
    render_text(config, cmd_orbits(config), quiet_console)
    out = quiet_console.file.getvalue()
    assert "Orbit partition o(2,5,11)" in out
    assert "m-values" in out
    assert "Condition C: True" in out


def test_render_mina(quiet_console):
    config = config_for("mina", "--s", "1,2,4", "--k-max", "3")
    result = cmd_mina(config)
    assert result["exact"]["verdict"] == "Exceeds(3)"
    assert result["agree"] is True
    render_text(config, result, quiet_console)
    assert "Candidates by alphabet size" in quiet_console.file.getvalue()


def test_render_graph(quiet_console):
    config = config_for("graph", "--s", "2,3", "--core")
    result = cmd_graph(config)
    assert "graph" not in result
    render_text(config, result, quiet_console)
    out = quiet_console.file.getvalue()
    assert "Graph statistics" in out
    assert "Core vertices" in out


def test_render_simulate(quiet_console):
    config = config_for("simulate", "--s", "1,2", "--steps", "20")
    result = cmd_simulate(config)
    assert result["trials"][0]["tail"] in ("aba", "bab")
    render_text(config, result, quiet_console)
    assert "dead_end" in quiet_console.file.getvalue()


def test_table_title_wider_than_columns(quiet_console):
    display_table(
        quiet_console, "Candidates by alphabet size", [(1, "no")], ["k", "c"]
    )
    out = quiet_console.file.getvalue()
    assert "Candidates by alphabet size" in out
    assert "no" in out
