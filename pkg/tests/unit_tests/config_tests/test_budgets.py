import pytest

from sqfree.config import BUDGET_ENV_VAR, Budgets, get_budgets
from sqfree.utils.error_classes import ConfigurationError


def test_defaults_without_variable(monkeypatch):
    monkeypatch.delenv(BUDGET_ENV_VAR, raising=False)
    assert get_budgets() == Budgets()


def test_blank_variable_gives_defaults(monkeypatch):
    monkeypatch.setenv(BUDGET_ENV_VAR, "   ")
    assert get_budgets() == Budgets()


def test_bare_integer_sets_vertex_cap(monkeypatch):
    monkeypatch.setenv(BUDGET_ENV_VAR, "1000")
    budgets = get_budgets()
    assert budgets.vertex_cap == 1000
    assert budgets.search_nodes == Budgets().search_nodes


def test_key_value_pairs(monkeypatch):
    monkeypatch.setenv(
        BUDGET_ENV_VAR, "vertex_cap=500, search_nodes=42,chromatic_vertices=10"
    )
    budgets = get_budgets()
    assert budgets.vertex_cap == 500
    assert budgets.search_nodes == 42
    assert budgets.chromatic_vertices == 10
    assert budgets.max_lengths == Budgets().max_lengths


@pytest.mark.parametrize(
    "raw",
    ["nodes=10", "vertex_cap=0", "-5", "vertex_cap=many", "lots"],
)
def test_invalid_values_raise(raw, monkeypatch):
    monkeypatch.setenv(BUDGET_ENV_VAR, raw)
    with pytest.raises(ConfigurationError) as exc_info:
        get_budgets()
    assert exc_info.value.context["value"] == raw
    assert exc_info.value.exit_code == 2
