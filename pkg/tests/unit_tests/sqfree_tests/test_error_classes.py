import pytest

from sqfree.utils.error_classes import (
    BudgetExceededError,
    ConfigurationError,
    ContractViolationError,
    EmptyCoreError,
    InvalidSequenceError,
    SqfreeError,
    VerificationError,
)
from sqfree.utils.ui import SqfreeUI
from sqfree.words import LengthSeq


@pytest.mark.parametrize(
    "error_class, exit_code",
    [
        (SqfreeError, 1),
        (ContractViolationError, 2),
        (InvalidSequenceError, 2),
        (ConfigurationError, 2),
        (VerificationError, 4),
    ],
)
def test_exit_codes(error_class, exit_code):
    assert error_class("boom").exit_code == exit_code


def test_hierarchy():
    assert issubclass(InvalidSequenceError, ContractViolationError)
    assert issubclass(EmptyCoreError, ContractViolationError)
    assert issubclass(BudgetExceededError, SqfreeError)


def test_to_dict_makes_context_serialisable():
    err = ContractViolationError(
        "Bad input", {"s": LengthSeq.of(3, 5), "pairs": [(1, 2)], "n": 4}
    )
    assert err.to_dict() == {
        "type": "ContractViolationError",
        "message": "Bad input",
        "exit_code": 2,
        "context": {"s": "(3,5)", "pairs": [[1, 2]], "n": 4},
    }


def test_budget_error_context():
    err = BudgetExceededError(
        "Too big", budget="vertex_cap", limit=10, requested=1024
    )
    assert err.exit_code == 3
    assert err.budget == "vertex_cap"
    assert err.limit == 10
    assert err.context == {"budget": "vertex_cap", "limit": 10, "requested": 1024}


def test_empty_core_default_message():
    err = EmptyCoreError(context={"s": "(1,2)"})
    assert err.message == "empty core"
    assert str(err) == "empty core"


def test_display(quiet_console):
    err = ConfigurationError("Invalid SQFREE_BUDGET value", {"value": "x"})
    err.display(SqfreeUI(console=quiet_console))
    out = quiet_console.file.getvalue()
    assert "Error" in out
    assert "Invalid SQFREE_BUDGET value" in out
    assert "value: x" in out
