"""Error classes for sqfree.

These classes provide rich-formatted error messages, structured error
objects for JSON output, and the process exit code each failure maps to.
"""

from typing import Any, Optional

from rich.text import Text

from sqfree.config import get_logger
from sqfree.utils.ui import Colors, SqfreeUI

logger = get_logger(__name__)


class SqfreeError(Exception):
    """Base exception class for sqfree.

    All custom exceptions in the application inherit from this class.
    Provides rich formatting and context handling for error messages.
    """

    exit_code: int = 1

    def __init__(
        self,
        message: str,
        context: Optional[dict[str, Any]] = None,
        show_traceback: bool = False,
    ) -> None:
        """Initialize the error with a message and optional context.

        Args:
            message: The main error message
            context: Optional dictionary of contextual information
            show_traceback: Whether to show the traceback in rich format
        """
        super().__init__(message)
        self.message = message
        self.context = context or {}
        self.show_traceback = show_traceback

    def to_dict(self) -> dict[str, Any]:
        """Structured form of the error for machine-readable output."""
        return {
            "type": self.__class__.__name__,
            "message": self.message,
            "exit_code": self.exit_code,
            "context": {key: _jsonable(v) for key, v in self.context.items()},
        }

    def display(self, ui: Optional[SqfreeUI] = None) -> None:
        """Display the error message with standardized formatting.

        Args:
            ui: Where to render the panel; a fresh SqfreeUI when omitted.
        """
        logger.error(
            "%s: %s",
            self.__class__.__name__,
            self.message,
            exc_info=self.show_traceback,
        )

        error_text = Text()
        error_text.append(self.message, style=Colors.ERROR.value)

        if self.context:
            error_text.append(
                "\n\nDetails:", style=f"bold {Colors.WARNING.value}"
            )
            for key, value in self.context.items():
                error_text.append(f"\n• {key}: ", style=Colors.WARNING.value)
                error_text.append(str(value), style=Colors.INFO.value)

        if self.show_traceback:
            import traceback

            tb = traceback.format_exc().strip()
            tb_lines = tb.split("\n")
            if len(tb_lines) > 10:
                tb = "\n".join(tb_lines[:3] + ["..."] + tb_lines[-6:])

            error_text.append(
                "\n\nStacktrace:", style=f"bold {Colors.WARNING.value}"
            )
            error_text.append(f"\n{tb}", style=Colors.ERROR.value)

        (ui or SqfreeUI()).notification_panel(error_text, level="error")


class ContractViolationError(SqfreeError):
    """A precondition of an operation does not hold.

    Examples:
        - Position out of range in a square test
        - Ground-set size mismatch between two partitions
        - m-values requested for a sequence failing condition C
    """

    exit_code = 2


class InvalidSequenceError(ContractViolationError):
    """A length sequence is empty, non-positive or not strictly increasing."""


class ConfigurationError(SqfreeError):
    """Invalid configuration or command-line values.

    Examples:
        - Malformed SQFREE_BUDGET
        - An output format the command does not support
        - A malformed audit grid
    """

    exit_code = 2


class EmptyCoreError(ContractViolationError):
    """A walk was requested on a graph whose core has no vertices."""

    def __init__(
        self,
        message: str = "empty core",
        context: Optional[dict[str, Any]] = None,
    ) -> None:
        """Initialize with the default message."""
        super().__init__(message, context)


class BudgetExceededError(SqfreeError):
    """A configured computational cap was exceeded.

    Examples:
        - l**N above the vertex cap when building a graph
        - Coarsening search visiting more nodes than allowed
        - Chromatic number requested for a graph above the vertex bound
    """

    exit_code = 3

    def __init__(
        self,
        message: str,
        budget: str,
        limit: int,
        requested: Optional[int] = None,
        context: Optional[dict[str, Any]] = None,
    ) -> None:
        """Initialize with the name and value of the exceeded budget.

        Args:
            message: The main error message
            budget: Name of the Budgets field that was exceeded
            limit: The configured value of that budget
            requested: The amount the operation needed, when known
            context: Optional additional context
        """
        context = context or {}
        context["budget"] = budget
        context["limit"] = limit
        if requested is not None:
            context["requested"] = requested
        super().__init__(message, context)
        self.budget = budget
        self.limit = limit


class VerificationError(SqfreeError):
    """One or more audit checks failed."""

    exit_code = 4


def _jsonable(value: Any) -> Any:
    if isinstance(value, (str, int, float, bool)) or value is None:
        return value
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    return str(value)
