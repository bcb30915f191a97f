"""Utilities for sqfree: error classes and terminal rendering."""

from .error_classes import SqfreeError
from .ui import SqfreeUI

__all__ = ["SqfreeError", "SqfreeUI"]
