import io

import pytest
from rich.console import Console

from sqfree.words import LengthSeq


@pytest.fixture
def quiet_console() -> Console:
    """Console writing to a buffer, read back with ``console.file.getvalue()``."""
    return Console(file=io.StringIO(), width=120, color_system=None)


@pytest.fixture
def s35() -> LengthSeq:
    return LengthSeq.of(3, 5)
