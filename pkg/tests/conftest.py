import os
from collections.abc import Generator
from pathlib import Path

import pytest

# Must be set before sqfree is imported: the package loads .env.{ENV} on import
os.environ.setdefault("ENV", "test")

CONFIG_VARS = [
    "LOG_LEVEL",
    "LOG_FILE_PATH",
    "LOG_FORMAT",
    "ENABLE_CONSOLE_LOGGING",
    "ENABLE_FILE_LOGGING",
    "LOG_MAX_BYTES",
    "LOG_BACKUP_COUNT",
    "SQFREE_BUDGET",
]


@pytest.fixture
def clean_env() -> Generator[None, None, None]:
    """Clean configuration variables before and after tests"""
    original_env = {key: os.environ.get(key) for key in CONFIG_VARS}

    for key in CONFIG_VARS:
        os.environ.pop(key, None)
    # Set development environment explicitly for tests
    os.environ["ENV"] = "development"

    yield

    for key, value in original_env.items():
        if value is not None:
            os.environ[key] = value
        else:
            os.environ.pop(key, None)


@pytest.fixture
def test_env_files(tmp_path) -> Generator[Path, None, None]:
    """Create temporary environment files for testing"""
    env_dev = tmp_path / ".env.development"
    env_prod = tmp_path / ".env.production"
    env_base = tmp_path / ".env"

    env_dev.write_text(
        """
    LOG_LEVEL=DEBUG
    LOG_FILE_PATH=/tmp/sqfree_dev.log
    ENABLE_CONSOLE_LOGGING=true
    ENABLE_FILE_LOGGING=false
    LOG_FORMAT=%(asctime)s - %(name)s - %(levelname)s - %(message)s
    LOG_MAX_BYTES=1048576
    LOG_BACKUP_COUNT=5
    SQFREE_BUDGET=vertex_cap=1000000
    """.strip()
    )

    env_prod.write_text(
        """
    LOG_LEVEL=WARNING
    LOG_FILE_PATH=/tmp/sqfree_prod.log
    ENABLE_CONSOLE_LOGGING=false
    ENABLE_FILE_LOGGING=true
    LOG_FORMAT=%(asctime)s - %(name)s - %(levelname)s - %(message)s
    LOG_MAX_BYTES=5242880
    LOG_BACKUP_COUNT=10
    SQFREE_BUDGET=50000000
    """.strip()
    )

    env_base.write_text(
        """
    LOG_LEVEL=INFO
    LOG_FILE_PATH=/tmp/sqfree_default.log
    ENABLE_CONSOLE_LOGGING=true
    ENABLE_FILE_LOGGING=false
    """.strip()
    )

    yield tmp_path
