"""Test configuration and fixtures."""

from __future__ import annotations

from collections.abc import Callable
from pathlib import Path

import pytest

from cayley_cli.algebra.semigroup import Semigroup
from cayley_cli.algebra.zoo import cyclic_group, null_semigroup, symmetric_group
from cayley_cli.config import Config, get_default_config


@pytest.fixture
def config() -> Config:
    """Create a Config instance."""
    return get_default_config()


@pytest.fixture
def z3() -> Semigroup:
    """Z3 written additively."""
    return cyclic_group(3)


@pytest.fixture
def z6() -> Semigroup:
    """Z6 written additively."""
    return cyclic_group(6)


@pytest.fixture
def n2() -> Semigroup:
    """The null semigroup of order 2, with zero 0."""
    return null_semigroup(2)


@pytest.fixture
def s3() -> tuple[Semigroup, list[tuple[int, ...]]]:
    """S3 with the permutation behind every element index."""
    return symmetric_group(3)


@pytest.fixture
def write_file(tmp_path: Path) -> Callable[[str, str], Path]:
    """Write text to a file under the temporary directory and return its path."""

    def write(name: str, text: str) -> Path:
        path = tmp_path / name
        path.write_text(text, encoding="utf-8")
        return path

    return write
