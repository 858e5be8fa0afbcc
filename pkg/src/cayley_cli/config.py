from __future__ import annotations

import json
from pathlib import Path
from typing import Any

import yaml
from pydantic import BaseModel, Field, ValidationError

from cayley_cli.exception import ConfigError
from cayley_cli.utils.logging import logger


class SquaringConfig(BaseModel):
    """Repeated-squaring DP configuration."""

    width: int = Field(default=2, ge=1, le=3)
    """Number of values threaded between the two halves of a circuit"""
    size_bound: int | None = Field(default=None, ge=1)
    """Circuit size bound; None means ceil(5 * (log2 N + 1) ** 2)"""
    relation_warning: int = 1_000_000
    """Warn when the relation has more than this many potential entries"""


class ExhaustiveConfig(BaseModel):
    """Exhaustive circuit search configuration."""

    max_size: int = Field(default=4, ge=1)
    """Largest circuit size to enumerate"""
    max_evaluations: int = 2_000_000
    """Maximum number of (circuit, assignment) evaluations"""


class BooleanConfig(BaseModel):
    """Boolean netlist compiler configuration."""

    max_and_gates: int = 1_000_000
    """Refuse to compile netlists with more AND gates than this"""


class JoinConfig(BaseModel):
    """Join witness configuration."""

    max_q: int = Field(default=10, ge=1)
    """Maximum number of words the permutation group acts on"""
    max_group: int = Field(default=20_000, ge=1)
    """Maximum order of the permutation group"""


class SelftestConfig(BaseModel):
    """Acceptance suite configuration."""

    seed: int = 0
    """Seed for random semigroups and digraphs"""
    random_semigroups: int = 200
    """Number of random semigroups in the oracle agreement check"""
    graphs_per_size: int = 50
    """Number of random digraphs per vertex count in the reduction check"""
    max_random_order: int = 12
    """Largest order of a random semigroup"""


class Config(BaseModel):
    """Main configuration structure."""

    squaring: SquaringConfig = Field(default_factory=SquaringConfig)
    exhaustive: ExhaustiveConfig = Field(default_factory=ExhaustiveConfig)
    boolean: BooleanConfig = Field(default_factory=BooleanConfig)
    join: JoinConfig = Field(default_factory=JoinConfig)
    selftest: SelftestConfig = Field(default_factory=SelftestConfig)


def get_default_config() -> Config:
    """Get the default configuration."""
    return Config()


def load_config(config_file: Path | None = None) -> Config:
    """
    Load configuration from a JSON or YAML file.

    Args:
        config_file (Path | None): Path to the configuration file. If None, use the defaults.

    Returns:
        Validated Config object.

    Raises:
        ConfigError: If the configuration file is missing or invalid.
    """
    if config_file is None:
        return get_default_config()
    logger.debug("Loading config from file: {file}", file=config_file)
    if not config_file.is_file():
        raise ConfigError(f"Configuration file not found: {config_file}")

    try:
        with open(config_file, encoding="utf-8") as f:
            if config_file.suffix in (".yaml", ".yml"):
                data: Any = yaml.safe_load(f) or {}
            else:
                data = json.load(f)
        return Config.model_validate(data)
    except json.JSONDecodeError as e:
        raise ConfigError(f"Invalid JSON in configuration file: {e}") from e
    except yaml.YAMLError as e:
        raise ConfigError(f"Invalid YAML in configuration file: {e}") from e
    except ValidationError as e:
        raise ConfigError(f"Invalid configuration file: {e}") from e
