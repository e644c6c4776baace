# -*- coding: utf-8 -*-
"""
Defaults and settings loading.

Defaults live here as module constants. A TOML settings file may override
them; it is only read when a path is given explicitly (no environment lookup).

    [partition]
    enumeration_cap = 25
    workers = 4

    [simulation]
    reps = 100
    seed = 20240101

    [logging]
    level = "INFO"
"""

from pathlib import Path
from typing import List, Optional

import toml
from pydantic import BaseModel, Field, ValidationError

from isingkit.common.errors import InputError
from isingkit.common.logger import get_logger

log = get_logger("config")

# Largest number of free nodes exact enumeration accepts
DEFAULT_ENUMERATION_CAP = 25

# Configurations per enumeration block are 2^BLOCK_BITS
DEFAULT_BLOCK_BITS = 16

DEFAULT_WORKERS = 1

DEFAULT_LOG_LEVEL = "WARNING"

# Simulation grid: clique sizes 10..100, sigma 1..10
DEFAULT_CLIQUE_SIZES: List[int] = list(range(10, 101, 10))
DEFAULT_SIGMAS: List[float] = [float(s) for s in range(1, 11)]
DEFAULT_REPS = 100
DEFAULT_SEED = 20240101


class PartitionSettings(BaseModel):
    enumeration_cap: int = Field(default=DEFAULT_ENUMERATION_CAP, ge=0, description="Max free nodes for exact enumeration")
    block_bits: int = Field(default=DEFAULT_BLOCK_BITS, ge=4, le=24, description="log2 of configurations per block")
    workers: int = Field(default=DEFAULT_WORKERS, ge=1, description="Parallel workers for enumeration and ranking")


class SimulationSettings(BaseModel):
    clique_sizes: List[int] = Field(default_factory=lambda: list(DEFAULT_CLIQUE_SIZES))
    sigmas: List[float] = Field(default_factory=lambda: list(DEFAULT_SIGMAS))
    reps: int = Field(default=DEFAULT_REPS, ge=1)
    seed: int = Field(default=DEFAULT_SEED, ge=0)
    theta0: float = 0.0
    theta1: float = 0.0
    delta: float = Field(default=0.05, gt=0.0, lt=1.0)
    nu: Optional[float] = Field(default=None, ge=0.0, description="None uses k-1 per clique")


class LoggingSettings(BaseModel):
    level: str = DEFAULT_LOG_LEVEL
    file: Optional[str] = None
    component: Optional[str] = Field(default=None, description="Only log records bound to this component")


class Settings(BaseModel):
    partition: PartitionSettings = Field(default_factory=PartitionSettings)
    simulation: SimulationSettings = Field(default_factory=SimulationSettings)
    logging: LoggingSettings = Field(default_factory=LoggingSettings)


def load_settings(path: Optional[str] = None) -> Settings:
    """
    Load settings from a TOML file.

    Args:
        path: settings file. None returns the built-in defaults.

    Raises:
        InputError: the file is missing, is not valid TOML, or fails validation.
    """
    if not path:
        return Settings()

    settings_path = Path(path)
    if not settings_path.is_file():
        raise InputError(f"settings file not found: {settings_path}")

    try:
        data = toml.loads(settings_path.read_text(encoding="utf-8"))
    except (toml.TomlDecodeError, UnicodeDecodeError, OSError) as exc:
        raise InputError(f"failed to parse settings at {settings_path}: {exc}") from exc

    try:
        settings = Settings.model_validate(data)
    except ValidationError as exc:
        raise InputError(f"invalid settings at {settings_path}: {exc}") from exc

    log.info("Loaded settings from {}", settings_path)
    return settings
