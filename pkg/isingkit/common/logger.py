# -*- coding: utf-8 -*-
"""
Logging for isingkit.

A thin manager around loguru. Console output always goes to stderr so that
stdout stays reserved for result lines printed by the CLI.
Levels from low to high: DEBUG < INFO < WARNING < ERROR < CRITICAL.
"""

import sys
from pathlib import Path
from typing import Optional

from loguru import logger

_CONSOLE_FORMAT = (
    "<green>{time:YYYY-MM-DD HH:mm:ss.SSS}</green> | "
    "<level>{level: <8}</level> | "
    "<cyan>{name}</cyan>:<cyan>{function}</cyan>:<cyan>{line}</cyan> | "
    "<level>{message}</level>"
)

_FILE_FORMAT = (
    "{time:YYYY-MM-DD HH:mm:ss.SSS} | "
    "{level: <8} | "
    "{name}:{function}:{line} | "
    "{message}"
)


class ComponentFilter:
    """Keep only records bound to one component (None keeps everything)."""

    def __init__(self, component: Optional[str] = None):
        self.component = component

    def __call__(self, record) -> bool:
        if self.component is None:
            return True
        return record["extra"].get("component") == self.component


class Logger:
    """Log sink manager."""

    def __init__(
        self,
        log_level: str = "WARNING",
        log_file: Optional[str] = None,
        rotation: str = "10 MB",
        retention: str = "30 days",
        enable_console: bool = True,
        component: Optional[str] = None,
    ):
        """
        Args:
            log_level: DEBUG/INFO/WARNING/ERROR/CRITICAL
            log_file: optional log file path
            rotation: file rotation rule, e.g. "10 MB"
            retention: how long rotated files are kept
            enable_console: whether to log to stderr
            component: restrict every sink to records of this component
        """
        self.log_level = log_level.upper()
        self.log_file = log_file
        self.rotation = rotation
        self.retention = retention
        self.enable_console = enable_console
        self.component = component

        logger.remove()

        if enable_console:
            logger.add(
                sys.stderr,
                level=self.log_level,
                format=_CONSOLE_FORMAT,
                filter=ComponentFilter(component),
                colorize=True,
            )

        if log_file:
            log_path = Path(log_file)
            log_path.parent.mkdir(parents=True, exist_ok=True)
            logger.add(
                log_file,
                level=self.log_level,
                format=_FILE_FORMAT,
                filter=ComponentFilter(component),
                rotation=rotation,
                retention=retention,
                encoding="utf-8",
            )

        logger.debug(f"logging initialised | level: {self.log_level} | file: {self.log_file}")

    def get_logger(self, component: Optional[str] = None):
        """Return a loguru view bound to a component name."""
        if component:
            return logger.bind(component=component)
        return logger


_logger_instance: Optional[Logger] = None


def get_logger(component: Optional[str] = None):
    """
    Module-level accessor. Creates a console-only manager on first use.

    Args:
        component: name bound into every record (e.g. "partition.enumeration")
    """
    global _logger_instance

    if _logger_instance is None:
        _logger_instance = Logger()

    return _logger_instance.get_logger(component)


def init_logger(
    log_level: str = "WARNING",
    log_file: Optional[str] = None,
    rotation: str = "10 MB",
    retention: str = "30 days",
    enable_console: bool = True,
    component: Optional[str] = None,
) -> Logger:
    """Replace the global log manager (used by the CLI once flags are parsed)."""
    global _logger_instance

    _logger_instance = Logger(
        log_level=log_level,
        log_file=log_file,
        rotation=rotation,
        retention=retention,
        enable_console=enable_console,
        component=component,
    )

    return _logger_instance
