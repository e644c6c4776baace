# -*- coding: utf-8 -*-
"""Exception hierarchy. Each class carries the CLI exit code it maps to."""


class IsingKitError(Exception):
    """Base class for all errors raised by isingkit."""

    exit_code: int = 1


class InputError(IsingKitError, ValueError):
    """Malformed input: files, node ids, configurations, tags, grids."""

    exit_code = 2


class EnumerationCapError(IsingKitError):
    """Exact enumeration refused because the state space exceeds the cap."""

    exit_code = 3

    def __init__(self, size: int, cap: int, what: str = "nodes"):
        self.size = size
        self.cap = cap
        super().__init__(
            f"exact enumeration over {size} {what} exceeds the cap of {cap} "
            f"(2^{size} configurations); raise --cap to force it"
        )


class OutputError(IsingKitError, OSError):
    """Result could not be written."""

    exit_code = 4
