# -*- coding: utf-8 -*-
"""Partition-function result type."""

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Tuple


class PartitionMethod(str, Enum):
    EXACT = "exact"
    INNER = "inner"
    PAIRWISE = "pairwise"
    CURIE_WEISS = "curie_weiss"
    CLIQUE_PRODUCT = "clique_product"
    MEAN_FIELD = "mean_field"


@dataclass(frozen=True)
class CliqueNormalizer:
    """Conditional normaliser of one maximal clique in a clique product."""

    clique: Tuple[int, ...]
    free: Tuple[int, ...]
    log_value: float
    method: PartitionMethod

    @property
    def value(self) -> float:
        return safe_exp(self.log_value)


@dataclass(frozen=True)
class PartitionEstimate:
    """Natural log of Z plus the method that produced it."""

    log_value: float
    method: PartitionMethod
    cliques: Tuple[CliqueNormalizer, ...] = field(default=())

    def __post_init__(self):
        if not math.isfinite(self.log_value):
            raise ArithmeticError(f"log partition value is not finite: {self.log_value}")

    @property
    def value(self) -> float:
        """Z itself; inf when it exceeds double range (log_value never does)."""
        return safe_exp(self.log_value)


def safe_exp(x: float) -> float:
    """math.exp, with overflow mapped to inf."""
    try:
        return math.exp(x)
    except OverflowError:
        return math.inf
