# -*- coding: utf-8 -*-
"""
Rank single-node interventions by how much they move the other marginals.

The baseline is the model without intervention. Two impact metrics:
    l1_marginal_shift   sum_{i != j} |P(x_i=1 | do(x_j=v)) - P(x_i=1)|
    expected_sum_shift  |sum_{i != j} P(x_i=1 | do(x_j=v)) - sum_{i != j} P(x_i=1)|
"""

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from enum import Enum
from typing import Dict, Optional, Tuple

from isingkit.common.errors import InputError
from isingkit.common.logger import get_logger
from isingkit.config import DEFAULT_WORKERS
from isingkit.intervention.query import InferenceMethod, marginals
from isingkit.intervention.spec import InterventionSpec
from isingkit.model.ising import IsingModel

log = get_logger("intervention.ranking")

# impacts equal to this many significant digits are ties
TIE_DIGITS = 12


class ImpactMetric(str, Enum):
    L1_MARGINAL_SHIFT = "l1_marginal_shift"
    EXPECTED_SUM_SHIFT = "expected_sum_shift"

    @classmethod
    def parse(cls, text: str) -> "ImpactMetric":
        aliases = {"l1": cls.L1_MARGINAL_SHIFT, "esum": cls.EXPECTED_SUM_SHIFT}
        if text in aliases:
            return aliases[text]
        try:
            return cls(text)
        except ValueError:
            raise InputError(f"unknown impact metric {text!r}, expected l1 or esum") from None


@dataclass(frozen=True)
class RankedIntervention:
    rank: int
    node: int
    value: int
    impact: float


@dataclass(frozen=True)
class InterventionRanking:
    entries: Tuple[RankedIntervention, ...]
    metric: ImpactMetric
    method: InferenceMethod

    def __iter__(self):
        return iter(self.entries)

    def __len__(self) -> int:
        return len(self.entries)

    def impacts(self) -> Dict[int, float]:
        return {e.node: e.impact for e in self.entries}


def impact_score(baseline: Dict[int, float], intervened: Dict[int, float], metric: ImpactMetric) -> float:
    """Compare marginals over the nodes present in `intervened` (every node but the clamped one)."""
    nodes = sorted(intervened)
    if ImpactMetric(metric) is ImpactMetric.L1_MARGINAL_SHIFT:
        return float(sum(abs(intervened[i] - baseline[i]) for i in nodes))
    return float(abs(sum(intervened[i] for i in nodes) - sum(baseline[i] for i in nodes)))


def _tie_key(impact: float) -> float:
    return float(f"{impact:.{TIE_DIGITS}g}")


def rank_interventions(
    m: IsingModel,
    value: int,
    metric: ImpactMetric = ImpactMetric.L1_MARGINAL_SHIFT,
    method: InferenceMethod = InferenceMethod.EXACT,
    cap: Optional[int] = None,
    workers: Optional[int] = None,
) -> InterventionRanking:
    """
    Score do(x_j = value) for every node j and sort by impact, highest first.

    Raises:
        InputError: value is not 0 or 1, or the metric is unknown.
    """
    if value not in (0, 1):
        raise InputError(f"intervention value must be 0 or 1, got {value}")
    metric = ImpactMetric(metric)
    method = InferenceMethod(method)
    workers = DEFAULT_WORKERS if workers is None else workers

    baseline = marginals(m, InterventionSpec(), method, cap=cap).as_dict()

    def score(node: int) -> float:
        intervened = marginals(m, InterventionSpec.of({node: value}), method, cap=cap).as_dict()
        return impact_score(baseline, intervened, metric)

    candidates = list(m.graph.nodes)
    if workers <= 1:
        impacts = [score(j) for j in candidates]
    else:
        with ThreadPoolExecutor(max_workers=workers, thread_name_prefix="rank") as pool:
            impacts = list(pool.map(score, candidates))

    order = sorted(zip(candidates, impacts), key=lambda item: (-_tie_key(item[1]), item[0]))
    entries = tuple(
        RankedIntervention(rank=r, node=node, value=value, impact=impact)
        for r, (node, impact) in enumerate(order, start=1)
    )
    log.info("ranked {} candidate interventions ({}, {})", len(entries), metric.value, method.value)
    return InterventionRanking(entries=entries, metric=metric, method=method)
