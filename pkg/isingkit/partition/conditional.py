# -*- coding: utf-8 -*-
"""True conditional normaliser, the oracle the clique-level schemes are checked against."""

from typing import List, Optional, Tuple

from isingkit.common.errors import EnumerationCapError
from isingkit.common.logger import get_logger
from isingkit.config import DEFAULT_ENUMERATION_CAP
from isingkit.graph.core import components_after_removal
from isingkit.intervention.reduce import ReducedModel, apply_intervention
from isingkit.intervention.spec import InterventionSpec
from isingkit.model.ising import IsingModel, induced_model
from isingkit.partition.base import PartitionEstimate, PartitionMethod
from isingkit.partition.enumeration import exact_partition

log = get_logger("partition.conditional")


def component_models(reduced: ReducedModel) -> List[Tuple[IsingModel, Tuple[int, ...]]]:
    """
    Split a reduced model into its connected components.

    Returns:
        (component model, reduced ids of its nodes) per component, canonically ordered.
    """
    m = reduced.model
    return [induced_model(m, nodes) for nodes in components_after_removal(m.graph, ())]


def exact_conditional_partition(
    m: IsingModel,
    iv: InterventionSpec,
    cap: Optional[int] = None,
    workers: Optional[int] = None,
) -> PartitionEstimate:
    """
    Sum over {0,1}^(V \\ A) of the weight with x_A fixed to x_A*.

    Components of the reduced graph are independent, so their normalisers
    multiply. With every node clamped the value is the single clamped weight.

    Raises:
        EnumerationCapError: the largest free component exceeds the cap.
    """
    reduced = apply_intervention(m, iv)
    parts = component_models(reduced)
    largest = max((part.n for part, _ in parts), default=0)
    limit = DEFAULT_ENUMERATION_CAP if cap is None else cap
    if largest > limit:
        raise EnumerationCapError(largest, limit, what="free nodes in one component")

    log_z = reduced.log_offset
    for part, _ in parts:
        log_z += exact_partition(part, cap=cap, workers=workers).log_value
    log.debug("exact conditional over {} free nodes in {} components: logZ={}", reduced.n_free, len(parts), log_z)
    return PartitionEstimate(log_value=float(log_z), method=PartitionMethod.EXACT)
