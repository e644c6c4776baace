# -*- coding: utf-8 -*-
"""
Intervention by replacement as conditioning.

Clamping x_A to x_A* removes A from the graph. Each free neighbour i of a node
j clamped to 1 absorbs theta_ij into its threshold; terms that only involve
clamped nodes become a constant log offset.
"""

from dataclasses import dataclass
from typing import Dict, Sequence, Tuple

from isingkit.common.errors import InputError
from isingkit.intervention.spec import InterventionSpec
from isingkit.model.ising import Configuration, IsingModel, induced_model, log_weight


@dataclass(frozen=True)
class ReducedModel:
    """
    The model over V \\ A after an intervention.

    free_nodes[new] is the original id of reduced node `new`. Reduced node
    ids follow ascending original order.
    """

    model: IsingModel
    free_nodes: Tuple[int, ...]
    log_offset: float
    intervention: InterventionSpec

    @property
    def n_free(self) -> int:
        return len(self.free_nodes)

    def original_id(self, reduced: int) -> int:
        return self.free_nodes[reduced]

    def reduced_id(self, original: int) -> int:
        try:
            return self.free_nodes.index(original)
        except ValueError:
            raise InputError(f"node {original} is clamped, it has no reduced id") from None

    def lift(self, x_free: Sequence[int]) -> Configuration:
        """Full configuration with x_A = x_A* and the free nodes from x_free."""
        if len(x_free) != self.n_free:
            raise InputError(f"expected {self.n_free} free values, got {len(x_free)}")
        full: Dict[int, int] = self.intervention.as_dict()
        for node, value in zip(self.free_nodes, x_free):
            full[node] = int(value)
        return tuple(full[v] for v in range(len(full)))


def apply_intervention(m: IsingModel, iv: InterventionSpec) -> ReducedModel:
    """
    Clamp the intervened nodes and fold them into a model over the free nodes.

    Args:
        m: the full model.
        iv: clamped nodes and their values.

    Returns:
        ReducedModel whose free thresholds absorb theta_ij of every active
        clamped neighbour; log_offset holds the clamped thresholds and the
        edges among active clamped nodes.

    Raises:
        InputError: the intervention names a node outside the graph.
    """
    iv.validate_for(m.n)
    clamped = iv.as_dict()
    base, free_nodes = induced_model(m, (v for v in m.graph.nodes if v not in clamped))
    thresholds = tuple(
        base.thresholds[new] + sum(m.weight(i, j) for j in m.graph.neighbors(i) if clamped.get(j) == 1)
        for new, i in enumerate(free_nodes)
    )

    active = [j for j, x in clamped.items() if x == 1]
    offset = sum(m.thresholds[j] for j in active)
    offset += sum(m.weight(i, j) for i in active for j in active if i < j)

    return ReducedModel(
        model=IsingModel(graph=base.graph, thresholds=thresholds, weights=base.weights),
        free_nodes=free_nodes,
        log_offset=float(offset),
        intervention=iv,
    )


def clamped_log_weight(m: IsingModel, iv: InterventionSpec, x_free: Sequence[int]) -> float:
    """Original log weight at the configuration with x_A := x_A*."""
    return log_weight(m, apply_intervention(m, iv).lift(x_free))
