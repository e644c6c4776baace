# -*- coding: utf-8 -*-
"""
Curie-Weiss normaliser and the per-clique conditioning reduction.

For a complete graph on k nodes with common threshold theta0 and common
interaction theta1 the partition function collapses to a sum over the number
of active nodes r:

    Z_CW = sum_{r=0}^{k} C(k, r) exp(theta0 r + nu theta1 r (r - 1) / (2 (k - 1)))

A conditioned clique is reduced to that form by absorbing theta_ij x_j* of
clamped neighbours into the thresholds of its free nodes and averaging.
"""

from dataclasses import dataclass
from enum import Enum
from typing import Dict, Iterable, List, Tuple

import numpy as np
from scipy.special import gammaln, logsumexp

from isingkit.common.errors import InputError
from isingkit.graph.core import complete_graph
from isingkit.intervention.spec import InterventionSpec
from isingkit.model.ising import CliquePotentialAssignment, IsingModel
from isingkit.partition.base import PartitionEstimate, PartitionMethod


class Theta1Mode(str, Enum):
    # average over edges between free nodes; reproduces the worked 41.09614 value
    FREE = "free"
    # average over every edge of the clique
    ALL = "all"


@dataclass(frozen=True)
class CurieWeissParams:
    k: int
    nu: float
    theta0: float
    theta1: float
    log_offset: float = 0.0

    def __post_init__(self):
        if self.k < 0:
            raise InputError(f"k must be non-negative, got {self.k}")
        if self.nu < 0:
            raise InputError(f"nu must be non-negative, got {self.nu}")


def log_binomials(k: int) -> np.ndarray:
    r = np.arange(k + 1, dtype=np.float64)
    return gammaln(k + 1.0) - gammaln(r + 1.0) - gammaln(k - r + 1.0)


def curie_weiss_log_terms(p: CurieWeissParams) -> np.ndarray:
    """log of every summand of Z_CW, r = 0..k."""
    r = np.arange(p.k + 1, dtype=np.float64)
    # k <= 1: the r(r-1) term vanishes, no division by k - 1
    coupling = p.nu / (2.0 * (p.k - 1)) if p.k >= 2 else 0.0
    return log_binomials(p.k) + p.theta0 * r + coupling * p.theta1 * r * (r - 1.0)


def curie_weiss_partition(p: CurieWeissParams) -> PartitionEstimate:
    """Z_CW of the params, with log_offset added to the log value."""
    log_z = float(logsumexp(curie_weiss_log_terms(p))) + p.log_offset
    return PartitionEstimate(log_value=log_z, method=PartitionMethod.CURIE_WEISS)


@dataclass(frozen=True)
class CliqueFactor:
    """
    psi_C with the clamped nodes plugged in, as a model over the free nodes.

    thresholds[a] belongs to free[a]; free_weights[(a, b)] (a < b, positions
    into `free`) holds theta_ij for every free pair, 0.0 when the edge term is
    owned by another clique. log_offset collects the terms that only involve
    clamped nodes. These three describe the exact factor.

    The Curie-Weiss reduction reads the clique's own interactions instead:
    reduced_thresholds[a] is the owned theta_i plus theta_ij of every active
    clamped neighbour, pair_weights the theta_ij of all free pairs and
    clique_weights those of all clique pairs, whichever clique owns them.
    """

    clique: Tuple[int, ...]
    free: Tuple[int, ...]
    thresholds: Tuple[float, ...]
    free_weights: Dict[Tuple[int, int], float]
    log_offset: float
    reduced_thresholds: Tuple[float, ...]
    pair_weights: Tuple[float, ...]
    clique_weights: Tuple[float, ...]

    @property
    def k(self) -> int:
        return len(self.free)

    def as_model(self) -> IsingModel:
        return IsingModel.create(complete_graph(self.k), self.thresholds, self.free_weights)


def _pairs(nodes: Tuple[int, ...]) -> List[Tuple[int, int]]:
    return [(nodes[a], nodes[b]) for a in range(len(nodes)) for b in range(a + 1, len(nodes))]


def clique_factor(
    m: IsingModel,
    clique: Iterable[int],
    assignment: CliquePotentialAssignment,
    iv: InterventionSpec,
) -> CliqueFactor:
    """
    Plug the clamped clique members into psi_C.

    Args:
        m: the full model.
        clique: members of one clique from `assignment.cliques`.
        assignment: node and edge ownership across all cliques.
        iv: the intervention; members outside it stay free.
    """
    members = tuple(sorted(clique))
    index = assignment.cliques.index(members)
    clamped = {v: x for v, x in iv.assignments if v in set(members)}
    free = tuple(v for v in members if v not in clamped)
    active = tuple(j for j, x in clamped.items() if x == 1)

    def owned(i: int, j: int) -> float:
        return m.weight(i, j) if assignment.owns_edge(index, i, j) else 0.0

    thresholds = []
    reduced = []
    for i in free:
        t = m.thresholds[i] if assignment.owns_node(index, i) else 0.0
        thresholds.append(t + sum(owned(i, j) for j in active))
        reduced.append(t + sum(m.weight(i, j) for j in active))

    free_weights = {
        (a, b): owned(free[a], free[b])
        for a in range(len(free))
        for b in range(a + 1, len(free))
    }

    offset = sum(m.thresholds[j] for j in active if assignment.owns_node(index, j))
    offset += sum(owned(i, j) for i, j in _pairs(active))

    return CliqueFactor(
        clique=members,
        free=free,
        thresholds=tuple(thresholds),
        free_weights=free_weights,
        log_offset=float(offset),
        reduced_thresholds=tuple(reduced),
        pair_weights=tuple(m.weight(i, j) for i, j in _pairs(free)),
        clique_weights=tuple(m.weight(i, j) for i, j in _pairs(members)),
    )


def params_from_factor(factor: CliqueFactor, theta1_mode: Theta1Mode = Theta1Mode.FREE) -> CurieWeissParams:
    """Means over the factor's reduced thresholds and interactions; nu = k - 1."""
    k = factor.k
    theta0 = float(np.mean(factor.reduced_thresholds)) if k else 0.0
    if Theta1Mode(theta1_mode) is Theta1Mode.ALL:
        pool = factor.clique_weights
    else:
        pool = factor.pair_weights
    theta1 = float(np.mean(pool)) if pool else 0.0
    return CurieWeissParams(
        k=k,
        nu=float(max(k - 1, 0)),
        theta0=theta0,
        theta1=theta1,
        log_offset=factor.log_offset,
    )


def reduce_clique(
    m: IsingModel,
    clique: Iterable[int],
    assignment: CliquePotentialAssignment,
    iv: InterventionSpec,
    theta1_mode: Theta1Mode = Theta1Mode.FREE,
) -> CurieWeissParams:
    """
    Curie-Weiss parameters of a conditioned clique.

    theta0* is the mean over free nodes of (owned theta_i + sum of theta_ij over
    clamped neighbours j with x_j* = 1); theta1* the mean of theta_ij over free
    pairs by default; nu = k - 1. Edges shared with an earlier clique still
    enter both means; ownership only decides the exact factor and log_offset.
    A clique with every node clamped gives k = 0 and only its constant
    log_offset.
    """
    return params_from_factor(clique_factor(m, clique, assignment, iv), theta1_mode)
