# -*- coding: utf-8 -*-
"""Closed-form approximations that ignore or simplify the interactions."""

import numpy as np
from scipy.special import logsumexp

from isingkit.common.logger import get_logger
from isingkit.model.ising import IsingModel
from isingkit.partition.base import PartitionEstimate, PartitionMethod
from isingkit.partition.curie_weiss import CurieWeissParams, curie_weiss_partition

log = get_logger("partition.approximations")


def inner_approximation(m: IsingModel) -> PartitionEstimate:
    """
    Z = prod_i (1 + exp(theta_i)).

    Interactions are dropped; with all theta_ij >= 0 this is a lower bound.
    """
    log_z = float(np.logaddexp(0.0, m.theta).sum())
    return PartitionEstimate(log_value=log_z, method=PartitionMethod.INNER)


def pairwise_product(m: IsingModel) -> PartitionEstimate:
    """
    Z = prod_{(i,j) in E} (1 + e^{theta_i} + e^{theta_j} + e^{theta_i + theta_j + theta_ij}).

    Taken literally: node terms at shared nodes are counted once per incident
    edge, so this matches exact enumeration only for disjoint edges.
    """
    log_z = 0.0
    for (i, j), w in sorted(m.weights.items()):
        ti, tj = m.thresholds[i], m.thresholds[j]
        log_z += float(logsumexp([0.0, ti, tj, ti + tj + w]))
    return PartitionEstimate(log_value=log_z, method=PartitionMethod.PAIRWISE)


def mean_field_partition(m: IsingModel) -> PartitionEstimate:
    """
    Whole-graph Curie-Weiss reading: k = n, theta0 = mean threshold,
    theta1 = mean edge weight, nu = average degree.
    """
    n_edges = len(m.weights)
    params = CurieWeissParams(
        k=m.n,
        nu=2.0 * n_edges / m.n,
        theta0=float(m.theta.mean()),
        theta1=float(np.mean(list(m.weights.values()))) if n_edges else 0.0,
    )
    log.debug("mean-field parameters: {}", params)
    estimate = curie_weiss_partition(params)
    return PartitionEstimate(log_value=estimate.log_value, method=PartitionMethod.MEAN_FIELD)
