# -*- coding: utf-8 -*-
"""Shared test fixtures and brute-force oracles."""

import json
import math
from itertools import product

import numpy as np
import pytest

from isingkit.graph.core import build_graph, complete_graph
from isingkit.model.ising import IsingModel, log_weight, model_from_edges

# Five-node example graph; 1-based labels 1..5 map to ids 0..4.
FIVE_NODE_EDGES = [(0, 4), (0, 1), (1, 2), (1, 3), (2, 3)]


def brute_log_z(m: IsingModel) -> float:
    """log Z by direct summation, independent of the block engine."""
    logs = [log_weight(m, x) for x in product((0, 1), repeat=m.n)]
    top = max(logs)
    return top + math.log(sum(math.exp(v - top) for v in logs))


def brute_conditional(m: IsingModel, clamped: dict) -> dict:
    """Conditional distribution of the free nodes, keyed by the free tuple (ascending node id)."""
    free = [v for v in range(m.n) if v not in clamped]
    weights = {}
    for values in product((0, 1), repeat=len(free)):
        x = [0] * m.n
        for v, value in clamped.items():
            x[v] = value
        for v, value in zip(free, values):
            x[v] = value
        weights[values] = math.exp(log_weight(m, x))
    total = sum(weights.values())
    return {key: w / total for key, w in weights.items()}


def brute_marginals(m: IsingModel, clamped: dict) -> dict:
    free = [v for v in range(m.n) if v not in clamped]
    dist = brute_conditional(m, clamped)
    return {v: sum(p for key, p in dist.items() if key[pos]) for pos, v in enumerate(free)}


def random_model(rng: np.random.Generator, n: int, p_edge: float = 0.5, low: float = -2.0, high: float = 2.0) -> IsingModel:
    edges = [(i, j) for i in range(n) for j in range(i + 1, n) if rng.random() < p_edge]
    graph = build_graph(n, edges)
    weights = {e: float(rng.uniform(low, high)) for e in edges}
    thresholds = rng.uniform(-2.0, 2.0, size=n).tolist()
    return IsingModel.create(graph, thresholds, weights)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


@pytest.fixture
def five_node_model():
    """All interactions 1, all thresholds 0."""
    return model_from_edges(5, [(i, j, 1.0) for i, j in FIVE_NODE_EDGES])


@pytest.fixture
def triangle_model():
    """Clique {0,1,2} with theta_01 = 1.5, theta_02 = theta_12 = 1, thresholds 0."""
    return model_from_edges(3, [(0, 1, 1.5), (0, 2, 1.0), (1, 2, 1.0)])


@pytest.fixture
def uniform_triangle():
    return IsingModel.create(complete_graph(3), default_weight=1.0)


@pytest.fixture
def write_model(tmp_path):
    """Write a model dict as JSON and return its path."""

    def _write(data, name="model.json"):
        path = tmp_path / name
        path.write_text(json.dumps(data), encoding="utf-8")
        return str(path)

    return _write
