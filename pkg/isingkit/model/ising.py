# -*- coding: utf-8 -*-
"""
Ising model with 0/1 nodes.

    log w(x) = sum_s theta_s x_s + sum_{(s,t) in E} theta_st x_s x_t

Configurations are 0/1 sequences; when a configuration is encoded as an
integer, node 0 is the least significant bit.
"""

import math
from dataclasses import dataclass, field
from typing import Dict, Iterable, Mapping, Optional, Sequence, Tuple

import numpy as np

from isingkit.common.errors import InputError
from isingkit.graph.core import CliqueSet, Edge, Graph, build_graph, canonical_edge, induced_subgraph

Configuration = Tuple[int, ...]


@dataclass(frozen=True)
class IsingModel:
    """Graph plus node thresholds and edge weights keyed by canonical (min, max) pair."""

    graph: Graph
    thresholds: Tuple[float, ...]
    weights: Mapping[Edge, float]
    _theta: np.ndarray = field(default=None, repr=False, compare=False)
    _upper: np.ndarray = field(default=None, repr=False, compare=False)

    def __post_init__(self):
        if len(self.thresholds) != self.graph.n:
            raise InputError(f"expected {self.graph.n} thresholds, got {len(self.thresholds)}")
        if set(self.weights) != set(self.graph.edges):
            missing = sorted(set(self.graph.edges) - set(self.weights))
            extra = sorted(set(self.weights) - set(self.graph.edges))
            raise InputError(f"weights must match edges exactly (missing {missing}, not edges {extra})")
        for value in list(self.thresholds) + list(self.weights.values()):
            if not math.isfinite(value):
                raise InputError(f"parameters must be finite, got {value}")

        theta = np.asarray(self.thresholds, dtype=np.float64)
        upper = np.zeros((self.graph.n, self.graph.n), dtype=np.float64)
        for (i, j), w in self.weights.items():
            upper[i, j] = w
        theta.setflags(write=False)
        upper.setflags(write=False)
        object.__setattr__(self, "_theta", theta)
        object.__setattr__(self, "_upper", upper)

    def __hash__(self) -> int:
        # weights is a plain dict; hash its canonical items
        return hash((self.graph, self.thresholds, tuple(sorted(self.weights.items()))))

    @classmethod
    def create(
        cls,
        graph: Graph,
        thresholds: Optional[Sequence[float]] = None,
        weights: Optional[Mapping[Tuple[int, int], float]] = None,
        default_weight: Optional[float] = None,
    ) -> "IsingModel":
        """
        Build a model, canonicalising weight keys.

        Args:
            graph: the structure.
            thresholds: one per node; None means all zero.
            weights: edge -> weight, either orientation.
            default_weight: weight for edges missing from `weights`; None makes
                a missing edge an error.
        """
        if thresholds is None:
            thresholds = [0.0] * graph.n
        canonical: Dict[Edge, float] = {}
        for (i, j), w in (weights or {}).items():
            key = canonical_edge(int(i), int(j))
            if key not in graph.edges:
                raise InputError(f"weight given for ({i}, {j}) which is not an edge")
            canonical[key] = float(w)
        if default_weight is not None:
            for edge in graph.edges:
                canonical.setdefault(edge, float(default_weight))
        return cls(graph=graph, thresholds=tuple(float(t) for t in thresholds), weights=canonical)

    @property
    def n(self) -> int:
        return self.graph.n

    @property
    def theta(self) -> np.ndarray:
        """Thresholds as a read-only vector."""
        return self._theta

    @property
    def upper_weights(self) -> np.ndarray:
        """Upper-triangular weight matrix W with W[i, j] = theta_ij for i < j."""
        return self._upper

    def weight(self, i: int, j: int) -> float:
        return self.weights.get(canonical_edge(i, j), 0.0)


def model_from_edges(
    n: int,
    weighted_edges: Iterable[Tuple[int, int, float]],
    thresholds: Optional[Sequence[float]] = None,
) -> IsingModel:
    """Build graph and model together from (i, j, w) triples."""
    triples = [(int(i), int(j), float(w)) for i, j, w in weighted_edges]
    graph = build_graph(n, [(i, j) for i, j, _ in triples])
    weights: Dict[Edge, float] = {}
    for i, j, w in triples:
        weights[canonical_edge(i, j)] = w
    return IsingModel.create(graph, thresholds, weights)


def induced_model(m: IsingModel, nodes: Iterable[int]) -> Tuple[IsingModel, Tuple[int, ...]]:
    """Sub-model on `nodes` with their own thresholds and the edges among them, relabelled ascending."""
    graph, kept = induced_subgraph(m.graph, nodes)
    position = {old: new for new, old in enumerate(kept)}
    weights = {
        (position[i], position[j]): w
        for (i, j), w in m.weights.items()
        if i in position and j in position
    }
    return IsingModel.create(graph, [m.thresholds[v] for v in kept], weights), kept


@dataclass(frozen=True)
class CliquePotentialAssignment:
    """
    Which maximal clique owns each node threshold and each edge term.

    Ownership goes to the lexicographically first clique containing the node
    (or edge), so every term is counted in exactly one clique potential.
    """

    cliques: CliqueSet
    node_owner: Tuple[int, ...]
    edge_owner: Mapping[Edge, int]

    def owns_node(self, clique_index: int, node: int) -> bool:
        return self.node_owner[node] == clique_index

    def owns_edge(self, clique_index: int, i: int, j: int) -> bool:
        return self.edge_owner.get(canonical_edge(i, j)) == clique_index


def assign_potentials(cliques: CliqueSet, n: Optional[int] = None) -> CliquePotentialAssignment:
    """
    Decide which clique carries each node and edge term.

    Every node and every edge goes to the first clique (in clique order) that
    contains it, so each term appears in exactly one clique potential.

    Args:
        cliques: maximal cliques in canonical order.
        n: node count; inferred from the largest clique member when None.

    Returns:
        The assignment, queried with owns_node / owns_edge.

    Raises:
        InputError: some node lies in no clique.
    """
    if n is None:
        n = 1 + max((v for c in cliques for v in c), default=-1)
    node_owner = [-1] * n
    edge_owner: Dict[Edge, int] = {}
    for index, clique in enumerate(cliques):
        for position, v in enumerate(clique):
            if node_owner[v] < 0:
                node_owner[v] = index
            for u in clique[position + 1:]:
                edge_owner.setdefault((v, u), index)
    unowned = [v for v, owner in enumerate(node_owner) if owner < 0]
    if unowned:
        raise InputError(f"nodes {unowned} are not covered by any clique")
    return CliquePotentialAssignment(cliques=cliques, node_owner=tuple(node_owner), edge_owner=edge_owner)


def validate_configuration(m: IsingModel, x: Sequence[int]) -> Configuration:
    """Check length and 0/1 entries; returns the configuration as a tuple."""
    if len(x) != m.n:
        raise InputError(f"configuration has length {len(x)}, model has {m.n} nodes")
    config = tuple(int(v) for v in x)
    if any(v not in (0, 1) for v in config):
        raise InputError(f"configuration entries must be 0 or 1, got {list(x)}")
    return config


def configuration_from_index(index: int, n: int) -> Configuration:
    """Bit s of `index` is the value of node s."""
    return tuple((index >> s) & 1 for s in range(n))


def configuration_index(x: Sequence[int]) -> int:
    return sum(int(v) << s for s, v in enumerate(x))


def log_weight(m: IsingModel, x: Sequence[int]) -> float:
    """Unnormalised log mass of a full configuration."""
    config = validate_configuration(m, x)
    total = sum(t for t, v in zip(m.thresholds, config) if v)
    total += sum(w for (s, t), w in m.weights.items() if config[s] and config[t])
    return float(total)


def clique_log_weight(
    m: IsingModel,
    clique: Iterable[int],
    assignment: CliquePotentialAssignment,
    x_c: Mapping[int, int],
) -> float:
    """
    log psi_C(x_C): owned thresholds plus owned edge terms inside the clique.

    Summing this over all maximal cliques gives log_weight exactly.
    """
    members = tuple(sorted(clique))
    index = assignment.cliques.index(members)
    missing = [v for v in members if v not in x_c]
    if missing:
        raise InputError(f"partial configuration lacks clique nodes {missing}")

    total = 0.0
    for position, i in enumerate(members):
        if not x_c[i]:
            continue
        if assignment.owns_node(index, i):
            total += m.thresholds[i]
        for j in members[position + 1:]:
            if x_c[j] and assignment.owns_edge(index, i, j):
                total += m.weight(i, j)
    return total


def probability(m: IsingModel, x: Sequence[int], z: float) -> float:
    """exp(log_weight) / z for a partition value z > 0."""
    if not z > 0:
        raise InputError(f"partition value must be positive, got {z}")
    return math.exp(log_weight(m, x) - math.log(z))
