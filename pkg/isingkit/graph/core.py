# -*- coding: utf-8 -*-
"""Undirected simple graphs, maximal cliques and node-removal components."""

from dataclasses import dataclass, field
from itertools import combinations
from typing import FrozenSet, Iterable, Iterator, List, Sequence, Tuple

import networkx as nx

from isingkit.common.errors import InputError

Edge = Tuple[int, int]


def canonical_edge(i: int, j: int) -> Edge:
    return (i, j) if i < j else (j, i)


@dataclass(frozen=True)
class Graph:
    """Undirected simple graph on nodes 0..n-1. Immutable after construction."""

    n: int
    edges: FrozenSet[Edge]
    _adjacency: Tuple[FrozenSet[int], ...] = field(default=(), repr=False, compare=False)

    def __post_init__(self):
        adjacency: List[set] = [set() for _ in range(self.n)]
        for i, j in self.edges:
            adjacency[i].add(j)
            adjacency[j].add(i)
        object.__setattr__(self, "_adjacency", tuple(frozenset(a) for a in adjacency))

    @property
    def nodes(self) -> range:
        return range(self.n)

    def has_edge(self, i: int, j: int) -> bool:
        return canonical_edge(i, j) in self.edges

    def neighbors(self, i: int) -> FrozenSet[int]:
        return self._adjacency[i]

    def degree(self, i: int) -> int:
        return len(self._adjacency[i])

    def sorted_edges(self) -> List[Edge]:
        return sorted(self.edges)

    def to_networkx(self) -> nx.Graph:
        g = nx.Graph()
        g.add_nodes_from(range(self.n))
        g.add_edges_from(self.edges)
        return g


@dataclass(frozen=True)
class CliqueSet:
    """Maximal cliques, each sorted ascending, listed in lexicographic order."""

    cliques: Tuple[Tuple[int, ...], ...]

    def __iter__(self) -> Iterator[Tuple[int, ...]]:
        return iter(self.cliques)

    def __len__(self) -> int:
        return len(self.cliques)

    def __getitem__(self, index: int) -> Tuple[int, ...]:
        return self.cliques[index]

    def index(self, clique: Iterable[int]) -> int:
        key = tuple(sorted(clique))
        try:
            return self.cliques.index(key)
        except ValueError:
            raise InputError(f"{list(key)} is not one of the maximal cliques") from None

    def max_size(self) -> int:
        return max((len(c) for c in self.cliques), default=0)


def build_graph(n: int, edge_list: Iterable[Sequence[int]]) -> Graph:
    """
    Build a graph from an edge list.

    Duplicate edges (in either orientation) are accepted and stored once.

    Raises:
        InputError: n < 1, a self loop, or an endpoint outside [0, n).
    """
    if n < 1:
        raise InputError(f"graph needs at least one node, got n={n}")

    edges = set()
    for pair in edge_list:
        if len(pair) != 2:
            raise InputError(f"edge must have two endpoints, got {tuple(pair)}")
        i, j = int(pair[0]), int(pair[1])
        if not (0 <= i < n and 0 <= j < n):
            raise InputError(f"edge ({i}, {j}) has an endpoint outside [0, {n})")
        if i == j:
            raise InputError(f"self loop on node {i}")
        edges.add(canonical_edge(i, j))

    return Graph(n=n, edges=frozenset(edges))


def complete_graph(k: int) -> Graph:
    return build_graph(k, combinations(range(k), 2))


def maximal_cliques(g: Graph) -> CliqueSet:
    """
    All maximal cliques in canonical order.

    networkx.find_cliques is a pivoted Bron-Kerbosch search; isolated nodes
    come back as singleton cliques.
    """
    cliques = sorted(tuple(sorted(c)) for c in nx.find_cliques(g.to_networkx()))
    return CliqueSet(cliques=tuple(cliques))


def induced_subgraph(g: Graph, nodes: Iterable[int]) -> Tuple[Graph, Tuple[int, ...]]:
    """
    Induced subgraph relabelled to 0..m-1 in ascending original order.

    Returns:
        (subgraph, original ids) where original ids[new] = old.
    """
    kept = tuple(sorted(set(nodes)))
    position = {old: new for new, old in enumerate(kept)}
    edges = frozenset(
        (position[i], position[j]) for i, j in g.edges if i in position and j in position
    )
    return Graph(n=len(kept), edges=edges), kept


def components_after_removal(g: Graph, removed: Iterable[int]) -> List[Tuple[int, ...]]:
    """Connected components of the graph without `removed`, canonically ordered."""
    removed_set = set(removed)
    for node in removed_set:
        if not 0 <= node < g.n:
            raise InputError(f"node {node} is not in the graph")

    remaining = [v for v in g.nodes if v not in removed_set]
    sub = g.to_networkx().subgraph(remaining)
    return sorted(tuple(sorted(c)) for c in nx.connected_components(sub))


def separates(g: Graph, a: Iterable[int], b: Iterable[int], q: Iterable[int]) -> bool:
    """True when every path from a node in `a` to a node in `b` passes through `q`."""
    q_set = set(q)
    a_set = set(a) - q_set
    b_set = set(b) - q_set
    if a_set & b_set:
        return False

    sub = g.to_networkx().subgraph(v for v in g.nodes if v not in q_set)
    for source in a_set:
        reachable = nx.node_connected_component(sub, source)
        if reachable & b_set:
            return False
    return True


def is_cutset(g: Graph, q: Iterable[int]) -> bool:
    """True when `q` separates some pair of nodes outside it."""
    q_set = set(q)
    outside = [v for v in g.nodes if v not in q_set]
    return any(separates(g, [u], [v], q_set) for u, v in combinations(outside, 2))
