# -*- coding: utf-8 -*-
"""Interventions: which nodes are clamped and to which value."""

from dataclasses import dataclass
from typing import Dict, FrozenSet, Iterable, Mapping, Tuple, Union

from isingkit.common.errors import InputError


@dataclass(frozen=True)
class InterventionSpec:
    """The set A and the replacement values x_A* in {0, 1}, sorted by node."""

    assignments: Tuple[Tuple[int, int], ...] = ()

    def __post_init__(self):
        nodes = [node for node, _ in self.assignments]
        if len(set(nodes)) != len(nodes):
            raise InputError(f"intervention lists a node twice: {nodes}")
        for node, value in self.assignments:
            if node < 0:
                raise InputError(f"node id must be non-negative, got {node}")
            if value not in (0, 1):
                raise InputError(f"intervention value for node {node} must be 0 or 1, got {value}")
        object.__setattr__(self, "assignments", tuple(sorted(self.assignments)))

    @classmethod
    def of(cls, values: Union[Mapping[int, int], Iterable[Tuple[int, int]], None] = None) -> "InterventionSpec":
        if values is None:
            return cls()
        items = values.items() if isinstance(values, Mapping) else values
        return cls(tuple((int(node), int(value)) for node, value in items))

    @property
    def nodes(self) -> FrozenSet[int]:
        return frozenset(node for node, _ in self.assignments)

    def as_dict(self) -> Dict[int, int]:
        return dict(self.assignments)

    def value(self, node: int) -> int:
        return self.as_dict()[node]

    def __contains__(self, node: int) -> bool:
        return node in self.nodes

    def __len__(self) -> int:
        return len(self.assignments)

    def is_empty(self) -> bool:
        return not self.assignments

    def validate_for(self, n: int) -> None:
        outside = [node for node, _ in self.assignments if node >= n]
        if outside:
            raise InputError(f"intervention nodes {outside} are not in a graph of {n} nodes")

    def extended(self, node: int, value: int) -> "InterventionSpec":
        return InterventionSpec(self.assignments + ((node, value),))


def parse_intervention(text: str) -> InterventionSpec:
    """Parse `node=value` pairs separated by commas, e.g. "2=1,7=0". Empty text is no intervention."""
    items = []
    for chunk in (text or "").split(","):
        chunk = chunk.strip()
        if not chunk:
            continue
        node, sep, value = chunk.partition("=")
        if not sep:
            raise InputError(f"malformed intervention {chunk!r}, expected node=value")
        try:
            items.append((int(node.strip()), int(value.strip())))
        except ValueError:
            raise InputError(f"malformed intervention {chunk!r}, expected integers") from None
    return InterventionSpec.of(items)


def format_intervention(iv: InterventionSpec) -> str:
    return ",".join(f"{node}={value}" for node, value in iv.assignments)
