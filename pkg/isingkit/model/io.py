# -*- coding: utf-8 -*-
"""Model file format (JSON) and its pydantic schema."""

import json
import math
from pathlib import Path
from typing import Any, Dict, List, Optional, Union

from pydantic import BaseModel, Field, ValidationError, field_validator, model_validator

from isingkit.common.errors import InputError
from isingkit.graph.core import build_graph, canonical_edge
from isingkit.model.ising import IsingModel


class EdgeSpec(BaseModel):
    i: int = Field(..., ge=0, description="First endpoint, 0-based")
    j: int = Field(..., ge=0, description="Second endpoint, 0-based")
    w: float = Field(..., description="Interaction weight theta_ij")

    @field_validator("w")
    @classmethod
    def _finite(cls, value: float) -> float:
        if not math.isfinite(value):
            raise ValueError("weight must be finite")
        return value


class ModelFile(BaseModel):
    """{ "n": int, "thresholds": [real; n], "edges": [{"i", "j", "w"}] }"""

    n: int = Field(..., ge=1, description="Node count")
    thresholds: Optional[List[float]] = Field(default=None, description="theta_i per node; missing means 0.0")
    edges: List[EdgeSpec] = Field(default_factory=list)

    @model_validator(mode="after")
    def _check_shape(self) -> "ModelFile":
        if self.thresholds is not None and len(self.thresholds) != self.n:
            raise ValueError(f"thresholds has {len(self.thresholds)} entries, expected n={self.n}")
        seen = set()
        for edge in self.edges:
            key = canonical_edge(edge.i, edge.j)
            if key in seen:
                raise ValueError(f"edge {key} listed twice")
            seen.add(key)
        return self


def model_from_dict(data: Dict[str, Any]) -> IsingModel:
    """
    Build a model from the decoded JSON object.

    Args:
        data: the parsed model file (`n`, optional `thresholds`, `edges`).

    Returns:
        The validated IsingModel.

    Raises:
        InputError: schema violation, bad endpoint, self loop or duplicate edge.
    """
    try:
        spec = ModelFile.model_validate(data)
    except ValidationError as exc:
        raise InputError(f"invalid model: {exc}") from exc

    graph = build_graph(spec.n, [(e.i, e.j) for e in spec.edges])
    weights = {(e.i, e.j): e.w for e in spec.edges}
    return IsingModel.create(graph, spec.thresholds, weights)


def load_model(path: Union[str, Path]) -> IsingModel:
    """
    Read a UTF-8 JSON model file.

    Args:
        path: model file path.

    Raises:
        InputError: unreadable file, invalid encoding, invalid JSON or invalid model.
    """
    try:
        text = Path(path).read_text(encoding="utf-8")
    except UnicodeDecodeError as exc:
        raise InputError(f"model file {path} is not UTF-8: {exc}") from exc
    except OSError as exc:
        raise InputError(f"cannot read model file {path}: {exc}") from exc
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"model file {path} is not valid JSON: {exc}") from exc
    return model_from_dict(data)


def model_to_dict(m: IsingModel) -> Dict[str, Any]:
    """Inverse of model_from_dict; edges in canonical order."""
    return {
        "n": m.n,
        "thresholds": list(m.thresholds),
        "edges": [{"i": i, "j": j, "w": m.weights[(i, j)]} for i, j in m.graph.sorted_edges()],
    }


def dump_model(m: IsingModel) -> str:
    return json.dumps(model_to_dict(m), indent=2)
