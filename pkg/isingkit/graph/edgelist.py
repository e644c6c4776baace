# -*- coding: utf-8 -*-
"""
Edge-list text format.

    # comment
    n 5
    0 4
    0 1

First non-comment line is `n <count>`, then one whitespace-separated `i j`
pair per line, 0-based.
"""

from pathlib import Path
from typing import List, Tuple, Union

from isingkit.common.errors import InputError
from isingkit.graph.core import Graph, build_graph


def parse_edge_list(text: str) -> Graph:
    """
    Parse edge-list text.

    Args:
        text: `n <count>` header followed by `i j` lines; `#` starts a comment.

    Returns:
        The Graph, validated by build_graph.

    Raises:
        InputError: missing header, malformed line, non-integer token or bad endpoint.
    """
    n = None
    edges: List[Tuple[int, int]] = []

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()

        if n is None:
            if len(parts) != 2 or parts[0] != "n":
                raise InputError(f"line {lineno}: expected header 'n <count>', got {raw.strip()!r}")
            n = _parse_int(parts[1], lineno)
            continue

        if len(parts) != 2:
            raise InputError(f"line {lineno}: expected 'i j', got {raw.strip()!r}")
        edges.append((_parse_int(parts[0], lineno), _parse_int(parts[1], lineno)))

    if n is None:
        raise InputError("edge list has no 'n <count>' header")
    return build_graph(n, edges)


def read_edge_list(path: Union[str, Path]) -> Graph:
    """Read a UTF-8 edge-list file; see parse_edge_list."""
    try:
        text = Path(path).read_text(encoding="utf-8")
    except UnicodeDecodeError as exc:
        raise InputError(f"edge list {path} is not UTF-8: {exc}") from exc
    except OSError as exc:
        raise InputError(f"cannot read edge list {path}: {exc}") from exc
    return parse_edge_list(text)


def write_edge_list(g: Graph) -> str:
    """Header plus one line per edge in canonical order."""
    lines = [f"n {g.n}"]
    lines.extend(f"{i} {j}" for i, j in g.sorted_edges())
    return "\n".join(lines) + "\n"


def _parse_int(token: str, lineno: int) -> int:
    try:
        return int(token)
    except ValueError:
        raise InputError(f"line {lineno}: {token!r} is not an integer") from None
