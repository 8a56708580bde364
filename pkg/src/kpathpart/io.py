"""File formats: edge-list text, partition JSON, and DOT dumps.

Both writers are canonical (edges sorted, paths sorted by first vertex,
fixed separators) so identical objects always serialize to identical
bytes.
"""

from __future__ import annotations

import json

from .graph import DiGraph, GraphError, PathCycleCover, PathPartition

PARTITION_SCHEMA = 1


class ParseError(ValueError):
    """Raised when an input file cannot be parsed."""


def read_edge_list(text: str) -> DiGraph:
    """Parse the edge-list format: a header line ``n m`` followed by ``m``
    lines ``u v``.  Lines starting with ``#`` are comments."""
    lines = [
        line.strip()
        for line in text.splitlines()
        if line.strip() and not line.strip().startswith("#")
    ]
    if not lines:
        raise ParseError("empty edge-list input")
    header = lines[0].split()
    if len(header) != 2:
        raise ParseError(f"expected header 'n m', got {lines[0]!r}")
    try:
        n, m = int(header[0]), int(header[1])
    except ValueError as exc:
        raise ParseError(f"non-integer header {lines[0]!r}") from exc
    if len(lines) - 1 != m:
        raise ParseError(f"header promises {m} edges but {len(lines) - 1} lines follow")
    edges = []
    for line in lines[1:]:
        parts = line.split()
        if len(parts) != 2:
            raise ParseError(f"expected edge 'u v', got {line!r}")
        try:
            edges.append((int(parts[0]), int(parts[1])))
        except ValueError as exc:
            raise ParseError(f"non-integer edge {line!r}") from exc
    try:
        return DiGraph.from_edges(n, edges)
    except GraphError as exc:
        raise ParseError(str(exc)) from exc


def write_edge_list(g: DiGraph) -> str:
    lines = [f"{g.n} {g.m}"]
    lines.extend(f"{u} {v}" for u, v in g.sorted_edges())
    return "\n".join(lines) + "\n"


def load_graph(path: str) -> DiGraph:
    with open(path, "r", encoding="utf-8") as fh:
        return read_edge_list(fh.read())


def partition_to_json(p: PathPartition) -> str:
    # paths are already canonically ordered by the PathPartition constructor
    payload = {"k": p.k, "paths": [list(path) for path in p.paths]}
    return json.dumps(payload, sort_keys=True, separators=(",", ":")) + "\n"


def partition_from_json(text: str, k: int | None = None) -> PathPartition:
    try:
        payload = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid partition JSON: {exc}") from exc
    if not isinstance(payload, dict) or "paths" not in payload:
        raise ParseError("partition JSON must be an object with a 'paths' key")
    file_k = payload.get("k")
    if k is None:
        if file_k is None:
            raise ParseError("partition JSON lacks 'k' and no override was given")
        k = int(file_k)
    try:
        return PathPartition(k=k, paths=tuple(tuple(int(v) for v in p) for p in payload["paths"]))
    except (TypeError, GraphError) as exc:
        raise ParseError(f"malformed partition: {exc}") from exc


def load_partition(path: str, k: int | None = None) -> PathPartition:
    with open(path, "r", encoding="utf-8") as fh:
        return partition_from_json(fh.read(), k=k)


def partition_to_dot(g: DiGraph, p: PathPartition) -> str:
    """DOT rendering with partition edges solid black and the remaining
    graph edges gray dashed."""
    chosen = p.edge_set
    lines = ["digraph partition {"]
    for v in range(g.n):
        lines.append(f"  {v};")
    for u, v in g.sorted_edges():
        if (u, v) in chosen:
            lines.append(f"  {u} -> {v} [color=black, penwidth=2];")
        else:
            lines.append(f'  {u} -> {v} [color=gray, style=dashed];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def graph_to_dot(g: DiGraph) -> str:
    lines = ["digraph g {"]
    for v in range(g.n):
        lines.append(f"  {v};")
    for u, v in g.sorted_edges():
        lines.append(f"  {u} -> {v};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def cover_to_dot(g: DiGraph, c: PathCycleCover) -> str:
    chosen = c.edges
    lines = ["digraph cover {"]
    for v in range(g.n):
        lines.append(f"  {v};")
    for u, v in g.sorted_edges():
        style = "[color=black, penwidth=2]" if (u, v) in chosen else "[color=gray, style=dashed]"
        lines.append(f"  {u} -> {v} {style};")
    lines.append("}")
    return "\n".join(lines) + "\n"
