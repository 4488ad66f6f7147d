"""Immutable simple undirected graphs with edge-list construction and I/O.

Node identifiers are opaque non-empty strings; canonical ordering is
lexicographic. Self-loops and parallel edges are silently simplified at
construction, with counts reported so callers can audit survey data.
"""

from __future__ import annotations

import csv
import math
from collections.abc import Iterable, Mapping
from dataclasses import dataclass, field
from pathlib import Path

from .errors import EmptyInput, InvalidBijection, ParseError

Edge = tuple[str, str]


def _norm(u: str, v: str) -> Edge:
    return (u, v) if u <= v else (v, u)


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph. Weights default to 1.0 when absent."""

    nodes: frozenset[str]
    edges: frozenset[Edge]
    weights: Mapping[Edge, float] | None = None

    def __post_init__(self):
        for u, v in self.edges:
            if u == v:
                raise ValueError(f"self-loop on {u!r}")
            if u > v:
                raise ValueError(f"edge {(u, v)!r} not in canonical order")
            if u not in self.nodes or v not in self.nodes:
                raise ValueError(f"edge {(u, v)!r} has endpoint outside node set")
        if self.weights is not None:
            for e, w in self.weights.items():
                if e not in self.edges:
                    raise ValueError(f"weight for unknown edge {e!r}")
                if not (math.isfinite(w) and w > 0):
                    raise ValueError(f"weight for {e!r} must be finite and > 0")

    @property
    def n_nodes(self) -> int:
        return len(self.nodes)

    @property
    def n_edges(self) -> int:
        return len(self.edges)

    def sorted_nodes(self) -> list[str]:
        return sorted(self.nodes)

    def adjacency(self) -> dict[str, set[str]]:
        adj: dict[str, set[str]] = {v: set() for v in self.nodes}
        for u, v in self.edges:
            adj[u].add(v)
            adj[v].add(u)
        return adj

    def degree(self, v: str) -> int:
        return sum(1 for e in self.edges if v in e)

    def degrees(self) -> dict[str, int]:
        deg = dict.fromkeys(self.nodes, 0)
        for u, v in self.edges:
            deg[u] += 1
            deg[v] += 1
        return deg

    def edge_weight(self, u: str, v: str) -> float:
        e = _norm(u, v)
        if self.weights is None:
            return 1.0
        return self.weights.get(e, 1.0)

    def has_edge(self, u: str, v: str) -> bool:
        return _norm(u, v) in self.edges


@dataclass(frozen=True)
class SimplificationReport:
    """Counts of entries dropped or merged while building a simple graph."""

    loops_dropped: int = 0
    duplicates_merged: int = 0


@dataclass(frozen=True)
class ComponentPartition:
    """Disjoint connected components, ordered by smallest contained node id."""

    components: tuple[frozenset[str], ...] = field(default=())

    def __len__(self) -> int:
        return len(self.components)

    def largest(self) -> frozenset[str]:
        # ties broken toward the component holding the smallest node id
        return min(self.components, key=lambda c: (-len(c), min(c)))


def from_edge_list(
    pairs: Iterable[tuple],
    declared_nodes: Iterable[str] = (),
) -> tuple[Graph, SimplificationReport]:
    """Build a simple graph from (u, v) or (u, v, weight) entries.

    Self-loops are dropped; duplicate pairs (in either order) are merged
    keeping the first weight. Raises EmptyInput when nothing remains.
    """
    nodes: set[str] = set()
    edges: dict[Edge, float | None] = {}
    loops = 0
    dups = 0
    for entry in pairs:
        if len(entry) == 2:
            u, v = entry
            w = None
        else:
            u, v, w = entry
        if not isinstance(u, str) or not isinstance(v, str) or not u or not v:
            raise ValueError(f"node ids must be non-empty strings, got {entry!r}")
        if u == v:
            loops += 1
            continue
        e = _norm(u, v)
        if e in edges:
            dups += 1
            continue
        edges[e] = None if w is None else float(w)
        nodes.add(u)
        nodes.add(v)
    for n in declared_nodes:
        if not isinstance(n, str) or not n:
            raise ValueError(f"declared node id must be a non-empty string, got {n!r}")
        nodes.add(n)
    if not nodes:
        raise EmptyInput("no valid edges and no declared nodes")
    weights = {e: w for e, w in edges.items() if w is not None}
    g = Graph(frozenset(nodes), frozenset(edges), weights or None)
    return g, SimplificationReport(loops_dropped=loops, duplicates_merged=dups)


def connected_components(g: Graph) -> ComponentPartition:
    """Connectivity partition, deterministically ordered."""
    adj = g.adjacency()
    seen: set[str] = set()
    comps: list[frozenset[str]] = []
    for start in g.sorted_nodes():
        if start in seen:
            continue
        stack = [start]
        comp = {start}
        seen.add(start)
        while stack:
            cur = stack.pop()
            for nxt in adj[cur]:
                if nxt not in comp:
                    comp.add(nxt)
                    seen.add(nxt)
                    stack.append(nxt)
        comps.append(frozenset(comp))
    return ComponentPartition(tuple(comps))


def permute_labels(g: Graph, bijection: Mapping[str, str]) -> Graph:
    """Relabel every node through a total injective map; result is isomorphic."""
    missing = g.nodes - set(bijection)
    if missing:
        raise InvalidBijection(f"map not total, missing {sorted(missing)[:5]}")
    images = [bijection[v] for v in g.nodes]
    if len(set(images)) != len(images):
        raise InvalidBijection("map not injective on the node set")
    new_edges = set()
    new_weights = {}
    for u, v in g.edges:
        e = _norm(bijection[u], bijection[v])
        new_edges.add(e)
        if g.weights and (u, v) in g.weights:
            new_weights[e] = g.weights[(u, v)]
    return Graph(frozenset(images), frozenset(new_edges), new_weights or None)


def read_edge_list_csv(
    path: str | Path,
    node_list: str | Path | None = None,
) -> tuple[Graph, SimplificationReport]:
    """Read `source,target[,weight]` CSV; optional one-id-per-line node file."""
    path = Path(path)
    rows: list[tuple] = []
    with path.open(newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise ParseError("empty file", line=1) from None
        header = [h.strip().lower() for h in header]
        if header[:2] != ["source", "target"] or len(header) > 3 or (
            len(header) == 3 and header[2] != "weight"
        ):
            raise ParseError(
                f"expected header 'source,target[,weight]', got {','.join(header)!r}",
                line=1,
            )
        has_weight = len(header) == 3
        for lineno, row in enumerate(reader, start=2):
            if not row or (len(row) == 1 and not row[0].strip()):
                continue
            if len(row) < 2 or not row[0].strip() or not row[1].strip():
                raise ParseError(f"bad edge row {row!r}", line=lineno)
            u, v = row[0].strip(), row[1].strip()
            if has_weight and len(row) >= 3 and row[2].strip():
                try:
                    w = float(row[2])
                except ValueError:
                    raise ParseError(f"bad weight {row[2]!r}", line=lineno) from None
                if not (math.isfinite(w) and w > 0):
                    raise ParseError(f"weight must be finite and > 0, got {w}", line=lineno)
                rows.append((u, v, w))
            else:
                rows.append((u, v))
    declared: list[str] = []
    if node_list is not None:
        with Path(node_list).open(encoding="utf-8") as fh:
            for lineno, line in enumerate(fh, start=1):
                name = line.strip()
                if name:
                    declared.append(name)
    try:
        return from_edge_list(rows, declared)
    except EmptyInput:
        raise ParseError("file declares no nodes and no edges", line=1) from None


def write_edge_list_csv(g: Graph, path: str | Path) -> None:
    """Write the graph in the canonical CSV form (sorted edges, LF endings)."""
    path = Path(path)
    weighted = g.weights is not None and len(g.weights) > 0
    lines = ["source,target,weight" if weighted else "source,target"]
    for u, v in sorted(g.edges):
        if weighted:
            lines.append(f"{u},{v},{g.edge_weight(u, v):.12g}")
        else:
            lines.append(f"{u},{v}")
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
