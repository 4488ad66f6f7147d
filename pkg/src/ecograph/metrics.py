"""Network metrics feeding the collaboration-structure formulas.

Conventions that matter on survey data:
  - distances are unweighted hop counts (BFS-exact);
  - global efficiency is the mean pairwise reciprocal distance with 1/inf = 0,
    so it stays finite on disconnected graphs;
  - average shortest path and eccentricity are restricted to the largest
    connected component;
  - betweenness is exact (Brandes accumulation), normalized by (n-1)(n-2)/2.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import shortest_path as _csgraph_shortest_path

from .community import CommunityPartition, detect_communities, modularity_of
from .errors import DegenerateClub, TooSmall
from .graph import Graph, connected_components

__all__ = [
    "SurveyMeta",
    "MetricsBundle",
    "all_pairs_distances",
    "global_efficiency",
    "average_shortest_path",
    "average_eccentricity",
    "clustering_avg",
    "transitivity",
    "betweenness",
    "central_point_dominance",
    "core_ratio",
    "rich_club",
    "degree_stats",
    "compute_bundle",
]


@dataclass(frozen=True)
class SurveyMeta:
    """Survey-instrument metadata accompanying a collaboration graph."""

    respondents: int
    max_reportable: int
    avg_collaborations: float

    @classmethod
    def from_json(cls, path: str | Path) -> "SurveyMeta":
        data = json.loads(Path(path).read_text(encoding="utf-8"))
        return cls(
            respondents=int(data["respondents"]),
            max_reportable=int(data["max_reportable"]),
            avg_collaborations=float(data["avg_collaborations"]),
        )

    def to_json_dict(self) -> dict:
        return {
            "respondents": self.respondents,
            "max_reportable": self.max_reportable,
            "avg_collaborations": self.avg_collaborations,
        }


@dataclass(frozen=True)
class MetricsBundle:
    """One value per supported metric; `None` marks fields a fixture omits."""

    n_nodes: int
    n_edges: int
    avg_shortest_path: float | None
    central_point_dominance: float | None
    clustering: float | None
    density: float | None
    global_efficiency: float | None
    avg_eccentricity: float | None
    avg_degree: float | None
    modularity: float | None
    avg_edge_weight: float | None
    transitivity: float | None
    rich_club: float | None
    core_ratio: float | None
    avg_collaborations: float | None
    rich_club_k: int | None = None
    collaborations_from_degree: bool = False

    def validate(self) -> None:
        """Range-check every present field against its documented interval."""
        unit = {
            "central_point_dominance": self.central_point_dominance,
            "clustering": self.clustering,
            "density": self.density,
            "global_efficiency": self.global_efficiency,
            "transitivity": self.transitivity,
            "rich_club": self.rich_club,
            "core_ratio": self.core_ratio,
        }
        for name, val in unit.items():
            if val is not None and not (-1e-9 <= val <= 1 + 1e-9):
                raise ValueError(f"{name}={val} outside [0, 1]")
        if self.modularity is not None and not (-0.5 - 1e-9 <= self.modularity <= 1 + 1e-9):
            raise ValueError(f"modularity={self.modularity} outside [-0.5, 1]")
        hi = max(1, self.n_nodes - 1)
        for name, val in (
            ("avg_shortest_path", self.avg_shortest_path),
            ("avg_eccentricity", self.avg_eccentricity),
        ):
            if val is not None and not (1 - 1e-9 <= val <= hi + 1e-9):
                raise ValueError(f"{name}={val} outside [1, {hi}]")
        if self.avg_degree is not None and self.avg_degree < 0:
            raise ValueError(f"avg_degree={self.avg_degree} negative")
        if self.avg_edge_weight is not None and self.avg_edge_weight <= 0:
            raise ValueError(f"avg_edge_weight={self.avg_edge_weight} not positive")
        if self.avg_collaborations is not None and self.avg_collaborations < 0:
            raise ValueError(f"avg_collaborations={self.avg_collaborations} negative")

    def to_json_dict(self) -> dict:
        return {
            "n_nodes": self.n_nodes,
            "n_edges": self.n_edges,
            "avg_shortest_path": self.avg_shortest_path,
            "central_point_dominance": self.central_point_dominance,
            "clustering": self.clustering,
            "density": self.density,
            "global_efficiency": self.global_efficiency,
            "avg_eccentricity": self.avg_eccentricity,
            "avg_degree": self.avg_degree,
            "modularity": self.modularity,
            "avg_edge_weight": self.avg_edge_weight,
            "transitivity": self.transitivity,
            "rich_club": self.rich_club,
            "rich_club_k": self.rich_club_k,
            "core_ratio": self.core_ratio,
            "avg_collaborations": self.avg_collaborations,
            "collaborations_from_degree": self.collaborations_from_degree,
        }


def _index_arrays(g: Graph) -> tuple[list[str], np.ndarray, np.ndarray]:
    """Canonical node order plus directed edge index arrays (both ways)."""
    order = g.sorted_nodes()
    idx = {v: i for i, v in enumerate(order)}
    if g.n_edges == 0:
        return order, np.empty(0, dtype=np.int64), np.empty(0, dtype=np.int64)
    src = np.empty(2 * g.n_edges, dtype=np.int64)
    dst = np.empty(2 * g.n_edges, dtype=np.int64)
    for pos, (u, v) in enumerate(sorted(g.edges)):
        src[2 * pos], dst[2 * pos] = idx[u], idx[v]
        src[2 * pos + 1], dst[2 * pos + 1] = idx[v], idx[u]
    return order, src, dst


def all_pairs_distances(g: Graph) -> tuple[list[str], np.ndarray]:
    """Hop-count matrix in canonical node order; inf for unreachable pairs."""
    order, src, dst = _index_arrays(g)
    n = len(order)
    if n == 0:
        return order, np.zeros((0, 0))
    adj = csr_matrix((np.ones(len(src)), (src, dst)), shape=(n, n))
    dist = _csgraph_shortest_path(adj, method="D", directed=False, unweighted=True)
    return order, dist


def global_efficiency(g: Graph, dist: np.ndarray | None = None) -> float:
    """Mean over unordered pairs of 1/d(u, v), with 1/inf = 0."""
    n = g.n_nodes
    if n < 2:
        raise TooSmall("global efficiency needs at least 2 nodes")
    if dist is None:
        _, dist = all_pairs_distances(g)
    iu = np.triu_indices(n, k=1)
    d = dist[iu]
    recip = np.where(np.isfinite(d), 1.0 / np.where(d > 0, d, 1.0), 0.0)
    return float(recip.sum() / len(d))


def _largest_component_submatrix(g: Graph, dist: np.ndarray) -> np.ndarray:
    order = g.sorted_nodes()
    idx = {v: i for i, v in enumerate(order)}
    comp = connected_components(g).largest()
    sel = np.array(sorted(idx[v] for v in comp), dtype=np.int64)
    return dist[np.ix_(sel, sel)]


def average_shortest_path(g: Graph, dist: np.ndarray | None = None) -> float:
    """Mean pairwise hop count on the largest connected component."""
    if dist is None:
        _, dist = all_pairs_distances(g)
    sub = _largest_component_submatrix(g, dist)
    k = sub.shape[0]
    if k < 2:
        raise TooSmall("largest component has fewer than 2 nodes")
    iu = np.triu_indices(k, k=1)
    return float(sub[iu].mean())


def average_eccentricity(g: Graph, dist: np.ndarray | None = None) -> float:
    """Mean over largest-component nodes of their farthest in-component node."""
    if dist is None:
        _, dist = all_pairs_distances(g)
    sub = _largest_component_submatrix(g, dist)
    if sub.shape[0] < 2:
        raise TooSmall("largest component has fewer than 2 nodes")
    return float(sub.max(axis=1).mean())


def clustering_avg(g: Graph) -> float:
    """Mean local clustering; degree < 2 nodes contribute 0."""
    adj = g.adjacency()
    n = g.n_nodes
    if n == 0:
        return 0.0
    total = 0.0
    for v in g.nodes:
        neigh = adj[v]
        k = len(neigh)
        if k < 2:
            continue
        links = 0
        for u in neigh:
            links += len(adj[u] & neigh)
        total += links / (k * (k - 1))  # links double-counts each pair
    return total / n


def transitivity(g: Graph) -> float:
    """3 * triangles / connected triples; 0 when there are no triples."""
    adj = g.adjacency()
    triangles3 = 0  # each triangle counted once per corner
    triples = 0
    for v in g.nodes:
        neigh = adj[v]
        k = len(neigh)
        triples += k * (k - 1) // 2
        for u in neigh:
            triangles3 += len(adj[u] & neigh)
    # triangles3 counts each triangle 6 times (3 corners x 2 orientations)
    if triples == 0:
        return 0.0
    return (triangles3 / 2) / triples


def betweenness(g: Graph, dist: np.ndarray | None = None) -> dict[str, float]:
    """Exact shortest-path betweenness normalized by (n-1)(n-2)/2.

    Level-synchronous Brandes run from all sources at once: geodesic counts
    and dependencies live in n x n matrices and each BFS level is one sparse
    matrix product, so work scales with the diameter rather than n.
    """
    n = g.n_nodes
    if n < 3:
        raise TooSmall("betweenness needs at least 3 nodes")
    order, src, dst = _index_arrays(g)
    bc = np.zeros(n)
    if len(src):
        if dist is None:
            _, dist = all_pairs_distances(g)
        adj = csr_matrix((np.ones(len(src)), (src, dst)), shape=(n, n))
        d = np.where(np.isfinite(dist), dist, -1.0).astype(np.int64)
        max_level = int(d.max())
        sigma = np.zeros((n, n))
        sigma[d == 0] = 1.0
        for level in range(1, max_level + 1):
            prev = np.where(d == level - 1, sigma, 0.0)
            arrived = prev @ adj
            mask = d == level
            sigma[mask] = arrived[mask]
        delta = np.zeros((n, n))
        for level in range(max_level, 0, -1):
            cur = np.zeros((n, n))
            mask = d == level
            cur[mask] = (1.0 + delta[mask]) / sigma[mask]
            spread = cur @ adj
            below = d == level - 1
            delta[below] += sigma[below] * spread[below]
        np.fill_diagonal(delta, 0.0)  # sources are not intermediaries
        bc = delta.sum(axis=0)
    bc /= 2.0  # each unordered pair accumulated from both endpoints
    bc /= (n - 1) * (n - 2) / 2.0
    return dict(zip(order, bc.tolist()))


def central_point_dominance(g: Graph, bc: dict[str, float] | None = None) -> float:
    """Freeman centralization of normalized betweenness."""
    if g.n_nodes < 3:
        raise TooSmall("central point dominance needs at least 3 nodes")
    if bc is None:
        bc = betweenness(g)
    b_max = max(bc.values())
    return sum(b_max - b for b in bc.values()) / (g.n_nodes - 1)


def core_ratio(g: Graph, k: int = 2) -> float:
    """Fraction of nodes surviving iterative pruning of degree < k."""
    if k < 1:
        raise ValueError("k must be >= 1")
    if g.n_nodes == 0:
        return 0.0
    adj = {v: set(ns) for v, ns in g.adjacency().items()}
    queue = [v for v, ns in adj.items() if len(ns) < k]
    while queue:
        v = queue.pop()
        if v not in adj:
            continue
        for u in adj.pop(v):
            peers = adj.get(u)
            if peers is not None:
                peers.discard(v)
                if len(peers) < k:
                    queue.append(u)
    return len(adj) / g.n_nodes


def _induced_density(g: Graph, members: set[str]) -> float:
    k = len(members)
    inside = sum(1 for u, v in g.edges if u in members and v in members)
    return 2 * inside / (k * (k - 1))


def rich_club(g: Graph, k: int | None = None) -> tuple[float, int]:
    """Density of the subgraph induced on nodes of degree >= k.

    With k omitted, picks the hub decile: the smallest k whose club has at
    most max(2, ceil(n/10)) members (backing off to the largest k keeping
    at least 2 members). Returns (density, k used).
    """
    deg = g.degrees()
    if k is not None:
        members = {v for v, d in deg.items() if d >= k}
        if len(members) < 2:
            raise DegenerateClub(f"only {len(members)} nodes have degree >= {k}")
        return _induced_density(g, members), k
    if g.n_nodes < 2:
        raise DegenerateClub("graph has fewer than 2 nodes")
    cap = max(2, math.ceil(0.1 * g.n_nodes))
    counts = sorted(deg.values())
    k_star = 1
    while sum(1 for d in counts if d >= k_star) > cap:
        k_star += 1
    members = {v for v, d in deg.items() if d >= k_star}
    while len(members) < 2 and k_star > 0:
        k_star -= 1
        members = {v for v, d in deg.items() if d >= k_star}
    return _induced_density(g, members), k_star


def degree_stats(g: Graph) -> tuple[float, float, float]:
    """(avg_degree, density, avg_edge_weight)."""
    n, m = g.n_nodes, g.n_edges
    if n < 2:
        raise TooSmall("density needs at least 2 nodes")
    avg_degree = 2 * m / n
    density = 2 * m / (n * (n - 1))
    if m == 0:
        avg_weight = 1.0
    else:
        avg_weight = sum(g.edge_weight(u, v) for u, v in g.edges) / m
    return avg_degree, density, avg_weight


def compute_bundle(
    g: Graph,
    survey: SurveyMeta | None = None,
    core_k: int = 2,
    partition: CommunityPartition | None = None,
) -> MetricsBundle:
    """Fill every bundle field; falls back to avg_degree for collaborations."""
    if g.n_nodes < 3:
        raise TooSmall("bundle needs at least 3 nodes")
    _, dist = all_pairs_distances(g)
    avg_degree, density, avg_weight = degree_stats(g)
    bc = betweenness(g, dist)
    if partition is None:
        partition = detect_communities(g)
    rc_value, rc_k = rich_club(g)
    if survey is not None:
        avg_collabs = survey.avg_collaborations
        fallback = False
    else:
        avg_collabs = avg_degree
        fallback = True
    bundle = MetricsBundle(
        n_nodes=g.n_nodes,
        n_edges=g.n_edges,
        avg_shortest_path=average_shortest_path(g, dist),
        central_point_dominance=central_point_dominance(g, bc),
        clustering=clustering_avg(g),
        density=density,
        global_efficiency=global_efficiency(g, dist),
        avg_eccentricity=average_eccentricity(g, dist),
        avg_degree=avg_degree,
        modularity=partition.q_value,
        avg_edge_weight=avg_weight,
        transitivity=transitivity(g),
        rich_club=rc_value,
        rich_club_k=rc_k,
        core_ratio=core_ratio(g, core_k),
        avg_collaborations=avg_collabs,
        collaborations_from_degree=fallback,
    )
    bundle.validate()
    return bundle
