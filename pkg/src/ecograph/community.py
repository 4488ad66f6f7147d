"""Deterministic greedy modularity maximization (agglomerative CNM-style).

Communities start as singletons indexed by canonical (lexicographic) node
order. At every step the connected community pair with the largest modularity
gain is merged, ties broken by the smallest (min, max) index pair; the merged
community keeps the smaller index. Stops when no merge gains modularity.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from collections.abc import Mapping

from .errors import NoEdges, UnassignedNode
from .graph import Graph


@dataclass(frozen=True)
class CommunityPartition:
    """Node -> community index assignment with its recomputable Q value."""

    assignment: Mapping[str, int]
    q_value: float

    def n_communities(self) -> int:
        return len(set(self.assignment.values()))


def modularity_of(g: Graph, assignment: Mapping[str, int]) -> float:
    """Q = sum_c [e_c/m - (d_c/2m)^2] over communities of the assignment."""
    missing = g.nodes - set(assignment)
    if missing:
        raise UnassignedNode(f"nodes without a community: {sorted(missing)[:5]}")
    m = g.n_edges
    if m == 0:
        raise NoEdges("modularity undefined on an edgeless graph")
    internal: dict[int, int] = {}
    degree: dict[int, int] = {}
    for u, v in g.edges:
        cu, cv = assignment[u], assignment[v]
        degree[cu] = degree.get(cu, 0) + 1
        degree[cv] = degree.get(cv, 0) + 1
        if cu == cv:
            internal[cu] = internal.get(cu, 0) + 1
    q = 0.0
    for c in set(assignment.values()):
        e_c = internal.get(c, 0)
        d_c = degree.get(c, 0)
        q += e_c / m - (d_c / (2 * m)) ** 2
    return q


def _canonical_order(g: Graph) -> list[str]:
    """Node order from Weisfeiler-Lehman color refinement, labels last.

    Ranks nodes by structural role so that tie-breaking in the greedy
    merge loop does not depend on how the nodes happen to be labelled;
    only WL-equivalent nodes fall back to label order.
    """
    adj = g.adjacency()
    nodes = g.sorted_nodes()
    color = {v: len(adj[v]) for v in nodes}
    for _ in range(len(nodes)):
        signature = {
            v: (color[v], tuple(sorted(color[u] for u in adj[v]))) for v in nodes
        }
        palette = {sig: i for i, sig in enumerate(sorted(set(signature.values())))}
        new_color = {v: palette[signature[v]] for v in nodes}
        if new_color == color:
            break
        color = new_color
    return sorted(nodes, key=lambda v: (color[v], v))


def detect_communities(g: Graph) -> CommunityPartition:
    """Greedy agglomerative modularity maximization; deterministic."""
    m = g.n_edges
    if m == 0:
        raise NoEdges("community detection needs at least one edge")
    order = _canonical_order(g)
    idx_of = {v: i for i, v in enumerate(order)}
    members: dict[int, set[str]] = {i: {v} for i, v in enumerate(order)}
    degree: dict[int, int] = {i: 0 for i in members}
    # nbrs[i][j]: edge count between communities i and j
    nbrs: dict[int, dict[int, int]] = {i: {} for i in members}
    for u, v in g.edges:
        i, j = idx_of[u], idx_of[v]
        degree[i] += 1
        degree[j] += 1
        nbrs[i][j] = nbrs[i].get(j, 0) + 1
        nbrs[j][i] = nbrs[j].get(i, 0) + 1

    two_m = 2 * m

    def gain_of(i: int, j: int, e_ij: int) -> float:
        return e_ij / m - 2 * (degree[i] / two_m) * (degree[j] / two_m)

    # lazy max-heap of merge candidates; entries carry the state they were
    # computed from and are dropped as stale if it changed
    heap = []
    for i, adj_i in nbrs.items():
        for j, e_ij in adj_i.items():
            if i < j:
                heap.append((-gain_of(i, j, e_ij), i, j, e_ij, degree[i], degree[j]))
    heapq.heapify(heap)
    while heap:
        neg_gain, i, j, e_ij, d_i, d_j = heapq.heappop(heap)
        if -neg_gain <= 1e-12:
            break
        if i not in degree or j not in degree:
            continue
        if degree[i] != d_i or degree[j] != d_j or nbrs[i].get(j) != e_ij:
            continue
        members[i] |= members.pop(j)
        degree[i] += degree.pop(j)
        del nbrs[i][j]
        for t, w in nbrs.pop(j).items():
            if t == i:
                continue
            nbrs[i][t] = nbrs[i].get(t, 0) + w
            del nbrs[t][j]
            nbrs[t][i] = nbrs[i][t]
        for t, w in nbrs[i].items():
            a, b = (i, t) if i < t else (t, i)
            heapq.heappush(heap, (-gain_of(a, b, w), a, b, w, degree[a], degree[b]))

    assignment = {v: c for c, nodes in members.items() for v in nodes}
    assignment = _refine(g, assignment)
    return CommunityPartition(assignment=assignment, q_value=modularity_of(g, assignment))


def _refine(g: Graph, assignment: Mapping[str, int], max_sweeps: int = 200) -> dict[str, int]:
    """Greedy single-node moves until Q stops improving.

    Merge-order ties make plain agglomeration label-sensitive; this pass
    drives relabeled runs into the same local optimum. Q never decreases.
    """
    m = g.n_edges
    adj = g.adjacency()
    order = _canonical_order(g)
    assign = dict(assignment)
    deg = g.degrees()
    comm_degree: dict[int, int] = {}
    for v in order:
        comm_degree[assign[v]] = comm_degree.get(assign[v], 0) + deg[v]
    next_comm = max(assign.values(), default=-1) + 1

    for _ in range(max_sweeps):
        moved = False
        for v in order:
            c = assign[v]
            k_to: dict[int, int] = {}
            for u in adj[v]:
                k_to[assign[u]] = k_to.get(assign[u], 0) + 1
            k_own = k_to.get(c, 0)
            d_v = deg[v]
            best_gain = 0.0
            best_target = c
            candidates = sorted(k_to) + [next_comm]  # adjacent comms + isolation
            for d in candidates:
                if d == c:
                    continue
                k_vd = k_to.get(d, 0)
                d_d = comm_degree.get(d, 0)
                gain = (k_vd - k_own) / m - d_v * (d_d - comm_degree[c] + d_v) / (
                    2.0 * m * m
                )
                if gain > best_gain + 1e-12 or (
                    best_target != c
                    and abs(gain - best_gain) <= 1e-12
                    and d < best_target
                ):
                    best_gain = gain
                    best_target = d
            if best_target != c:
                assign[v] = best_target
                comm_degree[c] -= d_v
                comm_degree[best_target] = comm_degree.get(best_target, 0) + d_v
                if best_target == next_comm:
                    next_comm += 1
                moved = True
        if not moved:
            break
    # renumber communities by smallest member for a canonical assignment
    reps: dict[int, str] = {}
    for v, c in assign.items():
        if c not in reps or v < reps[c]:
            reps[c] = v
    rank = {c: i for i, (_, c) in enumerate(sorted((r, c) for c, r in reps.items()))}
    return {v: rank[c] for v, c in assign.items()}
