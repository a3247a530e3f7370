"""Louvain community detection.

Standard two-phase formulation: seeded-shuffle local moving until no move
improves modularity by more than the configured tolerance, then aggregation
of communities into a weighted meta-graph, repeated until a pass stops
paying. The meta-graph is weighted internally even though public graphs
are unweighted. Determinism: identical (graph, seed) gives an identical
partition, with best-community ties broken by the lowest community index.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .graph import Graph
from .metrics import modularity
from .partition import Partition
from .rng import rng_stream


@dataclass(frozen=True)
class LouvainConfig:
    rng_seed: int = 0
    max_passes: int = 100
    min_modularity_gain: float = 1e-7

    def __post_init__(self):
        if self.max_passes < 1:
            raise ValueError("max_passes must be >= 1")
        if self.min_modularity_gain <= 0:
            raise ValueError("min_modularity_gain must be > 0")


def louvain(g: Graph, config: LouvainConfig | None = None) -> Partition:
    """Modularity-maximizing partition of ``g``.

    Requires at least one edge. The result is at least as good as the
    one-community partition (Q = 0) whenever any positive-gain move exists.
    """
    cfg = config if config is not None else LouvainConfig()
    if g.edge_count == 0:
        raise ValueError("louvain requires a graph with at least one edge")
    rng = rng_stream(cfg.rng_seed)

    adj: list[dict[int, float]] = [dict() for _ in range(g.node_count)]
    for u, v in g.edges():
        adj[u][v] = 1.0
        adj[v][u] = 1.0
    self_w = [0.0] * g.node_count
    m_total = float(g.edge_count)

    node_to_meta = np.arange(g.node_count)
    q_prev = _meta_modularity(adj, self_w, m_total)
    for _ in range(cfg.max_passes):
        comm, moved = _local_moving(
            adj, self_w, m_total, rng, cfg.min_modularity_gain
        )
        if not moved:
            # Local moving found nothing above the gain tolerance: the
            # current partition is a fixpoint.
            break
        comm = _renumber(comm)
        node_to_meta = comm[node_to_meta]
        adj, self_w = _aggregate(adj, self_w, comm)
        q_now = _meta_modularity(adj, self_w, m_total)
        assert q_now >= q_prev - 1e-12, "modularity decreased across a pass"
        q_prev = q_now

    part = Partition(_dense_by_first_appearance(node_to_meta))
    if modularity(g, part) < 0.0:
        # No positive-gain move existed anywhere; fall back to the
        # one-community baseline so Q >= 0 holds unconditionally.
        part = Partition(np.zeros(g.node_count, dtype=np.int64))
    return part


def _local_moving(adj, self_w, m_total, rng, tol):
    """One local-moving phase; returns (community per meta-node, any_moved)."""
    n = len(adj)
    strength = [2.0 * self_w[u] + sum(adj[u].values()) for u in range(n)]
    two_m = 2.0 * m_total
    comm = list(range(n))
    comm_strength = strength.copy()
    order = [int(u) for u in rng.permutation(n)]
    any_moved = False
    while True:
        moves = 0
        for u in order:
            cu = comm[u]
            links: dict[int, float] = {}
            for v, w in adj[u].items():
                cv = comm[v]
                links[cv] = links.get(cv, 0.0) + w
            comm_strength[cu] -= strength[u]
            stay = links.get(cu, 0.0) - strength[u] * comm_strength[cu] / two_m
            best_c, best_gain = cu, stay
            for c in sorted(links):
                if c == cu:
                    continue
                gain = links[c] - strength[u] * comm_strength[c] / two_m
                if gain > best_gain and (gain - stay) / m_total > tol:
                    best_c, best_gain = c, gain
            comm[u] = best_c
            comm_strength[best_c] += strength[u]
            if best_c != cu:
                moves += 1
        if moves == 0:
            break
        any_moved = True
    return comm, any_moved


def _aggregate(adj, self_w, comm):
    """Collapse communities into meta-nodes, accumulating edge weights."""
    k = int(comm.max()) + 1
    new_adj: list[dict[int, float]] = [dict() for _ in range(k)]
    new_self = [0.0] * k
    for u in range(len(adj)):
        cu = int(comm[u])
        new_self[cu] += self_w[u]
        for v, w in adj[u].items():
            cv = int(comm[v])
            if cv == cu:
                if v > u:
                    new_self[cu] += w
            else:
                new_adj[cu][cv] = new_adj[cu].get(cv, 0.0) + w
    return new_adj, new_self


def _meta_modularity(adj, self_w, m_total):
    """Modularity of the singleton partition of the current meta-graph.

    Equals the modularity of the flattened partition on the original graph.
    """
    q = 0.0
    for u in range(len(adj)):
        strength = 2.0 * self_w[u] + sum(adj[u].values())
        q += self_w[u] / m_total - (strength / (2.0 * m_total)) ** 2
    return q


def _renumber(comm):
    labels = sorted(set(comm))
    lookup = {c: i for i, c in enumerate(labels)}
    return np.array([lookup[c] for c in comm], dtype=np.int64)


def _dense_by_first_appearance(assignment):
    dense: dict[int, int] = {}
    out = np.empty(len(assignment), dtype=np.int64)
    for v, label in enumerate(assignment):
        key = int(label)
        if key not in dense:
            dense[key] = len(dense)
        out[v] = dense[key]
    return out
