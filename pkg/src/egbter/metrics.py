"""Structural graph metrics.

Degree histogram, local clustering coefficient and its per-degree average
(CCPD), density, padded-histogram RMSE comparators, and Newman modularity.
These are the scoring functions every generator in the package is judged
against, so they are kept as small pure functions over immutable inputs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Mapping

import numpy as np

from .graph import Graph, NodeId
from .partition import Partition


@dataclass(frozen=True)
class DegreeDistribution:
    """Histogram {degree d: number of nodes of degree d}.

    Only realized degrees are stored; absent degrees read as count 0.
    """

    counts: Mapping[int, int]

    def __post_init__(self):
        for d, n in self.counts.items():
            if d < 0 or n <= 0:
                raise ValueError("degree histogram requires d >= 0 and counts > 0")

    @property
    def max_degree(self) -> int:
        return max(self.counts, default=0)

    def count(self, d: int) -> int:
        return self.counts.get(d, 0)

    @property
    def node_count(self) -> int:
        return sum(self.counts.values())


@dataclass(frozen=True)
class CcpdDistribution:
    """Mean local clustering coefficient per realized degree.

    Degrees with no nodes are not stored and read as 0.
    """

    values: Mapping[int, float]

    def __post_init__(self):
        for d, cc in self.values.items():
            if d < 0 or not 0.0 <= cc <= 1.0:
                raise ValueError("ccpd requires d >= 0 and values in [0, 1]")

    @property
    def max_degree(self) -> int:
        return max(self.values, default=0)

    def value(self, d: int) -> float:
        return self.values.get(d, 0.0)


def degree_distribution(g: Graph) -> DegreeDistribution:
    """Exact histogram of node degrees."""
    if g.node_count == 0:
        return DegreeDistribution({})
    counts = np.bincount(g.degrees())
    return DegreeDistribution(
        {int(d): int(counts[d]) for d in np.nonzero(counts)[0]}
    )


def local_cc(g: Graph, v: NodeId) -> float:
    """Local clustering coefficient 2*L / (d*(d-1)).

    L is the number of edges among the neighbors of ``v``; nodes of degree
    below 2 have coefficient 0.
    """
    nb = g.neighbors(v)
    d = len(nb)
    if d < 2:
        return 0.0
    links = sum(len(nb & g.neighbors(u)) for u in nb) // 2
    return 2.0 * links / (d * (d - 1))


def local_cc_all(g: Graph) -> np.ndarray:
    """Local clustering coefficient of every node.

    Counts, for each edge (u, v), the common neighbors w: each such w gains
    one edge among its own neighborhood.
    """
    links = np.zeros(g.node_count)
    for u, v in g.edges():
        common = g.neighbors(u) & g.neighbors(v)
        if common:
            links[np.fromiter(common, dtype=np.int64)] += 1.0
    degs = g.degrees().astype(float)
    out = np.zeros(g.node_count)
    mask = degs >= 2
    out[mask] = 2.0 * links[mask] / (degs[mask] * (degs[mask] - 1.0))
    return out


def ccpd(g: Graph) -> CcpdDistribution:
    """Average local clustering coefficient per realized degree."""
    if g.node_count == 0:
        return CcpdDistribution({})
    degs = g.degrees()
    cc = local_cc_all(g)
    sums = np.bincount(degs, weights=cc)
    counts = np.bincount(degs)
    return CcpdDistribution(
        {int(d): float(sums[d] / counts[d]) for d in np.nonzero(counts)[0]}
    )


def density(g: Graph) -> float:
    """Fraction of the C(n, 2) possible edges present; 0 for n < 2."""
    n = g.node_count
    if n < 2:
        return 0.0
    return 2.0 * g.edge_count / (n * (n - 1))


def _padded_rmse(ref_at, sample_at, top: int) -> float:
    total = 0.0
    for d in range(top + 1):
        diff = ref_at(d) - sample_at(d)
        total += diff * diff
    return math.sqrt(total / (top + 1))


def rmse_degree(reference: DegreeDistribution, sample: DegreeDistribution) -> float:
    """RMSE between two degree histograms over degrees 0..max(D_ref, D_sample).

    Compares raw counts n_d; degrees missing from either histogram
    contribute a count of 0.
    """
    top = max(reference.max_degree, sample.max_degree)
    return _padded_rmse(reference.count, sample.count, top)


def rmse_ccpd(reference: CcpdDistribution, sample: CcpdDistribution) -> float:
    """RMSE between two CCPD tables over degrees 0..max(D_ref, D_sample)."""
    top = max(reference.max_degree, sample.max_degree)
    return _padded_rmse(reference.value, sample.value, top)


def modularity(g: Graph, p: Partition) -> float:
    """Newman modularity Q = sum_i (e_ii - a_i^2) of a partition.

    e_ij is the fraction of edges joining community i to community j: an
    intra-community edge contributes 1/m to e_ii, a cross edge contributes
    1/(2m) to each of e_ij and e_ji, so the e matrix sums to 1 and
    a_i = sum_j e_ij equals the community's degree share.
    """
    m = g.edge_count
    if m == 0:
        raise ValueError("modularity is undefined for a graph with no edges")
    if p.node_count != g.node_count:
        raise ValueError("partition does not cover the graph's node set")
    a = p.assignment
    k = p.num_communities
    eu = a[g.edge_array[:, 0]]
    ev = a[g.edge_array[:, 1]]
    intra = np.bincount(eu[eu == ev], minlength=k).astype(float)
    degree_share = np.bincount(
        a, weights=g.degrees().astype(float), minlength=k
    ) / (2.0 * m)
    q = float(np.sum(intra / m - degree_share**2))
    assert -0.5 - 1e-9 <= q <= 1.0 + 1e-9, f"modularity {q} outside [-0.5, 1]"
    return q
