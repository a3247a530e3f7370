"""GBTER: prescribed communities wired by per-community ER blocks plus a
degree-matching Chung-Lu overlay.

The fit learns one density parameter p_k per community, either as the
induced subgraph's density ("density" mode) or as the cube root of its
mean local clustering coefficient ("cc" mode). A node's excess degree
eps_i = max(0, d_i - p_k * (|C_k| - 1)) is whatever the within-community
ER process does not already serve in expectation. Generation is exact:
every node pair is drawn independently with probability

    p_k + (1 - p_k) * CL(eps_i, eps_j)   for pairs inside community k,
    CL(eps_i, eps_j)                     otherwise,

where CL is the clamped Chung-Lu probability over the excess vector.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from sklearn.utils.validation import check_is_fitted

from ..community import LouvainConfig, louvain
from ..graph import Graph, NodeId
from ..metrics import density, local_cc_all
from ..partition import Partition
from ..rng import as_rng
from ..validation import check_degree_array, check_graph, check_partition
from .base import GraphModel
from .baseline import ClWeights, cl_probability

FIT_MODES = ("density", "cc")


def compute_excess(
    expected_degrees: np.ndarray, partition: Partition, community_p: np.ndarray
) -> np.ndarray:
    """Per-node excess degree max(0, d_i - p_k * (|C_k| - 1))."""
    sizes = partition.sizes()
    a = partition.assignment
    return np.maximum(
        0.0, expected_degrees - community_p[a] * (sizes[a] - 1)
    )


@dataclass(frozen=True)
class GbterParams:
    """Expected degrees, community partition, per-community density, excess."""

    expected_degrees: np.ndarray
    partition: Partition
    community_p: np.ndarray
    excess: np.ndarray
    fit_mode: str

    def __post_init__(self):
        degs = check_degree_array(self.expected_degrees, "expected_degrees")
        degs.setflags(write=False)
        object.__setattr__(self, "expected_degrees", degs)
        check_partition(self.partition, degs.size)
        p = np.asarray(self.community_p, dtype=float).copy()
        if p.size != self.partition.num_communities:
            raise ValueError("community_p must have one entry per community")
        if p.size and (p.min() < 0 or p.max() > 1):
            raise ValueError("community_p values must lie in [0, 1]")
        p.setflags(write=False)
        object.__setattr__(self, "community_p", p)
        eps = np.asarray(self.excess, dtype=float).copy()
        eps.setflags(write=False)
        object.__setattr__(self, "excess", eps)
        if self.fit_mode not in FIT_MODES:
            raise ValueError(f"fit_mode must be one of {FIT_MODES}")
        expected = compute_excess(degs, self.partition, p)
        if not np.array_equal(eps, expected):
            raise ValueError("excess is inconsistent with degrees and community_p")

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, GbterParams):
            return NotImplemented
        return (
            np.array_equal(self.expected_degrees, other.expected_degrees)
            and self.partition == other.partition
            and np.array_equal(self.community_p, other.community_p)
            and self.fit_mode == other.fit_mode
        )


def gbter_fit(g: Graph, partition: Partition, mode: str = "density") -> GbterParams:
    """Measure degrees and per-community density (or clustering) from a seed.

    "density" mode sets p_k to the density of the induced subgraph G[C_k];
    "cc" mode sets p_k to the cube root of the mean local clustering
    coefficient measured on G[C_k]. Singleton communities get p_k = 0.
    """
    check_graph(g)
    check_partition(partition, g.node_count)
    if mode not in FIT_MODES:
        raise ValueError(f"mode must be one of {FIT_MODES}")
    degrees = g.degrees().copy()
    p_k = np.zeros(partition.num_communities)
    for k, members in enumerate(partition.communities):
        sub, _ = g.induced_subgraph(members)
        if mode == "density":
            p_k[k] = density(sub)
        else:
            p_k[k] = float(np.cbrt(float(np.mean(local_cc_all(sub)))))
    excess = compute_excess(degrees, partition, p_k)
    return GbterParams(degrees, partition, p_k, excess, mode)


def gbter_edge_probability(params: GbterParams, i: NodeId, j: NodeId) -> float:
    """Exact edge probability for the pair (i, j)."""
    if i == j:
        raise ValueError("edge probability requires two distinct nodes")
    w = ClWeights(params.excess)
    cl = cl_probability(w, i, j)
    a = params.partition.assignment
    if a[i] == a[j]:
        p_k = float(params.community_p[a[i]])
        return p_k + (1.0 - p_k) * cl
    return cl


def gbter_generate(params: GbterParams, rng) -> Graph:
    """Independent Bernoulli draw over all C(n, 2) pairs."""
    rng = as_rng(rng)
    n = int(params.expected_degrees.size)
    if n < 2:
        return Graph(n, ())
    eps = params.excess
    total = float(eps.sum())
    iu, ju = np.triu_indices(n, 1)
    if total > 0:
        cl = np.minimum(1.0, eps[iu] * eps[ju] / total)
    else:
        cl = np.zeros(iu.size)
    a = params.partition.assignment
    same = a[iu] == a[ju]
    p_pair = params.community_p[a[iu]]
    probs = np.where(same, p_pair + (1.0 - p_pair) * cl, cl)
    mask = rng.random(probs.size) < probs
    return Graph(n, np.column_stack([iu[mask], ju[mask]]))


class GbterModel(GraphModel):
    """Estimator wrapper; communities come from Louvain when not supplied.

    Parameters
    ----------
    mode : {"density", "cc"}
        How the per-community probability is learned.
    louvain_config : LouvainConfig, optional
        Used only when ``fit`` is called without an explicit partition.
    """

    def __init__(self, mode: str = "density", louvain_config: LouvainConfig | None = None):
        self.mode = mode
        self.louvain_config = louvain_config

    def fit(self, graph, y=None, partition: Partition | None = None):
        check_graph(graph)
        if partition is None:
            partition = louvain(graph, self.louvain_config)
        self.params_ = gbter_fit(graph, partition, self.mode)
        return self

    def generate(self, rng):
        check_is_fitted(self)
        return gbter_generate(self.params_, rng)
