"""Erdos-Renyi and Chung-Lu baselines.

ER(n, p) inserts each of the C(n, 2) possible edges independently with
probability p. Chung-Lu assigns each node a weight w_i and inserts edge
(i, j) with probability min(1, w_i * w_j / sum(w)); fitted with w_i equal
to the seed graph's degrees this is the classic null model that matches
expected degrees. Both are the building blocks of the composite models in
this package.

Chung-Lu generation comes in two deliberate flavors:

* exact: independent Bernoulli draw per node pair (the reference route,
  also used by GBTER's per-pair generation);
* sampled: draw round(sum(w)/2) endpoint pairs with P(i) proportional to
  w_i and discard duplicates (the route the block samplers reuse).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from sklearn.utils.validation import check_is_fitted

from ..graph import Graph, NodeId
from ..metrics import density
from ..rng import as_rng
from ..sampling import SamplingError, round_half_up, sample_pairs_weighted
from ..validation import check_graph, check_nonnegative_array, check_probability
from .base import GraphModel


@dataclass(frozen=True)
class ErParams:
    """Node count and edge probability of an Erdos-Renyi model."""

    node_count: int
    p: float

    def __post_init__(self):
        if self.node_count < 0:
            raise ValueError("node_count must be non-negative")
        check_probability(self.p)


class ClWeights:
    """Per-node Chung-Lu weights with a cached total."""

    __slots__ = ("weights", "total")

    def __init__(self, weights):
        arr = check_nonnegative_array(weights, "weights").copy()
        arr.setflags(write=False)
        self.weights = arr
        self.total = float(arr.sum())

    def __len__(self) -> int:
        return int(self.weights.size)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ClWeights):
            return NotImplemented
        return np.array_equal(self.weights, other.weights)

    def __hash__(self) -> int:
        return hash(self.weights.tobytes())

    def __reduce__(self):
        return (ClWeights, (np.asarray(self.weights),))

    def __repr__(self) -> str:
        return f"ClWeights(n={len(self)}, total={self.total})"


def er_fit(g: Graph) -> ErParams:
    """ER parameters matching a seed graph's size and density."""
    check_graph(g)
    return ErParams(g.node_count, density(g))


def er_generate(n: int, p: float, rng) -> Graph:
    """Erdos-Renyi graph on ``n`` nodes with edge probability ``p``.

    The degenerate probabilities 0 and 1 short-circuit (empty/complete
    graph) and consume no randomness.
    """
    if n < 0:
        raise ValueError("n must be non-negative")
    p = check_probability(p)
    rng = as_rng(rng)
    if n < 2 or p == 0.0:
        return Graph(n, ())
    iu, ju = np.triu_indices(n, 1)
    if p >= 1.0:
        return Graph(n, np.column_stack([iu, ju]))
    mask = rng.random(iu.size) < p
    return Graph(n, np.column_stack([iu[mask], ju[mask]]))


def cl_fit(g: Graph) -> ClWeights:
    """Null-model weights: every node weighted by its degree."""
    check_graph(g)
    return ClWeights(g.degrees().astype(float))


def cl_probability(w: ClWeights, i: NodeId, j: NodeId) -> float:
    """Chung-Lu edge probability min(1, w_i * w_j / sum(w)); 0 when sum(w) = 0."""
    if i == j:
        raise ValueError("edge probability requires two distinct nodes")
    if w.total <= 0:
        return 0.0
    return min(1.0, float(w.weights[i]) * float(w.weights[j]) / w.total)


def _cl_pair_probabilities(w: ClWeights, n: int):
    iu, ju = np.triu_indices(n, 1)
    if w.total <= 0:
        return iu, ju, np.zeros(iu.size)
    probs = np.minimum(1.0, w.weights[iu] * w.weights[ju] / w.total)
    return iu, ju, probs


def cl_generate_exact(w: ClWeights, rng) -> Graph:
    """Independent Bernoulli draw for every node pair."""
    rng = as_rng(rng)
    n = len(w)
    if n < 2 or w.total <= 0:
        return Graph(n, ())
    iu, ju, probs = _cl_pair_probabilities(w, n)
    mask = rng.random(probs.size) < probs
    return Graph(n, np.column_stack([iu[mask], ju[mask]]))


def cl_generate_sampled(w: ClWeights, rng) -> Graph:
    """Endpoint-sampling route: round(sum(w)/2) weighted pair draws, duplicates collapse."""
    rng = as_rng(rng)
    n = len(w)
    draws = round_half_up(w.total / 2.0)
    if n < 2 or w.total <= 0 or draws == 0:
        return Graph(n, ())
    return Graph(n, sample_pairs_weighted(w.weights, draws, rng))


def cl_sample_endpoints(w: ClWeights, rng) -> tuple[int, int]:
    """One pair of distinct endpoints with P(i) proportional to w_i."""
    rng = as_rng(rng)
    if w.total <= 0:
        raise SamplingError("cannot sample endpoints from an all-zero weight vector")
    pair = sample_pairs_weighted(w.weights, 1, rng)
    return int(pair[0, 0]), int(pair[0, 1])


class ErdosRenyiModel(GraphModel):
    """Estimator wrapper: fit matches the seed's size and density."""

    def fit(self, graph, y=None):
        self.params_ = er_fit(graph)
        return self

    def generate(self, rng):
        check_is_fitted(self)
        return er_generate(self.params_.node_count, self.params_.p, rng)


class ChungLuModel(GraphModel):
    """Estimator wrapper around the degree-weighted null model.

    Parameters
    ----------
    method : {"exact", "sampled"}
        Generation route; "exact" draws every pair independently,
        "sampled" uses weighted endpoint sampling.
    """

    def __init__(self, method: str = "exact"):
        self.method = method

    def fit(self, graph, y=None):
        if self.method not in ("exact", "sampled"):
            raise ValueError(f"unknown method {self.method!r}")
        self.weights_ = cl_fit(graph)
        return self

    def generate(self, rng):
        check_is_fitted(self)
        if self.method == "exact":
            return cl_generate_exact(self.weights_, rng)
        return cl_generate_sampled(self.weights_, rng)
