"""BTER: block two-level generation from a degree histogram and CCPD table.

Nodes are sorted by expected degree and packed greedily into affinity
groups: a group whose first (minimum-degree) node has degree d targets
d + 1 members, so one undersized group may trail at the end of the fill.
Each group is wired internally by an ER process with p = cbrt(cc_d), d the
group's minimum degree, which reproduces the prescribed clustering; the
degree left over after that block phase, max(0, d_i - p * (group size - 1)),
is served by a global Chung-Lu overlay drawn with endpoint sampling.
Degree-0 nodes join no group and carry residual weight 0.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from sklearn.utils.validation import check_is_fitted

from ..graph import Graph
from ..metrics import CcpdDistribution, ccpd as measure_ccpd
from ..rng import as_rng
from ..sampling import round_half_up, sample_pairs_weighted
from ..validation import check_degree_array, check_graph
from .base import GraphModel
from .baseline import ClWeights


@dataclass(frozen=True)
class BterParams:
    """The two BTER inputs: per-node expected degrees and a CCPD table."""

    expected_degrees: np.ndarray
    ccpd: CcpdDistribution

    def __post_init__(self):
        degs = check_degree_array(self.expected_degrees, "expected_degrees")
        degs.setflags(write=False)
        object.__setattr__(self, "expected_degrees", degs)
        if not isinstance(self.ccpd, CcpdDistribution):
            raise TypeError("ccpd must be a CcpdDistribution")

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, BterParams):
            return NotImplemented
        return (
            np.array_equal(self.expected_degrees, other.expected_degrees)
            and self.ccpd == other.ccpd
        )


@dataclass(frozen=True)
class DegreeGroup:
    """One affinity group: members, its ER probability, and sampling weight."""

    members: np.ndarray
    er_probability: float
    sampling_weight: float

    @property
    def size(self) -> int:
        return int(self.members.size)

    @property
    def full_wire(self) -> bool:
        """Groups with p = 1 are wired completely and deterministically."""
        return self.er_probability >= 1.0


@dataclass(frozen=True)
class BterGroups:
    """All affinity groups plus the residual Chung-Lu weights over all nodes."""

    groups: tuple[DegreeGroup, ...]
    residual_weights: ClWeights


def group_sampling_weight(size: int, p: float) -> float:
    """Expected number of uniform pair draws needed to cover C(size, 2) * p
    distinct edges: C(size, 2) * log(1 / (1 - p)). Infinite at p = 1."""
    pairs = size * (size - 1) / 2.0
    if pairs == 0 or p <= 0.0:
        return 0.0
    if p >= 1.0:
        return math.inf
    return pairs * math.log(1.0 / (1.0 - p))


def group_nodes_ascending(node_ids: np.ndarray, degrees: np.ndarray) -> list[np.ndarray]:
    """Greedy ascending-degree fill into groups of size (first member's degree) + 1.

    Zero-degree nodes are excluded. Ties in degree are broken by node id so
    the grouping is deterministic. At most the trailing group is undersized.
    """
    node_ids = np.asarray(node_ids, dtype=np.int64)
    degrees = np.asarray(degrees, dtype=np.int64)
    keep = degrees > 0
    node_ids = node_ids[keep]
    degrees = degrees[keep]
    order = np.lexsort((node_ids, degrees))
    node_ids = node_ids[order]
    degrees = degrees[order]
    groups = []
    start = 0
    while start < node_ids.size:
        target = int(degrees[start]) + 1
        groups.append(node_ids[start : start + target])
        start += target
    return groups


def bter_fit(g: Graph) -> BterParams:
    """Measure the two BTER inputs from a seed graph."""
    check_graph(g)
    return BterParams(g.degrees().copy(), measure_ccpd(g))


def bter_build_groups(params: BterParams) -> BterGroups:
    """Pack nodes into affinity groups and compute residual weights."""
    degrees = params.expected_degrees
    n = degrees.size
    residual = np.zeros(n)
    groups = []
    for members in group_nodes_ascending(np.arange(n), degrees):
        d_min = int(degrees[members[0]])
        p = float(np.cbrt(params.ccpd.value(d_min)))
        size = members.size
        groups.append(DegreeGroup(members, p, group_sampling_weight(size, p)))
        residual[members] = np.maximum(0.0, degrees[members] - p * (size - 1))
    return BterGroups(tuple(groups), ClWeights(residual))


def bter_generate(params: BterParams, rng) -> Graph:
    """Union of the per-group ER phase and the residual Chung-Lu overlay.

    Groups with p = 0 are skipped without consuming randomness (so a BTER
    fit with an all-zero CCPD reproduces the sampled Chung-Lu route draw
    for draw); groups with p = 1 are wired completely. Duplicates across
    phases collapse by set semantics.
    """
    rng = as_rng(rng)
    grouping = bter_build_groups(params)
    n = int(params.expected_degrees.size)
    chunks = []
    for grp in grouping.groups:
        if grp.size < 2 or grp.er_probability <= 0.0:
            continue
        iu, ju = np.triu_indices(grp.size, 1)
        if grp.full_wire:
            chunks.append(np.column_stack([grp.members[iu], grp.members[ju]]))
        else:
            mask = rng.random(iu.size) < grp.er_probability
            chunks.append(
                np.column_stack([grp.members[iu[mask]], grp.members[ju[mask]]])
            )
    residual = grouping.residual_weights
    draws = round_half_up(residual.total / 2.0)
    if draws > 0 and residual.total > 0:
        chunks.append(sample_pairs_weighted(residual.weights, draws, rng))
    edges = np.vstack(chunks) if chunks else np.empty((0, 2), dtype=np.int64)
    return Graph(n, edges)


class BterModel(GraphModel):
    """Estimator wrapper: fit measures degrees and CCPD, generate replays them."""

    def fit(self, graph, y=None):
        self.params_ = bter_fit(graph)
        return self

    def generate(self, rng):
        check_is_fitted(self)
        return bter_generate(self.params_, rng)
