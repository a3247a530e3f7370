"""EGBTER: degree-affinity blocks inside prescribed communities, plus
within- and cross-community weight overlays, drawn by a three-way process
sampler.

Fitting measures four things from a seed graph and partition: each node's
global degree D_i, its within-community degree d_i (degree in the induced
subgraph), and one CCPD table per community, measured on the induced
subgraph.

Planning packs each community's nodes into affinity groups by *global*
degree (greedy ascending fill, size (first member's D) + 1, same rule as
BTER). A group's ER probability is the cube root of the community CCPD
value at the group's minimum *within-community* degree; unrealized degrees
read as 0. The leftovers,

    eps_i = max(0, d_i - p_L * (group size - 1))   within-community excess,
    E_i   = D_i - d_i                              cross-community excess,

feed two Chung-Lu processes. The three processes are budgeted by expected
edge count: sum over groups of w(A_L) = C(|A_L|, 2) * log(1/(1 - p_L)) for
the block phase, sum(eps)/2 and sum(E)/2 for the overlays. Groups with
p_L = 1 would need infinite sampling weight, so they are wired completely
and deterministically and excluded from the budget.

Generation draws the process of each sample from the three weights, then
endpoints under that process's law: a group with P proportional to w(A_L)
and two members uniform without replacement; a community with P
proportional to its eps mass and two members with P(i) proportional to
eps_i; or two nodes globally with P(i) proportional to E_i. Self-pairs are
redrawn and duplicate edges collapse.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from sklearn.utils.validation import check_is_fitted

from ..community import LouvainConfig, louvain
from ..graph import Graph
from ..metrics import CcpdDistribution, ccpd as measure_ccpd
from ..partition import Partition
from ..rng import as_rng
from ..sampling import round_half_up, sample_pairs_uniform, sample_pairs_weighted
from ..validation import check_degree_array, check_graph, check_partition
from .base import GraphModel
from .bter import DegreeGroup, group_nodes_ascending, group_sampling_weight


@dataclass(frozen=True)
class EgbterParams:
    """Partition, within/global degrees, and per-community CCPD tables."""

    partition: Partition
    within_degree: np.ndarray
    global_degree: np.ndarray
    within_ccpd: tuple[CcpdDistribution, ...]

    def __post_init__(self):
        d = check_degree_array(self.within_degree, "within_degree")
        big_d = check_degree_array(self.global_degree, "global_degree")
        if d.size != big_d.size:
            raise ValueError("within_degree and global_degree lengths differ")
        check_partition(self.partition, d.size)
        if (d > big_d).any():
            raise ValueError("within_degree must not exceed global_degree")
        d.setflags(write=False)
        big_d.setflags(write=False)
        object.__setattr__(self, "within_degree", d)
        object.__setattr__(self, "global_degree", big_d)
        tables = tuple(self.within_ccpd)
        if len(tables) != self.partition.num_communities:
            raise ValueError("need one CCPD table per community")
        for table in tables:
            if not isinstance(table, CcpdDistribution):
                raise TypeError("within_ccpd entries must be CcpdDistribution")
        object.__setattr__(self, "within_ccpd", tables)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, EgbterParams):
            return NotImplemented
        return (
            self.partition == other.partition
            and np.array_equal(self.within_degree, other.within_degree)
            and np.array_equal(self.global_degree, other.global_degree)
            and self.within_ccpd == other.within_ccpd
        )


@dataclass(frozen=True)
class EgbterPlan:
    """Groupings, excess vectors, and the three process weights."""

    community_groups: tuple[tuple[DegreeGroup, ...], ...]
    within_excess: np.ndarray
    global_excess: np.ndarray
    er_weight: float
    cl_within_weight: float
    cl_global_weight: float

    @property
    def sample_budget(self) -> int:
        """Process weights rounded half-up independently, then summed."""
        return (
            round_half_up(self.er_weight)
            + round_half_up(self.cl_within_weight)
            + round_half_up(self.cl_global_weight)
        )


def egbter_fit(g: Graph, partition: Partition) -> EgbterParams:
    """Measure global/within degrees and per-community CCPD from a seed."""
    check_graph(g)
    check_partition(partition, g.node_count)
    global_degree = g.degrees().copy()
    within_degree = np.zeros(g.node_count, dtype=np.int64)
    tables = []
    for members in partition.communities:
        sub, _ = g.induced_subgraph(members)
        within_degree[np.sort(members)] = sub.degrees()
        tables.append(measure_ccpd(sub))
    return EgbterParams(partition, within_degree, global_degree, tuple(tables))


def egbter_build_plan(params: EgbterParams) -> EgbterPlan:
    """Pack per-community groupings and compute the process budget."""
    d = params.within_degree
    big_d = params.global_degree
    within_excess = np.zeros(d.size)
    community_groups = []
    er_weight = 0.0
    for k, members in enumerate(params.partition.communities):
        table = params.within_ccpd[k]
        groups = []
        for grp_members in group_nodes_ascending(members, big_d[members]):
            d_star = int(d[grp_members].min())
            p = float(np.cbrt(table.value(d_star)))
            size = grp_members.size
            w = group_sampling_weight(size, p)
            groups.append(DegreeGroup(grp_members, p, w))
            within_excess[grp_members] = np.maximum(
                0.0, d[grp_members] - p * (size - 1)
            )
            if np.isfinite(w):
                er_weight += w
        community_groups.append(tuple(groups))
    global_excess = (big_d - d).astype(float)
    return EgbterPlan(
        tuple(community_groups),
        within_excess,
        global_excess,
        er_weight,
        float(within_excess.sum() / 2.0),
        float(global_excess.sum() / 2.0),
    )


def egbter_generate(params: EgbterParams, rng) -> Graph:
    """Full-wire the p = 1 groups, then draw the budgeted process samples."""
    rng = as_rng(rng)
    plan = egbter_build_plan(params)
    n = int(params.within_degree.size)
    chunks = []
    sampleable: list[DegreeGroup] = []
    for groups in plan.community_groups:
        for grp in groups:
            if grp.full_wire and grp.size >= 2:
                iu, ju = np.triu_indices(grp.size, 1)
                chunks.append(np.column_stack([grp.members[iu], grp.members[ju]]))
            elif np.isfinite(grp.sampling_weight) and grp.sampling_weight > 0:
                sampleable.append(grp)

    weights = np.array(
        [plan.er_weight, plan.cl_within_weight, plan.cl_global_weight]
    )
    total = float(weights.sum())
    budget = plan.sample_budget
    if total > 0 and budget > 0:
        process = rng.choice(3, size=budget, p=weights / total)
        counts = np.bincount(process, minlength=3)

        if counts[0]:
            w_arr = np.array([grp.sampling_weight for grp in sampleable])
            picks = rng.choice(len(sampleable), size=int(counts[0]), p=w_arr / w_arr.sum())
            per_group = np.bincount(picks, minlength=len(sampleable))
            for grp, m in zip(sampleable, per_group):
                if m:
                    chunks.append(sample_pairs_uniform(grp.members, int(m), rng))

        if counts[1]:
            communities = params.partition.communities
            mass = np.array(
                [plan.within_excess[members].sum() for members in communities]
            )
            picks = rng.choice(len(communities), size=int(counts[1]), p=mass / mass.sum())
            per_comm = np.bincount(picks, minlength=len(communities))
            for members, m in zip(communities, per_comm):
                if m:
                    local = sample_pairs_weighted(
                        plan.within_excess[members], int(m), rng
                    )
                    chunks.append(members[local])

        if counts[2]:
            chunks.append(
                sample_pairs_weighted(plan.global_excess, int(counts[2]), rng)
            )

    edges = np.vstack(chunks) if chunks else np.empty((0, 2), dtype=np.int64)
    return Graph(n, edges)


class EgbterModel(GraphModel):
    """Estimator wrapper; communities come from Louvain when not supplied."""

    def __init__(self, louvain_config: LouvainConfig | None = None):
        self.louvain_config = louvain_config

    def fit(self, graph, y=None, partition: Partition | None = None):
        check_graph(graph)
        if partition is None:
            partition = louvain(graph, self.louvain_config)
        self.params_ = egbter_fit(graph, partition)
        return self

    def generate(self, rng):
        check_is_fitted(self)
        return egbter_generate(self.params_, rng)
