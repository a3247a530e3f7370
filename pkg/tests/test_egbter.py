"""EGBTER fitting, planning, and the three-process sampler."""

import math

import numpy as np
import pytest

from egbter import (
    CcpdDistribution,
    EgbterParams,
    Partition,
    bter_build_groups,
    bter_fit,
    build_graph,
    ccpd,
    degree_distribution,
    egbter_build_plan,
    egbter_fit,
    egbter_generate,
    modularity,
    partition_from_assignment,
    planted_partition,
    rmse_degree,
    rng_stream,
)
from egbter.sampling import round_half_up, sample_pairs_uniform

from conftest import complete_graph, disjoint_cliques, path_graph


def two_k4s():
    return disjoint_cliques(2, 4), partition_from_assignment([0] * 4 + [1] * 4)


class TestFit:
    def test_two_disjoint_k4s(self):
        g, part = two_k4s()
        params = egbter_fit(g, part)
        assert list(params.within_degree) == [3] * 8
        assert list(params.global_degree) == [3] * 8
        assert params.within_ccpd[0].values == {3: 1.0}
        assert params.within_ccpd[1].values == {3: 1.0}

    def test_bridge_edge_counts_only_globally(self):
        g, part = two_k4s()
        bridged = build_graph(8, list(g.edges()) + [(0, 4)])
        params = egbter_fit(bridged, part)
        assert params.global_degree[0] == 4
        assert params.within_degree[0] == 3
        assert params.global_degree[0] - params.within_degree[0] == 1

    def test_path_with_two_communities(self):
        g = path_graph(3)
        part = partition_from_assignment([0, 0, 1])
        params = egbter_fit(g, part)
        assert list(params.within_degree) == [1, 1, 0]
        assert list(params.global_degree) == [1, 2, 1]
        plan = egbter_build_plan(params)
        assert list(plan.global_excess) == [0.0, 1.0, 1.0]

    def test_within_cannot_exceed_global(self):
        with pytest.raises(ValueError):
            EgbterParams(
                Partition(np.zeros(2, dtype=np.int64)),
                np.array([2, 1]),
                np.array([1, 1]),
                (CcpdDistribution({}),),
            )


class TestPlan:
    def test_k4_single_community_degenerate(self):
        params = egbter_fit(complete_graph(4), Partition(np.zeros(4, dtype=np.int64)))
        plan = egbter_build_plan(params)
        groups = plan.community_groups[0]
        assert len(groups) == 1 and groups[0].size == 4
        assert groups[0].er_probability == 1.0
        assert groups[0].full_wire
        assert list(plan.within_excess) == [0.0] * 4
        assert plan.cl_within_weight == 0.0
        assert plan.cl_global_weight == 0.0
        assert plan.er_weight == 0.0  # the p = 1 group is excluded

    def test_three_node_community_weight_formula(self):
        params = EgbterParams(
            Partition(np.zeros(3, dtype=np.int64)),
            np.array([2, 2, 2]),
            np.array([2, 2, 2]),
            (CcpdDistribution({2: 0.125}),),
        )
        plan = egbter_build_plan(params)
        grp = plan.community_groups[0][0]
        assert grp.size == 3
        assert grp.er_probability == pytest.approx(0.5, abs=1e-12)
        assert grp.sampling_weight == pytest.approx(3 * math.log(2), abs=1e-12)
        assert list(plan.within_excess) == pytest.approx([1.0, 1.0, 1.0], abs=1e-12)

    def test_zero_ccpd_is_pure_cl(self):
        params = EgbterParams(
            Partition(np.zeros(4, dtype=np.int64)),
            np.array([2, 2, 2, 2]),
            np.array([3, 2, 2, 3]),
            (CcpdDistribution({}),),
        )
        plan = egbter_build_plan(params)
        for grp in plan.community_groups[0]:
            assert grp.er_probability == 0.0
            assert grp.sampling_weight == 0.0
        assert np.array_equal(plan.within_excess, params.within_degree.astype(float))
        assert plan.er_weight == 0.0

    def test_excess_identities(self):
        g, part = planted_partition(4, 15, 0.35, 0.03, rng_stream(43))
        params = egbter_fit(g, part)
        plan = egbter_build_plan(params)
        d = params.within_degree.astype(float)
        big_d = params.global_degree.astype(float)
        assert (plan.within_excess >= 0).all()
        assert (plan.global_excess >= 0).all()
        assert (plan.within_excess + plan.global_excess <= big_d + 1e-12).all()
        # E_i is exactly the cross-community share.
        assert np.array_equal(plan.global_excess, big_d - d)

    def test_plan_coincides_with_bter_for_single_community(self):
        g = planted_partition(3, 8, 0.5, 0.2, rng_stream(47))[0]
        bparams = bter_fit(g)
        bgroups = bter_build_groups(bparams)
        eparams = EgbterParams(
            Partition(np.zeros(g.node_count, dtype=np.int64)),
            g.degrees().copy(),
            g.degrees().copy(),
            (ccpd(g),),
        )
        plan = egbter_build_plan(eparams)
        egroups = plan.community_groups[0]
        assert len(egroups) == len(bgroups.groups)
        for eg, bg in zip(egroups, bgroups.groups):
            assert np.array_equal(eg.members, bg.members)
            assert eg.er_probability == bg.er_probability
            assert eg.sampling_weight == bg.sampling_weight
        assert np.array_equal(plan.within_excess, bgroups.residual_weights.weights)
        assert (plan.global_excess == 0).all()

    def test_budget_rounding(self):
        params = EgbterParams(
            Partition(np.zeros(3, dtype=np.int64)),
            np.array([2, 2, 2]),
            np.array([2, 2, 2]),
            (CcpdDistribution({2: 0.125}),),
        )
        plan = egbter_build_plan(params)
        expected = (
            round_half_up(plan.er_weight)
            + round_half_up(plan.cl_within_weight)
            + round_half_up(plan.cl_global_weight)
        )
        assert plan.sample_budget == expected


class TestGenerate:
    def test_two_k4s_reproduced_deterministically(self):
        g, part = two_k4s()
        params = egbter_fit(g, part)
        for seed in range(4):
            assert egbter_generate(params, rng_stream(seed)) == g

    def test_all_weights_zero_gives_edgeless(self):
        params = EgbterParams(
            Partition(np.zeros(3, dtype=np.int64)),
            np.array([0, 0, 0]),
            np.array([0, 0, 0]),
            (CcpdDistribution({}),),
        )
        assert egbter_generate(params, rng_stream(1)).edge_count == 0

    def test_determinism(self):
        g, part = planted_partition(4, 12, 0.4, 0.03, rng_stream(53))
        params = egbter_fit(g, part)
        assert egbter_generate(params, rng_stream(9)) == egbter_generate(
            params, rng_stream(9)
        )

    def test_simple_graph_invariants(self):
        g, part = planted_partition(5, 12, 0.35, 0.04, rng_stream(59))
        params = egbter_fit(g, part)
        sim = egbter_generate(params, rng_stream(11))
        assert int(sim.degrees().sum()) == 2 * sim.edge_count
        arr = sim.edge_array
        assert (arr[:, 0] < arr[:, 1]).all()

    def test_block_sampling_yield(self):
        # A 10-member group at p = 0.3 sampled w = 45*log(1/0.7) times
        # covers 45*0.3 = 13.5 distinct pairs in expectation.
        members = np.arange(10)
        draws = round_half_up(45 * math.log(1 / 0.7))
        rng = rng_stream(61)
        distinct = []
        for _ in range(200):
            pairs = sample_pairs_uniform(members, draws, rng)
            canon = {(min(a, b), max(a, b)) for a, b in pairs}
            distinct.append(len(canon))
        se = np.std(distinct, ddof=1) / math.sqrt(len(distinct))
        assert abs(np.mean(distinct) - 13.5) <= 3 * se

    def test_tracks_modularity_better_than_bter_on_planted_seed(self):
        g, part = planted_partition(6, 25, 0.3, 0.01, rng_stream(67))
        q_true = modularity(g, part)
        eparams = egbter_fit(g, part)
        bparams = bter_fit(g)
        from egbter import LouvainConfig, bter_generate, louvain

        reps = 20
        rng_e = rng_stream(71)
        rng_b = rng_stream(73)
        diff_e, diff_b = [], []
        for r in range(reps):
            sim_e = egbter_generate(eparams, rng_e)
            sim_b = bter_generate(bparams, rng_b)
            cfg = LouvainConfig(rng_seed=r)
            diff_e.append(abs(modularity(sim_e, louvain(sim_e, cfg)) - q_true))
            diff_b.append(abs(modularity(sim_b, louvain(sim_b, cfg)) - q_true))
        assert np.mean(diff_e) < np.mean(diff_b)

    def test_degree_fidelity_within_reach_of_bter(self):
        g, part = planted_partition(6, 25, 0.3, 0.01, rng_stream(79))
        ref = degree_distribution(g)
        eparams = egbter_fit(g, part)
        bparams = bter_fit(g)
        from egbter import bter_generate

        rng_e = rng_stream(83)
        rng_b = rng_stream(89)
        reps = 20
        rmse_e = np.mean(
            [rmse_degree(ref, degree_distribution(egbter_generate(eparams, rng_e))) for _ in range(reps)]
        )
        rmse_b = np.mean(
            [rmse_degree(ref, degree_distribution(bter_generate(bparams, rng_b))) for _ in range(reps)]
        )
        assert rmse_e <= 2.5 * rmse_b
