"""BTER fitting, grouping rules, and generation."""

import math

import numpy as np
import pytest

from egbter import (
    BterParams,
    CcpdDistribution,
    ClWeights,
    bter_build_groups,
    bter_fit,
    bter_generate,
    cl_generate_sampled,
    rng_stream,
)
from egbter.models.bter import group_nodes_ascending, group_sampling_weight

from conftest import complete_graph, disjoint_cliques, star_graph


class TestFit:
    def test_k4(self):
        params = bter_fit(complete_graph(4))
        assert list(params.expected_degrees) == [3, 3, 3, 3]
        assert params.ccpd.values == {3: 1.0}

    def test_star(self):
        params = bter_fit(star_graph(4))
        assert sorted(params.expected_degrees) == [1, 1, 1, 1, 4]
        assert params.ccpd.values == {1: 0.0, 4: 0.0}

    def test_two_triangles(self):
        params = bter_fit(disjoint_cliques(2, 3))
        assert list(params.expected_degrees) == [2] * 6
        assert params.ccpd.values == {2: 1.0}


class TestGrouping:
    def test_full_group_of_degree_two_nodes(self):
        params = BterParams(np.array([2, 2, 2]), CcpdDistribution({2: 1.0}))
        grouping = bter_build_groups(params)
        assert len(grouping.groups) == 1
        grp = grouping.groups[0]
        assert list(grp.members) == [0, 1, 2]
        assert grp.er_probability == 1.0
        assert list(grouping.residual_weights.weights) == [0.0, 0.0, 0.0]

    def test_degree_one_pair(self):
        params = BterParams(np.array([1, 1]), CcpdDistribution({1: 0.0}))
        grouping = bter_build_groups(params)
        assert len(grouping.groups) == 1
        assert grouping.groups[0].size == 2
        assert grouping.groups[0].er_probability == 0.0
        assert list(grouping.residual_weights.weights) == [1.0, 1.0]

    def test_leftover_group(self):
        # Four degree-2 nodes: one full group of 3, one leftover singleton.
        params = BterParams(np.array([2, 2, 2, 2]), CcpdDistribution({2: 0.125}))
        grouping = bter_build_groups(params)
        sizes = [g.size for g in grouping.groups]
        assert sizes == [3, 1]
        assert grouping.groups[0].er_probability == pytest.approx(0.5, abs=1e-12)
        assert list(grouping.residual_weights.weights) == pytest.approx(
            [1.0, 1.0, 1.0, 2.0], abs=1e-12
        )

    def test_group_sizes_match_min_degree(self):
        rng = rng_stream(15)
        degrees = rng.integers(1, 7, size=40)
        params = BterParams(degrees, CcpdDistribution({}))
        grouping = bter_build_groups(params)
        for grp in grouping.groups[:-1]:
            assert grp.size == int(params.expected_degrees[grp.members].min()) + 1
        # Groups partition the non-isolated node set.
        seen = np.concatenate([g.members for g in grouping.groups])
        assert sorted(seen) == sorted(np.flatnonzero(degrees > 0))

    def test_zero_degree_nodes_excluded(self):
        params = BterParams(np.array([0, 2, 2, 0, 2]), CcpdDistribution({2: 1.0}))
        grouping = bter_build_groups(params)
        members = np.concatenate([g.members for g in grouping.groups])
        assert set(members.tolist()) == {1, 2, 4}
        assert grouping.residual_weights.weights[0] == 0.0
        assert grouping.residual_weights.weights[3] == 0.0

    def test_residuals_nonnegative(self):
        rng = rng_stream(16)
        params = BterParams(
            rng.integers(0, 9, size=60), CcpdDistribution({d: 0.9 for d in range(9)})
        )
        grouping = bter_build_groups(params)
        assert (grouping.residual_weights.weights >= 0).all()

    def test_sampling_weight_formula(self):
        assert group_sampling_weight(10, 0.3) == pytest.approx(
            45 * math.log(1 / 0.7), abs=1e-12
        )
        assert group_sampling_weight(3, 0.0) == 0.0
        assert math.isinf(group_sampling_weight(4, 1.0))
        assert group_sampling_weight(1, 1.0) == 0.0

    def test_greedy_order_breaks_ties_by_node_id(self):
        groups = group_nodes_ascending(np.array([5, 6, 7]), np.array([2, 2, 2]))
        assert [list(g) for g in groups] == [[5, 6, 7]]


class TestGenerate:
    def test_k4_params_regenerate_k4(self):
        params = bter_fit(complete_graph(4))
        for seed in range(5):
            assert bter_generate(params, rng_stream(seed)) == complete_graph(4)

    def test_zero_ccpd_matches_sampled_cl_bit_exact(self):
        # With every cc at 0 the block phase is empty and consumes no
        # randomness, so generation must replay the sampled Chung-Lu route.
        degrees = np.array([3, 1, 4, 2, 2, 3, 1, 2])
        params = BterParams(degrees, CcpdDistribution({}))
        for seed in (3, 17, 92):
            a = bter_generate(params, rng_stream(seed))
            b = cl_generate_sampled(ClWeights(degrees.astype(float)), rng_stream(seed))
            assert a == b

    def test_er_phase_expected_edges(self):
        # One group of 10 nodes with p = cbrt(cc): E[block edges] = 45 p.
        params = BterParams(np.full(10, 9), CcpdDistribution({9: 0.216}))
        grouping = bter_build_groups(params)
        assert len(grouping.groups) == 1
        p = grouping.groups[0].er_probability
        assert p == pytest.approx(0.6, abs=1e-12)
        rng = rng_stream(31)
        counts = [bter_generate(params, rng).edge_count for _ in range(200)]
        # Residual CL adds edges too; bound loosely via total expectation.
        assert np.mean(counts) > 45 * p * 0.9

    def test_determinism(self):
        params = bter_fit(disjoint_cliques(3, 4))
        assert bter_generate(params, rng_stream(4)) == bter_generate(
            params, rng_stream(4)
        )

    def test_generated_graphs_are_simple(self):
        params = bter_fit(disjoint_cliques(3, 5))
        g = bter_generate(params, rng_stream(6))
        arr = g.edge_array
        assert (arr[:, 0] < arr[:, 1]).all()
        assert int(g.degrees().sum()) == 2 * g.edge_count

    def test_within_group_edge_expectation(self):
        # One group of 11 degree-10 nodes, p = cbrt(0.216) = 0.6. The exact
        # expectation of within-group edges combines the block phase with
        # the chance that an overlay draw lands on the pair: per pair,
        # p + (1-p) * (1 - (1-q)^D) with q uniform over the 55 pairs and D
        # overlay draws.
        params = BterParams(np.full(11, 10), CcpdDistribution({10: 0.216}))
        grouping = bter_build_groups(params)
        p = grouping.groups[0].er_probability
        assert p == pytest.approx(0.6, abs=1e-12)
        total = grouping.residual_weights.total
        draws = math.floor(total / 2.0 + 0.5)
        q = 1.0 / 55.0
        per_pair = p + (1 - p) * (1.0 - (1.0 - q) ** draws)
        expected = 55 * per_pair
        rng = rng_stream(71)
        counts = [bter_generate(params, rng).edge_count for _ in range(200)]
        se = np.std(counts, ddof=1) / math.sqrt(len(counts))
        assert abs(np.mean(counts) - expected) <= 3 * se

    def test_beats_er_baseline_on_clustered_seed(self):
        # Degree-fidelity advantage over the naive same-density ER baseline
        # shows on seeds with real clustering contrast.
        from egbter import degree_distribution, er_fit, er_generate, planted_partition, rmse_degree

        g, _ = planted_partition(20, 15, 0.7, 0.01, rng_stream(999))
        ref = degree_distribution(g)
        bparams = bter_fit(g)
        eparams = er_fit(g)
        rng_b, rng_e = rng_stream(45), rng_stream(46)
        reps = 100
        rmse_b = np.mean(
            [rmse_degree(ref, degree_distribution(bter_generate(bparams, rng_b))) for _ in range(reps)]
        )
        rmse_e = np.mean(
            [
                rmse_degree(
                    ref,
                    degree_distribution(er_generate(eparams.node_count, eparams.p, rng_e)),
                )
                for _ in range(reps)
            ]
        )
        assert rmse_b < rmse_e
