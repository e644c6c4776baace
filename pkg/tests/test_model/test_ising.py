# -*- coding: utf-8 -*-
"""Tests for the Ising model, configurations and clique potentials."""

import math
from itertools import product

import numpy as np
import pytest

from isingkit.common.errors import InputError
from isingkit.graph.core import build_graph, complete_graph, maximal_cliques
from isingkit.model.ising import (
    IsingModel,
    assign_potentials,
    clique_log_weight,
    configuration_from_index,
    configuration_index,
    induced_model,
    log_weight,
    model_from_edges,
    probability,
)
from isingkit.partition.enumeration import exact_partition
from tests.conftest import FIVE_NODE_EDGES, random_model


class TestModel:
    def test_missing_weight_is_error(self):
        with pytest.raises(InputError):
            IsingModel.create(build_graph(2, [(0, 1)]))

    def test_weight_for_non_edge_is_error(self):
        with pytest.raises(InputError):
            IsingModel.create(build_graph(3, [(0, 1)]), weights={(0, 1): 1.0, (1, 2): 1.0})

    def test_threshold_length(self):
        with pytest.raises(InputError):
            IsingModel.create(build_graph(2, []), thresholds=[0.0])

    def test_non_finite_parameter(self):
        with pytest.raises(InputError):
            IsingModel.create(build_graph(1, []), thresholds=[math.inf])

    def test_weight_either_orientation(self):
        m = IsingModel.create(build_graph(2, [(0, 1)]), weights={(1, 0): 2.5})
        assert m.weight(0, 1) == 2.5
        assert m.weight(1, 0) == 2.5
        assert m.upper_weights[0, 1] == 2.5
        assert m.upper_weights[1, 0] == 0.0

    def test_hash_follows_equality(self):
        a = IsingModel.create(build_graph(3, [(0, 1), (1, 2)]), [0.1, 0.2, 0.3], {(1, 2): -1.0, (0, 1): 2.0})
        b = model_from_edges(3, [(0, 1, 2.0), (2, 1, -1.0)], thresholds=[0.1, 0.2, 0.3])
        assert a == b
        assert hash(a) == hash(b)
        assert len({a, b, model_from_edges(3, [(0, 1, 2.0), (1, 2, 1.0)], thresholds=[0.1, 0.2, 0.3])}) == 2

    def test_arrays_are_read_only(self):
        m = IsingModel.create(complete_graph(2), default_weight=1.0)
        with pytest.raises(ValueError):
            m.theta[0] = 3.0


class TestLogWeight:
    def test_single_edge(self):
        m = model_from_edges(2, [(0, 1, 1.0)], thresholds=[0.5, -0.25])
        assert log_weight(m, [1, 1]) == pytest.approx(1.25)
        assert log_weight(m, [1, 0]) == pytest.approx(0.5)
        assert log_weight(m, [0, 0]) == 0.0

    def test_bad_configuration(self):
        m = IsingModel.create(complete_graph(2), default_weight=1.0)
        with pytest.raises(InputError):
            log_weight(m, [1])
        with pytest.raises(InputError):
            log_weight(m, [1, 2])

    def test_probability(self):
        m = model_from_edges(2, [(0, 1, 1.0)])
        z = 3.0 + math.e
        assert probability(m, [1, 1], z) == pytest.approx(math.e / z)
        with pytest.raises(InputError):
            probability(m, [1, 1], 0.0)

    @pytest.mark.parametrize("seed", range(4))
    def test_probabilities_sum_to_one(self, seed):
        rng = np.random.default_rng(seed)
        m = random_model(rng, int(rng.integers(1, 11)), p_edge=0.5)
        z = exact_partition(m).value
        total = sum(probability(m, x, z) for x in product((0, 1), repeat=m.n))
        assert total == pytest.approx(1.0, rel=1e-12)

    @pytest.mark.parametrize("seed", range(3))
    def test_monotone_in_each_interaction(self, seed):
        rng = np.random.default_rng(100 + seed)
        m = random_model(rng, 6, p_edge=0.6)
        for (s, t), w in m.weights.items():
            bump = float(rng.uniform(0.1, 2.0))
            weights = dict(m.weights)
            weights[(s, t)] = w + bump
            raised = IsingModel.create(m.graph, m.thresholds, weights)
            for x in product((0, 1), repeat=m.n):
                before, after = log_weight(m, x), log_weight(raised, x)
                if x[s] and x[t]:
                    assert after >= before
                    assert after - before == pytest.approx(bump, abs=1e-12)
                else:
                    assert after == before


class TestConfigurationIndex:
    def test_node_zero_is_least_significant(self):
        assert configuration_from_index(1, 3) == (1, 0, 0)
        assert configuration_from_index(6, 3) == (0, 1, 1)
        assert configuration_index((0, 1, 1)) == 6

    def test_all_indices(self):
        n = 4
        assert [configuration_index(configuration_from_index(i, n)) for i in range(1 << n)] == list(range(1 << n))


class TestCliquePotentials:
    def test_owners_follow_clique_order(self):
        cliques = maximal_cliques(build_graph(5, FIVE_NODE_EDGES))
        assignment = assign_potentials(cliques)
        assert assignment.node_owner == (0, 0, 2, 2, 1)
        assert assignment.owns_edge(0, 1, 0)
        assert assignment.owns_edge(2, 2, 3)

    def test_uncovered_node(self):
        cliques = maximal_cliques(build_graph(2, [(0, 1)]))
        with pytest.raises(InputError):
            assign_potentials(cliques, n=3)

    @pytest.mark.parametrize("seed", range(5))
    def test_clique_potentials_sum_to_log_weight(self, seed):
        rng = np.random.default_rng(seed)
        m = random_model(rng, 6, p_edge=0.6)
        cliques = maximal_cliques(m.graph)
        assignment = assign_potentials(cliques, m.n)
        for x in product((0, 1), repeat=m.n):
            total = sum(
                clique_log_weight(m, c, assignment, {v: x[v] for v in c}) for c in cliques
            )
            assert total == pytest.approx(log_weight(m, x), abs=1e-12)

    def test_shared_edge_counted_once(self):
        # two maximal cliques {0,1,2} and {0,1,3} share the edge (0,1)
        m = model_from_edges(4, [(0, 1, 2.0), (0, 2, 1.0), (1, 2, 1.0), (0, 3, 1.0), (1, 3, 1.0)])
        cliques = maximal_cliques(m.graph)
        assignment = assign_potentials(cliques, m.n)
        x = (1, 1, 0, 0)
        total = sum(clique_log_weight(m, c, assignment, {v: x[v] for v in c}) for c in cliques)
        assert total == pytest.approx(2.0)

    def test_partial_configuration(self):
        cliques = maximal_cliques(complete_graph(2))
        m = IsingModel.create(complete_graph(2), default_weight=1.0)
        with pytest.raises(InputError):
            clique_log_weight(m, (0, 1), assign_potentials(cliques), {0: 1})


class TestInducedModel:
    def test_keeps_own_parameters(self):
        m = model_from_edges(4, [(0, 1, 1.0), (1, 2, 2.0), (2, 3, 3.0)], thresholds=[0.1, 0.2, 0.3, 0.4])
        sub, kept = induced_model(m, [1, 2, 3])
        assert kept == (1, 2, 3)
        assert sub.thresholds == (0.2, 0.3, 0.4)
        assert sub.weights == {(0, 1): 2.0, (1, 2): 3.0}
