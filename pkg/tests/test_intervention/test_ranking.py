# -*- coding: utf-8 -*-
"""Tests for intervention-target ranking."""

import numpy as np
import pytest

from isingkit.common.errors import InputError
from isingkit.graph.core import build_graph
from isingkit.intervention.query import InferenceMethod
from isingkit.intervention.ranking import ImpactMetric, impact_score, rank_interventions
from isingkit.model.ising import IsingModel, model_from_edges
from tests.conftest import random_model


class TestImpactMetric:
    def test_aliases(self):
        assert ImpactMetric.parse("l1") is ImpactMetric.L1_MARGINAL_SHIFT
        assert ImpactMetric.parse("esum") is ImpactMetric.EXPECTED_SUM_SHIFT
        assert ImpactMetric.parse("expected_sum_shift") is ImpactMetric.EXPECTED_SUM_SHIFT
        with pytest.raises(InputError):
            ImpactMetric.parse("kl")

    def test_scores(self):
        baseline = {0: 0.5, 1: 0.5, 2: 0.5}
        intervened = {1: 0.7, 2: 0.4}
        assert impact_score(baseline, intervened, ImpactMetric.L1_MARGINAL_SHIFT) == pytest.approx(0.3)
        assert impact_score(baseline, intervened, ImpactMetric.EXPECTED_SUM_SHIFT) == pytest.approx(0.1)


class TestRanking:
    def test_edgeless_graph_ranks_by_node_id(self):
        m = IsingModel.create(build_graph(4, []))
        ranking = rank_interventions(m, 1)
        assert [e.node for e in ranking] == [0, 1, 2, 3]
        assert all(e.impact == 0.0 for e in ranking)
        assert [e.rank for e in ranking] == [1, 2, 3, 4]

    @pytest.mark.parametrize("method", [InferenceMethod.EXACT, InferenceMethod.CURIE_WEISS])
    def test_star_center_first(self, method):
        m = model_from_edges(5, [(2, leaf, 1.0) for leaf in (0, 1, 3, 4)])
        ranking = rank_interventions(m, 1, ImpactMetric.L1_MARGINAL_SHIFT, method)
        assert ranking.entries[0].node == 2
        assert ranking.entries[0].impact > ranking.entries[1].impact

    def test_twin_components_tie_by_node_id(self):
        edges = [(0, 1, 0.8), (1, 2, -0.5), (3, 4, 0.8), (4, 5, -0.5)]
        m = model_from_edges(6, edges, thresholds=[0.2, -0.1, 0.3, 0.2, -0.1, 0.3])
        ranking = rank_interventions(m, 1)
        impacts = ranking.impacts()
        for a, b in [(0, 3), (1, 4), (2, 5)]:
            assert impacts[a] == pytest.approx(impacts[b], rel=1e-12)
        order = [e.node for e in ranking]
        for a, b in [(0, 3), (1, 4), (2, 5)]:
            assert order.index(a) < order.index(b)

    def test_sorted_descending(self, rng):
        m = random_model(rng, 7)
        ranking = rank_interventions(m, 0, ImpactMetric.EXPECTED_SUM_SHIFT)
        impacts = [e.impact for e in ranking]
        assert impacts == sorted(impacts, reverse=True)
        assert all(e.value == 0 for e in ranking)

    def test_relabelling_permutes_scores(self, rng):
        m = random_model(rng, 6)
        perm = [int(v) for v in rng.permutation(m.n)]
        weights = {(perm[i], perm[j]): w for (i, j), w in m.weights.items()}
        thresholds = [0.0] * m.n
        for old, t in enumerate(m.thresholds):
            thresholds[perm[old]] = t
        relabelled = IsingModel.create(build_graph(m.n, list(weights)), thresholds, weights)

        original = rank_interventions(m, 1).impacts()
        moved = rank_interventions(relabelled, 1).impacts()
        for old in range(m.n):
            assert moved[perm[old]] == pytest.approx(original[old], rel=1e-10, abs=1e-13)

    def test_workers_do_not_change_result(self):
        m = random_model(np.random.default_rng(8), 8)
        assert rank_interventions(m, 1, workers=1) == rank_interventions(m, 1, workers=3)

    def test_invalid_value(self):
        with pytest.raises(InputError):
            rank_interventions(IsingModel.create(build_graph(2, [])), 2)
