import json
import math

import numpy as np
import pytest

from mzilab.eventgraph import complete_graph, cycle_graph
from mzilab.optics import sequential_triple
from mzilab.qstate import DensityOperator, PureState, basis, overlap_pure
from mzilab.scenario import (
    build_lsss,
    confusability_table,
    epistemic_bound,
    perp_state,
    scenario_document,
    verify_operational_equivalences,
)


class TestPerpState:
    def test_perp_is_orthogonal_and_normalized(self):
        rng = np.random.default_rng(19)
        for _ in range(100):
            z = rng.normal(size=2) + 1j * rng.normal(size=2)
            psi = PureState(z / np.linalg.norm(z))
            chi = perp_state(psi)
            np.testing.assert_allclose(overlap_pure(psi, chi), 0.0, atol=1e-15)
            np.testing.assert_allclose(np.linalg.norm(chi.vector), 1.0, atol=1e-12)

    def test_double_perp_returns_to_the_same_ray(self):
        psi = PureState([0.6, 0.8j])
        again = perp_state(perp_state(psi))
        np.testing.assert_allclose(overlap_pure(psi, again), 1.0, atol=1e-14)

    def test_only_qubits_are_supported(self):
        with pytest.raises(ValueError):
            perp_state(basis(0, dim=3))


class TestBuildScenario:
    def test_triangle_counts_general(self):
        scenario = build_lsss(cycle_graph(3))
        assert scenario.signature() == (12, 3, 2, 3)
        assert scenario.measurement_labels == ("M_1", "M_2", "M_3")
        assert "P_1" in scenario.preparation_labels
        assert "P_1_perp_1-2" in scenario.preparation_labels
        assert not scenario.merged

    def test_triangle_counts_merged(self):
        scenario = build_lsss(cycle_graph(3), merged=True)
        assert scenario.signature() == (6, 3, 2, 3)
        assert scenario.preparation_labels == (
            "P_1", "P_2", "P_3", "P_1_perp", "P_2_perp", "P_3_perp",
        )

    def test_k5_counts(self):
        scenario = build_lsss(complete_graph(5))
        assert scenario.signature() == (55, 5, 2, 10)

    def test_one_equivalence_per_edge(self):
        scenario = build_lsss(cycle_graph(4))
        assert [eq.edge for eq in scenario.equivalences] == list(cycle_graph(4).edges)
        eq = scenario.equivalences[0]
        assert eq.left == ("P_1", "P_1_perp_1-2")
        assert eq.right == ("P_2", "P_2_perp_1-2")

    def test_epsilon_normalization(self):
        uniform = build_lsss(cycle_graph(3), epsilons=0.1)
        assert uniform.epsilons == {1: 0.1, 2: 0.1, 3: 0.1}
        sparse = build_lsss(cycle_graph(3), epsilons={2: 0.2})
        assert sparse.epsilons == {1: 0.0, 2: 0.2, 3: 0.0}
        with pytest.raises(ValueError):
            build_lsss(cycle_graph(3), epsilons=-0.1)


class TestOperationalEquivalences:
    @staticmethod
    def _states_for(scenario, triple):
        states = {}
        for index, psi in enumerate((triple.psi1, triple.psi2, triple.psi3), start=1):
            states[f"P_{index}"] = psi
            if scenario.merged:
                states[f"P_{index}_perp"] = perp_state(psi)
            else:
                for edge in scenario.graph.edges:
                    states[f"P_{index}_perp_{edge[0]}-{edge[1]}"] = perp_state(psi)
        return states

    def test_interferometer_triples_satisfy_all_equivalences(self):
        """Half/half mixtures of a qubit ray with its orthogonal complement
        always average to the maximally mixed state."""
        for merged in (False, True):
            scenario = build_lsss(cycle_graph(3), merged=merged)
            for theta in (0.0, 0.3, math.pi / 4, 2.0):
                for phi in (0.0, 1.0, math.pi):
                    report = verify_operational_equivalences(
                        scenario, self._states_for(scenario, sequential_triple(theta, phi))
                    )
                    assert report.passed
                    assert report.max_deviation <= 1e-12
                    assert set(report.deviations) == {"1-2", "1-3", "2-3"}

    def test_wrong_partner_state_is_detected(self):
        scenario = build_lsss(cycle_graph(3), merged=True)
        triple = sequential_triple(0.4, 1.0)
        states = self._states_for(scenario, triple)
        states["P_1_perp"] = states["P_1"]  # mixture is now a projector, not 1/2
        report = verify_operational_equivalences(scenario, states)
        assert not report.passed
        # |psi><psi| - 1/2 has entries of modulus >= 1/2 somewhere
        assert report.max_deviation >= 0.25

    def test_mixed_states_are_accepted(self):
        scenario = build_lsss(cycle_graph(3), merged=True)
        half = DensityOperator(np.eye(2) / 2)
        states = {label: half for label in scenario.preparation_labels}
        report = verify_operational_equivalences(scenario, states)
        assert report.passed

    def test_missing_label_raises(self):
        scenario = build_lsss(cycle_graph(3), merged=True)
        with pytest.raises(ValueError):
            verify_operational_equivalences(scenario, {"P_1": basis(0)})


class TestConfusabilityTable:
    def test_pairwise_overlaps(self):
        plus = PureState([1.0 / math.sqrt(2), 1.0 / math.sqrt(2)])
        table = confusability_table([basis(0), plus, basis(1)])
        np.testing.assert_allclose(table.matrix.diagonal(), 1.0)
        np.testing.assert_allclose(table.matrix, table.matrix.T)
        np.testing.assert_allclose(table.matrix[0, 1], 0.5, atol=1e-15)
        np.testing.assert_allclose(table.matrix[0, 2], 0.0, atol=1e-15)
        np.testing.assert_allclose(table.matrix[1, 2], 0.5, atol=1e-15)

    def test_matrix_is_read_only(self):
        table = confusability_table([basis(0), basis(1)])
        with pytest.raises(ValueError):
            table.matrix[0, 1] = 0.9

    def test_epsilon_validation(self):
        states = [basis(0), basis(1)]
        assert confusability_table(states, epsilons=(0.1, 0.2)).epsilons == (0.1, 0.2)
        with pytest.raises(ValueError):
            confusability_table(states, epsilons=(0.1,))
        with pytest.raises(ValueError):
            confusability_table(states, epsilons=(-0.1, 0.0))

    def test_edge_weights_follow_the_table(self):
        triple = sequential_triple(math.pi / 6, math.pi)
        table = confusability_table([triple.psi1, triple.psi2, triple.psi3])
        weights = table.to_edge_weights(cycle_graph(3))
        r12, r13, r23 = triple.overlaps()
        np.testing.assert_allclose(weights[(1, 2)], r12, atol=1e-15)
        np.testing.assert_allclose(weights[(1, 3)], r13, atol=1e-15)
        np.testing.assert_allclose(weights[(2, 3)], r23, atol=1e-15)
        with pytest.raises(ValueError):
            table.to_edge_weights(cycle_graph(4))


class TestEpistemicBound:
    def test_known_intervals(self):
        np.testing.assert_allclose(epistemic_bound(0.75, 0.05), (0.4, 0.6), atol=1e-15)
        assert epistemic_bound(1.0, 0.0) == (0.0, 0.0)
        assert epistemic_bound(0.0, 0.0) == (2.0, 2.0)

    def test_clamping(self):
        lo, hi = epistemic_bound(0.95, 0.2)
        assert lo == 0.0
        np.testing.assert_allclose(hi, 0.5, atol=1e-15)
        lo, hi = epistemic_bound(0.05, 0.9)
        np.testing.assert_allclose(lo, 0.1, atol=1e-15)
        assert hi == 2.0

    def test_validation(self):
        with pytest.raises(ValueError):
            epistemic_bound(1.2, 0.0)
        with pytest.raises(ValueError):
            epistemic_bound(0.5, -0.1)

    def test_interval_chain_matches_cycle_functional_margin_exactly(self):
        """Around an n-cycle, combining the per-edge distance intervals via
        the triangle inequality reproduces the noise-robust functional
        margin: (sum hi_e - lo_e') / 2 = (n - 2 + sum eps) - (sum r_e - r_e').
        With 1/64-grid inputs both sides are exact in binary floating point.
        """
        rng = np.random.default_rng(101)
        for n in (3, 4, 5, 8):
            for _ in range(50):
                r = rng.integers(8, 57, size=n) / 64.0
                eps = rng.integers(0, 3, size=n) / 64.0
                intervals = [epistemic_bound(r[i], eps[i]) for i in range(n)]
                for k in range(n):
                    chain = (
                        sum(intervals[i][1] for i in range(n) if i != k)
                        - intervals[k][0]
                    ) / 2.0
                    margin = (n - 2 + eps.sum()) - (
                        sum(r[i] for i in range(n) if i != k) - r[k]
                    )
                    assert chain == margin

    def test_interval_chain_matches_margin_for_generic_inputs(self):
        rng = np.random.default_rng(103)
        for _ in range(200):
            n = int(rng.integers(3, 7))
            r = rng.uniform(0.1, 0.9, size=n)
            eps = rng.uniform(0.0, 0.05, size=n)
            intervals = [epistemic_bound(r[i], eps[i]) for i in range(n)]
            k = int(rng.integers(0, n))
            chain = (
                sum(intervals[i][1] for i in range(n) if i != k) - intervals[k][0]
            ) / 2.0
            margin = (n - 2 + eps.sum()) - (
                sum(r[i] for i in range(n) if i != k) - r[k]
            )
            np.testing.assert_allclose(chain, margin, atol=1e-12)


class TestScenarioDocument:
    def test_document_structure_and_serializability(self):
        scenario = build_lsss(cycle_graph(3), epsilons=0.1, merged=True)
        doc = scenario_document(scenario)
        assert doc["vertices"] == 3
        assert doc["edges"] == [[1, 2], [1, 3], [2, 3]]
        assert doc["merged_perp_labels"] is True
        assert doc["outcomes"] == [0, 1]
        assert doc["epsilons"] == {"1": 0.1, "2": 0.1, "3": 0.1}
        assert len(doc["equivalences"]) == 3
        first = doc["equivalences"][0]
        assert first["edge"] == "1-2"
        assert first["mixture"] == [0.5, 0.5]
        json.dumps(doc)  # must be directly serializable
