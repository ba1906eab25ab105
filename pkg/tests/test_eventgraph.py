import math

import numpy as np
import pytest

from mzilab.eventgraph import (
    EdgeWeights,
    EventGraph,
    classical_vertices,
    complete_graph,
    cycle_functionals,
    cycle_graph,
    enumerate_cycles,
    evaluate,
    graph_from_document,
    k5_functional,
    n_cycle_functional,
    named_functionals,
    overlaps_from_states,
    robust_bound,
    three_cycle_functionals,
    weights_from_document,
)
from mzilab.qstate import DensityOperator, PureState, basis


def test_graph_normalizes_and_sorts_edges():
    g = EventGraph(3, [(3, 1), (2, 1), (3, 2)])
    assert g.edges == ((1, 2), (1, 3), (2, 3))


def test_graph_rejects_loops_duplicates_and_disconnection():
    with pytest.raises(ValueError):
        EventGraph(3, [(1, 1), (1, 2), (2, 3)])
    with pytest.raises(ValueError):
        EventGraph(3, [(1, 2), (2, 1), (2, 3)])
    with pytest.raises(ValueError):
        EventGraph(4, [(1, 2), (3, 4)])
    with pytest.raises(ValueError):
        EventGraph(3, [(1, 2), (2, 4)])


def test_cycle_and_complete_constructors():
    assert cycle_graph(4).edges == ((1, 2), (1, 4), (2, 3), (3, 4))
    assert len(complete_graph(5).edges) == 10
    with pytest.raises(ValueError):
        cycle_graph(2)


def test_triangle_has_one_cycle():
    cycles = enumerate_cycles(cycle_graph(3))
    assert cycles == [((1, 2), (1, 3), (2, 3))]


def test_complete_graph_cycle_census():
    """K5 has 10 triangles, 15 squares, and 12 pentagons."""
    cycles = enumerate_cycles(complete_graph(5))
    lengths = [len(c) for c in cycles]
    assert lengths.count(3) == 10
    assert lengths.count(4) == 15
    assert lengths.count(5) == 12
    assert len(cycles) == 37


def test_tree_has_no_cycles():
    g = EventGraph(4, [(1, 2), (1, 3), (1, 4)])
    assert enumerate_cycles(g) == []


class TestClassicalVertices:
    def test_triangle_vertex_set_is_exactly_the_five_known_ones(self):
        vs = classical_vertices(cycle_graph(3))
        expected = {(0, 0, 0), (0, 0, 1), (0, 1, 0), (1, 0, 0), (1, 1, 1)}
        assert set(vs.as_tuples()) == expected
        assert len(vs) == 5

    def test_single_edge_graph_has_both_assignments(self):
        vs = classical_vertices(EventGraph(2, [(1, 2)]))
        assert set(vs.as_tuples()) == {(0,), (1,)}

    def test_square_vertex_count(self):
        assert len(classical_vertices(cycle_graph(4))) == 12

    def test_no_vertex_has_exactly_one_zero_per_cycle(self):
        g = complete_graph(4)
        cycles = enumerate_cycles(g)
        vs = classical_vertices(g)
        index = {e: k for k, e in enumerate(vs.edges)}
        for assignment in vs.as_tuples():
            for cycle in cycles:
                zeros = sum(1 - assignment[index[e]] for e in cycle)
                assert zeros != 1

    def test_capacity_guard(self):
        with pytest.raises(ValueError):
            classical_vertices(complete_graph(7))  # 21 edges is past the cap


class TestEdgeWeights:
    def test_lookup_and_ordering(self):
        w = EdgeWeights({(2, 3): 0.25, (1, 2): 0.75, (1, 3): 0.5})
        assert w[(1, 2)] == 0.75
        assert [e for e, _ in w.items()] == [(1, 2), (1, 3), (2, 3)]

    def test_rejects_out_of_range_values(self):
        with pytest.raises(ValueError):
            EdgeWeights({(1, 2): 1.5})
        with pytest.raises(ValueError):
            EdgeWeights({(1, 2): -0.2})

    def test_missing_edge_raises(self):
        w = EdgeWeights({(1, 2): 0.5})
        with pytest.raises(ValueError):
            w[(1, 3)]

    def test_vector_roundtrip(self):
        edges = ((1, 2), (1, 3), (2, 3))
        w = EdgeWeights({(1, 2): 0.1, (1, 3): 0.2, (2, 3): 0.3})
        np.testing.assert_allclose(w.vector(edges), [0.1, 0.2, 0.3])
        w2 = EdgeWeights.from_vector(edges, [0.1, 0.2, 0.3])
        assert [v for _, v in w2.items()] == [0.1, 0.2, 0.3]


class TestFunctionals:
    def test_three_cycle_family_has_three_sign_patterns(self):
        fns = three_cycle_functionals()
        assert [f.name for f in fns] == ["c3:-r23", "c3:-r13", "c3:-r12"]
        for f in fns:
            assert f.bound == 1.0
            assert sorted(f.coefficients.values()) == [-1.0, 1.0, 1.0]

    def test_triangle_functional_value_and_violation(self):
        f = three_cycle_functionals()[0]
        w = EdgeWeights({(1, 2): 0.75, (1, 3): 0.75, (2, 3): 0.25})
        value, violation = evaluate(f, w)
        np.testing.assert_allclose(value, 1.25)
        np.testing.assert_allclose(violation, 0.25)

    def test_unviolated_functional_reports_zero(self):
        f = three_cycle_functionals()[0]
        w = EdgeWeights({(1, 2): 0.5, (1, 3): 0.5, (2, 3): 0.5})
        value, violation = evaluate(f, w)
        np.testing.assert_allclose(value, 0.5)
        assert violation == 0.0

    def test_n_cycle_functional_bound_grows_with_length(self):
        f = n_cycle_functional(4, negated_edge=(1, 4))
        assert f.bound == 2.0
        assert f.coefficients[(1, 4)] == -1.0
        assert sum(f.coefficients.values()) == 2.0
        with pytest.raises(ValueError):
            n_cycle_functional(2, negated_edge=(1, 2))
        with pytest.raises(ValueError):
            n_cycle_functional(4, negated_edge=(1, 3))  # a chord, not an edge

    def test_k5_functional_shape(self):
        f = k5_functional()
        assert f.bound == 2.0
        positives = {e for e, c in f.coefficients.items() if c > 0}
        negatives = {e for e, c in f.coefficients.items() if c < 0}
        assert positives == {(1, 2), (1, 5), (2, 3), (3, 4), (4, 5)}
        assert negatives == {(1, 3), (1, 4), (2, 4), (2, 5), (3, 5)}

    def test_robust_bound_adds_epsilons(self):
        f = three_cycle_functionals()[0]
        assert robust_bound(f, (0.1, 0.1, 0.1)) == pytest.approx(1.3)
        assert robust_bound(f, ()) == 1.0
        with pytest.raises(ValueError):
            robust_bound(f, (-0.1, 0.0, 0.0))

    def test_cycle_functionals_cover_every_negation(self):
        fns = cycle_functionals(cycle_graph(4))
        assert len(fns) == 4
        negated = {min(f.coefficients, key=f.coefficients.get) for f in fns}
        assert negated == set(cycle_graph(4).edges)

    def test_named_functionals_include_the_pentagram_only_on_k5(self):
        names_c3 = {f.name for f in named_functionals(cycle_graph(3))}
        assert names_c3 == {
            "c3(1-2-3):-r1-2",
            "c3(1-2-3):-r1-3",
            "c3(1-2-3):-r2-3",
        }
        names_k5 = {f.name for f in named_functionals(complete_graph(5))}
        assert "k5:pentagram" in names_k5
        assert len(names_k5) == 10 * 3 + 15 * 4 + 12 * 5 + 1


class TestClassicalModels:
    def test_every_classical_vertex_satisfies_every_functional(self):
        """Cycle bounds hold with exact equality arithmetic on 0/1 points."""
        for graph in (cycle_graph(3), cycle_graph(4), complete_graph(5)):
            vs = classical_vertices(graph)
            for f in named_functionals(graph):
                for assignment in vs.as_tuples():
                    w = EdgeWeights.from_vector(vs.edges, assignment)
                    _, violation = evaluate(f, w)
                    assert violation == 0.0

    def test_diagonal_states_never_violate(self):
        """Overlaps of commuting (diagonal) density operators admit a
        classical model, so every cycle functional stays within bound."""
        rng = np.random.default_rng(97)
        for graph, dim in ((cycle_graph(3), 2), (cycle_graph(4), 2), (complete_graph(5), 3)):
            fns = named_functionals(graph)
            for _ in range(60):
                states = {}
                for v in range(1, graph.vertex_count + 1):
                    p = rng.dirichlet(np.ones(dim))
                    states[v] = DensityOperator(np.diag(p))
                w = overlaps_from_states(graph, states)
                for f in fns:
                    _, violation = evaluate(f, w)
                    assert violation <= 1e-12


def test_overlaps_from_states_accepts_pure_and_mixed():
    g = cycle_graph(3)
    states = {
        1: basis(0),
        2: PureState([1.0 / math.sqrt(2), 1.0 / math.sqrt(2)]),
        3: DensityOperator(np.eye(2) / 2),
    }
    w = overlaps_from_states(g, states)
    np.testing.assert_allclose(w[(1, 2)], 0.5, atol=1e-15)
    np.testing.assert_allclose(w[(1, 3)], 0.5, atol=1e-15)
    np.testing.assert_allclose(w[(2, 3)], 0.5, atol=1e-15)


def test_overlaps_from_states_requires_every_vertex():
    with pytest.raises(ValueError):
        overlaps_from_states(cycle_graph(3), {1: basis(0), 2: basis(1)})


def test_graph_document_roundtrip():
    g = graph_from_document({"vertices": 3, "edges": [[1, 2], [1, 3], [2, 3]]})
    assert g == cycle_graph(3)
    g2 = graph_from_document({"vertices": [1, 2, 3], "edges": [[1, 2], [1, 3], [2, 3]]})
    assert g2 == cycle_graph(3)
    with pytest.raises(ValueError):
        graph_from_document({"edges": []})
    with pytest.raises(ValueError):
        graph_from_document({"vertices": [1, 3], "edges": [[1, 3]]})


def test_weights_document_requires_exact_edge_cover():
    g = cycle_graph(3)
    w = weights_from_document({"1-2": 0.1, "1-3": 0.2, "2-3": 0.3}, g)
    assert w[(2, 3)] == 0.3
    with pytest.raises(ValueError):
        weights_from_document({"1-2": 0.1, "1-3": 0.2}, g)
    with pytest.raises(ValueError):
        weights_from_document({"1-2": 0.1, "1-3": 0.2, "2-3": 0.3, "1-4": 0.4}, g)
    with pytest.raises(ValueError):
        weights_from_document({"12": 0.1}, g)
