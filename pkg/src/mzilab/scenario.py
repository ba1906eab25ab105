"""Prepare-and-measure scenarios built from event graphs.

Every graph vertex v contributes a preparation P_v, a binary measurement
M_v, and orthogonal-complement preparations; every edge {v, w} contributes
the mixture equivalence

    1/2 P_v + 1/2 P_v_perp  ~  1/2 P_w + 1/2 P_w_perp

(with per-edge perp labels in the general construction).  In the qubit
realization both mixtures equal the maximally mixed state, which is what
``verify_operational_equivalences`` checks.  Confusabilities
p(0 | M_i, P_j) of such a scenario are two-state overlaps, so the cycle
functionals of the graph bound them; measurement imperfections epsilon_v
relax each bound by sum(epsilon) (see ``eventgraph.robust_bound``), and
``epistemic_bound`` exposes the per-edge interval that relaxation is built
from.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, Optional, Tuple

import numpy as np

from .qstate import DensityOperator, PureState, overlap_pure

#: entrywise tolerance for mixture-equivalence verification
EQUIVALENCE_ATOL = 1e-12


def perp_state(psi):
    """The orthogonal complement of a qubit state, with a fixed phase.

    (a, b) -> (conj(b), -conj(a)), so the construction is deterministic and
    reproducible.
    """
    if psi.dim != 2:
        raise ValueError("perp_state is defined for qubits only")
    a, b = psi.vector
    return PureState(np.array([np.conj(b), -np.conj(a)], dtype=np.complex128))


@dataclass(frozen=True)
class Equivalence:
    """One per-edge mixture equality: mix(left) ~ mix(right), half/half."""

    edge: Tuple[int, int]
    left: Tuple[str, str]
    right: Tuple[str, str]


@dataclass(frozen=True)
class PrepareMeasureScenario:
    """Labels, equivalences, and noise parameters of an LSSS-style scenario."""

    graph: object
    preparation_labels: Tuple[str, ...]
    measurement_labels: Tuple[str, ...]
    num_outcomes: int
    equivalences: Tuple[Equivalence, ...]
    epsilons: Dict[int, float]
    merged: bool

    def signature(self):
        """(preparations, measurements, outcomes, equivalences) counts."""
        return (
            len(self.preparation_labels),
            len(self.measurement_labels),
            self.num_outcomes,
            len(self.equivalences),
        )


def _normalize_epsilons(graph, epsilons):
    vertices = range(1, graph.vertex_count + 1)
    if epsilons is None:
        table = {v: 0.0 for v in vertices}
    elif isinstance(epsilons, dict):
        table = {v: float(epsilons.get(v, 0.0)) for v in vertices}
    else:
        value = float(epsilons)
        table = {v: value for v in vertices}
    if any(eps < 0 for eps in table.values()):
        raise ValueError("epsilons must be nonnegative")
    return table


def _edge_tag(edge):
    return f"{edge[0]}-{edge[1]}"


def build_lsss(graph, epsilons=None, merged=False):
    """Build the prepare-and-measure scenario of an event graph.

    The general construction creates one perp preparation per (vertex,
    edge) pair, giving N_v + N_v * N_e preparations; ``merged=True``
    collapses these to a single perp per vertex (2 * N_v preparations),
    which is the natural choice when all perp preparations of a vertex are
    realized by the same orthogonal state.
    """
    eps = _normalize_epsilons(graph, epsilons)
    vertices = list(range(1, graph.vertex_count + 1))
    preparations = [f"P_{v}" for v in vertices]
    if merged:
        preparations += [f"P_{v}_perp" for v in vertices]
    else:
        for v in vertices:
            preparations += [f"P_{v}_perp_{_edge_tag(e)}" for e in graph.edges]
    measurements = [f"M_{v}" for v in vertices]
    equivalences = []
    for edge in graph.edges:
        v, w = edge
        if merged:
            left = (f"P_{v}", f"P_{v}_perp")
            right = (f"P_{w}", f"P_{w}_perp")
        else:
            left = (f"P_{v}", f"P_{v}_perp_{_edge_tag(edge)}")
            right = (f"P_{w}", f"P_{w}_perp_{_edge_tag(edge)}")
        equivalences.append(Equivalence(edge=edge, left=left, right=right))
    return PrepareMeasureScenario(
        graph=graph,
        preparation_labels=tuple(preparations),
        measurement_labels=tuple(measurements),
        num_outcomes=2,
        equivalences=tuple(equivalences),
        epsilons=eps,
        merged=merged,
    )


@dataclass(frozen=True)
class EquivalenceReport:
    """Outcome of checking every mixture equivalence against 1/d."""

    passed: bool
    max_deviation: float
    deviations: Dict[str, float]


def _as_density_matrix(state):
    if isinstance(state, PureState):
        return state.density().matrix
    if isinstance(state, DensityOperator):
        return state.matrix
    raise ValueError(f"expected PureState or DensityOperator, got {type(state).__name__}")


def verify_operational_equivalences(scenario, states):
    """Check that each equivalence's mixtures equal the maximally mixed state.

    ``states`` maps preparation labels to PureState/DensityOperator.  For
    each equivalence, both half/half mixtures are compared entrywise with
    1/d; the report carries the worst deviation per equivalence and overall.
    """
    deviations = {}
    worst = 0.0
    for eq in scenario.equivalences:
        matrices = {}
        for label in eq.left + eq.right:
            if label not in states:
                raise ValueError(f"verify_operational_equivalences: missing state for {label!r}")
            matrices[label] = _as_density_matrix(states[label])
        d = next(iter(matrices.values())).shape[0]
        mixed = np.eye(d) / d
        left = 0.5 * matrices[eq.left[0]] + 0.5 * matrices[eq.left[1]]
        right = 0.5 * matrices[eq.right[0]] + 0.5 * matrices[eq.right[1]]
        deviation = max(
            float(np.max(np.abs(left - mixed))),
            float(np.max(np.abs(right - mixed))),
        )
        deviations[_edge_tag(eq.edge)] = deviation
        worst = max(worst, deviation)
    return EquivalenceReport(
        passed=worst <= EQUIVALENCE_ATOL, max_deviation=worst, deviations=deviations
    )


@dataclass(frozen=True)
class ConfusabilityTable:
    """Square table of p(0 | M_i, P_j) values for a state list."""

    matrix: np.ndarray
    epsilons: Tuple[float, ...]

    def __post_init__(self):
        self.matrix.setflags(write=False)

    def to_edge_weights(self, graph):
        """Read the graph's edge weights off the table (vertex k = row k-1)."""
        from .eventgraph import EdgeWeights

        if graph.vertex_count != self.matrix.shape[0]:
            raise ValueError("graph order does not match table size")
        return EdgeWeights(
            {(i, j): float(self.matrix[i - 1, j - 1]) for i, j in graph.edges}
        )


def confusability_table(states, epsilons=None):
    """Pairwise-overlap table of a state list: entry (i, j) = |<s_i|s_j>|^2.

    Symmetric with unit diagonal in the ideal case; ``epsilons`` (one per
    state, default all zero) assert how far below 1 each diagonal entry may
    sit, matching the measurement constraints p(0|M_i, P_i) >= 1 - eps_i.
    """
    states = list(states)
    n = len(states)
    if epsilons is None:
        eps = (0.0,) * n
    else:
        eps = tuple(float(x) for x in epsilons)
        if len(eps) != n:
            raise ValueError("need one epsilon per state")
        if any(x < 0 for x in eps):
            raise ValueError("epsilons must be nonnegative")
    matrix = np.ones((n, n))
    for i in range(n):
        for j in range(i + 1, n):
            value = overlap_pure(states[i], states[j])
            matrix[i, j] = value
            matrix[j, i] = value
    for i in range(n):
        if matrix[i, i] < 1.0 - eps[i] - 1e-12:
            raise ValueError(f"diagonal entry {i} below 1 - epsilon")
    return ConfusabilityTable(matrix=matrix, epsilons=eps)


def epistemic_bound(r, epsilon):
    """Interval for the L1 distance of two epistemic states given overlap r.

    A noisy confusability r between preparations v and w pins the distance
    of their ontological distributions to 2(1-r) up to 2*epsilon:
    returns [2(1-r) - 2 eps, 2(1-r) + 2 eps] clamped to [0, 2].
    """
    r = float(r)
    epsilon = float(epsilon)
    if not -1e-12 <= r <= 1.0 + 1e-12:
        raise ValueError(f"overlap {r!r} outside [0, 1]")
    if epsilon < 0:
        raise ValueError("epsilon must be nonnegative")
    center = 2.0 * (1.0 - r)
    return (max(0.0, center - 2.0 * epsilon), min(2.0, center + 2.0 * epsilon))


def scenario_document(scenario):
    """JSON-ready dict describing a scenario (stable field order)."""
    return {
        "vertices": scenario.graph.vertex_count,
        "edges": [list(e) for e in scenario.graph.edges],
        "merged_perp_labels": scenario.merged,
        "preparations": list(scenario.preparation_labels),
        "measurements": list(scenario.measurement_labels),
        "outcomes": list(range(scenario.num_outcomes)),
        "equivalences": [
            {
                "edge": _edge_tag(eq.edge),
                "left": list(eq.left),
                "right": list(eq.right),
                "mixture": [0.5, 0.5],
            }
            for eq in scenario.equivalences
        ],
        "epsilons": {str(v): scenario.epsilons[v] for v in sorted(scenario.epsilons)},
    }
