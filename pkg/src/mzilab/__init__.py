"""Interferometer simulation and event-graph coherence inequalities.

The package models Mach-Zehnder interferometers as prepare-and-measure
devices, derives two-state overlaps from the optical elements, and tests
those overlaps against the classical (convex) bounds attached to cycles
of an event graph.  It also covers the interrogation task where the gap
between the quantum efficiency and the classical bound is an operational
advantage, plus vectorized grid scans and a small LP toolbox for
membership and distance queries on the classical polytope.
"""

from .eventgraph import (
    EdgeWeights,
    EventGraph,
    LinearFunctional,
    VertexSet,
    classical_vertices,
    complete_graph,
    cycle_functionals,
    cycle_graph,
    enumerate_cycles,
    evaluate,
    k5_functional,
    n_cycle_functional,
    named_functionals,
    overlaps_from_states,
    robust_bound,
    three_cycle_functionals,
)
from .geometry import (
    DistanceResult,
    MembershipResult,
    l1_distance,
    membership,
    solve_equality_lp,
    violation_lower_bound,
)
from .interrogation import (
    advantage_scan,
    analytic_report,
    efficiency,
    efficiency_raw,
    interrogation_triple,
    nc_bound,
    simulate,
)
from .optics import (
    MziConfig,
    StateTriple,
    beam_splitter,
    detection_probability,
    general_input_triple,
    h1_general,
    h2_general,
    h3_general,
    h_functional,
    measurement_dual,
    phase_shifter,
    phase_shifter_b,
    prepare,
    sequential_triple,
)
from .qstate import (
    DensityOperator,
    PureState,
    Unitary,
    apply,
    basis,
    compose,
    overlap_density,
    overlap_pure,
)
from .scenario import (
    PrepareMeasureScenario,
    build_lsss,
    confusability_table,
    epistemic_bound,
    perp_state,
    scenario_document,
    verify_operational_equivalences,
)
from .scans import (
    ScanResult,
    h1_grid,
    h_grid,
    h_values,
    k5_equator_states,
    overlap_equator,
    parallel_preset,
    scan_h,
    scan_h_preset,
)

__version__ = "0.1.0"

__all__ = [
    "DensityOperator",
    "DistanceResult",
    "EdgeWeights",
    "EventGraph",
    "LinearFunctional",
    "MembershipResult",
    "MziConfig",
    "PrepareMeasureScenario",
    "PureState",
    "ScanResult",
    "StateTriple",
    "Unitary",
    "VertexSet",
    "advantage_scan",
    "analytic_report",
    "apply",
    "basis",
    "beam_splitter",
    "build_lsss",
    "classical_vertices",
    "complete_graph",
    "compose",
    "confusability_table",
    "cycle_functionals",
    "cycle_graph",
    "detection_probability",
    "efficiency",
    "efficiency_raw",
    "enumerate_cycles",
    "epistemic_bound",
    "evaluate",
    "general_input_triple",
    "h1_general",
    "h1_grid",
    "h2_general",
    "h3_general",
    "h_functional",
    "h_grid",
    "h_values",
    "interrogation_triple",
    "k5_equator_states",
    "k5_functional",
    "l1_distance",
    "measurement_dual",
    "membership",
    "n_cycle_functional",
    "named_functionals",
    "nc_bound",
    "overlap_density",
    "overlap_equator",
    "overlap_pure",
    "overlaps_from_states",
    "parallel_preset",
    "perp_state",
    "phase_shifter",
    "phase_shifter_b",
    "prepare",
    "robust_bound",
    "scan_h",
    "scan_h_preset",
    "scenario_document",
    "sequential_triple",
    "simulate",
    "solve_equality_lp",
    "three_cycle_functionals",
    "verify_operational_equivalences",
    "violation_lower_bound",
]
