"""Event graphs and two-state overlap inequalities.

An event graph is a finite connected simple graph whose vertices stand for
quantum states and whose edges carry the pairwise overlaps r_e in [0, 1].
Overlaps realizable by simultaneously-diagonalizable ("incoherent") states
are exactly the convex combinations of the deterministic 0/1 edge
assignments that respect transitivity of equality: around any cycle, the
number of 0-edges is never exactly one.  ``classical_vertices`` enumerates
those assignments; the linear functionals below (3-cycle, n-cycle,
pentagram) are facets of their convex hull, so any value above the bound
certifies that no incoherent assignment of states can produce the observed
overlaps.

Vertices are 1-based.  Edges are unordered pairs, normalized to (i, j) with
i < j and ordered lexicographically everywhere a deterministic order is
needed (serialization, weight vectors, assignment enumeration).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, Iterable, List, NamedTuple, Tuple

import numpy as np

from .qstate import DensityOperator, PureState, overlap_density, overlap_pure

#: enumeration guards; everything used in practice is at most K5 (10 edges)
MAX_CYCLE_VERTICES = 12
MAX_ENUMERABLE_EDGES = 20

Edge = Tuple[int, int]


def _normalize_edge(edge) -> Edge:
    i, j = edge
    i, j = int(i), int(j)
    if i == j:
        raise ValueError(f"edge ({i}, {j}) is a loop")
    return (i, j) if i < j else (j, i)


@dataclass(frozen=True)
class EventGraph:
    """A connected simple graph with 1-based vertices."""

    vertex_count: int
    edges: Tuple[Edge, ...]

    def __init__(self, vertex_count, edges):
        vertex_count = int(vertex_count)
        if vertex_count < 1:
            raise ValueError("vertex_count must be positive")
        normalized = []
        seen = set()
        for edge in edges:
            e = _normalize_edge(edge)
            if not (1 <= e[0] <= vertex_count and 1 <= e[1] <= vertex_count):
                raise ValueError(f"edge {e} out of range for {vertex_count} vertices")
            if e in seen:
                raise ValueError(f"duplicate edge {e}")
            seen.add(e)
            normalized.append(e)
        normalized.sort()
        object.__setattr__(self, "vertex_count", vertex_count)
        object.__setattr__(self, "edges", tuple(normalized))
        if not self._connected():
            raise ValueError("event graphs must be connected")

    def _connected(self):
        if self.vertex_count == 1:
            return True
        adj = self.neighbors()
        seen = {1}
        stack = [1]
        while stack:
            v = stack.pop()
            for w in adj[v]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return len(seen) == self.vertex_count

    def neighbors(self) -> Dict[int, List[int]]:
        """Adjacency lists, each sorted ascending."""
        adj = {v: [] for v in range(1, self.vertex_count + 1)}
        for i, j in self.edges:
            adj[i].append(j)
            adj[j].append(i)
        for v in adj:
            adj[v].sort()
        return adj

    def edge_index(self) -> Dict[Edge, int]:
        """Position of each edge in the canonical lexicographic order."""
        return {e: k for k, e in enumerate(self.edges)}


def cycle_graph(n):
    """The cycle C_n: edges (1,2), (2,3), ..., (n-1,n), (1,n)."""
    if n < 3:
        raise ValueError("cycle graphs need at least 3 vertices")
    return EventGraph(n, [(k, k + 1) for k in range(1, n)] + [(1, n)])


def complete_graph(n):
    """The complete graph K_n."""
    if n < 2:
        raise ValueError("complete graphs need at least 2 vertices")
    return EventGraph(n, [(i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1)])


def enumerate_cycles(graph) -> List[Tuple[Edge, ...]]:
    """All simple cycles of length >= 3, each as a sorted tuple of edges.

    Each cycle is found exactly once: the search roots at the cycle's
    smallest vertex, walks only through larger vertices, and accepts one of
    the two traversal directions.  Results are sorted by (length, edges).
    """
    if graph.vertex_count > MAX_CYCLE_VERTICES:
        raise ValueError(
            f"enumerate_cycles supports at most {MAX_CYCLE_VERTICES} vertices, "
            f"got {graph.vertex_count}"
        )
    adj = graph.neighbors()
    cycles = []

    def extend(path, on_path):
        head = path[-1]
        root = path[0]
        for nxt in adj[head]:
            if nxt == root and len(path) >= 3 and path[1] < path[-1]:
                edge_seq = list(zip(path, path[1:])) + [(path[-1], root)]
                cycles.append(tuple(sorted(_normalize_edge(e) for e in edge_seq)))
            elif nxt > root and nxt not in on_path:
                path.append(nxt)
                on_path.add(nxt)
                extend(path, on_path)
                on_path.remove(nxt)
                path.pop()

    for start in range(1, graph.vertex_count + 1):
        extend([start], {start})
    cycles.sort(key=lambda edges: (len(edges), edges))
    return cycles


@dataclass(frozen=True)
class VertexSet:
    """Deterministic 0/1 edge assignments compatible with every cycle."""

    edges: Tuple[Edge, ...]
    assignments: np.ndarray = field(repr=False)

    def __post_init__(self):
        self.assignments.setflags(write=False)

    def __len__(self):
        return self.assignments.shape[0]

    def __iter__(self):
        for row in self.assignments:
            yield tuple(int(x) for x in row)

    def as_array(self):
        """(num_assignments, num_edges) array of 0/1 ints, rows in binary order."""
        return self.assignments

    def as_tuples(self):
        return [tuple(int(x) for x in row) for row in self.assignments]


def classical_vertices(graph) -> VertexSet:
    """Enumerate all 0/1 edge assignments with no cycle carrying exactly one 0.

    A 0-edge asserts "the endpoint states differ", a 1-edge "they are
    equal"; transitivity of equality around a cycle forbids exactly one
    disagreement.  Brute force over 2^|E| assignments, so |E| <= 20.
    """
    m = len(graph.edges)
    if m > MAX_ENUMERABLE_EDGES:
        raise ValueError(
            f"classical_vertices supports at most {MAX_ENUMERABLE_EDGES} edges, got {m}"
        )
    count = 1 << m
    codes = np.arange(count, dtype=np.int64)[:, None]
    shifts = np.arange(m - 1, -1, -1, dtype=np.int64)[None, :]
    assignments = ((codes >> shifts) & 1).astype(np.int8)
    index = graph.edge_index()
    keep = np.ones(count, dtype=bool)
    for cycle in enumerate_cycles(graph):
        cols = [index[e] for e in cycle]
        zeros = (assignments[:, cols] == 0).sum(axis=1)
        keep &= zeros != 1
    return VertexSet(edges=graph.edges, assignments=assignments[keep])


class EdgeWeights:
    """Edge -> overlap mapping with values in [0, 1] (1e-12 slack)."""

    __slots__ = ("_weights",)

    def __init__(self, weights):
        normalized = {}
        for edge, value in dict(weights).items():
            e = _normalize_edge(edge)
            if e in normalized:
                raise ValueError(f"duplicate weight for edge {e}")
            value = float(value)
            if not -1e-12 <= value <= 1.0 + 1e-12:
                raise ValueError(f"weight {value!r} for edge {e} outside [0, 1]")
            normalized[e] = value
        self._weights = dict(sorted(normalized.items()))

    @classmethod
    def from_vector(cls, edges, values):
        if len(edges) != len(values):
            raise ValueError("edges and values must have equal length")
        return cls(dict(zip(edges, values)))

    def __getitem__(self, edge):
        e = _normalize_edge(edge)
        try:
            return self._weights[e]
        except KeyError:
            raise ValueError(f"no weight for edge {e}") from None

    def __contains__(self, edge):
        return _normalize_edge(edge) in self._weights

    def __len__(self):
        return len(self._weights)

    def items(self):
        """(edge, weight) pairs in lexicographic edge order."""
        return list(self._weights.items())

    def edges(self):
        return tuple(self._weights)

    def vector(self, edges):
        """Weights as an array following the given edge order."""
        return np.array([self[e] for e in edges], dtype=float)

    def __repr__(self):
        inner = ", ".join(f"{i}-{j}: {w:g}" for (i, j), w in self._weights.items())
        return f"EdgeWeights({{{inner}}})"


@dataclass(frozen=True)
class LinearFunctional:
    """A linear form sum_e c_e r_e with classical bound s."""

    coefficients: Dict[Edge, float]
    bound: float
    name: str = ""

    def __init__(self, coefficients, bound, name=""):
        coeffs = {}
        for edge, c in dict(coefficients).items():
            coeffs[_normalize_edge(edge)] = float(c)
        if not any(c != 0.0 for c in coeffs.values()):
            raise ValueError("functional needs at least one nonzero coefficient")
        object.__setattr__(self, "coefficients", dict(sorted(coeffs.items())))
        object.__setattr__(self, "bound", float(bound))
        object.__setattr__(self, "name", str(name))

    def infinity_norm(self):
        """Largest absolute coefficient."""
        return max(abs(c) for c in self.coefficients.values())


class Evaluation(NamedTuple):
    value: float
    violation: float


def evaluate(functional, weights) -> Evaluation:
    """Value sum_e c_e r_e and its excess over the bound (clipped at 0)."""
    value = 0.0
    for edge, coeff in functional.coefficients.items():
        if edge not in weights:
            raise ValueError(f"evaluate: weights missing edge {edge}")
        value += coeff * weights[edge]
    return Evaluation(value=value, violation=max(0.0, value - functional.bound))


def three_cycle_functionals():
    """The three facets of the C_3 assignment polytope, bound 1 each.

    Sign patterns over edges ((1,2), (1,3), (2,3)): (+,+,-), (+,-,+),
    (-,+,+).  Exactly one 0-edge among three equal-states edges is the
    forbidden pattern each of these detects.
    """
    e12, e13, e23 = (1, 2), (1, 3), (2, 3)
    return [
        LinearFunctional({e12: 1.0, e13: 1.0, e23: -1.0}, 1.0, name="c3:-r23"),
        LinearFunctional({e12: 1.0, e13: -1.0, e23: 1.0}, 1.0, name="c3:-r13"),
        LinearFunctional({e12: -1.0, e13: 1.0, e23: 1.0}, 1.0, name="c3:-r12"),
    ]


def n_cycle_functional(n, negated_edge):
    """-r_e' + sum of the other C_n edge weights, bound n - 2."""
    n = int(n)
    if n < 3:
        raise ValueError("n-cycle functionals need n >= 3")
    graph = cycle_graph(n)
    e_neg = _normalize_edge(negated_edge)
    if e_neg not in graph.edges:
        raise ValueError(f"edge {e_neg} is not an edge of C_{n}")
    coefficients = {e: (-1.0 if e == e_neg else 1.0) for e in graph.edges}
    return LinearFunctional(coefficients, float(n - 2), name=f"c{n}:-r{e_neg[0]}{e_neg[1]}")


def k5_functional():
    """Pentagon-minus-pentagram functional on K_5, bound 2.

    +1 on the outer 5-cycle (1,2),(2,3),(3,4),(4,5),(1,5) and -1 on the
    pentagram diagonals.  Five equal-angle equator qubit states with phases
    2 pi k / 5 push it to 5*sqrt(5)/4, about 0.795 above the bound.
    """
    plus = [(1, 2), (2, 3), (3, 4), (4, 5), (1, 5)]
    minus = [(1, 3), (1, 4), (2, 4), (2, 5), (3, 5)]
    coefficients = {e: 1.0 for e in plus}
    coefficients.update({e: -1.0 for e in minus})
    return LinearFunctional(coefficients, 2.0, name="k5:pentagram")


def robust_bound(functional, epsilons):
    """Noise-robust bound s + sum(epsilons), one epsilon per vertex involved."""
    epsilons = [float(x) for x in epsilons]
    if any(x < 0 for x in epsilons):
        raise ValueError("robust_bound: epsilons must be nonnegative")
    return functional.bound + sum(epsilons)


def cycle_functionals(graph):
    """Every n-cycle functional of the graph: one per (cycle, negated edge).

    For each simple cycle of length n, the n functionals -r_e' + sum r_e
    over that cycle's edges with bound n - 2.
    """
    functionals = []
    for cycle in enumerate_cycles(graph):
        n = len(cycle)
        walk = _cycle_walk(cycle)
        for negated in cycle:
            coefficients = {e: (-1.0 if e == negated else 1.0) for e in cycle}
            functionals.append(
                LinearFunctional(
                    coefficients,
                    float(n - 2),
                    name=f"c{n}({walk}):-r{negated[0]}-{negated[1]}",
                )
            )
    return functionals


def _cycle_walk(cycle):
    """Render a cycle's edges as the canonical vertex walk '1-2-3'."""
    adjacency = {}
    for i, j in cycle:
        adjacency.setdefault(i, []).append(j)
        adjacency.setdefault(j, []).append(i)
    start = min(adjacency)
    path = [start, min(adjacency[start])]
    while len(path) < len(cycle):
        a, b = adjacency[path[-1]]
        path.append(b if a == path[-2] else a)
    return "-".join(str(v) for v in path)


def named_functionals(graph):
    """All cycle functionals, plus the pentagram functional when G = K_5."""
    functionals = cycle_functionals(graph)
    if graph.vertex_count == 5 and len(graph.edges) == 10:
        functionals.append(k5_functional())
    return functionals


def overlaps_from_states(graph, states) -> EdgeWeights:
    """Edge weights r_ij = Tr(rho_i rho_j) from per-vertex states.

    ``states`` maps each vertex to a DensityOperator or a PureState
    (pure pairs short-circuit to |<a|b>|^2).
    """
    for v in range(1, graph.vertex_count + 1):
        if v not in states:
            raise ValueError(f"overlaps_from_states: missing state for vertex {v}")
    weights = {}
    for i, j in graph.edges:
        a, b = states[i], states[j]
        if isinstance(a, PureState) and isinstance(b, PureState):
            weights[(i, j)] = overlap_pure(a, b)
        else:
            if isinstance(a, PureState):
                a = a.density()
            if isinstance(b, PureState):
                b = b.density()
            weights[(i, j)] = overlap_density(a, b)
    return EdgeWeights(weights)


def graph_from_document(doc) -> EventGraph:
    """Build a graph from {"vertices": n, "edges": [[i, j], ...]}.

    "vertices" is a count, or equivalently the explicit list [1, ..., n].
    """
    try:
        vertices = doc["vertices"]
        edges = doc["edges"]
    except (TypeError, KeyError) as exc:
        raise ValueError(f"graph document needs 'vertices' and 'edges' fields: {exc}") from exc
    if isinstance(vertices, (list, tuple)):
        ids = sorted(int(v) for v in vertices)
        if ids != list(range(1, len(ids) + 1)):
            raise ValueError("vertex list must be exactly 1..n")
        vertices = len(ids)
    try:
        return EventGraph(vertices, [tuple(e) for e in edges])
    except TypeError as exc:
        raise ValueError(f"malformed graph document: {exc}") from exc


def weights_from_document(doc, graph) -> EdgeWeights:
    """Parse weights keyed "i-j" (i < j), requiring exactly the graph's edges."""
    parsed = {}
    for key, value in dict(doc).items():
        parts = str(key).split("-")
        if len(parts) != 2:
            raise ValueError(f"weight key {key!r} is not of the form 'i-j'")
        try:
            edge = _normalize_edge((int(parts[0]), int(parts[1])))
        except ValueError as exc:
            raise ValueError(f"weight key {key!r}: {exc}") from exc
        parsed[edge] = value
    missing = [e for e in graph.edges if e not in parsed]
    if missing:
        raise ValueError(f"weights missing edges {missing}")
    extra = [e for e in parsed if e not in graph.edges]
    if extra:
        raise ValueError(f"weights cover non-edges {extra}")
    return EdgeWeights(parsed)
