"""Membership and L1 distance for the polytope of classical overlap vectors.

The polytope is the convex hull of the 0/1 assignments enumerated by
``eventgraph.classical_vertices``.  Membership of a weight vector r is a
pure feasibility question (does a convex combination of vertices hit r?);
the L1 distance min ||r - r*||_1 over the polytope quantifies how far
outside r lies, and any inequality violation divided by the functional's
largest coefficient is a certified lower bound on that distance.

Both queries are small dense linear programs (at most a few hundred
vertices over at most 20 coordinates), solved by an in-repo two-phase
simplex with Bland's anti-cycling rule.  No external solver is involved.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .eventgraph import EdgeWeights, evaluate

#: feasibility tolerance for the simplex (phase-1 optimum below this = feasible)
FEASIBILITY_TOL = 1e-9


class SimplexError(RuntimeError):
    """The solver failed to converge or met inconsistent arithmetic."""


class _Infeasible(SimplexError):
    """Phase 1 ended with positive infeasibility (no feasible point)."""


def _pivot(tableau, basis, row, col):
    tableau[row] /= tableau[row, col]
    for i in range(tableau.shape[0]):
        if i != row and tableau[i, col] != 0.0:
            tableau[i] -= tableau[i, col] * tableau[row]
    basis[row] = col


def _run_simplex(tableau, basis, num_vars, tol):
    """Minimize the objective in the last tableau row over columns < num_vars.

    Bland's rule throughout: entering column = lowest index with reduced
    cost < -tol; leaving row = lowest basic-variable index among the
    minimum-ratio rows.  Guaranteed to terminate; the iteration cap only
    guards against arithmetic corruption.
    """
    m = tableau.shape[0] - 1
    max_iter = 5000 + 200 * (m + num_vars)
    for _ in range(max_iter):
        reduced = tableau[-1, :num_vars]
        entering = -1
        for j in range(num_vars):
            if reduced[j] < -tol:
                entering = j
                break
        if entering < 0:
            return
        column = tableau[:m, entering]
        ratios = np.full(m, np.inf)
        positive = column > tol
        ratios[positive] = tableau[:m, -1][positive] / column[positive]
        best = ratios.min()
        if not np.isfinite(best):
            raise SimplexError("objective unbounded below (malformed program)")
        candidates = np.nonzero(ratios <= best + tol)[0]
        leaving = min(candidates, key=lambda i: basis[i])
        _pivot(tableau, basis, leaving, entering)
    raise SimplexError(
        f"no convergence after {max_iter} pivots "
        f"(m={m}, n={num_vars}); the program is likely ill-conditioned"
    )


def solve_equality_lp(c, A, b, tol=FEASIBILITY_TOL):
    """Minimize c.x subject to A x = b, x >= 0 (dense two-phase simplex).

    Returns (x, objective).  Raises ``SimplexError`` when no feasible
    point exists, on an unbounded objective, or on solver failure.
    """
    A = np.asarray(A, dtype=float)
    b = np.asarray(b, dtype=float).copy()
    c = np.asarray(c, dtype=float)
    m, n = A.shape
    A = A.copy()
    flip = b < 0
    A[flip] *= -1.0
    b[flip] *= -1.0

    # Phase 1: artificial basis, minimize total infeasibility.
    tableau = np.zeros((m + 1, n + m + 1))
    tableau[:m, :n] = A
    tableau[:m, n : n + m] = np.eye(m)
    tableau[:m, -1] = b
    tableau[-1, n : n + m] = 1.0
    basis = [n + i for i in range(m)]
    for i in range(m):
        tableau[-1] -= tableau[i]
    _run_simplex(tableau, basis, n + m, tol)
    infeasibility = -tableau[-1, -1]
    if infeasibility > tol:
        raise _Infeasible(infeasibility)

    # Drive leftover artificials out of the basis; drop redundant rows.
    keep_rows = []
    for i in range(m):
        if basis[i] >= n:
            pivot_col = -1
            for j in range(n):
                if abs(tableau[i, j]) > tol:
                    pivot_col = j
                    break
            if pivot_col >= 0:
                _pivot(tableau, basis, i, pivot_col)
                keep_rows.append(i)
            # else: redundant constraint row, dropped below
        else:
            keep_rows.append(i)
    rows = keep_rows + [m]
    tableau = tableau[rows][:, list(range(n)) + [n + m]]
    basis = [basis[i] for i in keep_rows]

    # Phase 2: original objective expressed over the current basis.
    tableau[-1, :] = 0.0
    tableau[-1, :n] = c
    for i, var in enumerate(basis):
        if tableau[-1, var] != 0.0:
            tableau[-1] -= tableau[-1, var] * tableau[i]
    _run_simplex(tableau, basis, n, tol)

    x = np.zeros(n)
    for i, var in enumerate(basis):
        x[var] = tableau[i, -1]
    x[np.abs(x) < tol] = 0.0
    return x, float(c @ x)


@dataclass(frozen=True)
class MembershipResult:
    """Outcome of a polytope membership query.

    ``certificate`` gives convex coefficients over the vertex set rows when
    the point is inside; ``max_violation_found`` is the largest violation
    among the functionals supplied to the query when it is outside.
    """

    inside: bool
    certificate: Optional[np.ndarray] = None
    max_violation_found: Optional[float] = None


@dataclass(frozen=True)
class DistanceResult:
    """L1 distance to the polytope and the minimizing point."""

    distance: float
    nearest_point: EdgeWeights
    coefficients: Optional[np.ndarray] = None


def _query_vector(r, vertex_set):
    if isinstance(r, EdgeWeights):
        return r.vector(vertex_set.edges)
    vec = np.asarray(r, dtype=float)
    if vec.shape != (len(vertex_set.edges),):
        raise ValueError(
            f"weight vector of length {vec.size} does not match {len(vertex_set.edges)} edges"
        )
    return vec


def _as_edge_weights(r, vertex_set):
    if isinstance(r, EdgeWeights):
        return r
    return EdgeWeights.from_vector(vertex_set.edges, np.asarray(r, dtype=float))


def _unique_vertices(vertex_set):
    vertices = np.asarray(vertex_set.as_array(), dtype=float)
    if vertices.shape[0] < 1:
        raise ValueError("vertex set is empty")
    _, representative = np.unique(vertices, axis=0, return_index=True)
    representative.sort()
    return vertices[representative], representative, vertices.shape[0]


def membership(r, vertex_set, functionals=None):
    """Decide whether r lies in the convex hull of the assignment vertices.

    Feasibility LP: alpha >= 0, sum alpha = 1, V^T alpha = r (tolerance
    1e-9).  Duplicate vertices are merged before solving; the returned
    certificate is indexed over the original rows.
    """
    target = _query_vector(r, vertex_set)
    vertices, representative, total = _unique_vertices(vertex_set)
    k, m = vertices.shape
    A = np.vstack([vertices.T, np.ones((1, k))])
    b = np.concatenate([target, [1.0]])
    try:
        x, _ = solve_equality_lp(np.zeros(k), A, b)
    except _Infeasible:
        worst = None
        if functionals:
            weights = _as_edge_weights(r, vertex_set)
            worst = max(evaluate(f, weights).violation for f in functionals)
        return MembershipResult(inside=False, max_violation_found=worst)
    certificate = np.zeros(total)
    certificate[representative] = x[:k]
    return MembershipResult(inside=True, certificate=certificate)


def l1_distance(r, vertex_set):
    """min ||r - r*||_1 over the polytope, with the minimizing point.

    LP over (alpha, t, slack+, slack-): minimize sum t subject to
    -t <= r - V^T alpha <= t, alpha in the probability simplex.
    """
    target = _query_vector(r, vertex_set)
    vertices, representative, total = _unique_vertices(vertex_set)
    k, m = vertices.shape
    n = k + 3 * m
    A = np.zeros((2 * m + 1, n))
    b = np.zeros(2 * m + 1)
    # V^T alpha - t + s_plus = r
    A[:m, :k] = vertices.T
    A[:m, k : k + m] = -np.eye(m)
    A[:m, k + m : k + 2 * m] = np.eye(m)
    b[:m] = target
    # -V^T alpha - t + s_minus = -r
    A[m : 2 * m, :k] = -vertices.T
    A[m : 2 * m, k : k + m] = -np.eye(m)
    A[m : 2 * m, k + 2 * m :] = np.eye(m)
    b[m : 2 * m] = -target
    A[2 * m, :k] = 1.0
    b[2 * m] = 1.0
    cost = np.zeros(n)
    cost[k : k + m] = 1.0
    try:
        x, objective = solve_equality_lp(cost, A, b)
    except _Infeasible as exc:  # simplex constraints are always satisfiable here
        raise SimplexError(f"distance LP reported infeasible ({exc})") from exc
    alpha = x[:k]
    nearest_vec = vertices.T @ alpha
    coefficients = np.zeros(total)
    coefficients[representative] = alpha
    nearest = EdgeWeights.from_vector(
        vertex_set.edges, np.clip(nearest_vec, 0.0, 1.0)
    )
    return DistanceResult(
        distance=max(objective, 0.0), nearest_point=nearest, coefficients=coefficients
    )


def violation_lower_bound(functional, weights):
    """Certified L1-distance lower bound from one inequality violation.

    (f(r) - s) / max_e |c_e| when f(r) exceeds the bound s, else 0.
    """
    value = evaluate(functional, weights).value
    if value <= functional.bound:
        return 0.0
    return (value - functional.bound) / functional.infinity_norm()
