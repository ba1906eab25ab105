"""Vectorized parameter scans and the named figure presets.

The state-level functions in ``optics`` evaluate one parameter point at a
time.  Dense grids (10^6 - 10^7 points) instead use the closed amplitude
algebra below, which is asserted equal to the state-level path at 1e-12 in
the test suite:

    h(theta, phi)  = 2 c - c^2 - (1-c)^2 - 2 c (1-c) cos(phi),  c = cos^2(theta)

and the general-input analogue decomposes as
T0(theta) + Tc(theta) cos(phi) + Ts(theta) sin(phi), so a full
(theta, phi) grid costs two outer products.

Presets (CLI names):

* ``fig4-symmetric`` - h along the symmetric-splitter line theta1 = pi/4;
  never exceeds 1.
* ``fig4-max`` - h along cos^2(theta1) = 3/4 (theta1 = pi/6), which carries
  the global maximum 5/4 at phi1 = pi.
* ``fig5c`` - the general-input functional h1 at input (theta0, phi0) =
  (pi/4, pi/2 + pi/150) over cells of [0, pi] x [0.05, pi - 0.09],
  evaluated at cell centers; every cell violates.  (At theta1 in {0, pi}
  exactly, the stage splitter is +/- identity and h1 = 1 identically, so
  the open violation region must be sampled off that boundary.)
* ``fig3b`` - three states (theta fixed to pi/4, pi/3, pi; third phase
  fixed to 2 pi) scanned over their two free phases against all three
  3-cycle functionals.
* ``fig3c`` - five equal-splitter states, phases (0, phi2, phi3, 4 pi/5,
  pi/3), scanned over (phi2, phi3) against the pentagram functional.  The
  fifth phase is the one held at pi/3: among the three possible choices it
  is the one that lets the scan reach large violations (~0.78 vs <= 0.14).
* ``k5-equator`` - the five-state preset with phases 2 pi k/5, evaluated
  exactly once (pentagram value 5 sqrt(5)/4).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np

from .eventgraph import complete_graph, evaluate, k5_functional, overlaps_from_states
from .optics import prepare

SCAN_H_PRESETS = ("fig4-symmetric", "fig4-max", "fig5c")
PARALLEL_PRESETS = ("fig3b", "fig3c", "k5-equator")


@dataclass(frozen=True)
class ScanResult:
    """A finished scan: column names, row-major data, and summary facts."""

    columns: Tuple[str, ...]
    rows: np.ndarray
    summary: dict

    def __post_init__(self):
        rows = np.asarray(self.rows, dtype=float)
        if rows.ndim != 2 or rows.shape[1] != len(self.columns):
            raise ValueError("rows must be (n, len(columns))")
        rows.setflags(write=False)
        object.__setattr__(self, "rows", rows)


def grid_points(start, stop, step):
    """Uniform grid start, start+step, ... capped at stop (inclusive)."""
    start, stop, step = float(start), float(stop), float(step)
    if step <= 0:
        raise ValueError("step must be positive")
    if stop < start:
        raise ValueError("empty range")
    count = int(math.floor((stop - start) / step + 1e-9)) + 1
    return start + step * np.arange(count)


def cell_centers(start, stop, step):
    """Centers of the step-sized cells partitioning [start, stop]."""
    start, stop, step = float(start), float(stop), float(step)
    if step <= 0:
        raise ValueError("step must be positive")
    count = int(math.floor((stop - start) / step + 1e-9))
    if count < 1:
        raise ValueError("range shorter than one cell")
    return start + step * (np.arange(count) + 0.5)


def h_values(theta1, phi1):
    """Elementwise (broadcasting) sequential-triple functional h."""
    theta1 = np.asarray(theta1, dtype=float)
    phi1 = np.asarray(phi1, dtype=float)
    c = np.cos(theta1) ** 2
    return 2.0 * c - c**2 - (1.0 - c) ** 2 - 2.0 * c * (1.0 - c) * np.cos(phi1)


def h_grid(theta1_values, phi1_values):
    """h on the outer grid (len(theta1), len(phi1)) via two outer products."""
    c = np.cos(np.asarray(theta1_values, dtype=float)) ** 2
    base = 2.0 * c - c**2 - (1.0 - c) ** 2
    coef = 2.0 * c * (1.0 - c)
    return base[:, None] - coef[:, None] * np.cos(np.asarray(phi1_values, dtype=float))[None, :]


def h1_grid(theta0, phi0, theta1_values, phi1_values):
    """General-input functional h1 on the outer (theta1, phi1) grid.

    Amplitudes of the input state are folded into theta1-only terms; phi1
    enters only through cos/sin, so the grid is assembled from outer
    products just like ``h_grid``.
    """
    theta0, phi0 = float(theta0), float(phi0)
    theta1_values = np.asarray(theta1_values, dtype=float)
    phi1_values = np.asarray(phi1_values, dtype=float)
    a = math.cos(theta0)
    b = 1j * np.exp(1j * phi0) * math.sin(theta0)
    c1, s1 = np.cos(theta1_values), np.sin(theta1_values)
    u = c1 * a + 1j * s1 * b
    v = 1j * s1 * a + c1 * b
    x = np.conj(a) * u
    y = np.conj(b) * v
    p = np.conj(x) * y
    r12 = np.abs(x + y) ** 2
    u2, v2 = np.abs(u) ** 2, np.abs(v) ** 2
    base = r12 + np.abs(x) ** 2 + np.abs(y) ** 2 - u2**2 - v2**2
    coef_cos = 2.0 * p.real - 2.0 * u2 * v2
    coef_sin = -2.0 * p.imag
    return (
        base[:, None]
        + coef_cos[:, None] * np.cos(phi1_values)[None, :]
        + coef_sin[:, None] * np.sin(phi1_values)[None, :]
    )


def overlap_equator(theta_a, phi_a, theta_b, phi_b):
    """|<psi(ta, pa)|psi(tb, pb)>|^2, broadcasting over any argument.

    Closed form of the state overlap for the preparation family
    exp(i phi) cos(theta)|0> + i sin(theta)|1>.
    """
    theta_a, phi_a = np.asarray(theta_a, float), np.asarray(phi_a, float)
    theta_b, phi_b = np.asarray(theta_b, float), np.asarray(phi_b, float)
    ca, sa = np.cos(theta_a), np.sin(theta_a)
    cb, sb = np.cos(theta_b), np.sin(theta_b)
    return (ca * cb) ** 2 + (sa * sb) ** 2 + 2.0 * ca * cb * sa * sb * np.cos(phi_b - phi_a)


def _axis_values(axis, step, centered=False):
    if isinstance(axis, (tuple, list)):
        start, stop = axis
        if centered:
            return cell_centers(start, stop, step)
        return grid_points(start, stop, step)
    return np.array([float(axis)])


def _tabulate(theta_values, phi_values, surface, extra, value_name, bound):
    n_t, n_p = len(theta_values), len(phi_values)
    flat = surface.reshape(-1)
    violation = np.maximum(flat - bound, 0.0)
    theta_col = np.repeat(theta_values, n_p)
    phi_col = np.tile(phi_values, n_t)
    columns = ["theta1", "phi1"]
    data = [theta_col, phi_col]
    for name, value in extra:
        columns.append(name)
        data.append(np.full(flat.shape, value))
    columns += [value_name, "violation"]
    data += [flat, violation]
    best = int(np.argmax(flat))
    summary = {
        "points": int(flat.size),
        "bound": float(bound),
        f"max_{value_name}": float(flat[best]),
        "argmax_theta1": float(theta_col[best]),
        "argmax_phi1": float(phi_col[best]),
        "max_violation": float(violation[best]),
        "violating_fraction": float(np.count_nonzero(violation > 0.0) / flat.size),
    }
    return ScanResult(columns=tuple(columns), rows=np.column_stack(data), summary=summary)


def scan_h(theta1, phi1, step, theta0=None, phi0=None, centered=False):
    """Tabulate h (or h1 when an input state is given) over a grid.

    ``theta1``/``phi1`` are fixed angles or (start, stop) ranges sharing
    ``step``; rows are emitted in row-major (theta1-major) order.  Passing
    ``theta0``/``phi0`` switches to the general-input functional and adds
    the two constant columns.  ``centered=True`` samples cell centers
    instead of lattice points.
    """
    if (theta0 is None) != (phi0 is None):
        raise ValueError("theta0 and phi0 must be given together")
    theta_values = _axis_values(theta1, step, centered)
    phi_values = _axis_values(phi1, step, centered)
    if theta0 is None:
        surface = h_grid(theta_values, phi_values)
        extra = []
    else:
        surface = h1_grid(theta0, phi0, theta_values, phi_values)
        extra = [("theta0", float(theta0)), ("phi0", float(phi0))]
    return _tabulate(theta_values, phi_values, surface, extra, "h", 1.0)


def scan_h_preset(name, step=None):
    """Run one of the named h-scan presets (see module docstring)."""
    if name == "fig4-symmetric":
        result = scan_h(math.pi / 4, (0.0, 2.0 * math.pi), step or 1e-3)
    elif name == "fig4-max":
        result = scan_h(math.pi / 6, (0.0, 2.0 * math.pi), step or 1e-3)
    elif name == "fig5c":
        result = scan_h(
            (0.0, math.pi),
            (0.05, math.pi - 0.09),
            step or 0.01,
            theta0=math.pi / 4,
            phi0=math.pi / 2 + math.pi / 150,
            centered=True,
        )
    else:
        raise ValueError(f"unknown scan-h preset {name!r}; choose from {SCAN_H_PRESETS}")
    result.summary["preset"] = name
    return result


def _parallel_three_state(step):
    phi = grid_points(0.0, 2.0 * math.pi, step)
    p1 = phi[:, None]
    p2 = phi[None, :]
    r12 = overlap_equator(math.pi / 4, p1, math.pi / 3, p2)
    r13 = overlap_equator(math.pi / 4, p1, math.pi, 2.0 * math.pi)
    r23 = overlap_equator(math.pi / 3, p2, math.pi, 2.0 * math.pi)
    candidates = np.stack(
        [r12 + r13 - r23, r12 - r13 + r23, -r12 + r13 + r23]
    )
    surface = candidates.max(axis=0)
    n = len(phi)
    flat = surface.reshape(-1)
    violation = np.maximum(flat - 1.0, 0.0)
    rows = np.column_stack([np.repeat(phi, n), np.tile(phi, n), flat, violation])
    best = int(np.argmax(flat))
    summary = {
        "points": int(flat.size),
        "bound": 1.0,
        "max_value": float(flat[best]),
        "argmax_phi1": float(rows[best, 0]),
        "argmax_phi2": float(rows[best, 1]),
        "max_violation": float(violation[best]),
        "violating_fraction": float(np.count_nonzero(violation > 0.0) / flat.size),
    }
    return ScanResult(("phi1", "phi2", "value", "violation"), rows, summary)


def _parallel_five_state(step):
    phi = grid_points(0.0, 2.0 * math.pi, step)
    fixed = {1: 0.0, 4: 4.0 * math.pi / 5.0, 5: math.pi / 3.0}
    p = {
        1: fixed[1],
        2: phi[:, None],
        3: phi[None, :],
        4: fixed[4],
        5: fixed[5],
    }
    functional = k5_functional()
    surface = 0.0
    for (i, j), coeff in functional.coefficients.items():
        surface = surface + coeff * overlap_equator(math.pi / 4, p[i], math.pi / 4, p[j])
    surface = np.broadcast_to(surface, (len(phi), len(phi)))
    flat = surface.reshape(-1)
    violation = np.maximum(flat - functional.bound, 0.0)
    n = len(phi)
    rows = np.column_stack([np.repeat(phi, n), np.tile(phi, n), flat, violation])
    best = int(np.argmax(flat))
    summary = {
        "points": int(flat.size),
        "bound": functional.bound,
        "max_value": float(flat[best]),
        "argmax_phi2": float(rows[best, 0]),
        "argmax_phi3": float(rows[best, 1]),
        "max_violation": float(violation[best]),
        "violating_fraction": float(np.count_nonzero(violation > 0.0) / flat.size),
        "fixed_phases": {"phi1": fixed[1], "phi4": fixed[4], "phi5": fixed[5]},
    }
    return ScanResult(("phi2", "phi3", "value", "violation"), rows, summary)


def k5_equator_states():
    """The five equal-splitter states with phases 2 pi k / 5, k = 0..4."""
    return {k + 1: prepare(math.pi / 4, 2.0 * math.pi * k / 5.0) for k in range(5)}


def _k5_equator():
    functional = k5_functional()
    weights = overlaps_from_states(complete_graph(5), k5_equator_states())
    value, violation = evaluate(functional, weights)
    rows = np.array([[value, violation]])
    summary = {
        "points": 1,
        "bound": functional.bound,
        "max_value": float(value),
        "max_violation": float(violation),
        "weights": {f"{i}-{j}": w for (i, j), w in weights.items()},
    }
    return ScanResult(("value", "violation"), rows, summary)


def parallel_preset(name, step=None):
    """Run one of the named parallel-setting presets."""
    if name == "fig3b":
        result = _parallel_three_state(step or 0.02)
    elif name == "fig3c":
        result = _parallel_five_state(step or 0.02)
    elif name == "k5-equator":
        result = _k5_equator()
    else:
        raise ValueError(f"unknown parallel preset {name!r}; choose from {PARALLEL_PRESETS}")
    result.summary["preset"] = name
    return result
