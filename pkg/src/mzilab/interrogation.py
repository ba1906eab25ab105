"""Interaction-free object detection in an MZI (bomb-testing task).

A photosensitive object sits in mode b of an interferometer whose first
beam splitter has angle theta.  Writing r = cos^2(theta) for the overlap
between the split state and the input |0>:

* the photon triggers the object with probability p_bomb = 1 - r;
* otherwise its state collapses onto mode a, the second (inverse) beam
  splitter re-splits it, and the mode-b detector - dark when no object is
  present - clicks with probability 1 - r, heralding detection without
  interaction (p_succ = r(1-r)).

The figure of merit is eta = p_succ / (p_succ + p_bomb) = r / (r + 1).
Any model in which operationally indistinguishable preparations share an
ontological description caps the efficiency at
eta_NC(r) = (1 + (2r-1)^2) / (2(r+1)); quantum mechanics beats that cap
for every r in (1/2, 1), by at most 7 - 4*sqrt(3) ~ 0.0718 at
r = sqrt(3) - 1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .optics import beam_splitter
from .qstate import apply, basis


def _check_unit_interval(value, name):
    value = float(value)
    if not 0.0 <= value <= 1.0:
        raise ValueError(f"{name} must lie in [0, 1], got {value!r}")
    return value


def interrogation_triple(theta):
    """The three preparations whose confusabilities drive the task bound.

    (|0>, U_theta |0>, U_theta^dagger |0>): the input state, the split
    state, and the time-reversed split state.  Their pairwise overlaps are
    (r, r, (2r-1)^2) with r = cos^2(theta).
    """
    return (
        basis(0),
        apply(beam_splitter(theta), basis(0)),
        apply(beam_splitter(-theta), basis(0)),
    )


def efficiency_raw(r_theta0, r_theta1, r_theta_dag1):
    """Efficiency from raw confusabilities, exactly as the quotient

        r_theta0 * r_theta_dag1 / (r_theta0 * r_theta_dag1 + r_theta1).

    Raises on a vanishing denominator (no superposition: the task never
    produces a decisive event).
    """
    r0 = _check_unit_interval(r_theta0, "r_theta0")
    r1 = _check_unit_interval(r_theta1, "r_theta1")
    rd1 = _check_unit_interval(r_theta_dag1, "r_theta_dag1")
    denominator = r0 * rd1 + r1
    if denominator <= 0.0:
        raise ValueError(
            "efficiency_raw: degenerate input (denominator 0; the interferometer "
            "never splits the photon)"
        )
    return r0 * rd1 / denominator


def efficiency(r_theta0):
    """Quantum efficiency r / (r + 1) as a function of r = cos^2(theta).

    Monotone increasing from 0 to 1/2; the r = 1 endpoint is the continuous
    extension of the raw 0/0 expression.
    """
    r = _check_unit_interval(r_theta0, "r_theta0")
    return r / (r + 1.0)


def nc_bound(r_theta0):
    """Largest efficiency compatible with a noncontextual model.

    (1 + (2r-1)^2) / (2(r+1)); meets the quantum curve at r = 1/2 (both
    1/3) and r = 1 (both 1/2) and lies strictly below it in between.
    """
    r = _check_unit_interval(r_theta0, "r_theta0")
    return (1.0 + (2.0 * r - 1.0) ** 2) / (2.0 * (r + 1.0))


@dataclass(frozen=True)
class InterrogationReport:
    """Analytic task summary at a single working point."""

    r_theta0: float
    p_succ: float
    p_bomb: float
    eta: float
    eta_nc: float
    gap: float


def analytic_report(r_theta0):
    """InterrogationReport at overlap r: probabilities, efficiencies, gap."""
    r = _check_unit_interval(r_theta0, "r_theta0")
    eta = efficiency(r)
    eta_nc = nc_bound(r)
    return InterrogationReport(
        r_theta0=r,
        p_succ=r * (1.0 - r),
        p_bomb=1.0 - r,
        eta=eta,
        eta_nc=eta_nc,
        gap=eta - eta_nc,
    )


@dataclass(frozen=True)
class AdvantageScan:
    """Gap table over r in [0, 1]: columns (r, eta, eta_nc, gap)."""

    max_gap: float
    argmax_r: float
    table: np.ndarray

    def __post_init__(self):
        self.table.setflags(write=False)


def advantage_scan(grid_step):
    """Tabulate eta, eta_NC and their gap on a uniform r grid.

    ``grid_step`` must be in (0, 0.01]; the grid runs from 0 to 1 inclusive
    with round(1/grid_step) intervals.  Returns the maximal gap, its first
    grid location, and the full table.
    """
    grid_step = float(grid_step)
    if not 0.0 < grid_step <= 0.01:
        raise ValueError(f"grid_step must be in (0, 0.01], got {grid_step!r}")
    n = int(round(1.0 / grid_step))
    r = np.linspace(0.0, 1.0, n + 1)
    eta = r / (r + 1.0)
    eta_nc = (1.0 + (2.0 * r - 1.0) ** 2) / (2.0 * (r + 1.0))
    gap = eta - eta_nc
    table = np.column_stack([r, eta, eta_nc, gap])
    best = int(np.argmax(gap))
    return AdvantageScan(max_gap=float(gap[best]), argmax_r=float(r[best]), table=table)


@dataclass(frozen=True)
class McInterrogationReport:
    """Monte-Carlo estimate of the task statistics at one theta.

    ``degenerate`` flags runs with no decisive events (no object triggers
    and no dark-port clicks), where the efficiency estimate is undefined.
    """

    theta: float
    trials: int
    seed: int
    n_bomb: int
    n_succ: int
    p_bomb: float
    p_succ: float
    eta: float
    se_eta: float
    se_p_bomb: float
    se_p_succ: float
    degenerate: bool


def simulate(theta, trials, seed):
    """Simulate the interrogation protocol trial by trial.

    Each trial sends one photon into an interferometer with an active
    object in mode b: with probability sin^2(theta) the photon hits the
    object (counted in ``n_bomb``); otherwise the state collapses to |0>,
    traverses the inverse beam splitter, and the dark-port detector clicks
    with probability sin^2(theta) (counted in ``n_succ``).  Standard errors
    are binomial; the generator is numpy's default (PCG64), so results are
    reproducible from the seed.
    """
    theta = float(theta)
    if not math.isfinite(theta):
        raise ValueError("theta must be finite")
    trials = int(trials)
    if trials < 1:
        raise ValueError(f"trials must be >= 1, got {trials}")
    seed = int(seed)
    p_split = math.sin(theta) ** 2
    rng = np.random.default_rng(seed)
    hit_object = rng.random(trials) < p_split
    dark_click = rng.random(trials) < p_split
    n_bomb = int(np.count_nonzero(hit_object))
    n_succ = int(np.count_nonzero(~hit_object & dark_click))
    p_bomb_hat = n_bomb / trials
    p_succ_hat = n_succ / trials
    decisive = n_bomb + n_succ
    if decisive == 0:
        eta_hat, se_eta = float("nan"), float("nan")
        degenerate = True
    else:
        eta_hat = n_succ / decisive
        se_eta = math.sqrt(max(eta_hat * (1.0 - eta_hat), 0.0) / decisive)
        degenerate = False
    return McInterrogationReport(
        theta=theta,
        trials=trials,
        seed=seed,
        n_bomb=n_bomb,
        n_succ=n_succ,
        p_bomb=p_bomb_hat,
        p_succ=p_succ_hat,
        eta=eta_hat,
        se_eta=se_eta,
        se_p_bomb=math.sqrt(p_bomb_hat * (1.0 - p_bomb_hat) / trials),
        se_p_succ=math.sqrt(p_succ_hat * (1.0 - p_succ_hat) / trials),
        degenerate=degenerate,
    )
