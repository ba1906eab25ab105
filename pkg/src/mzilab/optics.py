"""Mach-Zehnder interferometer building blocks.

A single MZI is modelled on two optical modes: ``a`` (component 0, "upper
arm") and ``b`` (component 1, "lower arm").  A beam splitter with angle
``theta`` acts as

    [[cos(theta), i sin(theta)],
     [i sin(theta), cos(theta)]]

and a phase shifter places ``exp(i phi)`` on mode a, so that a phase shifter
after a beam splitter prepares

    |psi(theta, phi)> = exp(i phi) cos(theta) |0> + i sin(theta) |1>

from mode-a input.  Detector ``D1`` watches the mode-a output of the second
beam splitter, ``D2`` the mode-b output.

Two encodings of state triples are provided:

* ``sequential_triple``: { |psi(0,0)>, |psi(theta1,0)>, |psi(theta1,phi1)> },
  the states seen before the first beam splitter, after it, and after the
  phase shifter.  ``h_functional`` is the overlap combination
  r12 + r13 - r23 on this triple (classical bound 1).
* ``general_input_triple``: the same stages of a second MZI fed with an
  arbitrary pure input prepared by an upstream interferometer
  (cos(theta0)|0> + i exp(i phi0) sin(theta0)|1>).  Here the stage phase
  phi1 sits on mode b; the two phase conventions are kept strictly separate.
  ``h1_general`` / ``h2_general`` / ``h3_general`` are the three sign
  patterns of the overlap combination on this triple.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Union

import numpy as np

from .qstate import PureState, Unitary, apply, basis, compose, overlap_pure


def _check_angle(value, name):
    value = float(value)
    if not math.isfinite(value):
        raise ValueError(f"{name}: angle must be finite, got {value!r}")
    return value


def beam_splitter(theta):
    """Beam splitter unitary [[cos t, i sin t], [i sin t, cos t]].

    The family composes additively: beam_splitter(a) beam_splitter(b)
    = beam_splitter(a + b).  theta = 0 is the identity, theta = pi/4 a
    symmetric (50:50) splitter, theta = pi/2 a full reflection.
    """
    theta = _check_angle(theta, "beam_splitter")
    c, s = math.cos(theta), math.sin(theta)
    return Unitary(np.array([[c, 1j * s], [1j * s, c]], dtype=np.complex128))


def phase_shifter(phi):
    """Phase shifter diag(exp(i phi), 1) acting on mode a."""
    phi = _check_angle(phi, "phase_shifter")
    return Unitary(np.diag([np.exp(1j * phi), 1.0]).astype(np.complex128))


def phase_shifter_b(phi):
    """Phase shifter diag(1, exp(i phi)) acting on mode b.

    Used only by the general-input (two-interferometer) encoding; the
    single-MZI convention keeps all phases on mode a.
    """
    phi = _check_angle(phi, "phase_shifter_b")
    return Unitary(np.diag([1.0, np.exp(1j * phi)]).astype(np.complex128))


def prepare(theta, phi):
    """Pure qubit state exp(i phi) cos(theta)|0> + i sin(theta)|1>.

    Equals apply(phase_shifter(phi) . beam_splitter(theta), |0>).
    """
    theta = _check_angle(theta, "prepare")
    phi = _check_angle(phi, "prepare")
    return PureState(
        np.array(
            [np.exp(1j * phi) * math.cos(theta), 1j * math.sin(theta)],
            dtype=np.complex128,
        )
    )


@dataclass(frozen=True)
class MziConfig:
    """Angles of a full interferometer: splitter/phase of each stage.

    ``input_state`` is the mode the photon enters ("a" or "b"), or an
    explicit PureState.
    """

    theta1: float
    phi1: float
    theta2: float
    phi2: float
    input_state: Union[str, PureState] = "a"

    def __post_init__(self):
        for name in ("theta1", "phi1", "theta2", "phi2"):
            _check_angle(getattr(self, name), f"MziConfig.{name}")
        if isinstance(self.input_state, str) and self.input_state not in ("a", "b"):
            raise ValueError(f"MziConfig: input mode must be 'a' or 'b', got {self.input_state!r}")

    def input_pure_state(self):
        if isinstance(self.input_state, PureState):
            return self.input_state
        return basis(0) if self.input_state == "a" else basis(1)


def detection_probability(cfg, detector):
    """Click probability of ``detector`` ("D1" or "D2") for an MZI run.

    The photon traverses beam_splitter(theta1), phase_shifter(phi1),
    phase_shifter(phi2), beam_splitter(theta2) in that order.  D1 is the
    mode-a output, D2 the mode-b output; the two probabilities sum to one.
    """
    if detector not in ("D1", "D2"):
        raise ValueError(f"detection_probability: unknown detector {detector!r}")
    chain = compose(
        beam_splitter(cfg.theta2),
        compose(phase_shifter(cfg.phi2), compose(phase_shifter(cfg.phi1), beam_splitter(cfg.theta1))),
    )
    out = apply(chain, cfg.input_pure_state())
    index = 0 if detector == "D1" else 1
    return float(abs(out.vector[index]) ** 2)


def measurement_dual(theta2, phi2):
    """The pure state whose overlap with the prepared state gives P(D1).

    For a preparation psi = phase_shifter(phi1) beam_splitter(theta1)|0>,
    P(D1) = |<chi|psi>|^2 with chi the time-reverse of the measurement
    stage: chi = phase_shifter(-phi2) beam_splitter(-theta2) |0>.
    """
    return apply(compose(phase_shifter(-phi2), beam_splitter(-theta2)), basis(0))


@dataclass(frozen=True)
class StateTriple:
    """Three normalized qubit states and their pairwise overlaps."""

    psi1: PureState
    psi2: PureState
    psi3: PureState

    def overlaps(self):
        """Pairwise overlaps (r12, r13, r23)."""
        return (
            overlap_pure(self.psi1, self.psi2),
            overlap_pure(self.psi1, self.psi3),
            overlap_pure(self.psi2, self.psi3),
        )


def sequential_triple(theta1, phi1):
    """States at the three stages of a single MZI fed on mode a.

    psi1 = |0>, psi2 = beam_splitter(theta1)|0>, psi3 = phase_shifter(phi1) psi2.
    """
    psi1 = basis(0)
    psi2 = apply(beam_splitter(theta1), psi1)
    psi3 = apply(phase_shifter(phi1), psi2)
    return StateTriple(psi1, psi2, psi3)


def h_functional(theta1, phi1):
    """r12 + r13 - r23 on ``sequential_triple(theta1, phi1)``.

    Any value above the classical bound 1 certifies that the three stage
    states cannot be simultaneously diagonalized.  The quantum maximum is
    5/4, reached where cos^2(theta1) = 3/4 and phi1 = pi; at theta1 = pi/4
    (symmetric splitter) the value never exceeds 1.
    """
    r12, r13, r23 = sequential_triple(theta1, phi1).overlaps()
    return r12 + r13 - r23


def general_input_triple(theta0, phi0, theta1, phi1):
    """Stage states of an MZI fed by an upstream interferometer.

    psi1 = cos(theta0)|0> + i exp(i phi0) sin(theta0)|1>  (the input),
    psi2 = beam_splitter(theta1) psi1,
    psi3 = phase_shifter_b(phi1) psi2   (stage phase on mode b).
    """
    psi1 = apply(compose(phase_shifter_b(phi0), beam_splitter(theta0)), basis(0))
    psi2 = apply(beam_splitter(theta1), psi1)
    psi3 = apply(phase_shifter_b(phi1), psi2)
    return StateTriple(psi1, psi2, psi3)


def h1_general(theta0, phi0, theta1, phi1):
    """r12 + r13 - r23 on ``general_input_triple`` (classical bound 1).

    At theta0 = 0 this coincides with ``h_functional(theta1, phi1)`` for
    every phi0: the mode-b input phase is then a global phase, and the
    relocated stage phase differs from the mode-a convention by a global
    phase as well.
    """
    r12, r13, r23 = general_input_triple(theta0, phi0, theta1, phi1).overlaps()
    return r12 + r13 - r23


def h2_general(theta0, phi0, theta1, phi1):
    """r12 - r13 + r23 on ``general_input_triple`` (classical bound 1)."""
    r12, r13, r23 = general_input_triple(theta0, phi0, theta1, phi1).overlaps()
    return r12 - r13 + r23


def h3_general(theta0, phi0, theta1, phi1):
    """-r12 + r13 + r23 on ``general_input_triple`` (classical bound 1)."""
    r12, r13, r23 = general_input_triple(theta0, phi0, theta1, phi1).overlaps()
    return -r12 + r13 + r23
