"""Finite-dimensional quantum states, density operators, and unitaries.

Immutable, validated wrappers around complex NumPy arrays, plus the handful
of operations everything else is built on: two-state overlaps, applying a
unitary to a state, and composing unitaries.  Dimension is generic; the
interferometer presets all use d = 2.

Validation tolerances are absolute and fixed at 1e-12: double-precision
products of the small matrices used here accumulate error well below 1e-13.
"""

from __future__ import annotations

import numpy as np

#: absolute tolerance for normalization / Hermiticity / unitarity checks
ATOL = 1e-12

#: eigenvalues of a density operator may round slightly negative
EIG_ATOL = 1e-10


def _as_complex_array(values, ndim, name):
    arr = np.array(values, dtype=np.complex128, copy=True)
    if arr.ndim != ndim:
        raise ValueError(f"{name}: expected a {ndim}-d array, got shape {arr.shape}")
    if not np.all(np.isfinite(arr.real)) or not np.all(np.isfinite(arr.imag)):
        raise ValueError(f"{name}: entries must be finite (no NaN/Inf)")
    arr.setflags(write=False)
    return arr


class PureState:
    """A normalized complex amplitude vector of dimension d >= 2.

    Parameters
    ----------
    amplitudes : array_like of complex, shape (d,)
        Must satisfy sum_k |a_k|^2 = 1 within 1e-12.
    """

    __slots__ = ("_vector",)

    def __init__(self, amplitudes):
        vec = _as_complex_array(amplitudes, 1, "PureState")
        if vec.size < 2:
            raise ValueError("PureState: dimension must be >= 2")
        norm_sq = float(np.sum(np.abs(vec) ** 2))
        if abs(norm_sq - 1.0) > ATOL:
            raise ValueError(f"PureState: not normalized (|psi|^2 = {norm_sq!r})")
        self._vector = vec

    @property
    def vector(self):
        """Read-only amplitude array."""
        return self._vector

    @property
    def dim(self):
        return self._vector.size

    def density(self):
        """Return the rank-one projector |psi><psi| as a DensityOperator."""
        return DensityOperator(np.outer(self._vector, self._vector.conj()))

    def __repr__(self):
        return f"PureState({np.array2string(self._vector, precision=6)})"


class DensityOperator:
    """A Hermitian, unit-trace, positive-semidefinite d x d matrix."""

    __slots__ = ("_matrix",)

    def __init__(self, matrix):
        mat = _as_complex_array(matrix, 2, "DensityOperator")
        d = mat.shape[0]
        if mat.shape != (d, d) or d < 2:
            raise ValueError(f"DensityOperator: expected square matrix, got {mat.shape}")
        if not np.allclose(mat, mat.conj().T, rtol=0.0, atol=ATOL):
            raise ValueError("DensityOperator: matrix is not Hermitian")
        trace = complex(np.trace(mat))
        if abs(trace - 1.0) > ATOL:
            raise ValueError(f"DensityOperator: trace = {trace!r}, expected 1")
        eigs = np.linalg.eigvalsh(mat)
        if eigs.min() < -EIG_ATOL:
            raise ValueError(f"DensityOperator: negative eigenvalue {eigs.min()!r}")
        self._matrix = mat

    @property
    def matrix(self):
        return self._matrix

    @property
    def dim(self):
        return self._matrix.shape[0]

    def __repr__(self):
        return f"DensityOperator(dim={self.dim})"


class Unitary:
    """A d x d matrix with U U^dagger = I within 1e-12 entrywise."""

    __slots__ = ("_matrix",)

    def __init__(self, matrix):
        mat = _as_complex_array(matrix, 2, "Unitary")
        d = mat.shape[0]
        if mat.shape != (d, d):
            raise ValueError(f"Unitary: expected square matrix, got {mat.shape}")
        if not np.allclose(mat @ mat.conj().T, np.eye(d), rtol=0.0, atol=ATOL):
            raise ValueError("Unitary: U U^dagger deviates from identity by more than 1e-12")
        self._matrix = mat

    @property
    def matrix(self):
        return self._matrix

    @property
    def dim(self):
        return self._matrix.shape[0]

    def dagger(self):
        """Return the adjoint U^dagger as a Unitary."""
        return Unitary(self._matrix.conj().T)

    def __repr__(self):
        return f"Unitary(dim={self.dim})"


def basis(index, dim=2):
    """Computational basis state |index> in dimension ``dim``."""
    if not 0 <= index < dim:
        raise ValueError(f"basis: index {index} out of range for dimension {dim}")
    vec = np.zeros(dim, dtype=np.complex128)
    vec[index] = 1.0
    return PureState(vec)


def overlap_pure(a, b):
    """Two-state overlap |<a|b>|^2 of two pure states.

    Symmetric in its arguments and always in [0, 1] (values a few ulp above 1
    from rounding are clamped).

    Parameters
    ----------
    a, b : PureState
        States of equal dimension.

    Returns
    -------
    float
    """
    if a.dim != b.dim:
        raise ValueError(f"overlap_pure: dimension mismatch ({a.dim} vs {b.dim})")
    value = float(abs(np.vdot(a.vector, b.vector)) ** 2)
    return min(value, 1.0)


def overlap_density(rho, sigma):
    """Two-state overlap Tr(rho sigma) of two density operators.

    Coincides with ``overlap_pure`` on rank-one inputs.
    """
    if rho.dim != sigma.dim:
        raise ValueError(f"overlap_density: dimension mismatch ({rho.dim} vs {sigma.dim})")
    value = float(np.trace(rho.matrix @ sigma.matrix).real)
    return min(max(value, 0.0), 1.0)


def apply(u, state):
    """Apply a unitary to a pure state, returning the (renormalized) result.

    Renormalization only compensates accumulated rounding; the drift is
    below 1e-12 for valid inputs.
    """
    if u.dim != state.dim:
        raise ValueError(f"apply: dimension mismatch ({u.dim} vs {state.dim})")
    vec = u.matrix @ state.vector
    vec = vec / np.linalg.norm(vec)
    return PureState(vec)


def compose(u, v):
    """Matrix product U V as a Unitary (apply V first, then U)."""
    if u.dim != v.dim:
        raise ValueError(f"compose: dimension mismatch ({u.dim} vs {v.dim})")
    return Unitary(u.matrix @ v.matrix)
