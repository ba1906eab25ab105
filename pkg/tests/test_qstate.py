import numpy as np
import pytest

from mzilab.qstate import (
    DensityOperator,
    PureState,
    Unitary,
    apply,
    basis,
    compose,
    overlap_density,
    overlap_pure,
)


def test_basis_states_are_orthonormal():
    e0 = basis(0)
    e1 = basis(1)
    assert overlap_pure(e0, e0) == 1.0
    assert overlap_pure(e1, e1) == 1.0
    assert overlap_pure(e0, e1) == 0.0


def test_basis_rejects_out_of_range_index():
    with pytest.raises(ValueError):
        basis(2, dim=2)
    with pytest.raises(ValueError):
        basis(-1)


def test_pure_state_requires_normalization():
    with pytest.raises(ValueError):
        PureState([1.0, 1.0])
    s = PureState([1.0 / np.sqrt(2), 1j / np.sqrt(2)])
    assert s.dim == 2


def test_pure_state_vector_is_read_only():
    s = basis(0)
    with pytest.raises(ValueError):
        s.vector[0] = 0.0


def test_pure_state_rejects_non_finite():
    with pytest.raises(ValueError):
        PureState([np.nan, 0.0])


def test_density_of_pure_state_is_projector():
    s = PureState([0.6, 0.8j])
    rho = s.density()
    np.testing.assert_allclose(rho.matrix @ rho.matrix, rho.matrix, atol=1e-14)
    np.testing.assert_allclose(np.trace(rho.matrix), 1.0, atol=1e-14)


def test_density_operator_validation():
    with pytest.raises(ValueError):
        DensityOperator([[0.5, 0.1], [0.2, 0.5]])  # not Hermitian
    with pytest.raises(ValueError):
        DensityOperator([[0.9, 0.0], [0.0, 0.9]])  # trace != 1
    with pytest.raises(ValueError):
        DensityOperator([[1.5, 0.0], [0.0, -0.5]])  # negative eigenvalue


def test_maximally_mixed_state_is_valid():
    rho = DensityOperator(np.eye(2) / 2)
    assert rho.dim == 2


def test_unitary_validation():
    with pytest.raises(ValueError):
        Unitary([[1.0, 0.0], [1.0, 1.0]])
    u = Unitary([[0.0, 1.0], [1.0, 0.0]])
    np.testing.assert_allclose(u.dagger().matrix, u.matrix)


def test_overlap_pure_is_symmetric_and_bounded():
    rng = np.random.default_rng(11)
    for _ in range(200):
        a = rng.normal(size=2) + 1j * rng.normal(size=2)
        b = rng.normal(size=2) + 1j * rng.normal(size=2)
        sa = PureState(a / np.linalg.norm(a))
        sb = PureState(b / np.linalg.norm(b))
        r_ab = overlap_pure(sa, sb)
        r_ba = overlap_pure(sb, sa)
        assert 0.0 <= r_ab <= 1.0
        np.testing.assert_allclose(r_ab, r_ba, rtol=1e-12, atol=1e-15)


def test_overlap_pure_matches_density_overlap():
    """|<a|b>|^2 equals Re tr(rho_a rho_b) for pure states."""
    rng = np.random.default_rng(5)
    for _ in range(100):
        a = rng.normal(size=3) + 1j * rng.normal(size=3)
        b = rng.normal(size=3) + 1j * rng.normal(size=3)
        sa = PureState(a / np.linalg.norm(a))
        sb = PureState(b / np.linalg.norm(b))
        np.testing.assert_allclose(
            overlap_pure(sa, sb),
            overlap_density(sa.density(), sb.density()),
            rtol=1e-12,
            atol=1e-15,
        )


def test_overlap_dimension_mismatch():
    with pytest.raises(ValueError):
        overlap_pure(basis(0, dim=2), basis(0, dim=3))


def test_overlap_is_invariant_under_global_phase():
    a = PureState([0.6, 0.8])
    b = PureState(np.exp(1.3j) * np.array([0.6, 0.8]))
    np.testing.assert_allclose(overlap_pure(a, b), 1.0, atol=1e-15)


def test_apply_preserves_norm_and_overlaps():
    rng = np.random.default_rng(23)
    for _ in range(50):
        # Haar-ish random unitary from a QR decomposition
        z = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
        q, r = np.linalg.qr(z)
        q = q * (np.diag(r) / np.abs(np.diag(r)))
        u = Unitary(q)
        a = rng.normal(size=2) + 1j * rng.normal(size=2)
        b = rng.normal(size=2) + 1j * rng.normal(size=2)
        sa = PureState(a / np.linalg.norm(a))
        sb = PureState(b / np.linalg.norm(b))
        np.testing.assert_allclose(
            overlap_pure(apply(u, sa), apply(u, sb)),
            overlap_pure(sa, sb),
            rtol=1e-12,
            atol=1e-15,
        )


def test_compose_multiplies_in_circuit_order():
    u = Unitary([[0.0, 1.0], [1.0, 0.0]])
    v = Unitary([[1.0, 0.0], [0.0, -1.0]])
    # compose(u, v) acts as "v first, then u"
    np.testing.assert_allclose(compose(u, v).matrix, u.matrix @ v.matrix)


def test_compose_dimension_mismatch():
    with pytest.raises(ValueError):
        compose(Unitary(np.eye(2)), Unitary(np.eye(3)))
