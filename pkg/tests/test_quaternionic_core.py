import numpy as np
import pytest

from src.errors import AmbiguousKernel, SymmetryViolation, Z2LabError
from src.quaternionic_core import (
    apply_tau,
    check_odd_symmetric,
    conjugate_by_tau,
    homotopy_parity_sweep,
    induced_tau,
    kramers_multiplicity_check,
    make_anti_unitary,
    make_standard_J,
    random_odd_symmetric,
    symmetrize_odd,
    tau_closure_basis,
    z2_index,
)
from src.spectra import SpectralReport


def test_standard_J_small():
    tau = make_standard_J(1)
    assert np.allclose(tau.J, [[0, 1], [-1, 0]])
    tau2 = make_standard_J(2)
    assert np.allclose(tau2.J @ tau2.J, -np.eye(4))


def test_apply_tau_block_action():
    tau = make_standard_J(1)
    assert np.allclose(apply_tau(tau, np.array([1.0, 0.0])), [0.0, -1.0])
    assert np.allclose(apply_tau(tau, np.array([1j, 0.0])), [0.0, 1j])


def test_tau_squares_to_minus_one_and_is_perpendicular(rng):
    tau = make_standard_J(3)
    v = rng.normal(size=6) + 1j * rng.normal(size=6)
    assert np.allclose(apply_tau(tau, apply_tau(tau, v)), -v)
    assert abs(np.vdot(apply_tau(tau, v), v)) < 1e-12


def test_anti_unitary_rejects_odd_dimension_and_non_unitary():
    with pytest.raises(Z2LabError):
        make_anti_unitary(np.zeros((3, 3)))
    with pytest.raises(SymmetryViolation):
        make_anti_unitary(2.0 * make_standard_J(1).J)


def test_check_odd_symmetric_examples():
    tau = make_standard_J(1)
    assert check_odd_symmetric(3.0 * np.eye(2), tau) == 0.0
    assert check_odd_symmetric(np.diag([1.0, 2.0]), tau) > 0
    with pytest.raises(SymmetryViolation):
        check_odd_symmetric(np.diag([1.0, 2.0]), tau, tol=1e-12)


def test_symmetrize_odd(rng):
    tau = make_standard_J(4)
    A = rng.normal(size=(8, 8)) + 1j * rng.normal(size=(8, 8))
    S = symmetrize_odd(A, tau)
    assert check_odd_symmetric(S, tau) < 1e-12
    assert np.allclose(symmetrize_odd(S, tau), S)
    assert np.allclose(symmetrize_odd(np.zeros((8, 8)), tau), 0.0)


def test_tau_closure_and_induced_tau(rng):
    tau = make_standard_J(3)
    v = rng.normal(size=6) + 1j * rng.normal(size=6)
    B = tau_closure_basis(v, tau)
    assert B.shape == (6, 2)
    tau_H = induced_tau(B, tau)
    assert tau_H.dim == 2
    assert np.allclose(tau_H.J, -tau_H.J.T)
    assert np.allclose(tau_H.J.conj().T @ tau_H.J, np.eye(2), atol=1e-10)


def test_induced_tau_rejects_non_invariant_subspace():
    tau = make_standard_J(2)
    with pytest.raises(SymmetryViolation):
        induced_tau(np.eye(4)[:, :2], tau)


def _report(values, kernel_dim, gap):
    return SpectralReport(singular_values=np.asarray(values), kernel_dim=kernel_dim, detection_gap=gap, raw_kernel_dim=kernel_dim)


def test_z2_index_parity_and_ambiguity():
    assert z2_index(_report([0.0, 1.0], 1, np.inf)) == 1
    assert z2_index(_report([0.0, 0.0, 1.0], 2, np.inf)) == 0
    with pytest.raises(AmbiguousKernel):
        z2_index(_report([1e-3, 1e-2], 1, 10.0))


def test_kramers_zero_and_random_squared(rng):
    tau = make_standard_J(3)
    cert = kramers_multiplicity_check(np.zeros((6, 6)), tau, "commuting")
    assert cert.passed
    assert list(cert.multiplicities.values()) == [6]

    tau6 = make_standard_J(6)
    D = random_odd_symmetric(tau6, rng)
    assert kramers_multiplicity_check(D.conj().T @ D, tau6, "squared-off-diagonal").passed


def test_kramers_commuting_random_hermitian(rng):
    tau = make_standard_J(4)
    X = rng.normal(size=(8, 8)) + 1j * rng.normal(size=(8, 8))
    X = X + X.conj().T
    H = 0.5 * (X + conjugate_by_tau(tau, X))
    cert = kramers_multiplicity_check(H, tau, "commuting")
    assert cert.passed
    assert all(m % 2 == 0 for m in cert.multiplicities.values())


def test_kramers_rejects_non_commuting():
    with pytest.raises(SymmetryViolation):
        kramers_multiplicity_check(np.diag([1.0, 2.0]), make_standard_J(1), "commuting")


def test_homotopy_sweep_constant_path():
    tau = make_standard_J(1)
    assert homotopy_parity_sweep([np.zeros((2, 2))] * 3, tau) == [0, 0, 0]
    assert homotopy_parity_sweep([np.eye(2), 2.0 * np.eye(2)], tau) == [0, 0]


def test_homotopy_sweep_rejects_non_symmetric_step():
    tau = make_standard_J(1)
    with pytest.raises(SymmetryViolation):
        homotopy_parity_sweep([np.eye(2), np.diag([1.0, 2.0])], tau)


def test_homotopy_sweep_step_bound():
    tau = make_standard_J(1)
    with pytest.raises(Z2LabError):
        homotopy_parity_sweep([np.eye(2), 5.0 * np.eye(2)], tau, step_bound=1.0)
