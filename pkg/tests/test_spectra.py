import numpy as np
import pytest

from src.errors import AmbiguousKernel, InvalidParams, Unstable
from src.spectra import (
    FD_POLICY,
    DiscreteOperator,
    KernelPolicy,
    index_report,
    kernel_dimension,
    singular_values,
    spectral_gap,
    stabilization_sweep,
    write_spectrum_csv,
)
from src import spectra
from src.discretize import graded_from_plus


def test_singular_values_ascending():
    assert np.allclose(singular_values(np.diag([3.0, -4.0])), [3.0, 4.0])
    assert np.allclose(singular_values(np.zeros((3, 3))), 0.0)


def test_kernel_dimension_simple_cases():
    rep = kernel_dimension(np.eye(4))
    assert rep.kernel_dim == 0
    assert rep.detection_gap == np.inf
    assert kernel_dimension(np.diag([0.0, 0.0, 1.0])).kernel_dim == 2
    rep = kernel_dimension(np.diag([0.0, 1e-14, 1.0, 2.0]))
    assert rep.kernel_dim == 2
    assert rep.parity == 0


def test_kernel_dimension_without_clean_cut():
    with pytest.raises(AmbiguousKernel) as exc:
        kernel_dimension(np.diag([5e-10, 6e-10, 1e-8, 1.0]))
    assert len(exc.value.singular_values) > 0


def test_boundary_filter_separates_modes():
    D = np.diag([0.0, 0.0, 1.0, 1.0])
    rep = kernel_dimension(D, boundary=np.array([0.0, 1.0, 0.0, 0.0]), want_basis=True)
    assert rep.raw_kernel_dim == 2
    assert rep.kernel_dim == 1
    assert rep.boundary_modes == 1
    assert rep.interior_sigma_min == pytest.approx(1.0)
    assert rep.kernel_basis.shape == (4, 1)
    assert abs(rep.kernel_basis[0, 0]) == pytest.approx(1.0)


def test_boundary_filter_rejects_split_mode():
    D = np.diag([0.0, 1.0, 1.0, 1.0])
    with pytest.raises(AmbiguousKernel):
        kernel_dimension(D, boundary=np.array([0.5, 0.0, 0.0, 0.0]))


def test_spectral_gap():
    cert = spectral_gap(np.diag([0.0, 1.0, 2.0]))
    assert cert.kernel_dim == 1
    assert cert.gamma == pytest.approx(1.0)
    assert cert.isolated
    assert spectral_gap(np.eye(3)).kernel_dim == 0


def test_index_report_uses_plus_block():
    D, grading = graded_from_plus(np.zeros((1, 1)))
    op = DiscreteOperator(matrix=D, grading=grading)
    assert index_report(op).kernel_dim == 1
    assert index_report(op).parity == 1


def test_policy_validation():
    with pytest.raises(InvalidParams):
        KernelPolicy(boundary_tol=0.6)
    with pytest.raises(InvalidParams):
        KernelPolicy(gap_min=0.5)
    assert FD_POLICY.rtol > KernelPolicy().rtol


def test_stabilization_constant_builder():
    assert stabilization_sweep(lambda n: np.zeros((1, 1)), [1, 2, 3]) == 1
    assert stabilization_sweep(lambda n: np.eye(2), [1, 2, 3]) == 0


def test_stabilization_unstable_and_too_few_sizes():
    with pytest.raises(Unstable) as exc:
        stabilization_sweep(lambda n: np.zeros((n, n)), [2, 3, 4])
    assert exc.value.parities == [0, 1, 0]
    with pytest.raises(InvalidParams):
        stabilization_sweep(lambda n: np.eye(2), [1, 2])


def test_stabilization_details():
    details = []
    stabilization_sweep(lambda n: np.diag([0.0] + [1.0] * n), [1, 2, 3], details=details)
    assert [d["kernel_dim"] for d in details] == [1, 1, 1]
    assert [d["size"] for d in details] == [1, 2, 3]


def test_write_spectrum_csv(tmp_path):
    path = write_spectrum_csv([0.0, 1.0 / 3.0, 2.0], tmp_path / "sub" / "spectrum.csv")
    lines = path.read_text().splitlines()
    assert len(lines) == 3
    assert float(lines[1]) == 1.0 / 3.0


# =========================================================
# Invariancias y descomposición por bloques
# =========================================================
def _random_unitary(rng, n):
    Q, R = np.linalg.qr(rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n)))
    return Q * (np.diag(R) / np.abs(np.diag(R)))[None, :]


def _rank_deficient(rng, n, rank):
    A = rng.normal(size=(n, rank)) + 1j * rng.normal(size=(n, rank))
    B = rng.normal(size=(rank, n)) + 1j * rng.normal(size=(rank, n))
    return A @ B


def test_singular_values_invariant_under_unitaries_and_adjoint(rng):
    D = _rank_deficient(rng, 12, 9)
    U, V = _random_unitary(rng, 12), _random_unitary(rng, 12)
    s = singular_values(D)
    assert np.allclose(singular_values(U @ D @ V), s, atol=1e-10)
    assert np.allclose(singular_values(D.conj().T), s, atol=1e-10)
    assert kernel_dimension(U @ D @ V).kernel_dim == kernel_dimension(D).kernel_dim == 3


def test_kernel_dimension_invariant_under_zero_padding(rng):
    D = _rank_deficient(rng, 8, 5)
    padded = np.zeros((11, 11), dtype=complex)
    padded[:8, :8] = D
    assert kernel_dimension(D).kernel_dim == 3
    assert kernel_dimension(padded).kernel_dim == 6


def test_wide_matrix_counts_missing_rows():
    Q = np.hstack([np.eye(3), np.zeros((3, 1))])
    assert singular_values(Q).size == 3
    rep = kernel_dimension(Q)
    assert rep.singular_values.size == 4
    assert rep.kernel_dim == 1
    assert kernel_dimension(Q.T).kernel_dim == 0


def test_block_decomposition_matches_dense_svd(rng):
    # bloques reales, imaginarios puros y complejos
    kinds = [lambda: rng.normal(size=(3, 3)), lambda: 1j * rng.normal(size=(3, 3)), lambda: _random_unitary(rng, 3)]
    blocks = [kinds[j % 3]() for j in range(12)]
    n = sum(b.shape[0] for b in blocks)
    D = np.zeros((n, n), dtype=complex)
    i = 0
    for b in blocks:
        D[i : i + b.shape[0], i : i + b.shape[0]] = b
        i += b.shape[0]
    perm_r, perm_c = rng.permutation(n), rng.permutation(n)
    D = D[perm_r][:, perm_c]
    assert len(spectra._components(D)) == 12
    dense = np.sort(np.linalg.svd(D, compute_uv=False))
    assert np.allclose(singular_values(D), dense, atol=1e-12)


def test_block_decomposition_basis_is_orthonormal_kernel():
    # dos bloques reales con un modo nulo cada uno
    D = np.zeros((6, 6))
    D[:3, :3] = [[1.0, 1.0, 0.0], [0.0, 1.0, 1.0], [1.0, 2.0, 1.0]]
    D[3:, 3:] = [[2.0, 0.0, 2.0], [0.0, 1.0, 0.0], [1.0, 0.0, 1.0]]
    rep = kernel_dimension(D, want_basis=True)
    B = rep.kernel_basis
    assert rep.kernel_dim == 2
    assert np.allclose(B.conj().T @ B, np.eye(2), atol=1e-12)
    assert np.linalg.norm(D @ B) < 1e-12


def test_dense_cap_is_enforced(monkeypatch):
    monkeypatch.setattr(spectra, "DENSE_CAP", 4)
    with pytest.raises(InvalidParams):
        kernel_dimension(np.ones((5, 5)))
    # bloques pequeños pasan aunque la matriz supere el límite
    assert kernel_dimension(np.eye(12)).kernel_dim == 0


def test_stabilization_rejects_unordered_sizes():
    with pytest.raises(InvalidParams):
        stabilization_sweep(lambda n: np.eye(2), [3, 2, 4])
    with pytest.raises(InvalidParams):
        stabilization_sweep(lambda n: np.eye(2), [2, 2, 3])
