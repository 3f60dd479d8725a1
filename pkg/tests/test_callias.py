import numpy as np
import pytest

from src.callias import (
    Potential,
    admissibility_margin,
    arctan_wall,
    boundary_reduction,
    build_callias_ungraded,
    build_model_operator,
    check_potential_symmetry,
    cut_and_paste,
    double_graded,
    free_line_dirac,
    model_operator_kernel,
    random_gapped_potential,
    relative_index,
    surgery_pair,
)
from src.discretize import EPS2, build_line_operator, build_torus_trivial, make_grid
from src.errors import InvalidParams, MismatchAtCut, NotAdmissible, SingularPotential, SymmetryViolation
from src.quaternionic_core import make_anti_unitary, make_grading
from src.spectra import DEFAULT_POLICY, FD_POLICY, DiscreteOperator, index_report, kernel_dimension


def _constant(matrix, radius=0.0, name="const"):
    M = np.asarray(matrix, dtype=complex)
    return Potential(sampler=lambda t: np.broadcast_to(M, (len(t),) + M.shape).copy(), essential_radius=radius, name=name)


def _arctan_identity():
    return Potential(
        sampler=lambda t: np.arctan(t)[:, None, None] * np.eye(2)[None, :, :],
        essential_radius=1.0,
        name="arctan_identity",
    )


# =========================================================
# Admisibilidad
# =========================================================
def test_arctan_identity_margin():
    D, _ = free_line_dirac(make_grid(2.0, 401), 2)
    margin = admissibility_margin(D, _arctan_identity())
    assert margin == pytest.approx(np.arctan(1.0) ** 2 - 0.5, abs=0.01)


def test_identity_potential_has_unit_margin():
    D, _ = free_line_dirac(make_grid(5.0, 51), 2)
    assert admissibility_margin(D, _constant(np.eye(2))) == pytest.approx(1.0)


def test_zero_potential_is_not_admissible():
    D, _ = free_line_dirac(make_grid(5.0, 51), 2)
    with pytest.raises(NotAdmissible) as exc:
        admissibility_margin(D, _constant(np.zeros((2, 2))))
    assert exc.value.node is not None


def test_potential_symmetry_check():
    t = make_grid(3.0, 31).nodes
    check_potential_symmetry(arctan_wall().samples(t), EPS2)
    # la parte escalar de Φ tiene que ser par
    odd_scalar = t[:, None, None] * np.eye(2)[None, :, :]
    with pytest.raises(SymmetryViolation):
        check_potential_symmetry(odd_scalar, EPS2)


# =========================================================
# Operadores de Callias en la recta
# =========================================================
@pytest.fixture(scope="module")
def line_setup():
    grid = make_grid(20.0, 801)
    D, tau = free_line_dirac(grid, 2)
    return grid, D, tau


def test_callias_line_index(line_setup):
    grid, D, tau = line_setup
    B = build_callias_ungraded(D, arctan_wall(), tau)
    rep = index_report(B, FD_POLICY)
    assert rep.kernel_dim == 1
    # mismo operador que la recta salvo el factor i
    ref, _ = build_line_operator(grid)
    assert np.allclose(B.matrix, 1j * ref.matrix)


def test_callias_negated_and_scaled(line_setup):
    _, D, tau = line_setup
    phi = arctan_wall()
    assert index_report(build_callias_ungraded(D, phi.negated(), tau), FD_POLICY).parity == 1
    for lam in (2.0, 5.0):
        assert index_report(build_callias_ungraded(D, phi.scaled(lam), tau), FD_POLICY).parity == 1


def test_double_graded_keeps_parity(line_setup):
    _, D, tau = line_setup
    B = build_callias_ungraded(D, arctan_wall(), tau)
    graded, _ = double_graded(B, tau)
    assert graded.grading.plus_dim == B.dim
    assert index_report(graded, FD_POLICY).parity == 1


# =========================================================
# Reducción a la hipersuperficie
# =========================================================
def test_boundary_reduction_diagonal():
    red = boundary_reduction(np.diag([1.0, -1.0]), np.diag([1j, -1j]))
    assert np.allclose(red.proj_plus, np.diag([1.0, 0.0]))
    assert list(red.alpha.signs) == [1]
    assert red.reduced_operator.matrix.shape == (1, 1)


def test_boundary_reduction_two_points_of_the_line():
    a = 5.0
    phi = arctan_wall().samples(np.array([-a, a]))
    gamma = np.stack([-1j * np.eye(2), 1j * np.eye(2)])
    R = np.array([[0.0, 1.0], [1.0, 0.0]])
    red = boundary_reduction(phi, gamma, tau=make_anti_unitary(np.kron(EPS2, R)))
    assert red.alpha.plus_dim == 1
    assert red.reduced_tau is not None
    assert np.allclose(red.reduced_operator.matrix, 0.0)
    assert index_report(red.reduced_operator, DEFAULT_POLICY).parity == 1


def test_boundary_reduction_singular_potential():
    with pytest.raises(SingularPotential):
        boundary_reduction(np.diag([1.0, 0.0]), np.diag([1j, -1j]))


# =========================================================
# Operador modelo N × ℝ
# =========================================================
def _zero_hypersurface():
    op = DiscreteOperator(matrix=np.zeros((2, 2), dtype=complex), label="zero_C2", grading=make_grading([1, -1]))
    return op, make_anti_unitary(EPS2)


@pytest.mark.parametrize("sign", [1, -1])
def test_model_operator_zero_hypersurface(sign):
    grid = make_grid(20.0, 401)
    D_N, tau_N = _zero_hypersurface()
    mk = model_operator_kernel(D_N, grid, sign, FD_POLICY)
    assert mk.kernel_dim == 1
    assert mk.parity == 1
    M = build_model_operator(D_N, grid, sign, tau_N)
    assert kernel_dimension(M.matrix, FD_POLICY, boundary=M.boundary).kernel_dim == 1


def test_model_operator_needs_grading():
    grid = make_grid(5.0, 21)
    with pytest.raises(InvalidParams):
        build_model_operator(DiscreteOperator(matrix=np.zeros((2, 2))), grid)


# =========================================================
# Cortar y pegar
# =========================================================
def test_identity_surgery():
    op, tau = build_line_operator(make_grid(10.0, 201))
    op2, op3 = cut_and_paste(op, op, 4.0, tau)
    assert np.array_equal(op2.matrix, op.matrix)
    assert np.array_equal(op3.matrix, op.matrix)


def test_surgery_mismatch_at_cut():
    grid = make_grid(10.0, 201)
    op, _ = build_line_operator(grid)
    M = op.matrix.copy()
    j = int(np.argmin(np.abs(grid.nodes - 4.0)))
    M[j, j] += 1.0
    other = DiscreteOperator(matrix=M, label="other", fiber_dim=op.fiber_dim, coords=op.coords, meta=op.meta)
    with pytest.raises(MismatchAtCut) as exc:
        cut_and_paste(op, other, 4.0)
    assert exc.value.node == j


def test_surgery_pair_agrees_near_cut():
    grid = make_grid(20.0, 201)
    op0, op1, tau = surgery_pair(grid, np.random.default_rng(3), cut=4.0, wall=True)
    op2, op3 = cut_and_paste(op0, op1, 4.0, tau)
    assert op2.dim == op0.dim
    assert not np.array_equal(op2.matrix, op3.matrix)


@pytest.mark.slow
@pytest.mark.parametrize("wall", [True, False])
def test_relative_index_sum_is_even(wall):
    grid = make_grid(20.0, 501)
    op0, op1, tau = surgery_pair(grid, np.random.default_rng(23), cut=4.0, wall=wall)
    op2, op3 = cut_and_paste(op0, op1, 4.0, tau)
    res = relative_index([op0, op1, op2, op3], FD_POLICY)
    assert res["sum_mod2"] == 0
    assert len(res["parities"]) == 4


@pytest.mark.parametrize("seed", [5, 6, 7])
def test_gapped_potential_satisfies_the_margin_bound(seed):
    D, _ = free_line_dirac(make_grid(10.0, 401), 2)
    phi = random_gapped_potential(np.random.default_rng(seed))
    margin = admissibility_margin(D, phi)
    assert margin > 0
    B = build_callias_ungraded(D, phi)
    rep = kernel_dimension(B.matrix, FD_POLICY, boundary=B.boundary)
    assert rep.kernel_dim == 0
    assert rep.interior_sigma_min**2 >= 0.9 * margin


@pytest.mark.parametrize("sign", [1, -1])
def test_model_kernel_matches_dense_operator_on_torus(sign):
    grid = make_grid(20.0, 401)
    D_N, tau_N, _ = build_torus_trivial(1)
    expected = kernel_dimension(D_N.plus_block() if sign > 0 else D_N.minus_block()).kernel_dim
    mk = model_operator_kernel(D_N, grid, sign, FD_POLICY)
    M = build_model_operator(D_N, grid, sign, tau_N)
    dense = kernel_dimension(M.matrix, FD_POLICY, boundary=M.boundary)
    assert mk.blocks > 1
    assert mk.kernel_dim == dense.kernel_dim == expected == 1
