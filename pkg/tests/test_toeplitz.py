import numpy as np
import pytest

from src.discretize import EPS2
from src.errors import DimensionMismatch, NoGap, NotInvertibleAtInfinity, SymmetryViolation
from src.harness.experiments import WINDING_RHO, identity, winding
from src.landau import make_landau_plane, perturbed_symbol
from src.quaternionic_core import make_anti_unitary
from src.spectra import DiscreteOperator, index_report, stabilization_sweep
from src.toeplitz import (
    Symbol,
    annulus_nodes,
    certify_gap,
    check_symbol,
    compare_at_truncation,
    compress,
    landau_model,
    lowest_level_projection,
    toeplitz_side,
    toeplitz_vs_callias,
)


# =========================================================
# Gap
# =========================================================
def test_certify_gap_diagonal():
    D = DiscreteOperator(matrix=np.diag([0.0, 0.0, 2.0, 2.0]).astype(complex))
    tau = make_anti_unitary(np.kron(np.eye(2), EPS2))
    proj = certify_gap(D, tau=tau)
    assert proj.rank == 2
    assert proj.gap.gamma == pytest.approx(2.0)
    assert proj.tau is not None and proj.tau.dim == 2


def test_certify_gap_identity_has_empty_kernel():
    proj = certify_gap(DiscreteOperator(matrix=np.eye(4, dtype=complex)))
    assert proj.rank == 0
    assert proj.gap.isolated


def test_certify_gap_needs_self_adjoint():
    with pytest.raises(SymmetryViolation):
        certify_gap(DiscreteOperator(matrix=np.array([[0.0, 1.0], [0.0, 0.0]], dtype=complex)))


def test_lowest_level_projection_checks_the_operator():
    plane = make_landau_plane(4)
    bogus = DiscreteOperator(matrix=np.eye(plane.dim, dtype=complex), label="bogus")
    with pytest.raises(NoGap):
        lowest_level_projection(plane, bogus, None)


# =========================================================
# Símbolos
# =========================================================
def test_check_symbol_identity_and_zero():
    nodes = annulus_nodes(1.0, 5.0)
    rep = check_symbol(identity(), nodes)
    assert rep.worst_inverse_norm == pytest.approx(1.0)
    zero = Symbol(lambda z: np.zeros((np.size(z), 2, 2), dtype=complex), name="zero")
    with pytest.raises(NotInvertibleAtInfinity):
        check_symbol(zero, nodes)


def test_check_symbol_winding_on_annulus():
    rep = check_symbol(winding(), annulus_nodes(WINDING_RHO, 4 * WINDING_RHO))
    assert rep.worst_inverse_norm <= 1.5
    assert rep.nodes_checked > 0


def test_check_symbol_symmetry():
    bad = Symbol(lambda z: np.broadcast_to(1j * np.eye(2), (np.size(z), 2, 2)).copy(), name="i")
    with pytest.raises(SymmetryViolation):
        check_symbol(bad, annulus_nodes(1.0, 2.0))


def test_check_symbol_bound():
    tight = Symbol(winding().sampler, 2, invertibility_radius=0.5, invertibility_bound=1.5, name="tight")
    with pytest.raises(NotInvertibleAtInfinity):
        check_symbol(tight, annulus_nodes(0.6, 2.0))


# =========================================================
# Compresión
# =========================================================
@pytest.fixture(scope="module")
def small_model():
    return landau_model(16, winding())


def test_identity_compresses_to_identity(small_model):
    model = small_model.with_symbol(identity())
    T = compress(model.projection, model.symbol)
    assert np.allclose(T, np.eye(T.shape[0]), atol=1e-10)
    assert index_report(toeplitz_side(model)).parity == 0


def test_winding_toeplitz_parity(small_model):
    rep = index_report(toeplitz_side(small_model))
    assert rep.raw_kernel_dim == 2
    assert rep.boundary_modes == 1
    assert rep.parity == 1


def test_with_symbol_reuses_projection(small_model):
    other = small_model.with_symbol(identity())
    assert other.projection is small_model.projection
    assert other.symbol.matrix is not None


@pytest.mark.slow
def test_winding_parity_is_class_invariant(rng):
    sizes = [20, 24, 28]
    models = {M: landau_model(M, winding(), level_cutoff=1) for M in sizes}
    base = stabilization_sweep(lambda M: toeplitz_side(models[M]), sizes)
    bumped = Symbol(perturbed_symbol(winding().sampler, rng), 2, WINDING_RHO, 1.5, name="bumped")
    check_symbol(bumped, annulus_nodes(WINDING_RHO, 4 * WINDING_RHO))
    assert stabilization_sweep(lambda M: toeplitz_side(models[M].with_symbol(bumped)), sizes) == base == 1


@pytest.mark.slow
def test_identity_toeplitz_vs_callias():
    sizes = [16, 20, 24]
    cmp = toeplitz_vs_callias(lambda M: landau_model(M, identity()), sizes)
    assert (cmp.ind_tf, cmp.ind_c, cmp.agree) == (0, 0, True)
    assert len(cmp.details["toeplitz"]) == 3


def test_bump_keeps_winding_parity_at_one_truncation(rng):
    model = landau_model(20, winding(), level_cutoff=1)
    bumped = Symbol(perturbed_symbol(winding().sampler, rng), 2, WINDING_RHO, 1.5, name="bumped")
    rep = index_report(toeplitz_side(model.with_symbol(bumped)))
    assert rep.parity == index_report(toeplitz_side(model)).parity == 1


# =========================================================
# Comparación en una truncación
# =========================================================
def test_compare_at_truncation_identity():
    model = landau_model(8, identity())
    cmp = compare_at_truncation(model.dirac, model.symbol, model.tau)
    assert (cmp.ind_tf, cmp.ind_c, cmp.agree) == (0, 0, True)


def test_compare_at_truncation_winding_toeplitz_side():
    model = landau_model(12, winding())
    cmp = compare_at_truncation(model.dirac, model.symbol, model.tau)
    assert cmp.ind_tf == 1


def test_compare_at_truncation_needs_assembled_symbol():
    model = landau_model(6, identity())
    with pytest.raises(DimensionMismatch):
        compare_at_truncation(model.dirac, identity(), model.tau)
