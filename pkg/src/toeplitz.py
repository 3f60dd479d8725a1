# src/toeplitz.py
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, List, Optional, Sequence

import numpy as np

from src.errors import DimensionMismatch, NoGap, NotInvertibleAtInfinity, SymmetryViolation
from src.landau import (
    MIN_LEVELS,
    LandauPlane,
    landau_dirac,
    lowest_level_basis,
    make_landau_plane,
    symbol_matrix,
)
from src.quaternionic_core import AntiUnitary, check_odd_symmetric, induced_tau
from src.spectra import (
    DEFAULT_POLICY,
    DiscreteOperator,
    GapCertificate,
    KernelPolicy,
    kernel_dimension,
    stabilization_sweep,
    tau_index,
)

logger = logging.getLogger(__name__)

SYMBOL_TOL = 1e-12
COMPRESS_TOL = 1e-10


# =========================================================
# Tipos
# =========================================================
@dataclass(frozen=True, eq=False)
class Symbol:
    sampler: Callable[[np.ndarray], np.ndarray]
    matrix_size: int = 2
    invertibility_radius: float = 0.0
    invertibility_bound: float = 1.0
    name: str = "f"
    # M_f ya ensamblado sobre la base del modelo (opcional)
    matrix: Optional[np.ndarray] = field(default=None, repr=False)

    def on(self, plane: LandauPlane) -> "Symbol":
        return Symbol(
            sampler=self.sampler,
            matrix_size=self.matrix_size,
            invertibility_radius=self.invertibility_radius,
            invertibility_bound=self.invertibility_bound,
            name=self.name,
            matrix=symbol_matrix(plane, self.sampler),
        )


@dataclass(frozen=True, eq=False)
class KernelProjection:
    basis: np.ndarray
    gap: GapCertificate
    tau: Optional[AntiUnitary] = None

    @property
    def rank(self) -> int:
        return int(self.basis.shape[1])


@dataclass(frozen=True)
class SymbolReport:
    symmetry_residual: float
    worst_inverse_norm: float
    worst_node: int
    nodes_checked: int


@dataclass(frozen=True)
class ToeplitzComparison:
    ind_tf: int
    ind_c: int
    agree: bool
    details: Dict[str, List[Dict[str, Any]]] = field(default_factory=dict)


# =========================================================
# Gap y proyección al núcleo
# =========================================================
def certify_gap(
    D: DiscreteOperator, policy: KernelPolicy = DEFAULT_POLICY, tau: Optional[AntiUnitary] = None
) -> KernelProjection:
    """Proyección sobre ker D (sin filtro de borde: P ve todo el núcleo del operador truncado)."""
    A = np.asarray(D.matrix, dtype=complex)
    herm = float(np.linalg.norm(A - A.conj().T)) / max(1.0, float(np.linalg.norm(A)))
    if herm > 1e-10:
        raise SymmetryViolation(f"{D.label} is not self-adjoint (residual {herm:.3e})", residual=herm)
    rep = kernel_dimension(A, policy, want_basis=True)
    gamma = float(rep.interior_sigma_min)
    isolated = bool(rep.detection_gap >= policy.gap_min and gamma > 0)
    if not isolated:
        raise NoGap(f"zero is not isolated in the spectrum of {D.label} (gap ratio {rep.detection_gap:.3g})")
    basis = rep.kernel_basis
    tau_H = induced_tau(basis, tau) if (tau is not None and basis.shape[1] > 0) else None
    logger.debug("certified gap for %s: kernel=%d gamma=%.4g", D.label, rep.kernel_dim, gamma)
    return KernelProjection(basis=basis, gap=GapCertificate(rep.kernel_dim, gamma, isolated), tau=tau_H)


def projection_from_basis(basis: np.ndarray, gamma: float, tau: Optional[AntiUnitary] = None) -> KernelProjection:
    B = np.asarray(basis, dtype=complex)
    if np.linalg.norm(B.conj().T @ B - np.eye(B.shape[1])) > 1e-12:
        raise DimensionMismatch("kernel basis is not orthonormal")
    tau_H = induced_tau(B, tau) if tau is not None else None
    return KernelProjection(basis=B, gap=GapCertificate(B.shape[1], float(gamma), True), tau=tau_H)


# =========================================================
# Símbolos
# =========================================================
def check_symbol(
    sym: Symbol,
    base_nodes: np.ndarray,
    theta: Callable[[np.ndarray], np.ndarray] = np.conj,
) -> SymbolReport:
    z = np.asarray(base_nodes)
    F = np.asarray(sym.sampler(z), dtype=complex)
    Ft = np.asarray(sym.sampler(theta(z)), dtype=complex)
    k = sym.matrix_size
    if F.shape != (z.size, k, k):
        raise DimensionMismatch(f"symbol {sym.name} returned shape {F.shape}, expected {(z.size, k, k)}")
    scale = max(1.0, float(np.max(np.abs(F), initial=0.0)))
    res = float(np.max(np.abs(Ft - np.conj(np.transpose(F, (0, 2, 1)))), initial=0.0)) / scale
    if res > SYMBOL_TOL:
        raise SymmetryViolation(f"symbol {sym.name} violates f(θx) = f(x)* (residual {res:.3e})", residual=res)

    far = np.flatnonzero(np.abs(z) > sym.invertibility_radius)
    worst, worst_node = 0.0, -1
    for j in far:
        s = np.linalg.svd(F[j], compute_uv=False)
        if s[-1] <= SYMBOL_TOL:
            raise NotInvertibleAtInfinity(f"symbol {sym.name} is singular at node {int(j)}", node=int(j))
        inv = 1.0 / float(s[-1])
        if inv > worst:
            worst, worst_node = inv, int(j)
    if worst > sym.invertibility_bound * (1.0 + 1e-12):
        raise NotInvertibleAtInfinity(
            f"‖f⁻¹‖ = {worst:.4g} exceeds bound {sym.invertibility_bound:.4g} at node {worst_node}", node=worst_node
        )
    return SymbolReport(symmetry_residual=res, worst_inverse_norm=worst, worst_node=worst_node, nodes_checked=int(far.size))


def annulus_nodes(inner: float, outer: float, radial: int = 12, angular: int = 48) -> np.ndarray:
    r = np.linspace(inner, outer, radial)
    a = 2 * np.pi * np.arange(angular) / angular
    return (r[:, None] * np.exp(1j * a[None, :])).ravel()


# =========================================================
# Compresión de Toeplitz
# =========================================================
def compress(proj: KernelProjection, sym: Symbol) -> np.ndarray:
    """T_f = P M_f P escrito en la base del núcleo."""
    if sym.matrix is None:
        raise DimensionMismatch(f"symbol {sym.name} has no assembled multiplication operator")
    M = np.asarray(sym.matrix, dtype=complex)
    B = proj.basis
    if M.shape[1] != B.shape[0]:
        raise DimensionMismatch(f"multiplication operator of shape {M.shape} for kernel basis of length {B.shape[0]}")
    T = B.conj().T @ M @ B
    if proj.tau is not None and T.size:
        check_odd_symmetric(T, proj.tau, COMPRESS_TOL)
    return T


def toeplitz_operator(
    proj: KernelProjection, sym: Symbol, boundary: Optional[np.ndarray] = None, label: str = "toeplitz"
) -> DiscreteOperator:
    T = compress(proj, sym)
    W = None
    if boundary is not None:
        B = proj.basis
        W = B.conj().T @ (np.asarray(boundary)[:, None] * B)
    return DiscreteOperator(matrix=T, label=label, boundary=W)


# =========================================================
# Modelo de Landau: T_f contra C = D + iM_f
# =========================================================
@dataclass(frozen=True, eq=False)
class LandauToeplitzModel:
    plane: LandauPlane
    dirac: DiscreteOperator
    tau: AntiUnitary
    symbol: Symbol
    projection: Optional[KernelProjection] = None

    def with_symbol(self, symbol: Symbol) -> "LandauToeplitzModel":
        return LandauToeplitzModel(
            plane=self.plane, dirac=self.dirac, tau=self.tau, symbol=symbol.on(self.plane), projection=self.projection
        )


def lowest_level_projection(plane: LandauPlane, D: DiscreteOperator, tau: AntiUnitary) -> KernelProjection:
    """Proyección exacta al nivel más bajo; se comprueba D·B = 0 antes de usarla."""
    B = lowest_level_basis(plane)
    res = float(np.linalg.norm(D.matrix @ B))
    if res > COMPRESS_TOL:
        raise NoGap(f"lowest Landau level is not annihilated by {D.label} (residual {res:.3e})")
    return projection_from_basis(B, gamma=np.sqrt(2.0), tau=tau)


def landau_model(guiding_cutoff: int, symbol: Symbol, level_cutoff: Optional[int] = None) -> LandauToeplitzModel:
    plane = make_landau_plane(guiding_cutoff, level_cutoff)
    D, tau = landau_dirac(plane)
    return LandauToeplitzModel(
        plane=plane, dirac=D, tau=tau, symbol=symbol.on(plane), projection=lowest_level_projection(plane, D, tau)
    )


def toeplitz_side(model: LandauToeplitzModel, policy: KernelPolicy = DEFAULT_POLICY) -> DiscreteOperator:
    proj = model.projection or certify_gap(model.dirac, policy, model.tau)
    return toeplitz_operator(proj, model.symbol, model.dirac.boundary, label=f"T[{model.symbol.name}]")


def callias_side(model: LandauToeplitzModel) -> DiscreteOperator:
    if model.plane.level_cutoff < MIN_LEVELS:
        logger.warning(
            "level cutoff %d below %d: the Callias side may not resolve its kernel",
            model.plane.level_cutoff,
            MIN_LEVELS,
        )
    C = model.dirac.matrix + 1j * model.symbol.matrix
    check_odd_symmetric(C, model.tau, COMPRESS_TOL)
    return DiscreteOperator(matrix=C, label=f"C[{model.symbol.name}]", boundary=model.dirac.boundary)


def toeplitz_vs_callias(
    build: Callable[[int], LandauToeplitzModel],
    sizes: Sequence[int],
    policy: KernelPolicy = DEFAULT_POLICY,
) -> ToeplitzComparison:
    """Paridades de T_f y de C estabilizadas sobre las truncaciones dadas."""
    cache: Dict[int, LandauToeplitzModel] = {}

    def _model(size):
        if size not in cache:
            cache[size] = build(size)
        return cache[size]

    t_details: List[Dict[str, Any]] = []
    c_details: List[Dict[str, Any]] = []
    ind_tf = stabilization_sweep(lambda s: toeplitz_side(_model(s), policy), sizes, policy, details=t_details)
    ind_c = stabilization_sweep(lambda s: callias_side(_model(s)), sizes, policy, details=c_details)
    agree = ind_tf == ind_c
    if not agree:
        logger.warning("toeplitz parity %d disagrees with callias parity %d", ind_tf, ind_c)
    return ToeplitzComparison(ind_tf=ind_tf, ind_c=ind_c, agree=agree, details={"toeplitz": t_details, "callias": c_details})


def compare_at_truncation(
    D: DiscreteOperator,
    sym: Symbol,
    tau: Optional[AntiUnitary] = None,
    policy: KernelPolicy = DEFAULT_POLICY,
) -> ToeplitzComparison:
    """ind_τ T_f contra ind_τ (D + iM_f) en una sola truncación; sym ya ensamblado sobre la base de D."""
    if sym.matrix is None:
        raise DimensionMismatch(f"symbol {sym.name} has no assembled multiplication operator")
    if sym.matrix.shape != D.matrix.shape:
        raise DimensionMismatch(f"multiplication operator of shape {sym.matrix.shape} for {D.label} of shape {D.matrix.shape}")
    proj = certify_gap(D, policy, tau)
    T = toeplitz_operator(proj, sym, D.boundary, label=f"T[{sym.name}]")
    C = D.matrix + 1j * np.asarray(sym.matrix, dtype=complex)
    if tau is not None:
        check_odd_symmetric(C, tau, COMPRESS_TOL)
    ind_tf = tau_index(T, policy)
    ind_c = tau_index(DiscreteOperator(matrix=C, label=f"C[{sym.name}]", boundary=D.boundary), policy)
    return ToeplitzComparison(ind_tf=ind_tf, ind_c=ind_c, agree=ind_tf == ind_c)
