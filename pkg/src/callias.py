# src/callias.py
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Sequence, Tuple, Union

import numpy as np

from src.discretize import (
    EPS2,
    Grid1D,
    boundary_layer,
    build_dirac_line,
    channel_theta,
    derivative_stencil,
    fiber_field,
    grid_of,
    tau_on_grid,
)
from src.errors import (
    DimensionMismatch,
    InvalidParams,
    MismatchAtCut,
    NotAdmissible,
    SingularPotential,
    SymmetryViolation,
)
from src.quaternionic_core import (
    AntiUnitary,
    Grading,
    check_odd_symmetric,
    induced_tau,
    make_anti_unitary,
    make_grading,
    z2_index,
)
from src.spectra import DEFAULT_POLICY, DiscreteOperator, KernelPolicy, kernel_dimension

logger = logging.getLogger(__name__)

SYMMETRY_TOL = 1e-12
SINGULAR_TOL = 1e-10
CUT_TOL = 1e-12
CUT_WINDOW = 5

PAULI = (
    np.array([[0, 1], [1, 0]], dtype=complex),
    np.array([[0, -1j], [1j, 0]], dtype=complex),
    np.array([[1, 0], [0, -1]], dtype=complex),
)


# =========================================================
# Potenciales
# =========================================================
@dataclass(frozen=True, eq=False)
class Potential:
    """
    sampler(t) → array (N, k, k) de matrices hermitianas.
    essential_radius: fuera de |t| > K se exige la desigualdad de admisibilidad.
    margin: cota c declarada (0 = sin declarar).
    """

    sampler: Callable[[np.ndarray], np.ndarray]
    essential_radius: float = 0.0
    margin: float = 0.0
    fiber_theta: np.ndarray = field(default_factory=lambda: EPS2.copy())
    name: str = "phi"

    def samples(self, nodes: np.ndarray) -> np.ndarray:
        S = np.asarray(self.sampler(np.asarray(nodes, dtype=float)), dtype=complex)
        if S.ndim != 3 or S.shape[0] != len(nodes) or S.shape[1] != S.shape[2]:
            raise DimensionMismatch(f"potential {self.name} returned shape {S.shape}")
        return S

    def scaled(self, lam: float) -> "Potential":
        return Potential(
            sampler=lambda t, f=self.sampler: lam * np.asarray(f(t)),
            essential_radius=self.essential_radius,
            margin=0.0,
            fiber_theta=self.fiber_theta,
            name=f"{lam:g}*{self.name}",
        )

    def negated(self) -> "Potential":
        return self.scaled(-1.0)


def check_potential_symmetry(samples: np.ndarray, theta: np.ndarray, tol: float = SYMMETRY_TOL) -> float:
    """Hermiticidad y θ conj(Φ(−t)) θ⁻¹ = Φ(t) nodo a nodo."""
    S = np.asarray(samples, dtype=complex)
    scale = max(1.0, float(np.max(np.abs(S), initial=0.0)))
    herm = float(np.max(np.abs(S - np.conj(np.transpose(S, (0, 2, 1)))), initial=0.0)) / scale
    if herm > tol:
        raise SymmetryViolation(f"potential is not Hermitian (residual {herm:.3e})", residual=herm)
    mirrored = np.einsum("ab,nbc,dc->nad", theta, np.conj(S[::-1]), np.conj(theta))
    res = float(np.max(np.abs(mirrored - S), initial=0.0)) / scale
    if res > tol:
        raise SymmetryViolation(f"potential does not commute with tau (residual {res:.3e})", residual=res)
    return res


def quaternion_samples(phi0: np.ndarray, vec: np.ndarray) -> np.ndarray:
    """Φ = φ₀·I + φ⃗·σ sobre ℂ²; τ-compatible si φ₀ es par y φ⃗ impar."""
    phi0 = np.asarray(phi0, dtype=float)
    vec = np.asarray(vec, dtype=float)
    S = phi0[:, None, None] * np.eye(2)[None, :, :]
    for a in range(3):
        S = S + vec[:, a, None, None] * PAULI[a][None, :, :]
    return S.astype(complex)


def block_channels(*channels: np.ndarray) -> np.ndarray:
    """Suma directa por nodo de campos (N, k_i, k_i)."""
    n = channels[0].shape[0]
    k = sum(c.shape[1] for c in channels)
    S = np.zeros((n, k, k), dtype=complex)
    o = 0
    for c in channels:
        d = c.shape[1]
        S[:, o : o + d, o : o + d] = c
        o += d
    return S


def smooth_step(x: np.ndarray) -> np.ndarray:
    """0 para x ≤ 0, 1 para x ≥ 1, C¹ en medio."""
    y = np.clip(np.asarray(x, dtype=float), 0.0, 1.0)
    return y * y * (3.0 - 2.0 * y)


def arctan_wall(sign: float = 1.0) -> Potential:
    return Potential(
        sampler=lambda t: quaternion_samples(np.zeros_like(t), np.stack([0 * t, 0 * t, sign * np.arctan(t)], axis=1)),
        essential_radius=1.0,
        name="arctan_wall" if sign > 0 else "-arctan_wall",
    )


def random_gapped_potential(rng: np.random.Generator) -> Potential:
    """Φ = φ₀ + 0.25·tanh(t)·n̂·σ con φ₀ ≥ 1.3 par: admisible en todos los nodos."""
    c0 = float(rng.uniform(1.3, 2.0))
    bump = float(rng.uniform(0.0, 0.3))
    width = float(rng.uniform(1.0, 3.0))
    n_hat = rng.normal(size=3)
    n_hat /= np.linalg.norm(n_hat)

    def sampler(t):
        phi0 = c0 + bump * np.exp(-((t / width) ** 2))
        vec = 0.25 * np.tanh(t)[:, None] * n_hat[None, :]
        return quaternion_samples(phi0, vec)

    return Potential(sampler=sampler, essential_radius=0.0, name=f"gapped(c0={c0:.3f})")


# =========================================================
# Admisibilidad
# =========================================================
def local_commutator_norms(stencil: np.ndarray, samples: np.ndarray) -> np.ndarray:
    """‖bloque de filas del nodo j de [Δ₊⊗I, Φ]‖₂ para cada nodo."""
    S = np.asarray(samples, dtype=complex)
    n, k, _ = S.shape
    D = np.kron(np.eye(k), stencil)
    F = fiber_field(S)
    C = D @ F - F @ D
    out = np.empty(n)
    for j in range(n):
        rows = np.arange(k) * n + j
        out[j] = np.linalg.norm(C[rows, :], ord=2)
    return out


def node_margins(stencil: np.ndarray, samples: np.ndarray) -> np.ndarray:
    S = np.asarray(samples, dtype=complex)
    lam = np.min(np.abs(np.linalg.eigvalsh(S)), axis=1) ** 2
    return lam - local_commutator_norms(stencil, S)


def admissibility_margin(
    D: DiscreteOperator,
    phi: Union[Potential, np.ndarray],
    outside: Optional[Sequence[int]] = None,
) -> float:
    """
    min sobre los nodos de fuera de (λ_min(Φ²) − ‖[D,Φ](x)‖). Si outside es None se usan
    los nodos con |t| > radio esencial.
    """
    grid = grid_of(D)
    t = grid.nodes
    S = phi.samples(t) if isinstance(phi, Potential) else np.asarray(phi, dtype=complex)
    if S.shape[0] != t.size:
        raise DimensionMismatch(f"{S.shape[0]} potential samples for {t.size} nodes")
    stencil = D.meta.get("stencil")
    if stencil is None:
        stencil, _ = derivative_stencil(grid)
    if outside is None:
        radius = phi.essential_radius if isinstance(phi, Potential) else 0.0
        idx = np.flatnonzero(np.abs(t) >= radius - 1e-12)
    else:
        idx = np.asarray(outside, dtype=int)
    if idx.size == 0:
        raise InvalidParams("no nodes outside the essential support")
    margins = node_margins(stencil, S)[idx]
    worst = int(np.argmin(margins))
    value = float(margins[worst])
    if value <= 0:
        raise NotAdmissible(
            f"admissibility fails at t={t[idx[worst]]:.4g} (margin {value:.3e})", node=int(idx[worst]), margin=value
        )
    logger.debug("admissibility margin=%.4g at t=%.4g", value, t[idx[worst]])
    return value


# =========================================================
# Operadores de Callias
# =========================================================
def build_callias_ungraded(
    D: DiscreteOperator, phi: Potential, tau: Optional[AntiUnitary] = None, *, check_margin: bool = True
) -> DiscreteOperator:
    """B = D + iΦ con D = i·Δ₊⊗I."""
    grid = grid_of(D)
    S = phi.samples(grid.nodes)
    k = S.shape[1]
    if k * grid.points != D.dim:
        raise DimensionMismatch(f"potential fiber {k} does not match operator of dimension {D.dim}")
    check_potential_symmetry(S, phi.fiber_theta)
    margin = admissibility_margin(D, phi) if check_margin else float("nan")
    if check_margin and margin < phi.margin:
        raise NotAdmissible(f"margin {margin:.3e} below declared {phi.margin:.3e}", margin=margin)
    B = D.matrix + 1j * fiber_field(S)
    tau = tau or tau_on_grid(phi.fiber_theta, grid)
    check_odd_symmetric(B, tau, SYMMETRY_TOL)
    meta = dict(D.meta)
    meta.update({"potential": S, "margin": margin})
    return DiscreteOperator(
        matrix=B,
        label=f"callias[{phi.name}]",
        boundary=D.boundary,
        fiber_dim=k,
        coords=D.coords,
        meta=meta,
    )


def free_line_dirac(grid: Grid1D, fiber_dim: int = 2) -> Tuple[DiscreteOperator, AntiUnitary]:
    zero = np.zeros((grid.points, fiber_dim, fiber_dim), dtype=complex)
    return build_dirac_line(grid, zero, channel_theta(fiber_dim // 2), label="free_dirac")


def double_graded(B: DiscreteOperator, tau: AntiUnitary) -> Tuple[DiscreteOperator, AntiUnitary]:
    """[[0, B†],[B, 0]] sobre E⊕E con τ̂ = [[0, J],[J, 0]]; ind_τ coincide con el de B."""
    M = np.asarray(B.matrix, dtype=complex)
    n = M.shape[0]
    D = np.zeros((2 * n, 2 * n), dtype=complex)
    D[n:, :n] = M
    D[:n, n:] = M.conj().T
    J = np.zeros((2 * n, 2 * n), dtype=complex)
    J[:n, n:] = tau.J
    J[n:, :n] = tau.J
    tau_hat = make_anti_unitary(J)
    grading = make_grading([1] * n + [-1] * n)
    W = None
    if B.boundary is not None:
        W = np.concatenate([B.boundary, B.boundary]) if B.boundary.ndim == 1 else np.kron(np.eye(2), B.boundary)
    check_odd_symmetric(D, tau_hat, SYMMETRY_TOL)
    return DiscreteOperator(matrix=D, label=f"graded[{B.label}]", grading=grading, boundary=W, meta=dict(B.meta)), tau_hat


# =========================================================
# Reducción a la hipersuperficie
# =========================================================
@dataclass(frozen=True, eq=False)
class BoundaryReduction:
    proj_plus: np.ndarray
    proj_minus: np.ndarray
    alpha: Grading
    reduced_operator: DiscreteOperator
    basis: np.ndarray
    reduced_tau: Optional[AntiUnitary] = None


def _per_node(values: np.ndarray, nodes: int) -> np.ndarray:
    V = np.asarray(values, dtype=complex)
    if V.ndim == 2:
        return np.broadcast_to(V, (nodes,) + V.shape).copy()
    if V.shape[0] != nodes:
        raise DimensionMismatch(f"{V.shape[0]} samples for {nodes} hypersurface nodes")
    return V


def _positive_frame(P: np.ndarray, tol: float) -> np.ndarray:
    if np.max(np.abs(P - np.diag(np.diag(P))), initial=0.0) == 0.0:
        w = np.real(np.diag(P))
        return np.eye(P.shape[0])[:, w > tol]
    w, V = np.linalg.eigh(P)
    return V[:, w > tol]


def boundary_reduction(
    phi: np.ndarray,
    gamma: np.ndarray,
    connection: Optional[np.ndarray] = None,
    tau: Optional[AntiUnitary] = None,
    *,
    tol: float = SINGULAR_TOL,
) -> BoundaryReduction:
    """
    phi, gamma: matrices de fibra (k×k) o muestras por nodo (n, k, k) sobre la hipersuperficie.
    connection: operador de Dirac de la hipersuperficie sobre E_N (orden fibra-mayor);
    se proyecta a E_{N+} y se gradúa con α = −iγ.
    """
    phi = np.asarray(phi, dtype=complex)
    nodes = 1 if phi.ndim == 2 else phi.shape[0]
    Phi = _per_node(phi, nodes)
    Gam = _per_node(gamma, nodes)
    k = Phi.shape[1]

    evals = np.linalg.eigvalsh(Phi)
    small = np.min(np.abs(evals), axis=1)
    bad = np.flatnonzero(small <= tol * max(1.0, float(np.max(np.abs(evals)))))
    if bad.size:
        raise SingularPotential(f"potential is not invertible at hypersurface node {int(bad[0])}", node=int(bad[0]))

    # proyectores espectrales por nodo
    Pp = np.zeros_like(Phi)
    for j in range(nodes):
        w, V = np.linalg.eigh(Phi[j])
        Vp = V[:, w > 0]
        Pp[j] = Vp @ Vp.conj().T
        if np.max(np.abs(Phi[j] - np.diag(np.diag(Phi[j]))), initial=0.0) == 0.0:
            Pp[j] = np.diag((np.real(np.diag(Phi[j])) > 0).astype(float))
    proj_plus = fiber_field(Pp)
    proj_minus = np.eye(k * nodes) - proj_plus

    alpha_full = fiber_field(-1j * Gam)
    if np.linalg.norm(alpha_full @ alpha_full - np.eye(k * nodes)) > 1e-10:
        raise SymmetryViolation("alpha = -i*gamma does not square to the identity")
    if np.linalg.norm(alpha_full @ proj_plus - proj_plus @ alpha_full) > 1e-10:
        raise SymmetryViolation("gamma does not commute with the spectral projection of phi")

    basis = _positive_frame(proj_plus, 0.5)
    a_red = basis.conj().T @ alpha_full @ basis
    if np.max(np.abs(a_red - np.diag(np.diag(a_red))), initial=0.0) > 1e-12:
        _, U = np.linalg.eigh(0.5 * (a_red + a_red.conj().T))
        basis = basis @ U
        a_red = basis.conj().T @ alpha_full @ basis
    signs = np.where(np.real(np.diag(a_red)) > 0, 1, -1)
    order = np.concatenate([np.flatnonzero(signs > 0), np.flatnonzero(signs < 0)])
    basis = basis[:, order]
    alpha = make_grading(signs[order])

    if connection is None:
        reduced = np.zeros((basis.shape[1], basis.shape[1]), dtype=complex)
    else:
        C = np.asarray(connection, dtype=complex)
        if C.shape != (k * nodes, k * nodes):
            raise DimensionMismatch(f"connection of shape {C.shape} for bundle of dimension {k * nodes}")
        reduced = basis.conj().T @ C @ basis
    reduced_tau = induced_tau(basis, tau) if tau is not None else None
    op = DiscreteOperator(matrix=reduced, label="hypersurface_dirac", grading=alpha)
    logger.debug("boundary reduction rank=%d plus=%d", basis.shape[1], alpha.plus_dim)
    return BoundaryReduction(
        proj_plus=proj_plus, proj_minus=proj_minus, alpha=alpha, reduced_operator=op, basis=basis, reduced_tau=reduced_tau
    )


# =========================================================
# Operador modelo en el cilindro N × ℝ
# =========================================================
def mass_profile(r: np.ndarray) -> np.ndarray:
    return np.tanh(3.0 * np.asarray(r, dtype=float))


def model_tau(tau_N: AntiUnitary, grid: Grid1D) -> AntiUnitary:
    return make_anti_unitary(np.kron(tau_N.J, np.eye(grid.points)))


def build_model_operator(
    D_N: DiscreteOperator,
    grid: Grid1D,
    sign: int = 1,
    tau_N: Optional[AntiUnitary] = None,
    *,
    scale: float = 1.0,
) -> DiscreteOperator:
    """M± = D_N⊗1 + diag(iΔ₊ en E⁺, −iΔ₋ en E⁻) ± i·1⊗h, orden fibra-mayor (fibra = base de D_N)."""
    if D_N.grading is None:
        raise InvalidParams("model operator needs a graded hypersurface operator")
    if grid.periodic:
        raise InvalidParams("model operator lives on a non-periodic r-grid")
    A = np.asarray(D_N.matrix, dtype=complex)
    d, n = A.shape[0], grid.points
    Dp, Dm = derivative_stencil(grid)
    plus = (D_N.grading.signs > 0).astype(float)
    h = scale * mass_profile(grid.nodes)
    M = (
        np.kron(A, np.eye(n))
        + np.kron(np.diag(plus), 1j * Dp)
        + np.kron(np.diag(1.0 - plus), -1j * Dm)
        + (1j * np.sign(sign)) * np.kron(np.eye(d), np.diag(h))
    )
    if tau_N is not None:
        check_odd_symmetric(M, model_tau(tau_N, grid), SYMMETRY_TOL)
    return DiscreteOperator(
        matrix=M,
        label=f"model{'+' if sign > 0 else '-'}[{D_N.label}]",
        boundary=boundary_layer(grid, d),
        fiber_dim=d,
        coords=grid.nodes,
        meta={"half_length": grid.half_length, "points": grid.points, "periodic": False, "sign": int(np.sign(sign))},
    )


@dataclass(frozen=True)
class ModelKernel:
    kernel_dim: int
    raw_kernel_dim: int
    boundary_modes: int
    min_detection_gap: float
    blocks: int

    @property
    def parity(self) -> int:
        return self.kernel_dim % 2


def _group_values(values: np.ndarray, rtol: float = 1e-9) -> List[Tuple[float, int]]:
    out: List[Tuple[float, int]] = []
    for v in np.sort(values):
        if out and abs(v - out[-1][0]) <= rtol * max(1.0, abs(v)):
            out[-1] = (out[-1][0], out[-1][1] + 1)
        else:
            out.append((float(v), 1))
    return out


def model_operator_kernel(
    D_N: DiscreteOperator,
    grid: Grid1D,
    sign: int = 1,
    policy: KernelPolicy = DEFAULT_POLICY,
    *,
    scale: float = 1.0,
) -> ModelKernel:
    """
    Núcleo de M± por separación de variables: cada valor singular λ de D_N⁺ da un bloque
    de dos canales en r; ker D_N⁺ y ker D_N⁻ dan bloques de un canal.
    """
    Dp_N = D_N.plus_block()
    s = np.linalg.svd(Dp_N, compute_uv=False)
    smax = float(s[0]) if s.size else 1.0
    nz = s[s > policy.rtol * max(1.0, smax)]
    rank = nz.size
    ker_plus = D_N.grading.plus_dim - rank
    ker_minus = D_N.grading.minus_dim - rank

    Dp, Dm = derivative_stencil(grid)
    n = grid.points
    sg = float(np.sign(sign))
    H = np.diag(scale * mass_profile(grid.nodes))
    W1 = boundary_layer(grid, 1)
    W2 = boundary_layer(grid, 2)
    single_plus = 1j * Dp + 1j * sg * H
    single_minus = -1j * Dm + 1j * sg * H

    total = raw = edge = blocks = 0
    gap = float("inf")

    def _count(mat, W, mult):
        nonlocal total, raw, edge, blocks, gap
        rep = kernel_dimension(mat, policy, boundary=W)
        total += mult * rep.kernel_dim
        raw += mult * rep.raw_kernel_dim
        edge += mult * rep.boundary_modes
        gap = min(gap, rep.detection_gap)
        blocks += 1

    if ker_plus:
        _count(single_plus, W1, ker_plus)
    if ker_minus:
        _count(single_minus, W1, ker_minus)
    for lam, mult in _group_values(nz):
        block = np.block([[single_plus, lam * np.eye(n)], [lam * np.eye(n), single_minus]])
        _count(block, W2, mult)
    logger.debug("model kernel sign=%+d total=%d raw=%d blocks=%d", int(sg), total, raw, blocks)
    return ModelKernel(kernel_dim=total, raw_kernel_dim=raw, boundary_modes=edge, min_detection_gap=gap, blocks=blocks)


# =========================================================
# Cortar y pegar en la recta
# =========================================================
def cut_and_paste(
    op0: DiscreteOperator,
    op1: DiscreteOperator,
    cut: float,
    tau: Optional[AntiUnitary] = None,
    *,
    window: int = CUT_WINDOW,
) -> Tuple[DiscreteOperator, DiscreteOperator]:
    """
    La hipersuperficie de corte es {−cut, cut}. op2 = op0 en |t| < cut y op1 fuera;
    op3 es el intercambio complementario.
    """
    A0, A1 = np.asarray(op0.matrix), np.asarray(op1.matrix)
    if A0.shape != A1.shape or op0.coords is None or op1.coords is None or not np.array_equal(op0.coords, op1.coords):
        raise DimensionMismatch("surgery needs operators on identical grids")
    t = np.asarray(op0.coords)
    n = t.size
    k = op0.fiber_dim
    if k * n != A0.shape[0]:
        raise DimensionMismatch("fiber dimension does not match the grid")
    if not 0 < cut < float(np.max(t)):
        raise InvalidParams(f"cut {cut} outside the grid")

    half = window // 2
    centre = int(np.argmin(np.abs(t - cut)))
    near = np.unique(np.concatenate([np.arange(centre - half, centre + half + 1), n - 1 - np.arange(centre - half, centre + half + 1)]))
    near = near[(near >= 0) & (near < n)]
    for j in near:
        rows = np.arange(k) * n + j
        diff = float(np.max(np.abs(A0[rows, :] - A1[rows, :]), initial=0.0))
        if diff > CUT_TOL:
            raise MismatchAtCut(f"operators differ by {diff:.3e} at t={t[j]:.4g}", node=int(j))

    inside = np.abs(t) < cut
    row_inside = np.tile(inside, k)
    M2 = np.where(row_inside[:, None], A0, A1)
    M3 = np.where(row_inside[:, None], A1, A0)
    ops = []
    for label, M in (("op2", M2), ("op3", M3)):
        if tau is not None:
            check_odd_symmetric(M, tau, SYMMETRY_TOL)
        meta = dict(op0.meta)
        meta["cut"] = float(cut)
        ops.append(
            DiscreteOperator(matrix=M, label=label, boundary=op0.boundary, fiber_dim=k, coords=op0.coords, meta=meta)
        )
    return ops[0], ops[1]


def surgery_pair(
    grid: Grid1D, rng: np.random.Generator, *, cut: float = 4.0, wall: bool = True
) -> Tuple[DiscreteOperator, DiscreteOperator, AntiUnitary]:
    """
    Dos canales ℂ²: el canal 1 lleva la pared arctan (op1 con modulación en la cola);
    el canal 2 es φ₀ = 1 dentro y, si wall, op1 añade 2·tanh(t)·σ_z más allá de |t| = cut + 2.
    """
    t = grid.nodes
    a = np.arctan(t)
    tail = smooth_step((np.abs(t) - (cut + 2.0)) / 2.0)
    amp = float(rng.uniform(0.2, 0.8))
    freq = float(rng.uniform(0.5, 2.0))
    mod = 1.0 + amp * tail * np.cos(freq * t) ** 2

    ch1_0 = quaternion_samples(0 * t, np.stack([0 * t, 0 * t, a], axis=1))
    ch1_1 = quaternion_samples(0 * t, np.stack([0 * t, 0 * t, a * mod], axis=1))
    ch2_0 = quaternion_samples(np.ones_like(t), np.zeros((t.size, 3)))
    b = 2.0 * np.tanh(t) * tail if wall else 0 * t
    ch2_1 = quaternion_samples(np.ones_like(t), np.stack([0 * t, 0 * t, b], axis=1))

    theta = channel_theta(2)
    op0, tau = build_dirac_line(grid, block_channels(ch1_0, ch2_0), theta, label="op0")
    op1, _ = build_dirac_line(grid, block_channels(ch1_1, ch2_1), theta, label="op1")
    check_odd_symmetric(op0.matrix, tau, SYMMETRY_TOL)
    check_odd_symmetric(op1.matrix, tau, SYMMETRY_TOL)
    return op0, op1, tau


def relative_index(
    ops: Sequence[DiscreteOperator], policy: KernelPolicy
) -> Dict[str, Union[int, List[int]]]:
    dims = []
    for op in ops:
        rep = kernel_dimension(op.matrix, policy, boundary=op.boundary)
        z2_index(rep)
        dims.append(rep.kernel_dim)
    return {"kernel_dims": dims, "parities": [d % 2 for d in dims], "sum_mod2": sum(dims) % 2}
