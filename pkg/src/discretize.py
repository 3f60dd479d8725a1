# src/discretize.py
from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
from scipy.linalg import toeplitz

from src.errors import CliffordViolation, FluxMismatch, InvalidParams, Z2LabError
from src.quaternionic_core import (
    AntiUnitary,
    Grading,
    check_odd_symmetric,
    make_anti_unitary,
    make_grading,
)
from src.spectra import DiscreteOperator

logger = logging.getLogger(__name__)

EPS2 = np.array([[0.0, 1.0], [-1.0, 0.0]], dtype=complex)  # theta_C: (z1, z2) -> (conj z2, -conj z1)
BOUNDARY_FRACTION = 1.0 / 3.0
BUILDER_TOL = 1e-12
FLUX_TOL = 1e-10


# =========================================================
# Mallas
# =========================================================
@dataclass(frozen=True)
class Grid1D:
    half_length: float
    points: int
    periodic: bool = False

    @property
    def m(self) -> int:
        return (self.points - 1) // 2

    @property
    def spacing(self) -> float:
        # en mallas periódicas el período es 2L
        if self.periodic:
            return 2.0 * self.half_length / self.points
        return 2.0 * self.half_length / (self.points - 1)

    @property
    def nodes(self) -> np.ndarray:
        return np.arange(-self.m, self.m + 1) * self.spacing


def make_grid(half_length: float, points: int, periodic: bool = False) -> Grid1D:
    if not half_length > 0:
        raise InvalidParams("half_length must be positive")
    if int(points) < 3 or int(points) % 2 == 0:
        raise InvalidParams(f"grid needs an odd point count >= 3, got {points}")
    return Grid1D(half_length=float(half_length), points=int(points), periodic=bool(periodic))


def grid_with_spacing(half_length: float, spacing: float) -> Grid1D:
    m = int(round(half_length / spacing))
    return make_grid(half_length, 2 * m + 1)


def grid_of(op: DiscreteOperator) -> Grid1D:
    meta = op.meta
    if "half_length" not in meta:
        raise InvalidParams(f"{op.label} was not assembled on a 1-D grid")
    return make_grid(meta["half_length"], meta["points"], meta.get("periodic", False))


def reflection_matrix(grid: Grid1D) -> np.ndarray:
    n = grid.points
    return np.eye(n)[::-1].copy()


def derivative_stencil(grid: Grid1D, kind: str = "staggered-forward") -> Tuple[np.ndarray, np.ndarray]:
    """
    Devuelve (D₊, D₋) con D₋ = −D₊† exactamente.
    staggered-forward: D₊ f_j = (f_{j+1} − f_j)/h, truncación dura (última fila −f_{N−1}/h).
    """
    n, h = grid.points, grid.spacing
    if kind in ("staggered-forward", "staggered-backward"):
        fwd = (np.diag(np.ones(n - 1), 1) - np.eye(n)) / h
        if grid.periodic:
            fwd[n - 1, 0] = 1.0 / h
        if kind == "staggered-backward":
            fwd = -fwd.T
        return fwd, -fwd.T
    if kind == "fourier":
        if not grid.periodic:
            raise InvalidParams("fourier stencil needs a periodic grid")
        k = np.arange(1, n)
        col = np.concatenate(([0.0], 0.5 * ((-1.0) ** k) / np.sin(k * np.pi / n)))
        D = (np.pi / grid.half_length) * toeplitz(col, -col)
        return D, -D.T
    raise InvalidParams(f"unknown stencil kind {kind!r}")


def boundary_layer(grid: Grid1D, fiber_dim: int = 1, fraction: float = BOUNDARY_FRACTION) -> Optional[np.ndarray]:
    if grid.periodic:
        return None
    t = grid.nodes
    w = (np.abs(t) > (1.0 - fraction) * grid.half_length).astype(float)
    return np.tile(w, fiber_dim)


# =========================================================
# Fibrados
# =========================================================
@dataclass(frozen=True, eq=False)
class FiberBundle:
    fiber_dim: int
    grading: Optional[Grading]
    theta_fiber: np.ndarray
    theta_square: int


def make_fiber_bundle(theta_fiber: np.ndarray, grading: Optional[Grading] = None) -> FiberBundle:
    T = np.asarray(theta_fiber, dtype=complex)
    k = T.shape[0]
    if T.shape != (k, k):
        raise InvalidParams("theta_fiber must be square")
    if np.linalg.norm(T.conj().T @ T - np.eye(k)) > BUILDER_TOL:
        raise Z2LabError("theta_fiber is not unitary")
    sq = T @ np.conj(T)
    if np.linalg.norm(sq + np.eye(k)) <= BUILDER_TOL:
        square = -1
    elif np.linalg.norm(sq - np.eye(k)) <= BUILDER_TOL:
        square = 1
    else:
        raise Z2LabError("theta_fiber squares neither to +1 nor to -1")
    if grading is not None:
        G = grading.involution()
        if np.linalg.norm(T @ np.conj(G) + G @ T) > BUILDER_TOL:
            raise Z2LabError("theta_fiber must exchange the graded summands")
    return FiberBundle(fiber_dim=k, grading=grading, theta_fiber=T, theta_square=square)


def channel_theta(channels: int) -> np.ndarray:
    return np.kron(np.eye(int(channels)), EPS2)


def tau_on_grid(fiber_J: np.ndarray, grid: Grid1D) -> AntiUnitary:
    return make_anti_unitary(np.kron(np.asarray(fiber_J, dtype=complex), reflection_matrix(grid)))


def fiber_field(samples: np.ndarray) -> np.ndarray:
    """Campo de endomorfismos (N, k, k) → matriz kN×kN con orden fibra-mayor."""
    S = np.asarray(samples, dtype=complex)
    n, k, _ = S.shape
    M = np.zeros((k * n, k * n), dtype=complex)
    idx = np.arange(n)
    for f in range(k):
        for g in range(k):
            M[f * n + idx, g * n + idx] = S[:, f, g]
    return M


def assemble_line(
    grid: Grid1D,
    samples: np.ndarray,
    fiber_J: np.ndarray,
    *,
    unit: complex = 1.0,
    kind: str = "staggered-forward",
    label: str = "line",
) -> Tuple[DiscreteOperator, AntiUnitary]:
    """unit·(d/dt ⊗ I + Φ) sobre funciones con valores en la fibra."""
    S = np.asarray(samples, dtype=complex)
    if S.shape[0] != grid.points:
        raise InvalidParams(f"{S.shape[0]} potential samples for {grid.points} nodes")
    k = S.shape[1]
    Dp, _ = derivative_stencil(grid, kind)
    M = unit * (np.kron(np.eye(k), Dp) + fiber_field(S))
    tau = tau_on_grid(fiber_J, grid)
    op = DiscreteOperator(
        matrix=M,
        label=label,
        boundary=boundary_layer(grid, k),
        fiber_dim=k,
        coords=grid.nodes,
        meta={
            "half_length": grid.half_length,
            "points": grid.points,
            "periodic": grid.periodic,
            "stencil": Dp,
            "potential": S,
        },
    )
    return op, tau


def build_dirac_line(
    grid: Grid1D, samples: np.ndarray, fiber_J: np.ndarray = EPS2, label: str = "dirac_line"
) -> Tuple[DiscreteOperator, AntiUnitary]:
    """B = i(Δ₊⊗I + Φ): ensamblado común de la recta, Callias en ℝ y cirugía."""
    return assemble_line(grid, samples, fiber_J, unit=1j, label=label)


def sigma_z_samples(values: np.ndarray) -> np.ndarray:
    a = np.asarray(values, dtype=float)
    S = np.zeros((a.size, 2, 2), dtype=complex)
    S[:, 0, 0] = a
    S[:, 1, 1] = -a
    return S


def build_line_operator(grid: Grid1D, sign: float = 1.0) -> Tuple[DiscreteOperator, AntiUnitary]:
    if grid.periodic:
        raise InvalidParams("the line operator lives on a non-periodic grid")
    samples = sigma_z_samples(sign * np.arctan(grid.nodes))
    op, tau = assemble_line(grid, samples, EPS2, label="line_operator")
    check_odd_symmetric(op.matrix, tau, BUILDER_TOL)
    return op, tau


def build_example_line_with_V(grid: Grid1D, sign: float = 1.0) -> Tuple[DiscreteOperator, AntiUnitary]:
    if grid.periodic:
        raise InvalidParams("the line operator lives on a non-periodic grid")
    samples = sigma_z_samples(sign * np.arctan(grid.nodes))
    op, tau = build_dirac_line(grid, samples, EPS2, label="line_with_V")
    check_odd_symmetric(op.matrix, tau, BUILDER_TOL)
    return op, tau


def build_circle_operator(grid: Grid1D, samples: np.ndarray, fiber_J: np.ndarray = EPS2):
    if not grid.periodic:
        raise InvalidParams("the circle operator needs a periodic grid")
    op, tau = assemble_line(grid, samples, fiber_J, kind="fourier", label="circle_operator")
    return op, tau


# =========================================================
# Toro trivial (Fourier)
# =========================================================
def torus_modes(K: int) -> np.ndarray:
    r = np.arange(-K, K + 1)
    m, n = np.meshgrid(r, r, indexing="ij")
    return np.stack([m.ravel(), n.ravel()], axis=1)


def _mode_permutation(modes: np.ndarray, flip: Tuple[int, int]) -> np.ndarray:
    lookup = {(int(a), int(b)): i for i, (a, b) in enumerate(modes)}
    P = np.zeros((len(modes), len(modes)))
    for i, (a, b) in enumerate(modes):
        P[i, lookup[(flip[0] * int(a), flip[1] * int(b))]] = 1.0
    return P


def graded_from_plus(Dp: np.ndarray) -> Tuple[np.ndarray, Grading]:
    """[[0, D⁺†],[D⁺, 0]] con E⁺ primero."""
    p = Dp.shape[1]
    q = Dp.shape[0]
    D = np.zeros((p + q, p + q), dtype=complex)
    D[p:, :p] = Dp
    D[:p, p:] = Dp.conj().T
    return D, make_grading([1] * p + [-1] * q)


def graded_tau(X: np.ndarray) -> AntiUnitary:
    n = X.shape[0]
    J = np.zeros((2 * n, 2 * n), dtype=complex)
    J[:n, n:] = X
    J[n:, :n] = -X.T
    return make_anti_unitary(J)


def build_torus_trivial(K: int) -> Tuple[DiscreteOperator, AntiUnitary, Grading]:
    if int(K) < 1:
        raise InvalidParams("cutoff K must be >= 1")
    modes = torus_modes(int(K))
    Dp = np.diag(1j * modes[:, 0] - modes[:, 1]).astype(complex)
    D, grading = graded_from_plus(Dp)
    # base trivial: conj invierte todos los modos
    tau = graded_tau(_mode_permutation(modes, (-1, -1)))
    op = DiscreteOperator(matrix=D, label=f"torus_trivial_K{K}", grading=grading, meta={"cutoff": int(K)})
    check_odd_symmetric(D, tau, BUILDER_TOL)
    return op, tau, grading


# =========================================================
# Toro con flujo
# =========================================================
@dataclass(frozen=True, eq=False)
class TorusLattice:
    sizes: Tuple[int, int]
    representation: str
    flux_n: int
    link_phases: Optional[Dict[str, np.ndarray]] = None

    @property
    def cutoff(self) -> int:
        return int(self.sizes[0])


def landau_gauge_links(Lt: int, Ls: int, n: int) -> Dict[str, np.ndarray]:
    """Gauge de Landau con la fase de pegado e^{−i n t} en la columna s = 2π ~ 0."""
    ht, hs = 2 * np.pi / Lt, 2 * np.pi / Ls
    t = np.arange(Lt) * ht
    s = np.arange(Ls) * hs
    Ut = np.exp(1j * n * s[None, :] * ht / (2 * np.pi)) * np.ones((Lt, 1))
    Us = np.ones((Lt, Ls), dtype=complex)
    Us[:, Ls - 1] = np.exp(-1j * n * t)
    return {"t": Ut, "s": Us}


def make_torus_lattice(
    sizes: Sequence[int],
    representation: str = "sites",
    flux_n: int = 0,
    link_phases: Optional[Dict[str, np.ndarray]] = None,
) -> TorusLattice:
    Lt, Ls = int(sizes[0]), int(sizes[-1])
    if Lt < 2 or Ls < 2:
        raise InvalidParams("torus sizes must be >= 2")
    if representation not in ("fourier", "sites", "landau"):
        raise InvalidParams(f"unknown torus representation {representation!r}")
    if representation == "fourier" and int(flux_n) != 0:
        raise FluxMismatch("the fourier representation carries no flux")
    if representation == "landau" and int(flux_n) == 0:
        raise FluxMismatch("the landau representation needs nonzero flux")
    if representation == "sites" and link_phases is None:
        link_phases = landau_gauge_links(Lt, Ls, int(flux_n))
    return TorusLattice(sizes=(Lt, Ls), representation=representation, flux_n=int(flux_n), link_phases=link_phases)


def plaquette_angles(lattice: TorusLattice) -> np.ndarray:
    Ut, Us = lattice.link_phases["t"], lattice.link_phases["s"]
    prod = Ut * np.roll(Us, -1, axis=0) * np.conj(np.roll(Ut, -1, axis=1)) * np.conj(Us)
    return np.angle(prod)


def audit_flux(lattice: TorusLattice) -> int:
    if lattice.representation != "sites":
        return lattice.flux_n
    Ut, Us = lattice.link_phases["t"], lattice.link_phases["s"]
    if np.max(np.abs(np.abs(Ut) - 1.0)) > FLUX_TOL or np.max(np.abs(np.abs(Us) - 1.0)) > FLUX_TOL:
        raise FluxMismatch("link phases must be unit complex numbers")
    total = -float(np.sum(plaquette_angles(lattice))) / (2 * np.pi)
    measured = int(round(total))
    if abs(total - measured) > 1e-8 or measured != lattice.flux_n:
        raise FluxMismatch(f"links carry flux {total:.6f}, expected {lattice.flux_n}")
    return measured


def _site(j: np.ndarray, k: np.ndarray, Ls: int) -> np.ndarray:
    return j * Ls + k


def wilson_dbar(lattice: TorusLattice, wilson_r: float) -> np.ndarray:
    """Q = ½(∇_s + i∇_t) + r·h·(−Δ_A) sobre los sitios (índice j·Ls + k)."""
    Lt, Ls = lattice.sizes
    ht, hs = 2 * np.pi / Lt, 2 * np.pi / Ls
    h = float(np.sqrt(ht * hs))
    Ut, Us = lattice.link_phases["t"], lattice.link_phases["s"]
    N = Lt * Ls
    Q = np.zeros((N, N), dtype=complex)
    j, k = np.meshgrid(np.arange(Lt), np.arange(Ls), indexing="ij")
    j, k = j.ravel(), k.ravel()
    x = _site(j, k, Ls)
    jp, jm = (j + 1) % Lt, (j - 1) % Lt
    kp, km = (k + 1) % Ls, (k - 1) % Ls
    fwd_t, bwd_t = Ut[j, k], np.conj(Ut[jm, k])
    fwd_s, bwd_s = Us[j, k], np.conj(Us[j, km])

    # ½ i ∇_t
    np.add.at(Q, (x, _site(jp, k, Ls)), 0.5j * fwd_t / (2 * ht))
    np.add.at(Q, (x, _site(jm, k, Ls)), -0.5j * bwd_t / (2 * ht))
    # ½ ∇_s
    np.add.at(Q, (x, _site(j, kp, Ls)), 0.5 * fwd_s / (2 * hs))
    np.add.at(Q, (x, _site(j, km, Ls)), -0.5 * bwd_s / (2 * hs))
    if wilson_r:
        c = wilson_r * h
        np.add.at(Q, (x, x), c * (2.0 / ht**2 + 2.0 / hs**2))
        np.add.at(Q, (x, _site(jp, k, Ls)), -c * fwd_t / ht**2)
        np.add.at(Q, (x, _site(jm, k, Ls)), -c * bwd_t / ht**2)
        np.add.at(Q, (x, _site(j, kp, Ls)), -c * fwd_s / hs**2)
        np.add.at(Q, (x, _site(j, km, Ls)), -c * bwd_s / hs**2)
    return Q


def site_reflection(Lt: int, Ls: int) -> np.ndarray:
    j, k = np.meshgrid(np.arange(Lt), np.arange(Ls), indexing="ij")
    src = _site(j.ravel(), k.ravel(), Ls)
    dst = _site((-j.ravel()) % Lt, k.ravel(), Ls)
    P = np.zeros((Lt * Ls, Lt * Ls))
    P[src, dst] = 1.0
    return P


def landau_ladder(n: int, K: int) -> Tuple[np.ndarray, np.ndarray]:
    """
    ∂̄ exacto sobre niveles de Landau (⊗ degeneración |n|) y la reversión j ↦ −j mod |n|.
    n > 0: A baja niveles 0..K → 0..K−1 (núcleo = nivel 0). n < 0: A sube niveles.
    """
    a = abs(int(n))
    B = a / (2 * np.pi)
    lower = np.zeros((K, K + 1))
    for lvl in range(1, K + 1):
        lower[lvl - 1, lvl] = np.sqrt(B * lvl / 2.0)
    L = lower if n > 0 else lower.T
    deg = np.zeros((a, a))
    deg[np.arange(a), (-np.arange(a)) % a] = 1.0
    return np.kron(L, np.eye(a)), deg


def _flux_plus_operator(Q: np.ndarray) -> np.ndarray:
    """D⁺(a, b) = (−Q† b, Q a) entre E⁺ = (Λ⁰⁰, Λ⁰¹) y E⁻ = (Λ⁰⁰, Λ⁰¹)."""
    r, c = Q.shape
    Dp = np.zeros((c + r, c + r), dtype=complex)
    Dp[:c, c:] = -Q.conj().T
    Dp[c:, :c] = Q
    return Dp


def build_torus_flux(
    n: int, lattice: TorusLattice, wilson_r: float = 0.5
) -> Tuple[DiscreteOperator, AntiUnitary, Grading]:
    n = int(n)
    if lattice.flux_n != n:
        raise FluxMismatch(f"lattice carries flux {lattice.flux_n}, operator requested {n}")
    rep = lattice.representation
    if rep == "sites":
        if wilson_r < 0:
            raise InvalidParams("wilson_r must be >= 0")
        audit_flux(lattice)
        Lt, Ls = lattice.sizes
        Q = wilson_dbar(lattice, wilson_r)
        P = site_reflection(Lt, Ls)
        X = np.kron(np.eye(2), P)
        tol = FLUX_TOL
    elif rep == "fourier":
        K = lattice.cutoff
        modes = torus_modes(K)
        # modos (m, k) de e^{i(m t + k s)}; ∂̄ = ½(∂_s + i∂_t)
        Q = np.diag(0.5 * (1j * modes[:, 1] - modes[:, 0])).astype(complex)
        P = _mode_permutation(modes, (1, -1))
        X = np.kron(np.eye(2), P)
        tol = BUILDER_TOL
    else:
        Q, deg = landau_ladder(n, lattice.cutoff)
        K = lattice.cutoff
        a_levels, b_levels = (K + 1, K) if n > 0 else (K, K + 1)
        X = np.block(
            [
                [np.kron(np.eye(a_levels), deg), np.zeros((a_levels * abs(n), b_levels * abs(n)))],
                [np.zeros((b_levels * abs(n), a_levels * abs(n))), np.kron(np.eye(b_levels), deg)],
            ]
        )
        tol = BUILDER_TOL

    Dp = _flux_plus_operator(Q)
    D, grading = graded_from_plus(Dp)
    tau = graded_tau(X)
    check_odd_symmetric(D, tau, tol)
    op = DiscreteOperator(
        matrix=D,
        label=f"torus_flux_{rep}_n{n}",
        grading=grading,
        meta={"dbar": Q, "flux_n": n, "representation": rep, "wilson_r": float(wilson_r), "sizes": lattice.sizes},
    )
    logger.debug("torus flux rep=%s n=%d dim=%d", rep, n, D.shape[0])
    return op, tau, grading


def dbar_kernel_counts(op: DiscreteOperator, policy) -> Dict[str, int]:
    from src.spectra import kernel_dimension

    Q = op.meta["dbar"]
    ker = kernel_dimension(Q, policy).kernel_dim
    coker = kernel_dimension(Q.conj().T, policy).kernel_dim
    return {"ker_dbar": ker, "ker_dbar_adjoint": coker, "index_dbar": ker - coker}


def low_mode_count(op: DiscreteOperator, fraction: float = 0.35) -> int:
    """Valores singulares de ∂̄ por debajo de fraction·σ del primer nivel de Landau continuo."""
    from src.spectra import singular_values

    n = abs(int(op.meta["flux_n"]))
    if n == 0:
        raise InvalidParams("low-mode count needs nonzero flux")
    cut = fraction * np.sqrt(n / (4 * np.pi))
    return int(np.count_nonzero(singular_values(op.meta["dbar"]) < cut))


# =========================================================
# Clifford
# =========================================================
def clifford_gamma(generators: Sequence[np.ndarray], tol: float = BUILDER_TOL) -> Grading:
    gens: List[np.ndarray] = [np.asarray(g, dtype=complex) for g in generators]
    if not gens:
        raise CliffordViolation("need at least one generator")
    k = gens[0].shape[0]
    eye = np.eye(k)
    for i, a in enumerate(gens):
        for j, b in enumerate(gens):
            target = -2.0 * eye if i == j else 0.0 * eye
            if np.linalg.norm(a @ b + b @ a - target) > tol:
                raise CliffordViolation(f"generators {i},{j} violate c(ei)c(ej) + c(ej)c(ei) = -2δij")
    n = len(gens)
    G = (1j ** ((n + 1) // 2)) * np.linalg.multi_dot(gens + [eye])
    if np.linalg.norm(G @ G - eye) > tol:
        raise CliffordViolation("chirality element does not square to the identity")
    if np.linalg.norm(G - np.diag(np.diag(G))) <= tol:
        return make_grading(np.sign(np.real(np.diag(G))).astype(int))
    w, V = np.linalg.eigh(0.5 * (G + G.conj().T))
    return make_grading(np.sign(w).astype(int), frame=V)


def cylinder_clifford(gamma: Grading) -> np.ndarray:
    """γ = i en el bloque +, −i en el bloque −."""
    c = np.diag(1j * gamma.signs.astype(complex))
    if gamma.frame is None:
        return c
    return gamma.frame @ c @ gamma.frame.conj().T
