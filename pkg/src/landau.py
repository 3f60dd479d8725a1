# src/landau.py
from __future__ import annotations

import logging
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Optional, Tuple

import numpy as np
from scipy.special import eval_genlaguerre, gammaln, roots_hermite, roots_legendre

from src.callias import PAULI
from src.discretize import BOUNDARY_FRACTION, EPS2
from src.errors import InvalidParams
from src.quaternionic_core import AntiUnitary, check_odd_symmetric, make_anti_unitary
from src.spectra import DiscreteOperator

logger = logging.getLogger(__name__)

MIN_LEVELS = 14


# =========================================================
# Orbitales del plano con flujo uniforme (longitud magnética 1)
# =========================================================
def orbital(n: int, m: int, z: np.ndarray) -> np.ndarray:
    """
    ψ_{n,m} = (a†)ⁿ φ_m / √n!, φ_m = z^m e^{−|z|²/4} / √(2π 2^m m!).
    Coeficientes reales: conj ψ(z) = ψ(z̄).
    """
    z = np.asarray(z, dtype=complex)
    u = np.abs(z) ** 2 / 2.0
    log_norm = -0.5 * (np.log(2 * np.pi) + m * np.log(2.0) + gammaln(m + 1)) + 0.5 * n * np.log(2.0) + 0.5 * gammaln(n + 1)
    if n <= m:
        p = m - n
        sign = (-1.0) ** n
        lag = eval_genlaguerre(n, p, u)
        phase = z**p
    else:
        # L_n^{(−k)}(u) = (−u)^k (m!/n!) L_m^{(k)}(u)
        k = n - m
        log_norm += gammaln(m + 1) - gammaln(n + 1) - k * np.log(2.0)
        sign = (-1.0) ** (n + k)
        lag = eval_genlaguerre(m, k, u)
        phase = np.conj(z) ** k
    return sign * np.exp(log_norm - u / 2.0) * phase * lag


@lru_cache(maxsize=8)
def _quadrature(order: int) -> Tuple[np.ndarray, np.ndarray]:
    """Nodos z y pesos para ∫ g d²z (Gauss–Hermite tensorial, peso gaussiano retirado)."""
    s, w = roots_hermite(order)
    logw = np.log(w) + s**2 + 0.5 * np.log(2.0)
    x = np.sqrt(2.0) * s
    X, Y = np.meshgrid(x, x, indexing="ij")
    LW = logw[:, None] + logw[None, :]
    return (X + 1j * Y).ravel(), np.exp(LW).ravel()


def _disc_quadrature(radius: float, radial: int, angular: int) -> Tuple[np.ndarray, np.ndarray]:
    """Nodos z y pesos para ∫_{|z|<radius} g d²z: Gauss–Legendre en r, trapecio en θ."""
    x, w = roots_legendre(radial)
    r = 0.5 * radius * (x + 1.0)
    wr = 0.5 * radius * w * r
    theta = 2 * np.pi * np.arange(angular) / angular
    Z = r[:, None] * np.exp(1j * theta)[None, :]
    W = np.repeat(wr[:, None], angular, axis=1) * (2 * np.pi / angular)
    return Z.ravel(), W.ravel()


def _orbital_amplitudes(z: np.ndarray, root: np.ndarray, guiding_cutoff: int, levels: int) -> np.ndarray:
    M1 = guiding_cutoff + 1
    A = np.empty((z.size, levels * M1), dtype=complex)
    for n in range(levels):
        for m in range(M1):
            A[:, n * M1 + m] = root * orbital(n, m, z)
    return A


# =========================================================
# Modelo truncado
# =========================================================
@dataclass(frozen=True, eq=False)
class LandauPlane:
    guiding_cutoff: int
    level_cutoff: int
    quad_order: int
    z: np.ndarray
    # filas = nodos de cuadratura, columnas = orbitales (·√peso)
    amp_plus: np.ndarray
    amp_minus: np.ndarray

    @property
    def n_plus(self) -> int:
        return (self.level_cutoff + 1) * (self.guiding_cutoff + 1)

    @property
    def n_minus(self) -> int:
        return self.level_cutoff * (self.guiding_cutoff + 1)

    @property
    def dim_E(self) -> int:
        return self.n_plus + self.n_minus

    @property
    def dim(self) -> int:
        return 2 * self.dim_E

    def index(self, n: int, m: int) -> int:
        return n * (self.guiding_cutoff + 1) + m


def make_landau_plane(guiding_cutoff: int, level_cutoff: Optional[int] = None, quad_order: Optional[int] = None) -> LandauPlane:
    M = int(guiding_cutoff)
    if M < 2:
        raise InvalidParams("guiding-centre cutoff must be >= 2")
    K = M - 2 if level_cutoff is None else int(level_cutoff)
    if K < 1:
        raise InvalidParams("level cutoff must be >= 1")
    order = 2 * M + 8 if quad_order is None else int(quad_order)
    z, wts = _quadrature(order)
    root = np.sqrt(wts)
    plane = LandauPlane(
        guiding_cutoff=M,
        level_cutoff=K,
        quad_order=order,
        z=z,
        amp_plus=_orbital_amplitudes(z, root, M, K + 1),
        amp_minus=_orbital_amplitudes(z, root, M, K),
    )
    logger.debug("landau plane M=%d K=%d quad=%d dim=%d", M, K, order, plane.dim)
    return plane


def ladder_plus(plane: LandauPlane) -> np.ndarray:
    """D⁺ψ_{n,m} = √(2n) ψ_{n−1,m}: E⁺ (niveles 0..K) → E⁻ (niveles 0..K−1)."""
    M1 = plane.guiding_cutoff + 1
    Dp = np.zeros((plane.n_minus, plane.n_plus))
    for n in range(1, plane.level_cutoff + 1):
        for m in range(M1):
            Dp[(n - 1) * M1 + m, n * M1 + m] = np.sqrt(2.0 * n)
    return Dp


def landau_tau(plane: LandauPlane) -> AntiUnitary:
    return make_anti_unitary(np.kron(EPS2, np.eye(plane.dim_E)))


def landau_boundary(plane: LandauPlane, fraction: float = BOUNDARY_FRACTION) -> np.ndarray:
    M = plane.guiding_cutoff
    m = np.arange(M + 1)
    edge = (m > (1.0 - fraction) * M).astype(float)
    w_E = np.concatenate([np.tile(edge, plane.level_cutoff + 1), np.tile(edge, plane.level_cutoff)])
    return np.tile(w_E, 2)


def landau_dirac(plane: LandauPlane) -> Tuple[DiscreteOperator, AntiUnitary]:
    """D = [[0, D⁺†],[D⁺, 0]] ⊗ I₂ (orden auxiliar-mayor), autoadjunto; ker D = nivel más bajo."""
    Dp = ladder_plus(plane)
    p, q = plane.n_plus, plane.n_minus
    D_E = np.zeros((p + q, p + q))
    D_E[p:, :p] = Dp
    D_E[:p, p:] = Dp.T
    D = np.kron(np.eye(2), D_E).astype(complex)
    tau = landau_tau(plane)
    check_odd_symmetric(D, tau, 1e-12)
    op = DiscreteOperator(
        matrix=D,
        label=f"landau_dirac_M{plane.guiding_cutoff}",
        boundary=landau_boundary(plane),
        fiber_dim=2,
        meta={"guiding_cutoff": plane.guiding_cutoff, "level_cutoff": plane.level_cutoff},
    )
    return op, tau


def disc_amplitudes(plane: LandauPlane, radius: float) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """
    Nodos y amplitudes (·√peso) de la cuadratura polar del disco |z| < radius.
    Exacta en θ para todos los productos de orbitales del modelo truncado.
    """
    M, K = plane.guiding_cutoff, plane.level_cutoff
    z, wts = _disc_quadrature(radius, M + K + 24, 2 * (M + K) + 8)
    root = np.sqrt(wts)
    return z, _orbital_amplitudes(z, root, M, K + 1), _orbital_amplitudes(z, root, M, K)


def scalar_multiplication(
    plane: LandauPlane, g: np.ndarray, amplitudes: Optional[Tuple[np.ndarray, np.ndarray]] = None
) -> np.ndarray:
    """⟨ψ_i, g ψ_j⟩ sobre E = E⁺ ⊕ E⁻ (la multiplicación no mezcla componentes)."""
    g = np.asarray(g, dtype=complex)
    amp_plus, amp_minus = amplitudes if amplitudes is not None else (plane.amp_plus, plane.amp_minus)
    Mp = amp_plus.conj().T @ (g[:, None] * amp_plus)
    Mm = amp_minus.conj().T @ (g[:, None] * amp_minus)
    p, q = plane.n_plus, plane.n_minus
    out = np.zeros((p + q, p + q), dtype=complex)
    out[:p, :p] = Mp
    out[p:, p:] = Mm
    return out


def _blockwise(plane: LandauPlane, F: np.ndarray, amplitudes=None) -> np.ndarray:
    k = F.shape[1]
    if k != 2:
        raise InvalidParams("the Landau model carries a rank-2 auxiliary bundle")
    dim_E = plane.dim_E
    M = np.zeros((k * dim_E, k * dim_E), dtype=complex)
    for a in range(k):
        for b in range(k):
            if np.any(F[:, a, b] != 0):
                M[a * dim_E : (a + 1) * dim_E, b * dim_E : (b + 1) * dim_E] = scalar_multiplication(
                    plane, F[:, a, b], amplitudes
                )
    return M


def symbol_matrix(plane: LandauPlane, sampler: Callable[[np.ndarray], np.ndarray]) -> np.ndarray:
    """
    M_f = Σ_ab E_ab ⊗ M_{f_ab} para f: ℂ → M₂(ℂ).
    En un CompactlySupported la parte compacta se integra con la cuadratura del disco.
    """
    if isinstance(sampler, CompactlySupported):
        z, amp_plus, amp_minus = disc_amplitudes(plane, sampler.radius)
        delta = np.asarray(sampler.delta(z), dtype=complex)
        return symbol_matrix(plane, sampler.base) + _blockwise(plane, delta, (amp_plus, amp_minus))
    return _blockwise(plane, np.asarray(sampler(plane.z), dtype=complex))


def lowest_level_basis(plane: LandauPlane) -> np.ndarray:
    """Base canónica de ker D = {ψ_{0,m}} ⊗ ℂ²."""
    M1 = plane.guiding_cutoff + 1
    cols = np.concatenate([np.arange(M1), plane.dim_E + np.arange(M1)])
    return np.eye(plane.dim)[:, cols]


# =========================================================
# Símbolos cuaterniónicos
# =========================================================
def winding_symbol(rho: float = 3.0) -> Callable[[np.ndarray], np.ndarray]:
    """f = diag(w, w̄), w = z/√(|z|²+ρ²): f(z̄) = f(z)† y ε fᵀ ε⁻¹ = f†."""

    def sampler(z):
        z = np.asarray(z, dtype=complex)
        w = z / np.sqrt(np.abs(z) ** 2 + rho**2)
        F = np.zeros((z.size, 2, 2), dtype=complex)
        F[:, 0, 0] = w
        F[:, 1, 1] = np.conj(w)
        return F

    return sampler


def identity_symbol(z: np.ndarray) -> np.ndarray:
    z = np.asarray(z)
    return np.broadcast_to(np.eye(2, dtype=complex), (z.size, 2, 2)).copy()


def compact_bump(z: np.ndarray, radius: float = 2.0) -> np.ndarray:
    r2 = np.abs(np.asarray(z)) ** 2 / radius**2
    return np.where(r2 < 1.0, (1.0 - r2) ** 2, 0.0)


@dataclass(frozen=True, eq=False)
class CompactlySupported:
    """Símbolo base + delta, con delta nula fuera del disco |z| < radius."""

    base: Callable[[np.ndarray], np.ndarray]
    delta: Callable[[np.ndarray], np.ndarray]
    radius: float

    def __call__(self, z: np.ndarray) -> np.ndarray:
        z = np.asarray(z, dtype=complex).ravel()
        F = np.array(self.base(z), dtype=complex)
        inside = np.abs(z) < self.radius
        if np.any(inside):
            F[inside] += self.delta(z[inside])
        return F


def perturbed_symbol(
    base: Callable[[np.ndarray], np.ndarray], rng: np.random.Generator, amplitude: float = 0.3, radius: float = 2.0
) -> CompactlySupported:
    """f + b(|z|)·(c₀ + i·y·c⃗·σ): soporte compacto, misma simetría cuaterniónica."""
    c0 = float(rng.uniform(-1.0, 1.0)) * amplitude
    c = rng.uniform(-1.0, 1.0, 3) * amplitude

    def delta(z):
        z = np.asarray(z, dtype=complex)
        b = compact_bump(z, radius)
        y = np.imag(z)
        D = c0 * np.eye(2)[None, :, :] + 1j * np.einsum("n,ajk->njk", y, c[:, None, None] * np.stack(PAULI))
        return b[:, None, None] * D

    return CompactlySupported(base, delta, float(radius))
