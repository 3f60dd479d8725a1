# src/quaternionic_core.py
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from src.errors import AmbiguousKernel, DimensionMismatch, SymmetryViolation, Z2LabError

logger = logging.getLogger(__name__)

UNITARY_TOL = 1e-12
CLUSTER_RTOL = 1e-8


# =========================================================
# Tipos
# =========================================================
@dataclass(frozen=True, eq=False)
class AntiUnitary:
    """
    tau(x) = J·conj(x), con J unitaria y antisimétrica (tau² = −1, tau* = −tau).
    Construir siempre con make_anti_unitary: ahí se fuerza J^T = −J exactamente.
    """

    J: np.ndarray
    # Si J es una permutación con signo/fase se guarda (perm, phase): J[i, perm[i]] = phase[i]
    _perm: Optional[Tuple[np.ndarray, np.ndarray]] = field(default=None, repr=False)

    @property
    def dim(self) -> int:
        return int(self.J.shape[0])

    def inverse_matrix(self) -> np.ndarray:
        return self.J.conj().T


@dataclass(frozen=True, eq=False)
class Grading:
    signs: np.ndarray
    # base unitaria en la que la graduación es diagonal (None = base canónica)
    frame: Optional[np.ndarray] = None

    @property
    def dim(self) -> int:
        return int(self.signs.size)

    @property
    def plus_dim(self) -> int:
        return int(np.count_nonzero(self.signs > 0))

    @property
    def minus_dim(self) -> int:
        return int(np.count_nonzero(self.signs < 0))

    @property
    def plus_index(self) -> np.ndarray:
        return np.flatnonzero(self.signs > 0)

    @property
    def minus_index(self) -> np.ndarray:
        return np.flatnonzero(self.signs < 0)

    def involution(self) -> np.ndarray:
        G = np.diag(self.signs.astype(complex))
        if self.frame is None:
            return G
        return self.frame @ G @ self.frame.conj().T

    def block(self, D: np.ndarray, rows: str, cols: str) -> np.ndarray:
        r = self.plus_index if rows == "+" else self.minus_index
        c = self.plus_index if cols == "+" else self.minus_index
        return D[np.ix_(r, c)]

    def odd_part(self, D: np.ndarray) -> np.ndarray:
        G = self.signs.astype(float)
        return 0.5 * (D - G[:, None] * D * G[None, :])


def make_grading(signs: Sequence[int], frame: Optional[np.ndarray] = None) -> Grading:
    s = np.asarray(signs, dtype=int).ravel()
    if s.size == 0 or not np.all(np.isin(s, (-1, 1))):
        raise Z2LabError("grading signs must be a nonempty vector of ±1")
    if frame is not None:
        frame = np.asarray(frame, dtype=complex)
        if frame.shape != (s.size, s.size):
            raise DimensionMismatch(f"frame of shape {frame.shape} for {s.size} signs")
    return Grading(signs=s.copy(), frame=frame)


def _detect_signed_permutation(J: np.ndarray) -> Optional[Tuple[np.ndarray, np.ndarray]]:
    n = J.shape[0]
    nz = np.abs(J) > 0.5
    if not np.all(nz.sum(axis=1) == 1) or not np.all(nz.sum(axis=0) == 1):
        return None
    perm = np.argmax(nz, axis=1)
    phase = J[np.arange(n), perm]
    rest = J.copy()
    rest[np.arange(n), perm] = 0.0
    if np.max(np.abs(rest), initial=0.0) > 0.0 or np.max(np.abs(np.abs(phase) - 1.0), initial=0.0) > UNITARY_TOL:
        return None
    return perm, phase.astype(complex)


def make_anti_unitary(J: np.ndarray, *, check: bool = True) -> AntiUnitary:
    J = np.asarray(J, dtype=complex)
    if J.ndim != 2 or J.shape[0] != J.shape[1]:
        raise DimensionMismatch(f"J must be square, got {J.shape}")
    n = J.shape[0]
    if n == 0 or n % 2 != 0:
        raise Z2LabError(f"an anti-involution needs an even positive dimension, got {n}")
    Ja = 0.5 * (J - J.T)
    if check:
        perm = _detect_signed_permutation(Ja)
        if perm is None:
            err = np.linalg.norm(Ja.conj().T @ Ja - np.eye(n), ord=2)
            if err > UNITARY_TOL * max(1.0, float(n) ** 0.5):
                raise SymmetryViolation(f"J is not unitary (‖J†J − I‖ = {err:.3e})", residual=float(err))
        return AntiUnitary(J=Ja, _perm=perm)
    return AntiUnitary(J=Ja, _perm=_detect_signed_permutation(Ja))


def make_standard_J(n: int) -> AntiUnitary:
    if int(n) < 1:
        raise Z2LabError("n must be positive")
    n = int(n)
    J = np.zeros((2 * n, 2 * n), dtype=complex)
    J[:n, n:] = np.eye(n)
    J[n:, :n] = -np.eye(n)
    return make_anti_unitary(J)


# =========================================================
# Acción de tau
# =========================================================
def _check_dims(tau: AntiUnitary, n: int) -> None:
    if n != tau.dim:
        raise DimensionMismatch(f"dimension {n} does not match tau of dimension {tau.dim}")


def apply_tau(tau: AntiUnitary, v: np.ndarray) -> np.ndarray:
    v = np.asarray(v, dtype=complex)
    _check_dims(tau, v.shape[0])
    if tau._perm is not None:
        perm, phase = tau._perm
        out = np.conj(v[perm])
        return out * (phase if v.ndim == 1 else phase[:, None])
    return tau.J @ np.conj(v)


def conjugate_by_tau(tau: AntiUnitary, D: np.ndarray) -> np.ndarray:
    """J·conj(D)·J⁻¹, es decir tau D tau⁻¹ como matriz."""
    D = np.asarray(D, dtype=complex)
    if D.ndim != 2 or D.shape[0] != D.shape[1]:
        raise DimensionMismatch(f"operator must be square, got {D.shape}")
    _check_dims(tau, D.shape[0])
    if tau._perm is not None:
        perm, phase = tau._perm
        X = np.conj(D[np.ix_(perm, perm)])
        return phase[:, None] * X * np.conj(phase)[None, :]
    return tau.J @ np.conj(D) @ tau.inverse_matrix()


def check_odd_symmetric(D: np.ndarray, tau: AntiUnitary, tol: Optional[float] = None) -> float:
    """
    Residuo ‖J·conj(D)·J⁻¹ − D†‖ / max(1, ‖D‖) en norma de Frobenius.
    Si se pasa tol y el residuo lo supera se levanta SymmetryViolation.
    """
    D = np.asarray(D, dtype=complex)
    diff = conjugate_by_tau(tau, D) - D.conj().T
    res = float(np.linalg.norm(diff) / max(1.0, float(np.linalg.norm(D))))
    if tol is not None and res > tol:
        raise SymmetryViolation(f"operator is not odd symmetric (residual {res:.3e} > {tol:.1e})", residual=res)
    return res


def symmetrize_odd(A: np.ndarray, tau: AntiUnitary) -> np.ndarray:
    A = np.asarray(A, dtype=complex)
    return 0.5 * (A + conjugate_by_tau(tau, A).conj().T)


def random_odd_symmetric(tau: AntiUnitary, rng: np.random.Generator, scale: float = 1.0) -> np.ndarray:
    n = tau.dim
    A = rng.uniform(-1.0, 1.0, (n, n)) + 1j * rng.uniform(-1.0, 1.0, (n, n))
    return symmetrize_odd(scale * A, tau)


def tau_closure_basis(vectors: np.ndarray, tau: AntiUnitary, tol: float = 1e-10) -> np.ndarray:
    """Base ortonormal de span{v, tau v} para las columnas dadas."""
    V = np.asarray(vectors, dtype=complex)
    if V.ndim == 1:
        V = V[:, None]
    W = np.hstack([V, apply_tau(tau, V)])
    U, s, _ = np.linalg.svd(W, full_matrices=False)
    if s.size == 0:
        return U[:, :0]
    rank = int(np.count_nonzero(s > tol * max(1.0, s[0])))
    return U[:, :rank]


def induced_tau(basis: np.ndarray, tau: AntiUnitary, tol: float = 1e-8) -> AntiUnitary:
    """tau restringida a un subespacio tau-invariante con base ortonormal `basis`."""
    B = np.asarray(basis, dtype=complex)
    TB = apply_tau(tau, B)
    leak = float(np.linalg.norm(TB - B @ (B.conj().T @ TB)))
    if leak > tol * max(1.0, float(np.sqrt(B.shape[1]))):
        raise SymmetryViolation(f"subspace is not tau-invariant (leak {leak:.3e})", residual=leak)
    return make_anti_unitary(B.conj().T @ TB, check=False)


# =========================================================
# Índice Z2 y Kramers
# =========================================================
def z2_index(report) -> int:
    gap = float(report.detection_gap)
    if gap < float(report.gap_min):
        raise AmbiguousKernel(
            f"detection gap {gap:.3g} below policy minimum {report.gap_min:.3g}",
            singular_values=report.singular_values[: report.raw_kernel_dim + 2],
        )
    return int(report.kernel_dim) % 2


@dataclass(frozen=True)
class KramersCertificate:
    multiplicities: Dict[float, int]
    passed: bool
    mode: str


def _cluster(values: np.ndarray, tol: float) -> List[Tuple[float, int]]:
    out: List[Tuple[float, int]] = []
    if values.size == 0:
        return out
    start = 0
    for i in range(1, values.size + 1):
        if i == values.size or values[i] - values[i - 1] > tol:
            group = values[start:i]
            out.append((float(np.mean(group)), int(group.size)))
            start = i
    return out


def kramers_multiplicity_check(
    H: np.ndarray,
    tau: AntiUnitary,
    mode: str = "commuting",
    *,
    rtol: float = CLUSTER_RTOL,
    symmetry_tol: float = 1e-10,
) -> KramersCertificate:
    H = np.asarray(H, dtype=complex)
    if H.ndim != 2 or H.shape[0] != H.shape[1]:
        raise DimensionMismatch(f"H must be square, got {H.shape}")
    _check_dims(tau, H.shape[0])
    scale = max(1.0, float(np.linalg.norm(H)))
    herm = float(np.linalg.norm(H - H.conj().T)) / scale
    if herm > symmetry_tol:
        raise SymmetryViolation(f"H is not Hermitian (residual {herm:.3e})", residual=herm)

    if mode == "commuting":
        res = float(np.linalg.norm(conjugate_by_tau(tau, H) - H)) / scale
        if res > symmetry_tol:
            raise SymmetryViolation(f"H does not commute with tau (residual {res:.3e})", residual=res)
    elif mode != "squared-off-diagonal":
        raise Z2LabError(f"unknown Kramers mode {mode!r}")

    evals = np.linalg.eigvalsh(0.5 * (H + H.conj().T))
    radius = float(np.max(np.abs(evals), initial=0.0))
    tol = rtol * radius if radius > 0 else 0.0
    clusters = _cluster(np.sort(evals), tol)

    mult: Dict[float, int] = {}
    passed = True
    for value, count in clusters:
        mult[value] = count
        if mode == "squared-off-diagonal" and abs(value) <= tol:
            continue  # el cero queda exento
        if count % 2 != 0:
            passed = False
    logger.debug("kramers check mode=%s clusters=%d passed=%s", mode, len(clusters), passed)
    return KramersCertificate(multiplicities=mult, passed=passed, mode=mode)


def homotopy_parity_sweep(
    path: Sequence[np.ndarray],
    tau: AntiUnitary,
    policy=None,
    *,
    boundary: Optional[np.ndarray] = None,
    step_bound: Optional[float] = None,
    symmetry_tol: float = 1e-10,
) -> List[int]:
    from src.spectra import DEFAULT_POLICY, kernel_dimension

    policy = policy or DEFAULT_POLICY
    parities: List[int] = []
    prev: Optional[np.ndarray] = None
    for step, D in enumerate(path):
        D = np.asarray(D, dtype=complex)
        res = check_odd_symmetric(D, tau)
        if res > symmetry_tol:
            raise SymmetryViolation(f"path step {step} is not odd symmetric (residual {res:.3e})", residual=res)
        if prev is not None and step_bound is not None:
            jump = float(np.linalg.norm(D - prev, ord=2))
            if jump > step_bound:
                raise Z2LabError(f"path step {step} moves by {jump:.3g} > step bound {step_bound:.3g}")
        try:
            report = kernel_dimension(D, policy, boundary=boundary)
            parities.append(z2_index(report))
        except AmbiguousKernel as e:
            raise AmbiguousKernel(str(e), singular_values=e.singular_values, step=step) from e
        prev = D
    logger.debug("homotopy sweep parities=%s", parities)
    return parities
