# src/spectra.py
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple, Union

import numpy as np
import scipy.linalg as sla
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from src.errors import AmbiguousKernel, DimensionMismatch, InvalidParams, Unstable
from src.quaternionic_core import Grading, z2_index

logger = logging.getLogger(__name__)


# =========================================================
# Tipos
# =========================================================
@dataclass(frozen=True)
class KernelPolicy:
    atol: float = 1e-10
    rtol: float = 1e-9
    gap_min: float = 100.0
    boundary_tol: float = 0.05

    def __post_init__(self):
        if not (self.atol > 0 and self.rtol > 0):
            raise InvalidParams("atol and rtol must be positive")
        if self.gap_min < 1:
            raise InvalidParams("gap_min must be >= 1")
        if not (0 < self.boundary_tol < 0.5):
            raise InvalidParams("boundary_tol must lie in (0, 0.5)")


DEFAULT_POLICY = KernelPolicy()  # modelos exactos / Fourier
FD_POLICY = KernelPolicy(rtol=1e-6)  # diferencias finitas

# lado máximo de un bloque denso que se descompone
DENSE_CAP = 8192
# por encima de esta fracción de no ceros no se buscan bloques
SPARSE_FILL = 0.1


@dataclass(frozen=True, eq=False)
class DiscreteOperator:
    """
    Matriz + metadatos de geometría. `boundary` es el peso de la capa de truncación
    (vector por índice de base o matriz hermitiana con espectro en [0, 1]).
    Para operadores graduados `matrix` es el D completo y `grading` la involución.
    """

    matrix: np.ndarray
    label: str = "operator"
    grading: Optional[Grading] = None
    boundary: Optional[np.ndarray] = None
    fiber_dim: int = 1
    coords: Optional[np.ndarray] = None
    meta: Dict[str, Any] = field(default_factory=dict)

    @property
    def dim(self) -> int:
        return int(self.matrix.shape[0])

    def plus_block(self) -> np.ndarray:
        if self.grading is None:
            raise InvalidParams(f"{self.label} is not graded")
        return self.grading.block(self.matrix, "-", "+")

    def minus_block(self) -> np.ndarray:
        if self.grading is None:
            raise InvalidParams(f"{self.label} is not graded")
        return self.grading.block(self.matrix, "+", "-")

    def boundary_for(self, index: Optional[np.ndarray]) -> Optional[np.ndarray]:
        if self.boundary is None or index is None:
            return self.boundary
        W = self.boundary
        return W[index] if W.ndim == 1 else W[np.ix_(index, index)]


@dataclass(frozen=True, eq=False)
class SpectralReport:
    singular_values: np.ndarray
    kernel_dim: int
    detection_gap: float
    raw_kernel_dim: int
    boundary_modes: int = 0
    interior_sigma_min: float = float("inf")
    gap_min: float = DEFAULT_POLICY.gap_min
    threshold: float = 0.0
    kernel_basis: Optional[np.ndarray] = None

    @property
    def parity(self) -> int:
        return z2_index(self)


@dataclass(frozen=True)
class GapCertificate:
    kernel_dim: int
    gamma: float
    isolated: bool


# =========================================================
# Descomposiciones
# =========================================================
def _as_matrix(D: np.ndarray) -> np.ndarray:
    D = np.asarray(D)
    if D.ndim != 2:
        raise DimensionMismatch(f"expected a matrix, got shape {D.shape}")
    return D.astype(complex, copy=False)


def _components(D: np.ndarray) -> List[Tuple[np.ndarray, np.ndarray]]:
    """Bloques conexos del patrón de no ceros (filas, columnas); columnas nulas van solas."""
    m, n = D.shape
    mask = D != 0
    if np.count_nonzero(mask) > SPARSE_FILL * m * n:
        return [(np.arange(m), np.arange(n))]
    rows, cols = np.nonzero(mask)
    graph = coo_matrix((np.ones(rows.size), (rows, m + cols)), shape=(m + n, m + n))
    _, labels = connected_components(graph, directed=False)
    order = np.argsort(labels, kind="stable")
    splits = np.flatnonzero(np.diff(labels[order])) + 1
    out = []
    for group in np.split(order, splits):
        r, c = group[group < m], group[group >= m] - m
        if c.size:
            out.append((r, c))
    return out


def _real_form(A: np.ndarray) -> np.ndarray:
    # A real o i·A real tienen los mismos valores y vectores singulares derechos
    if not np.any(A.imag):
        return A.real
    if not np.any(A.real):
        return A.imag
    return A


def _block_svd(A: np.ndarray, vectors: bool):
    rows, cols = A.shape
    if rows == 0:
        return np.zeros(cols), (np.eye(cols) if vectors else None)
    if max(rows, cols) > DENSE_CAP:
        raise InvalidParams(f"dense block of shape {A.shape} exceeds the {DENSE_CAP} cap")
    A = _real_form(A)
    if not vectors:
        s = sla.svdvals(A, check_finite=True)
        V = None
    else:
        # matrices anchas: full_matrices completa el núcleo
        wide = rows < cols
        try:
            _, s, Vh = sla.svd(A, full_matrices=wide, lapack_driver="gesdd")
        except np.linalg.LinAlgError:
            logger.debug("gesdd did not converge on %s, retrying with gesvd", A.shape)
            _, s, Vh = sla.svd(A, full_matrices=wide, lapack_driver="gesvd")
        V = Vh.conj().T
    if s.size < cols:
        s = np.concatenate([s, np.zeros(cols - s.size)])
    return s, V


def _decompose(D: np.ndarray, vectors: bool = False):
    """
    Valores singulares (uno por columna, ascendentes) y, si vectors, los vectores
    singulares derechos en el mismo orden. Una SVD por bloque conexo de D.
    """
    n = D.shape[1]
    s = np.zeros(n)
    V = None
    blocks = _components(D) if D.size else []
    parts = []
    for r, c in blocks:
        s_c, V_c = _block_svd(D[np.ix_(r, c)], vectors)
        s[c] = s_c
        parts.append((c, V_c))
    if vectors:
        dtype = np.result_type(float, *[V_c.dtype for _, V_c in parts])
        V = np.zeros((n, n), dtype=dtype)
        for c, V_c in parts:
            V[np.ix_(c, c)] = V_c
    order = np.argsort(s, kind="stable")
    logger.debug("decomposed %s into %d blocks", D.shape, len(blocks))
    return s[order], (V[:, order] if vectors else None)


def singular_values(D: np.ndarray) -> np.ndarray:
    """min(m, n) valores singulares ascendentes."""
    D = _as_matrix(D)
    if D.size == 0:
        return np.zeros(0)
    s, _ = _decompose(D)
    m, n = D.shape
    # las primeras n − m son ceros de relleno
    return s[n - m :] if m < n else s


def _choose_cut(s: np.ndarray, policy: KernelPolicy):
    n = s.size
    smax = float(s[-1]) if n else 0.0
    thr = max(policy.atol, policy.rtol * smax)
    below = int(np.count_nonzero(s < thr))
    if below == 0:
        return 0, float("inf"), thr
    for k in range(below, 0, -1):
        if k == n:
            return k, float("inf"), thr
        lo = float(s[k - 1])
        gap = float("inf") if lo == 0.0 else float(s[k]) / lo
        if gap >= policy.gap_min:
            return k, gap, thr
    raise AmbiguousKernel(
        f"no clean kernel cut: {below} singular values below {thr:.3e} without a gap ≥ {policy.gap_min:g}",
        singular_values=s[: below + 2],
    )


def _weights(W: np.ndarray, V: np.ndarray) -> np.ndarray:
    if W.ndim == 1:
        return (V.conj().T * W[None, :]) @ V
    return V.conj().T @ W @ V


def kernel_dimension(
    D: np.ndarray,
    policy: KernelPolicy = DEFAULT_POLICY,
    *,
    boundary: Optional[np.ndarray] = None,
    want_basis: bool = False,
) -> SpectralReport:
    D = _as_matrix(D)
    W = None if boundary is None else np.asarray(boundary)
    if W is not None and W.shape[0] != D.shape[1]:
        raise DimensionMismatch(f"boundary weights of size {W.shape[0]} for operator with {D.shape[1]} columns")

    if D.size == 0:
        s, V = np.zeros(D.shape[1]), np.eye(D.shape[1])
    else:
        s, V = _decompose(D, vectors=want_basis)
    k, gap, thr = _choose_cut(s, policy)
    interior_min = float(s[k]) if k < s.size else float("inf")

    # vectores singulares sólo si hay algo que filtrar o se pide la base
    if not want_basis and (W is None or k == 0):
        logger.debug("kernel cut k=%d gap=%.3g thr=%.3e n=%d", k, gap, thr, s.size)
        return SpectralReport(s, k, gap, k, 0, interior_min, policy.gap_min, thr)
    if V is None:
        s, V = _decompose(D, vectors=True)

    Vk = V[:, :k]
    interior = k
    basis = Vk
    if W is not None:
        if k > 0:
            mu, U = np.linalg.eigh(_weights(W, Vk))
            unclear = (mu > policy.boundary_tol) & (mu < 1.0 - policy.boundary_tol)
            if np.any(unclear):
                raise AmbiguousKernel(
                    f"near-null mode with boundary weight {mu[unclear][0]:.3f} is neither interior nor boundary",
                    singular_values=s[: k + 2],
                )
            inner = mu < 0.5
            interior = int(np.count_nonzero(inner))
            basis = Vk @ U[:, inner]
        # menor valor singular por encima del corte con vector mayormente interior
        rest = V[:, k:]
        if W.ndim == 1:
            w = W @ (np.abs(rest) ** 2)
        else:
            w = np.real(np.einsum("ij,ij->j", rest.conj(), W @ rest))
        mostly_inner = np.flatnonzero(w < 0.5)
        interior_min = float(s[k + mostly_inner[0]]) if mostly_inner.size else float("inf")

    logger.debug(
        "kernel cut k=%d interior=%d boundary=%d gap=%.3g thr=%.3e", k, interior, k - interior, gap, thr
    )
    return SpectralReport(
        singular_values=s,
        kernel_dim=interior,
        detection_gap=gap,
        raw_kernel_dim=k,
        boundary_modes=k - interior,
        interior_sigma_min=interior_min,
        gap_min=policy.gap_min,
        threshold=thr,
        kernel_basis=basis if want_basis else None,
    )


def spectral_gap(
    D: np.ndarray, policy: KernelPolicy = DEFAULT_POLICY, *, boundary: Optional[np.ndarray] = None
) -> GapCertificate:
    rep = kernel_dimension(D, policy, boundary=boundary)
    gamma = float(rep.interior_sigma_min)
    isolated = bool(rep.detection_gap >= policy.gap_min and gamma > 0)
    return GapCertificate(kernel_dim=rep.kernel_dim, gamma=gamma, isolated=isolated)


# =========================================================
# Índice de operadores discretos
# =========================================================
def index_report(
    op: Union[DiscreteOperator, np.ndarray], policy: KernelPolicy = DEFAULT_POLICY, *, want_basis: bool = False
) -> SpectralReport:
    """Informe del bloque que define ind_tau: D⁺ si está graduado, D si no."""
    if not isinstance(op, DiscreteOperator):
        return kernel_dimension(op, policy, want_basis=want_basis)
    if op.grading is None:
        return kernel_dimension(op.matrix, policy, boundary=op.boundary, want_basis=want_basis)
    return kernel_dimension(
        op.plus_block(),
        policy,
        boundary=op.boundary_for(op.grading.plus_index),
        want_basis=want_basis,
    )


def tau_index(op: Union[DiscreteOperator, np.ndarray], policy: KernelPolicy = DEFAULT_POLICY) -> int:
    return z2_index(index_report(op, policy))


def stabilization_sweep(
    builder: Callable[[Any], Union[DiscreteOperator, np.ndarray]],
    sizes: Sequence[Any],
    policy: KernelPolicy = DEFAULT_POLICY,
    *,
    window: int = 3,
    details: Optional[List[Dict[str, Any]]] = None,
) -> int:
    if len(sizes) < window:
        raise InvalidParams(f"stabilization needs at least {window} sizes, got {len(sizes)}")
    if any(not (a < b) for a, b in zip(sizes, sizes[1:])):
        raise InvalidParams(f"stabilization sizes must be strictly increasing, got {list(sizes)}")
    parities: List[int] = []
    for step, size in enumerate(sizes):
        try:
            rep = index_report(builder(size), policy)
            parities.append(z2_index(rep))
        except AmbiguousKernel as e:
            raise AmbiguousKernel(f"size {size}: {e}", singular_values=e.singular_values, step=step) from e
        if details is not None:
            details.append(
                {
                    "size": size,
                    "kernel_dim": rep.kernel_dim,
                    "raw_kernel_dim": rep.raw_kernel_dim,
                    "boundary_modes": rep.boundary_modes,
                    "detection_gap": rep.detection_gap,
                }
            )
    tail = parities[-window:]
    if len(set(tail)) != 1:
        raise Unstable(f"parities {parities} do not agree over the last {window} sizes", parities=parities)
    logger.debug("stabilization sizes=%s parities=%s", list(sizes), parities)
    return tail[0]


def write_spectrum_csv(values: Sequence[float], path: Path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    np.savetxt(path, np.asarray(values, dtype=float).ravel(), fmt="%.16e")
    return path
