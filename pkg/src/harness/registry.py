# src/harness/registry.py
from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, List, Optional, Tuple

from src.errors import InvalidParams, UnknownExperiment

KINDS = ("int", "float", "bool", "int_list", "float_list")
RUNTIME_CLASSES = ("fast", "medium", "slow")


@dataclass(frozen=True)
class ParamSpec:
    default: Any
    kind: str = "int"
    minimum: Optional[float] = None
    odd: bool = False
    help: str = ""

    def schema(self) -> Dict[str, Any]:
        out: Dict[str, Any] = {"type": self.kind, "default": self.default}
        if self.minimum is not None:
            out["minimum"] = self.minimum
        if self.odd:
            out["odd"] = True
        if self.help:
            out["help"] = self.help
        return out


@dataclass(frozen=True)
class ExperimentSpec:
    name: str
    params: Dict[str, ParamSpec]
    anchor: str
    runtime_class: str = "fast"
    description: str = ""

    def defaults(self) -> Dict[str, Any]:
        return {k: _copy(v.default) for k, v in self.params.items()}


@dataclass(frozen=True)
class ExperimentConfig:
    name: str
    params: Dict[str, Any]
    output_dir: Optional[Path] = None


@dataclass(frozen=True)
class SuiteConfig:
    experiments: List[ExperimentConfig] = field(default_factory=list)
    output_dir: Optional[Path] = None
    workers: Optional[int] = None


def _copy(v: Any) -> Any:
    return list(v) if isinstance(v, list) else v


def _grid(half_length: float, points: int, *, minimum_points: int = 3) -> Dict[str, ParamSpec]:
    return {
        "half_length": ParamSpec(float(half_length), "float", minimum=0.5, help="L: grid covers [-L, L]"),
        "points": ParamSpec(int(points), "int", minimum=minimum_points, odd=True, help="odd node count"),
    }


# =========================================================
# Registro
# =========================================================
_SPECS: Tuple[ExperimentSpec, ...] = (
    ExperimentSpec(
        name="line_normalization",
        params={
            **_grid(30.0, 2001),
            "stabilization_lengths": ParamSpec([20.0, 25.0, 30.0], "float_list", minimum=5.0),
            "stabilization_spacing": ParamSpec(0.05, "float", minimum=1e-3),
        },
        anchor="ind_tau of d/dt + arctan(t)·diag(1,-1) on the line equals 1",
        runtime_class="medium",
        description="kernel of the arctan line operator, sign flip and stabilization in L",
    ),
    ExperimentSpec(
        name="example_line_with_V",
        params=_grid(30.0, 2001),
        anchor="i(d/dt + V) has the same tau-index as d/dt + V",
        runtime_class="fast",
    ),
    ExperimentSpec(
        name="torus_trivial",
        params={"cutoffs": ParamSpec([4, 8, 16], "int_list", minimum=1)},
        anchor="Dolbeault-Dirac operator of the trivial bundle over the torus: ind_tau D+ = 1",
        runtime_class="fast",
    ),
    ExperimentSpec(
        name="torus_flux",
        params={
            "n": ParamSpec(1, "int", help="flux quantum"),
            "cutoff": ParamSpec(24, "int", minimum=2, help="Landau level cutoff (n != 0)"),
            "fourier_cutoff": ParamSpec(8, "int", minimum=2, help="Fourier mode cutoff (n = 0)"),
            "sites": ParamSpec(24, "int", minimum=4, help="sites per direction of the Wilson lattice"),
            "wilson_r": ParamSpec(0.5, "float", minimum=0.0),
        },
        anchor="torus with flux n: ind dbar = n and ind_tau D+ = n mod 2",
        runtime_class="fast",
    ),
    ExperimentSpec(
        name="kramers_random",
        params={
            "count": ParamSpec(50, "int", minimum=1),
            "max_dim": ParamSpec(40, "int", minimum=2),
            "seed": ParamSpec(7, "int", minimum=0),
        },
        anchor="tau-invariant eigenspaces are even-dimensional",
        runtime_class="fast",
    ),
    ExperimentSpec(
        name="homotopy_path",
        params={
            "paths": ParamSpec(10, "int", minimum=1),
            "steps": ParamSpec(10, "int", minimum=2),
            "amplitude": ParamSpec(0.5, "float", minimum=0.0),
            "seed": ParamSpec(11, "int", minimum=0),
            **_grid(20.0, 401),
        },
        anchor="ind_tau is constant along odd symmetric paths D + sK with K compactly supported",
        runtime_class="medium",
    ),
    ExperimentSpec(
        name="compact_perturbation",
        params={
            "count": ParamSpec(5, "int", minimum=1),
            "rank": ParamSpec(2, "int", minimum=1),
            "seed": ParamSpec(13, "int", minimum=0),
            **_grid(20.0, 401),
        },
        anchor="ind_tau(D + K) = ind_tau D for compact odd symmetric K",
        runtime_class="medium",
    ),
    ExperimentSpec(
        name="vanishing_compact_circle",
        params={
            "count": ParamSpec(20, "int", minimum=1),
            "points": ParamSpec(65, "int", minimum=5, odd=True),
            "seed": ParamSpec(17, "int", minimum=0),
        },
        anchor="odd symmetric Dirac-type operators on a compact odd-dimensional manifold have ind_tau = 0",
        runtime_class="fast",
    ),
    ExperimentSpec(
        name="admissibility_audit",
        params={
            "potentials": ParamSpec(10, "int", minimum=1),
            "seed": ParamSpec(19, "int", minimum=0),
            **_grid(15.0, 1001),
        },
        anchor="empty essential support: B = D + i·Phi is invertible",
        runtime_class="medium",
    ),
    ExperimentSpec(
        name="cylinder_model",
        params={
            "r_points": ParamSpec(401, "int", minimum=11, odd=True),
            "r_half_length": ParamSpec(20.0, "float", minimum=2.0),
            "torus_cutoff": ParamSpec(8, "int", minimum=1),
        },
        anchor="model operator on N x R: dim ker M± = dim ker D_N±",
        runtime_class="medium",
    ),
    ExperimentSpec(
        name="callias_t2xR",
        params={
            "r_points": ParamSpec(301, "int", minimum=11, odd=True),
            "r_half_length": ParamSpec(15.0, "float", minimum=2.0),
            "torus_cutoff": ParamSpec(8, "int", minimum=1),
            "lambdas": ParamSpec([1.0, 2.0, 5.0], "float_list", minimum=1.0),
        },
        anchor="Callias index theorem on T^2 x R: ind_tau B = ind_tau D_{N+}^+ = 1",
        runtime_class="medium",
    ),
    ExperimentSpec(
        name="phi_negation",
        params={**_grid(20.0, 1001), "hypersurface": ParamSpec(5.0, "float", minimum=1.0)},
        anchor="ind_tau(D + i·Phi) = ind_tau(D - i·Phi) = ind_tau of the reduced hypersurface operator",
        runtime_class="fast",
    ),
    ExperimentSpec(
        name="lambda_phi_sweep",
        params={"lambdas": ParamSpec([1.0, 2.0, 5.0], "float_list", minimum=1.0), **_grid(20.0, 1001)},
        anchor="ind_tau(D + i·lambda·Phi) does not depend on lambda >= 1",
        runtime_class="fast",
    ),
    ExperimentSpec(
        name="relative_index_1d",
        params={
            "configs": ParamSpec(5, "int", minimum=1),
            "seed": ParamSpec(23, "int", minimum=0),
            "cut": ParamSpec(4.0, "float", minimum=0.5),
            **_grid(20.0, 501),
        },
        anchor="relative index: ind_tau D0 + ind_tau D1 + ind_tau D2 + ind_tau D3 = 0 mod 2",
        runtime_class="medium",
    ),
    ExperimentSpec(
        name="gap_certify",
        params={
            "n": ParamSpec(2, "int", minimum=1),
            "cutoff": ParamSpec(16, "int", minimum=2),
            "guiding_cutoff": ParamSpec(16, "int", minimum=2),
        },
        anchor="zero is isolated in the spectrum of the gapped Dirac operators",
        runtime_class="fast",
    ),
    ExperimentSpec(
        name="toeplitz_class_invariance",
        params={
            "instances": ParamSpec(3, "int", minimum=1),
            "truncations": ParamSpec([20, 24, 28], "int_list", minimum=4),
            "seed": ParamSpec(29, "int", minimum=0),
        },
        anchor="ind_tau T_f depends only on the class of f modulo compactly supported symbols",
        runtime_class="medium",
    ),
    ExperimentSpec(
        name="toeplitz_vs_callias_landau",
        params={"truncations": ParamSpec([16, 20, 24], "int_list", minimum=4)},
        anchor="ind_tau (D + i·M_f) = ind_tau T_f",
        runtime_class="medium",
    ),
)

REGISTRY: Dict[str, ExperimentSpec] = {s.name: s for s in _SPECS}


def get_spec(name: str) -> ExperimentSpec:
    try:
        return REGISTRY[name]
    except KeyError:
        raise UnknownExperiment(f"unknown experiment {name!r}") from None


def list_experiments() -> List[Dict[str, Any]]:
    return [
        {
            "name": s.name,
            "runtime_class": s.runtime_class,
            "anchor": s.anchor,
            "params": {k: p.schema() for k, p in s.params.items()},
        }
        for s in _SPECS
    ]


# =========================================================
# Validación
# =========================================================
def _is_int(v: Any) -> bool:
    return isinstance(v, int) and not isinstance(v, bool)


def _is_number(v: Any) -> bool:
    return _is_int(v) or isinstance(v, float)


def _check_value(name: str, key: str, spec: ParamSpec, value: Any) -> Any:
    where = f"{name}.{key}"
    if spec.kind == "bool":
        if not isinstance(value, bool):
            raise InvalidParams(f"{where} must be a boolean")
        return value
    if spec.kind in ("int_list", "float_list"):
        if not isinstance(value, (list, tuple)) or not value:
            raise InvalidParams(f"{where} must be a nonempty list")
        scalar = ParamSpec(None, spec.kind[: -len("_list")], spec.minimum, spec.odd)
        return [_check_value(name, key, scalar, v) for v in value]
    if spec.kind == "int":
        if not _is_int(value):
            raise InvalidParams(f"{where} must be an integer, got {value!r}")
        value = int(value)
    else:
        if not _is_number(value):
            raise InvalidParams(f"{where} must be a number, got {value!r}")
        value = float(value)
    if spec.minimum is not None and value < spec.minimum:
        raise InvalidParams(f"{where} = {value} is below the minimum {spec.minimum}")
    if spec.odd and value % 2 == 0:
        raise InvalidParams(f"{where} must be odd")
    return value


def validate_params(name: str, params: Optional[Dict[str, Any]] = None) -> Dict[str, Any]:
    """Parámetros completos (defaults + overrides validados)."""
    spec = get_spec(name)
    params = dict(params or {})
    unknown = sorted(set(params) - set(spec.params))
    if unknown:
        raise InvalidParams(f"unknown parameters for {name}: {', '.join(unknown)}")
    merged = spec.defaults()
    for key, value in params.items():
        merged[key] = _check_value(name, key, spec.params[key], value)
    return merged


def make_config(name: str, params: Optional[Dict[str, Any]] = None, output_dir: Optional[Path] = None) -> ExperimentConfig:
    return ExperimentConfig(name=name, params=validate_params(name, params), output_dir=output_dir)


def parse_suite(data: Dict[str, Any]) -> SuiteConfig:
    if not isinstance(data, dict):
        raise InvalidParams("config must be a JSON object")
    items = data.get("experiments", [])
    if not isinstance(items, list):
        raise InvalidParams("'experiments' must be a list")
    out_dir = Path(data["output_dir"]) if data.get("output_dir") else None
    workers = data.get("workers")
    if workers is not None and (not _is_int(workers) or workers < 1):
        raise InvalidParams("'workers' must be a positive integer")
    configs = []
    for i, item in enumerate(items):
        if not isinstance(item, dict) or "name" not in item:
            raise InvalidParams(f"experiment #{i} needs a 'name'")
        params = item.get("params") or {}
        if not isinstance(params, dict):
            raise InvalidParams(f"experiment #{i}: 'params' must be an object")
        configs.append(make_config(str(item["name"]), params, out_dir))
    return SuiteConfig(experiments=configs, output_dir=out_dir, workers=workers)
