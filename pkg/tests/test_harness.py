import json
import math

import numpy as np
import pytest
from scipy.io import mmread

import app
from src.errors import AmbiguousKernel, InvalidParams, NotAdmissible, UnknownExperiment
from src.harness import experiments
from src.harness.registry import REGISTRY, get_spec, make_config, parse_suite, validate_params
from src.harness.report import ExperimentReport, format_table, json_safe
from src.harness.runner import export_experiment, run_experiment, run_suite

SMALL = {
    "torus_trivial": {"cutoffs": [2, 3, 4]},
    "torus_flux": {"n": 2, "cutoff": 8, "sites": 8},
    "kramers_random": {"count": 3, "max_dim": 8},
}


def _config(name, **params):
    return make_config(name, {**SMALL.get(name, {}), **params})


# =========================================================
# Registro y validación
# =========================================================
def test_registry_covers_every_experiment():
    assert set(REGISTRY) == set(experiments.EXPERIMENTS)
    assert len(REGISTRY) == 17
    for spec in REGISTRY.values():
        assert spec.runtime_class in ("fast", "medium", "slow")
        assert spec.anchor


def test_unknown_experiment():
    with pytest.raises(UnknownExperiment):
        get_spec("nope")
    with pytest.raises(UnknownExperiment):
        make_config("nope")


def test_validate_params_defaults_and_overrides():
    p = validate_params("torus_flux", {"n": 3})
    assert p["n"] == 3
    assert p["cutoff"] == REGISTRY["torus_flux"].params["cutoff"].default
    # los defaults no se comparten entre llamadas
    p = validate_params("torus_trivial")
    p["cutoffs"].append(99)
    assert validate_params("torus_trivial")["cutoffs"] == [4, 8, 16]


@pytest.mark.parametrize(
    "name, params",
    [
        ("torus_flux", {"flux": 1}),
        ("line_normalization", {"points": 2000}),
        ("line_normalization", {"half_length": 0.1}),
        ("torus_flux", {"n": 1.5}),
        ("torus_flux", {"n": True}),
        ("torus_trivial", {"cutoffs": []}),
        ("lambda_phi_sweep", {"lambdas": [0.5, 2.0]}),
    ],
)
def test_validate_params_rejects(name, params):
    with pytest.raises(InvalidParams):
        validate_params(name, params)


def test_parse_suite():
    suite = parse_suite({"experiments": [{"name": "torus_trivial"}], "workers": 2, "output_dir": "out"})
    assert [c.name for c in suite.experiments] == ["torus_trivial"]
    assert suite.workers == 2
    assert str(suite.output_dir) == "out"
    with pytest.raises(InvalidParams):
        parse_suite({"experiments": [{"params": {}}]})
    with pytest.raises(InvalidParams):
        parse_suite({"experiments": [], "workers": 0})
    with pytest.raises(InvalidParams):
        parse_suite([])


# =========================================================
# Ejecución
# =========================================================
def test_empty_suite(isolated_dirs):
    summary = run_suite([])
    assert summary.total == 0
    assert summary.counts == {"pass": 0, "fail": 0, "unstable": 0}
    assert summary.exit_status == 0


def test_small_suite_passes_and_writes(isolated_dirs):
    configs = [_config("torus_trivial"), _config("torus_flux"), _config("kramers_random")]
    summary = run_suite(configs)
    assert summary.counts["pass"] == 3, format_table(summary.reports, summary.counts)
    assert summary.exit_status == 0
    out = isolated_dirs["out"]
    report = json.loads((out / "torus_flux" / "report.json").read_text(encoding="utf-8"))
    assert set(report) == {"name", "params", "quantities", "verdict", "runtimeSeconds", "anchor"}
    assert report["quantities"]["parity"] == 0
    assert (out / "torus_flux" / "spectrum.csv").exists()
    assert (out / "torus_trivial" / "spectrum_torus_trivial_K2.csv").exists()
    assert (out / "summary.csv").exists()
    assert (out / "summary.json").exists()


def test_broken_experiments_are_counted(isolated_dirs, monkeypatch):
    def _broken(p):
        raise NotAdmissible("broken on purpose")

    def _ambiguous(p):
        raise AmbiguousKernel("no clean cut")

    monkeypatch.setitem(experiments.EXPERIMENTS, "kramers_random", _broken)
    monkeypatch.setitem(experiments.EXPERIMENTS, "torus_trivial", _ambiguous)
    summary = run_suite([_config("kramers_random")], use_cache=False)
    assert summary.counts["fail"] == 1
    assert summary.exit_status == 1
    assert summary.reports[0].quantities["error_type"] == "NotAdmissible"

    summary = run_suite([_config("torus_trivial")], use_cache=False)
    assert summary.counts["unstable"] == 1
    assert summary.exit_status == 2


def test_unexpected_error_is_a_failure(isolated_dirs, monkeypatch):
    def _crash(p):
        raise np.linalg.LinAlgError("SVD did not converge")

    monkeypatch.setitem(experiments.EXPERIMENTS, "kramers_random", _crash)
    summary = run_suite([_config("kramers_random"), _config("torus_trivial")], use_cache=False)
    assert [r.verdict for r in summary.reports] == ["fail", "pass"]
    assert summary.reports[0].quantities["error_type"] == "LinAlgError"
    assert summary.exit_status == 1


@pytest.mark.parametrize("n", [0, 1, 2, 3])
def test_torus_flux_passes_for_each_flux(n):
    out = experiments.torus_flux(validate_params("torus_flux", {"n": n, "cutoff": 8, "fourier_cutoff": 4, "sites": 8}))
    assert out.passed, out.quantities
    assert out.quantities["parity"] == n % 2
    assert out.quantities["kernel_sigma_ratio"] < 1e-6
    # un valor por columna de ∂̄, ceros de relleno incluidos
    s = next(iter(out.spectra.values()))
    assert np.count_nonzero(s < 1e-12) >= (n if n else 1)


def test_failed_outcome(isolated_dirs, monkeypatch):
    monkeypatch.setitem(experiments.EXPERIMENTS, "kramers_random", lambda p: experiments.Outcome({"x": 1}, False))
    report = run_experiment(_config("kramers_random"), use_cache=False, write=False)
    assert report.verdict == "fail"


def test_second_run_hits_the_cache(isolated_dirs):
    cfg = _config("kramers_random")
    first = run_experiment(cfg)
    second = run_experiment(cfg)
    assert not first.cached
    assert second.cached
    assert second.verdict == first.verdict == "pass"
    assert second.quantities == first.quantities


def test_explicit_output_dir(tmp_path):
    out = tmp_path / "elsewhere"
    run_suite([_config("torus_trivial")], output_dir=out)
    assert (out / "torus_trivial" / "report.json").exists()


# =========================================================
# Experimentos a escala reducida
# =========================================================
@pytest.mark.parametrize(
    "name, params",
    [
        ("vanishing_compact_circle", {"count": 6, "points": 33}),
        ("homotopy_path", {"paths": 2, "steps": 4, "half_length": 10.0, "points": 201}),
        ("admissibility_audit", {"potentials": 3, "half_length": 10.0, "points": 401}),
        ("callias_t2xR", {"r_points": 201, "r_half_length": 15.0, "torus_cutoff": 2, "lambdas": [1.0, 2.0]}),
        ("cylinder_model", {"r_points": 201, "torus_cutoff": 2}),
    ],
)
def test_experiment_passes_at_small_scale(name, params):
    out = experiments.EXPERIMENTS[name](validate_params(name, params))
    assert out.passed, out.quantities


# =========================================================
# Informes y exportación
# =========================================================
def test_json_safe():
    data = {"a": float("nan"), "b": [float("inf"), -float("inf")], "c": np.int64(3), "d": np.array([1.0, 2.0]), "e": 1 + 2j}
    out = json_safe(data)
    assert out == {"a": "nan", "b": ["inf", "-inf"], "c": 3, "d": [1.0, 2.0], "e": {"re": 1.0, "im": 2.0}}
    json.dumps(out)


def test_report_rounds_runtime():
    r = ExperimentReport("x", {}, {"v": math.pi}, "pass", 1.23456)
    assert r.to_dict()["runtimeSeconds"] == 1.235


def test_export_matrix_market(tmp_path):
    paths = export_experiment("torus_trivial", tmp_path / "mm", {"cutoffs": [1, 2, 3]})
    assert len(paths) == 6
    names = {p.name for p in paths}
    assert "torus_trivial_K1.mtx" in names and "torus_trivial_K1_J.mtx" in names
    A = mmread(str(tmp_path / "mm" / "torus_trivial_K1.mtx"))
    assert A.shape == (18, 18)


def test_export_without_operators(tmp_path):
    with pytest.raises(InvalidParams):
        export_experiment("kramers_random", tmp_path)


# =========================================================
# CLI
# =========================================================
@pytest.fixture
def cli_env(monkeypatch):
    for key in ("OMP_NUM_THREADS", "OPENBLAS_NUM_THREADS", "MKL_NUM_THREADS", "VECLIB_MAXIMUM_THREADS"):
        monkeypatch.setenv(key, "1")


def test_cli_list(cli_env, capsys):
    assert app.main(["list", "--json"]) == 0
    entries = json.loads(capsys.readouterr().out)
    assert {e["name"] for e in entries} == set(REGISTRY)


def test_cli_run_with_broken_config(cli_env, tmp_path):
    cfg = tmp_path / "suite.json"
    cfg.write_text(json.dumps({"experiments": [{"name": "not_an_experiment"}]}), encoding="utf-8")
    assert app.main(["run", str(cfg)]) == 1


def test_cli_run_small_suite(cli_env, tmp_path, capsys):
    cfg = tmp_path / "suite.json"
    cfg.write_text(json.dumps({"experiments": [{"name": "torus_trivial", "params": SMALL["torus_trivial"]}]}), encoding="utf-8")
    assert app.main(["run", str(cfg), "--out", str(tmp_path / "run"), "--no-cache"]) == 0
    assert "torus_trivial" in capsys.readouterr().out
    assert (tmp_path / "run" / "summary.csv").exists()


def test_cli_export(cli_env, tmp_path, capsys):
    assert app.main(["export", "torus_trivial", "--matrix-market", str(tmp_path / "mm")]) == 0
    assert len(list((tmp_path / "mm").glob("*.mtx"))) == 6
