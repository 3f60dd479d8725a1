# src/harness/runner.py
from __future__ import annotations

import logging
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence

import numpy as np

from src.db import get_settings
from src.errors import AmbiguousKernel, Unstable, Z2LabError
from src.harness.experiments import EXPERIMENTS, operators_for
from src.harness.registry import ExperimentConfig, get_spec, validate_params
from src.harness.report import ExperimentReport, export_matrix_market, json_safe, write_report, write_summary
from src.services.cache_store import cache_get_or_set, report_key

logger = logging.getLogger(__name__)


@dataclass
class SuiteSummary:
    reports: List[ExperimentReport] = field(default_factory=list)
    counts: Dict[str, int] = field(default_factory=lambda: {"pass": 0, "fail": 0, "unstable": 0})
    output_dir: Optional[Path] = None

    @property
    def total(self) -> int:
        return len(self.reports)

    @property
    def exit_status(self) -> int:
        if self.counts["fail"]:
            return 1
        if self.counts["unstable"]:
            return 2
        return 0


def _execute(name: str, params: Dict[str, Any]) -> Dict[str, Any]:
    """Ejecuta sin escribir nada; el resultado es JSON (se guarda en la caché tal cual)."""
    fn = EXPERIMENTS[name]
    t0 = time.perf_counter()
    spectra: Dict[str, Any] = {}
    try:
        out = fn(params)
        quantities = dict(out.quantities)
        verdict = "pass" if out.passed else "fail"
        spectra = {k: np.asarray(v, dtype=float).ravel().tolist() for k, v in out.spectra.items()}
    except (AmbiguousKernel, Unstable) as e:
        logger.warning("%s is unstable: %s", name, e)
        quantities = {"error": str(e), "error_type": type(e).__name__}
        verdict = "unstable"
    except Z2LabError as e:
        logger.warning("%s failed: %s", name, e)
        quantities = {"error": str(e), "error_type": type(e).__name__}
        verdict = "fail"
    except Exception as e:
        # LinAlgError, MemoryError y similares cuentan como fallo
        logger.exception("%s crashed", name)
        quantities = {"error": str(e), "error_type": type(e).__name__}
        verdict = "fail"
    runtime = time.perf_counter() - t0
    return {"quantities": json_safe(quantities), "verdict": verdict, "runtimeSeconds": runtime, "spectra": spectra}


def _evaluate(name: str, params: Dict[str, Any], use_cache: bool) -> ExperimentReport:
    spec = get_spec(name)
    logger.info("running %s", name)
    if use_cache:
        hit = True

        def _fresh():
            nonlocal hit
            hit = False
            return _execute(name, params)

        payload = cache_get_or_set(report_key(name, params), _fresh)
        cached = hit
    else:
        payload = _execute(name, params)
        cached = False
    report = ExperimentReport(
        name=name,
        params=params,
        quantities=payload["quantities"],
        verdict=payload["verdict"],
        runtime_seconds=float(payload["runtimeSeconds"]),
        anchor=spec.anchor,
        spectra=payload.get("spectra") or {},
        cached=cached,
    )
    logger.info("%s -> %s (%.2fs%s)", name, report.verdict, report.runtime_seconds, ", cached" if cached else "")
    return report


def run_experiment(
    config: ExperimentConfig,
    *,
    use_cache: bool = True,
    write: bool = True,
) -> ExperimentReport:
    params = validate_params(config.name, config.params)
    report = _evaluate(config.name, params, use_cache)
    if write:
        out_dir = Path(config.output_dir) if config.output_dir else get_settings().output_dir
        write_report(report, out_dir)
    return report


def _evaluate_job(job) -> ExperimentReport:
    name, params, use_cache = job
    return _evaluate(name, params, use_cache)


def run_suite(
    configs: Sequence[ExperimentConfig],
    *,
    workers: Optional[int] = None,
    output_dir: Optional[Path] = None,
    use_cache: bool = True,
    write: bool = True,
) -> SuiteSummary:
    settings = get_settings()
    workers = max(1, int(workers or settings.workers))
    out_dir = Path(output_dir) if output_dir else settings.output_dir
    jobs = [(c.name, validate_params(c.name, c.params), use_cache) for c in configs]

    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=min(workers, len(jobs))) as pool:
            reports = list(pool.map(_evaluate_job, jobs))
    else:
        reports = [_evaluate_job(job) for job in jobs]

    summary = SuiteSummary(output_dir=out_dir)
    # escritura serializada en el proceso principal
    for cfg, report in zip(configs, reports):
        summary.reports.append(report)
        summary.counts[report.verdict] += 1
        if write:
            target = out_dir if output_dir or not cfg.output_dir else Path(cfg.output_dir)
            write_report(report, target)
    if write and summary.reports:
        write_summary(summary.reports, out_dir)
    logger.info("suite finished: %s", summary.counts)
    return summary


def export_experiment(name: str, out_dir: Path, params: Optional[Dict[str, Any]] = None) -> List[Path]:
    merged = validate_params(name, params)
    return export_matrix_market(operators_for(name, merged), out_dir)
