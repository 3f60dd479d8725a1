# src/harness/report.py
from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from datetime import date, datetime
from pathlib import Path
from typing import Any, Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np
import pandas as pd
from scipy.io import mmwrite
from scipy.sparse import coo_matrix

from src.db import save_json
from src.spectra import write_spectrum_csv

logger = logging.getLogger(__name__)

VERDICTS = ("pass", "fail", "unstable")


@dataclass
class ExperimentReport:
    name: str
    params: Dict[str, Any]
    quantities: Dict[str, Any]
    verdict: str
    runtime_seconds: float
    anchor: str = ""
    spectra: Dict[str, List[float]] = field(default_factory=dict, repr=False)
    cached: bool = False

    def to_dict(self) -> Dict[str, Any]:
        return {
            "name": self.name,
            "params": json_safe(self.params),
            "quantities": json_safe(self.quantities),
            "verdict": self.verdict,
            "runtimeSeconds": round(float(self.runtime_seconds), 3),
            "anchor": self.anchor,
        }


def json_safe(x: Any) -> Any:
    if x is None:
        return None
    if isinstance(x, bool):
        return x
    if isinstance(x, (str, int)):
        return x
    if isinstance(x, float):
        if math.isnan(x):
            return "nan"
        if math.isinf(x):
            return "inf" if x > 0 else "-inf"
        return x
    if isinstance(x, (datetime, date)):
        return x.isoformat()
    if isinstance(x, Path):
        return str(x)
    if isinstance(x, dict):
        return {str(k): json_safe(v) for k, v in x.items()}
    if isinstance(x, (list, tuple, set)):
        return [json_safe(v) for v in x]
    if isinstance(x, np.ndarray):
        return [json_safe(v) for v in x.tolist()]
    if isinstance(x, np.bool_):
        return bool(x)
    if isinstance(x, np.integer):
        return int(x)
    if isinstance(x, np.floating):
        return json_safe(float(x))
    if isinstance(x, (complex, np.complexfloating)):
        return {"re": json_safe(float(np.real(x))), "im": json_safe(float(np.imag(x)))}
    return str(x)


# =========================================================
# Escritura
# =========================================================
def report_dir(out_dir: Path, name: str) -> Path:
    return Path(out_dir) / name


def write_report(report: ExperimentReport, out_dir: Path) -> Path:
    folder = report_dir(out_dir, report.name)
    path = save_json(folder / "report.json", report.to_dict())
    for p in write_spectra(report.spectra, folder):
        logger.debug("spectrum written to %s", p)
    return path


def write_spectra(spectra: Dict[str, Sequence[float]], folder: Path) -> List[Path]:
    if not spectra:
        return []
    if len(spectra) == 1:
        (values,) = spectra.values()
        return [write_spectrum_csv(values, Path(folder) / "spectrum.csv")]
    return [write_spectrum_csv(v, Path(folder) / f"spectrum_{label}.csv") for label, v in spectra.items()]


def summary_frame(reports: Iterable[ExperimentReport]) -> pd.DataFrame:
    rows = [
        {"name": r.name, "verdict": r.verdict, "runtimeSeconds": round(float(r.runtime_seconds), 3), "cached": r.cached}
        for r in reports
    ]
    return pd.DataFrame(rows, columns=["name", "verdict", "runtimeSeconds", "cached"])


def write_summary(reports: Sequence[ExperimentReport], out_dir: Path) -> Tuple[Path, Path]:
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    df = summary_frame(reports)
    csv_path = out_dir / "summary.csv"
    json_path = out_dir / "summary.json"
    df.to_csv(csv_path, index=False)
    df.to_json(json_path, orient="records", indent=2)
    return csv_path, json_path


def export_matrix_market(items: Sequence[Tuple[str, np.ndarray, np.ndarray]], out_dir: Path) -> List[Path]:
    """<label>.mtx y <label>_J.mtx (coordenadas complejas, general)."""
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    written: List[Path] = []
    for label, matrix, J in items:
        for suffix, M in (("", matrix), ("_J", J)):
            path = out_dir / f"{label}{suffix}.mtx"
            mmwrite(str(path), coo_matrix(np.asarray(M, dtype=complex)), field="complex", symmetry="general")
            written.append(path)
    logger.info("exported %d matrices to %s", len(written), out_dir)
    return written


def format_table(reports: Sequence[ExperimentReport], counts: Optional[Dict[str, int]] = None) -> str:
    df = summary_frame(reports)
    text = df.to_string(index=False) if len(df) else "(no experiments)"
    if counts is not None:
        text += "\n" + "  ".join(f"{k}={counts.get(k, 0)}" for k in VERDICTS)
    return text
