# app.py
from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from pathlib import Path
from typing import List, Optional

ROOT = Path(__file__).resolve().parent
if str(ROOT) not in sys.path:
    sys.path.insert(0, str(ROOT))

from src.db import get_settings, load_json  # noqa: E402
from src.errors import Z2LabError  # noqa: E402

logger = logging.getLogger("z2lab")


def _set_thread_env(n: int) -> None:
    # antes de importar numpy
    n = int(max(1, n))
    for k in ("OMP_NUM_THREADS", "OPENBLAS_NUM_THREADS", "MKL_NUM_THREADS", "VECLIB_MAXIMUM_THREADS"):
        os.environ[k] = str(n)


def _setup_logging(level: str) -> None:
    logging.basicConfig(
        level=getattr(logging, level.upper(), logging.INFO),
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
    )


def _cmd_list(args) -> int:
    from src.harness.registry import list_experiments

    entries = list_experiments()
    if args.json:
        print(json.dumps(entries, indent=2, ensure_ascii=False))
        return 0
    for e in entries:
        print(f"{e['name']}  [{e['runtime_class']}]")
        print(f"    {e['anchor']}")
        for key, schema in e["params"].items():
            extra = f" min={schema['minimum']}" if "minimum" in schema else ""
            print(f"    - {key}: {schema['type']} = {schema['default']}{extra}")
    return 0


def _cmd_run(args) -> int:
    from src.harness.registry import parse_suite
    from src.harness.report import format_table
    from src.harness.runner import run_suite

    try:
        suite = parse_suite(load_json(Path(args.config)))
    except (Z2LabError, OSError, json.JSONDecodeError) as e:
        logger.error("invalid config %s: %s", args.config, e)
        return 1
    out_dir = Path(args.out) if args.out else suite.output_dir
    summary = run_suite(
        suite.experiments,
        workers=args.workers or suite.workers,
        output_dir=out_dir,
        use_cache=not args.no_cache,
    )
    print(format_table(summary.reports, summary.counts))
    return summary.exit_status


def _cmd_export(args) -> int:
    from src.harness.runner import export_experiment

    try:
        paths = export_experiment(args.experiment, Path(args.matrix_market))
    except Z2LabError as e:
        logger.error("export failed: %s", e)
        return 1
    for p in paths:
        print(p)
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="z2lab", description="Experimentos numéricos de índices Z2 de operadores odd simétricos.")
    sub = ap.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="ejecuta las experiencias de un config JSON")
    run.add_argument("config", type=str)
    run.add_argument("--out", type=str, default="", help="directorio de salida (default: Z2LAB_OUTPUT_DIR)")
    run.add_argument("--workers", type=int, default=0)
    run.add_argument("--no-cache", action="store_true")
    run.set_defaults(func=_cmd_run)

    ls = sub.add_parser("list", help="registro de experiencias y parámetros")
    ls.add_argument("--json", action="store_true")
    ls.set_defaults(func=_cmd_list)

    ex = sub.add_parser("export", help="operadores de una experiencia en Matrix Market")
    ex.add_argument("experiment", type=str)
    ex.add_argument("--matrix-market", type=str, required=True, metavar="DIR")
    ex.set_defaults(func=_cmd_export)
    return ap


def main(argv: Optional[List[str]] = None) -> int:
    settings = get_settings()
    _set_thread_env(settings.blas_threads)
    _setup_logging(settings.log_level)
    args = build_parser().parse_args(argv)
    return int(args.func(args))


if __name__ == "__main__":
    raise SystemExit(main())
