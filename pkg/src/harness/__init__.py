from src.harness.registry import REGISTRY, ExperimentConfig, make_config, parse_suite
from src.harness.report import ExperimentReport
from src.harness.runner import SuiteSummary, export_experiment, run_experiment, run_suite

__all__ = [
    "REGISTRY",
    "ExperimentConfig",
    "ExperimentReport",
    "SuiteSummary",
    "export_experiment",
    "make_config",
    "parse_suite",
    "run_experiment",
    "run_suite",
]
