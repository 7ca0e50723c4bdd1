"""Deney çalıştırıcı ve senaryo kataloğu servisleri"""

# Experiment Runner
from .runner import ExperimentRunner, RunState, RunEvent, CheckResult, run_scenario

# Scenario Catalogue
from .scenarios import list_scenarios, catalog, acceptance_coverage, resolve_scenario

__all__ = [
    # Runner
    "ExperimentRunner",
    "RunState",
    "RunEvent",
    "CheckResult",
    "run_scenario",

    # Scenarios
    "list_scenarios",
    "catalog",
    "acceptance_coverage",
    "resolve_scenario",
]
