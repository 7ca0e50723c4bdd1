"""Yardımcı sınıflar - konfig, loglama, artefakt yazımı, paralellik"""

# Configuration System
from .config import (
    AppSettings,
    Scenario,
    ModelConfig,
    ForcingConfig,
    RunConfig,
    ExperimentTag,
    NonlinearityFamily,
    ForcingFamily,
    SpikeLaw,
    get_settings,
    reload_settings,
)

# Logging System
from .logger import get_logger, log_check

# Artifacts
from .io import write_csv, write_summary, summary_text, SCHEMA_VERSION

# Parallel Ensembles
from .parallel import ensemble_map, member_rng

# Custom Exceptions
from .exceptions import (
    QWaveException,
    ConfigurationError,
    ScenarioParseError,
    PreconditionError,
    MeasureDomainError,
    UndefinedPolarError,
    GridMismatchError,
    ContractViolationError,
    SolverBlowUpError,
    ExperimentError,
)

__all__ = [
    # Configuration
    "AppSettings",
    "Scenario",
    "ModelConfig",
    "ForcingConfig",
    "RunConfig",
    "ExperimentTag",
    "NonlinearityFamily",
    "ForcingFamily",
    "SpikeLaw",
    "get_settings",
    "reload_settings",

    # Logging
    "get_logger",
    "log_check",

    # Artifacts
    "write_csv",
    "write_summary",
    "summary_text",
    "SCHEMA_VERSION",

    # Parallel
    "ensemble_map",
    "member_rng",

    # Exceptions
    "QWaveException",
    "ConfigurationError",
    "ScenarioParseError",
    "PreconditionError",
    "MeasureDomainError",
    "UndefinedPolarError",
    "GridMismatchError",
    "ContractViolationError",
    "SolverBlowUpError",
    "ExperimentError",
]
