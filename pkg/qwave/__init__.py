"""
QWave - Ölçü sürümlü sönümlü kuintik dalga denklemi
Torus üzerinde spektral simülasyon, enerji defteri ve çekici tahminleri
"""

__version__ = "1.0.0"
__author__ = "QWave Team"

# Ana sınıfları dışarı export et
from .utils.config import AppSettings, Scenario, ExperimentTag
from .utils.logger import get_logger
from .core.measure import VectorMeasure
from .core.global_measure import GlobalMeasure, build_forcing
from .core.spectral import ModeGrid, SpectralField, StatePair
from .core.propagator import LinearPropagator
from .core.dynamics import Trajectory, simulate
from .services.runner import ExperimentRunner, RunState, RunEvent

# Public API
__all__ = [
    # Version
    "__version__",
    "__author__",

    # Configuration
    "AppSettings",
    "Scenario",
    "ExperimentTag",

    # Core Classes
    "VectorMeasure",
    "GlobalMeasure",
    "build_forcing",
    "ModeGrid",
    "SpectralField",
    "StatePair",
    "LinearPropagator",
    "Trajectory",
    "simulate",
    "ExperimentRunner",
    "RunState",
    "RunEvent",

    # Utils
    "get_logger",
]
