"""Core modülleri - ölçüler, spektral ızgara, doğrusal yayıcı, dinamik ve çekiciler"""

# Vector Measures
from .measure import (
    HilbertVector,
    VectorMeasure,
    DistributionFunction,
    PolarDecomposition,
    total_variation,
    distribution,
    distribution_values,
    interval_value,
    integrate_against,
    integrate_scalar,
    polar_decompose,
    delta_approximation,
    mollify,
    project_tail,
    regularity_gap,
)

# Global Measures
from .global_measure import (
    GlobalMeasure,
    ZeroMeasure,
    PeriodicTemplate,
    SpikeTrain,
    AsymptoticProfile,
    ExplicitWindowList,
    CompositeMeasure,
    build_forcing,
    wna_modulus,
)

# Spectral Grid
from .spectral import ModeGrid, SpectralField, StatePair, norm_hs, norm_lp, norm_hap, strichartz_window
from .nonlinearity import Nonlinearity, coercivity_level

# Linear Propagator
from .propagator import LinearPropagator, LinearRun, decay_rate, run_linear, linear_diagnostics

# Dynamics
from .dynamics import Trajectory, simulate, step, continuous_dependence, dissipativity_scan
from .ledger import EnergyLedger, ledger

# Attractors & Experiments
from .attractor import HullSample, EnsembleImage, pullback_attractor, translation_identity_check, weak_star_distance
from .scalar_model import kernel_vs_attractor, hull_sections
from .experiments import splitting_run, strichartz_cascade, energy_to_strichartz_scan
from .inequality import kato_ponce_check, gronwall_bound

__all__ = [
    # Measures
    "HilbertVector",
    "VectorMeasure",
    "DistributionFunction",
    "PolarDecomposition",
    "total_variation",
    "distribution",
    "distribution_values",
    "interval_value",
    "integrate_against",
    "integrate_scalar",
    "polar_decompose",
    "delta_approximation",
    "mollify",
    "project_tail",
    "regularity_gap",

    # Global measures
    "GlobalMeasure",
    "ZeroMeasure",
    "PeriodicTemplate",
    "SpikeTrain",
    "AsymptoticProfile",
    "ExplicitWindowList",
    "CompositeMeasure",
    "build_forcing",
    "wna_modulus",

    # Spectral
    "ModeGrid",
    "SpectralField",
    "StatePair",
    "norm_hs",
    "norm_lp",
    "norm_hap",
    "strichartz_window",
    "Nonlinearity",
    "coercivity_level",

    # Propagator
    "LinearPropagator",
    "LinearRun",
    "decay_rate",
    "run_linear",
    "linear_diagnostics",

    # Dynamics
    "Trajectory",
    "simulate",
    "step",
    "continuous_dependence",
    "dissipativity_scan",
    "EnergyLedger",
    "ledger",

    # Attractors
    "HullSample",
    "EnsembleImage",
    "pullback_attractor",
    "translation_identity_check",
    "weak_star_distance",
    "kernel_vs_attractor",
    "hull_sections",
    "splitting_run",
    "strichartz_cascade",
    "energy_to_strichartz_scan",
    "kato_ponce_check",
    "gronwall_bound",
]
