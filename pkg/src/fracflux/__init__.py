"""Conserved control-volume solver for 1-D diffusion with interchangeable
local and one-sided fractional flux laws."""

__version__ = "0.1.0"

from .diagnostics import (
    DiagnosticTrace,
    EquivarianceReport,
    MaxPrincipleReport,
    equivariance_test,
    max_principle_check,
    steady_state_time,
    total_mass,
)
from .flux import (
    FaceFluxes,
    FluxKind,
    caputo_faces,
    face_fluxes,
    fourier_faces,
    parsimonious_faces,
    rl_faces_grunwald,
    rl_faces_weighted,
)
from .scenarios import (
    PROFILES,
    SCENARIO_NAMES,
    Scenario,
    build_initial,
    fig7_bump,
    make_scenario,
    triangular_pulse,
)
from .solver import (
    BoundarySpec,
    ConfigurationError,
    Dirichlet,
    Field,
    FixedFlux,
    Grid,
    InitialSpec,
    InstabilityError,
    RunResult,
    SimConfig,
    StabilityWarning,
    run,
    stability_ratio,
    step,
)
from .weights import GrunwaldTable, build_table, partial_g_sum

__all__ = [
    "BoundarySpec",
    "ConfigurationError",
    "DiagnosticTrace",
    "Dirichlet",
    "EquivarianceReport",
    "FaceFluxes",
    "Field",
    "FixedFlux",
    "FluxKind",
    "Grid",
    "GrunwaldTable",
    "InitialSpec",
    "InstabilityError",
    "MaxPrincipleReport",
    "PROFILES",
    "RunResult",
    "SCENARIO_NAMES",
    "Scenario",
    "SimConfig",
    "StabilityWarning",
    "build_initial",
    "build_table",
    "caputo_faces",
    "equivariance_test",
    "face_fluxes",
    "fig7_bump",
    "fourier_faces",
    "make_scenario",
    "max_principle_check",
    "parsimonious_faces",
    "partial_g_sum",
    "rl_faces_grunwald",
    "rl_faces_weighted",
    "run",
    "stability_ratio",
    "steady_state_time",
    "step",
    "total_mass",
    "triangular_pulse",
]
