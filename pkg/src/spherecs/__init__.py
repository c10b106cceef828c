"""Coherent states of a harmonic oscillator on a sphere, in finite Fock space.

Public surface: the deformed ladder algebra, the four state families and
their photon statistics, squeezing and over-completeness diagnostics, cavity
preparation planning, and the sweep/figure tabulation used by the HTTP
service and the CLI.
"""

__version__ = "0.1.0"

from .algebra import (
    LogWeight,
    ModelParams,
    StateVector,
    apply_lower,
    apply_raise,
    chi,
    commutator_diagonal,
    deformation_g,
    g_factorial_log,
)
from .states import (
    DegenerateInputError,
    StateKind,
    StateSpec,
    build_state,
    state_by_ladder,
)
from .observables import (
    PhotonStatistics,
    QuadratureReport,
    closed_form_pdf,
    min_squeezing,
    photon_statistics,
    quadrature_report,
)
from .identity import (
    MeasureKind,
    MeasureMode,
    QuadratureError,
    ResolutionReport,
    deformed_binomial_sum,
    resolution_matrix,
)
from .preparation import (
    NumericalError,
    PreparationPlan,
    PreparationStep,
    RootPolicy,
    ScheduleError,
    SimulationError,
    SimulationResult,
    SynthesisError,
    characteristic_polynomial,
    excited_branch,
    forward_step,
    plan_csv,
    simulate_plan,
    synthesize_plan,
)
from .sweeps import OBSERVABLES, VARIABLES, SweepGrid, SweepSpec, run_sweep
from .figures import FIGURES, FigurePanel, FigureResult, figure_ids, run_figure
from .tables import Table, format_cell, state_csv

__all__ = [
    "__version__",
    "LogWeight",
    "ModelParams",
    "StateVector",
    "apply_lower",
    "apply_raise",
    "chi",
    "commutator_diagonal",
    "deformation_g",
    "g_factorial_log",
    "DegenerateInputError",
    "StateKind",
    "StateSpec",
    "build_state",
    "state_by_ladder",
    "PhotonStatistics",
    "QuadratureReport",
    "closed_form_pdf",
    "min_squeezing",
    "photon_statistics",
    "quadrature_report",
    "MeasureKind",
    "MeasureMode",
    "QuadratureError",
    "ResolutionReport",
    "deformed_binomial_sum",
    "resolution_matrix",
    "NumericalError",
    "PreparationPlan",
    "PreparationStep",
    "RootPolicy",
    "ScheduleError",
    "SimulationError",
    "SimulationResult",
    "SynthesisError",
    "characteristic_polynomial",
    "excited_branch",
    "forward_step",
    "plan_csv",
    "simulate_plan",
    "synthesize_plan",
    "OBSERVABLES",
    "VARIABLES",
    "SweepGrid",
    "SweepSpec",
    "run_sweep",
    "FIGURES",
    "FigurePanel",
    "FigureResult",
    "figure_ids",
    "run_figure",
    "Table",
    "format_cell",
    "state_csv",
]
