"""Simulation and fitting lab for phase-scheduled Grover-style search."""

from .analytic import closed_form_probability, size9_reference_probability
from .core import (
    IterationKernel,
    PhaseMatchingResult,
    PhaseSchedule,
    ProblemSpec,
    ReducedState,
    ScheduleKind,
    TAU,
    apply_iteration,
    batch_success_probability,
    initial_reduced_state,
    optimal_iterations,
    phase_matching_angle,
    rotation_angle,
    schedule_phases,
    success_probability,
)
from .fullstate import equal_superposition, run_full
from .hillfit import (
    FitResult,
    HillParams,
    ModelId,
    extrapolate,
    fit_hill,
    fit_secondary,
    hill_eval,
    hill_gradient,
)
from .kernels import BACKEND, available_backends
from .pipeline import (
    ComparisonReport,
    RobustnessRecord,
    iteration_breakpoints,
    load_records,
    save_records,
    save_report,
    scan,
    select_dependences,
    summarize,
)
from .sweep import Dependence, SampleSet, cross_section, grid, robustness_interval
from .verify import SuiteResult, run_suites, suite_names

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "ComparisonReport",
    "Dependence",
    "FitResult",
    "HillParams",
    "IterationKernel",
    "ModelId",
    "PhaseMatchingResult",
    "PhaseSchedule",
    "ProblemSpec",
    "ReducedState",
    "RobustnessRecord",
    "SampleSet",
    "ScheduleKind",
    "SuiteResult",
    "TAU",
    "apply_iteration",
    "available_backends",
    "batch_success_probability",
    "closed_form_probability",
    "cross_section",
    "equal_superposition",
    "extrapolate",
    "fit_hill",
    "fit_secondary",
    "grid",
    "hill_eval",
    "hill_gradient",
    "initial_reduced_state",
    "iteration_breakpoints",
    "load_records",
    "optimal_iterations",
    "phase_matching_angle",
    "robustness_interval",
    "rotation_angle",
    "run_full",
    "run_suites",
    "save_records",
    "save_report",
    "scan",
    "schedule_phases",
    "select_dependences",
    "size9_reference_probability",
    "success_probability",
    "suite_names",
    "summarize",
]
