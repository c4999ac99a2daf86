"""Shrinking population schedules for trap-function genetic algorithms."""

from ._core import (
    BisectionSettings,
    EstimationError,
    GAConfig,
    GmaxStatistic,
    PowerLawFit,
    ReliabilityCriterion,
    ReliabilityReport,
    RunOutcome,
    SampleStats,
    Schedule,
    SizingRecord,
    SizingResult,
    Termination,
    TrapParams,
    TrapProblem,
    TTestResult,
    TTestVariant,
    __version__,
    estimate_gmax,
    fit_power_law,
    make_problem,
    run,
    run_batch,
    run_sizing,
    trap_value,
    two_sample_t_test,
    unitation,
)

__all__ = [
    "BisectionSettings",
    "EstimationError",
    "GAConfig",
    "GmaxStatistic",
    "PowerLawFit",
    "ReliabilityCriterion",
    "ReliabilityReport",
    "RunOutcome",
    "SampleStats",
    "Schedule",
    "SizingRecord",
    "SizingResult",
    "Termination",
    "TrapParams",
    "TrapProblem",
    "TTestResult",
    "TTestVariant",
    "__version__",
    "estimate_gmax",
    "fit_power_law",
    "make_problem",
    "run",
    "run_batch",
    "run_sizing",
    "trap_value",
    "two_sample_t_test",
    "unitation",
]
