"""Worst-case wind ramp probabilities from historical forecast-error pairs."""

from ._ramprisk import (  # noqa: F401
    Direction,
    EstimateResult,
    FormatError,
    ParseError,
    RampQuery,
    SampleSet,
    SolverFailure,
    SolverPath,
    WassersteinConfig,
    dual_norm_scale,
    erp,
    estimate,
    extract_pairs,
    load_pairs,
    radius_from_confidence,
    ramp_margins,
    solve_worst_case,
    solve_worst_case_lp,
    sweep,
    threshold_to_error_space,
)

__version__ = "0.1.0"
