"""Bootstrap percolation on Hamming tori.

Exact growth dynamics (reference and optimized line-counter engines),
spanning-configuration detectors, closed-form limits, critical-exponent
bounds and a reproducible Monte Carlo harness.
"""

from hamming_boot._core import (
    Configuration,
    ConfigCounts,
    DomainError,
    DynamicsResult,
    ResourceError,
    TorusShape,
    above_threshold,
    classify_good,
    count_basic,
    count_configurations,
    count_enhanced_basic,
    count_line_events,
    detect_f_line,
    evolve,
    evolve_fast,
    exact_probability,
    exponent_table,
    good_probability_limit,
    hamming_distance,
    is_basic_at,
    lower_exponent,
    neighborhood,
    neighborhood_of_set,
    open_line_exists,
    open_plane_exists,
    plane_threshold_exponent_bounds,
    poisson_means,
    run_experiment,
    sample_initial,
    spanning_decay_exponent_2d,
    spanning_limit_2d,
    spanning_limit_3d_theta3,
    step,
    upper_exponent,
    wilson_interval,
)

__all__ = [
    "Configuration",
    "ConfigCounts",
    "DomainError",
    "DynamicsResult",
    "ResourceError",
    "TorusShape",
    "above_threshold",
    "classify_good",
    "count_basic",
    "count_configurations",
    "count_enhanced_basic",
    "count_line_events",
    "detect_f_line",
    "evolve",
    "evolve_fast",
    "exact_probability",
    "exponent_table",
    "good_probability_limit",
    "hamming_distance",
    "is_basic_at",
    "lower_exponent",
    "neighborhood",
    "neighborhood_of_set",
    "open_line_exists",
    "open_plane_exists",
    "plane_threshold_exponent_bounds",
    "poisson_means",
    "run_experiment",
    "sample_initial",
    "spanning_decay_exponent_2d",
    "spanning_limit_2d",
    "spanning_limit_3d_theta3",
    "step",
    "upper_exponent",
    "wilson_interval",
]

__version__ = "0.1.0"
