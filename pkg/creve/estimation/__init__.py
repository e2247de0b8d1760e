"""
CREVE - Estimation Module

RANSAC/LSQ Doppler velocity, the box-constrained least-squares solver, the
per-scan pipeline and the dataset-level estimators.
"""

from creve.estimation.box_lsq import AxisState, BoxConstraint, BoxLsqSolution, solve_box_lsq
from creve.estimation.estimator import (
    CreveEstimator,
    EgoVelocityEstimator,
    EstimationRun,
    EstimatorBuilder,
    ReveEstimator,
    TimingStats,
)
from creve.estimation.pipeline import (
    BiasFilter,
    GammaBounds,
    PipelineState,
    VelocityEstimate,
    bias_filter_update,
    body_velocity_nav,
    build_constraint,
    coarse_align,
    compute_acceleration,
    compute_gamma,
    constrained_solve,
    constraint_rows,
    estimate_bias_raw,
    initial_state,
    step,
)
from creve.estimation.ransac import (
    RansacParams,
    RansacResult,
    detect_zero_velocity,
    doppler_system,
    lsq_velocity,
    ransac_estimate,
)

__all__ = [
    "AxisState",
    "BiasFilter",
    "BoxConstraint",
    "BoxLsqSolution",
    "CreveEstimator",
    "EgoVelocityEstimator",
    "EstimationRun",
    "EstimatorBuilder",
    "GammaBounds",
    "PipelineState",
    "RansacParams",
    "RansacResult",
    "ReveEstimator",
    "TimingStats",
    "VelocityEstimate",
    "bias_filter_update",
    "body_velocity_nav",
    "build_constraint",
    "coarse_align",
    "compute_acceleration",
    "compute_gamma",
    "constrained_solve",
    "constraint_rows",
    "detect_zero_velocity",
    "doppler_system",
    "estimate_bias_raw",
    "initial_state",
    "lsq_velocity",
    "ransac_estimate",
    "solve_box_lsq",
    "step",
]
