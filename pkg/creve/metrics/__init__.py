"""
CREVE - Metrics Module

Dead reckoning, trajectory alignment, velocity RMSE and absolute trajectory
error.
"""

from creve.metrics.alignment import align_pos_yaw, align_umeyama, match_timestamps
from creve.metrics.evaluation import (
    AteReport,
    EpochCounts,
    EvaluationReport,
    ate,
    compare_reports,
    evaluate_estimates,
    rmse_per_axis,
)
from creve.metrics.trajectory import (
    Trajectory,
    VectorSeries,
    integrate_positions,
    integrate_velocities,
    truth_velocities,
)

__all__ = [
    "AteReport",
    "EpochCounts",
    "EvaluationReport",
    "Trajectory",
    "VectorSeries",
    "align_pos_yaw",
    "align_umeyama",
    "ate",
    "compare_reports",
    "evaluate_estimates",
    "integrate_positions",
    "integrate_velocities",
    "match_timestamps",
    "rmse_per_axis",
    "truth_velocities",
]
