"""
CREVE - Evaluation

Per-axis velocity RMSE, absolute trajectory error, the evaluation report of
an estimation run and the comparison of two reports.
"""

import logging
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from creve.constants import AlignmentMode, ErrorCode, EvaluationDefaults
from creve.domain import ExtrinsicCalib, PoseSample
from creve.exceptions import DegenerateGeometryException, InsufficientDataException
from creve.geometry.rotation import Rotation
from creve.metrics.alignment import (
    align_pos_yaw,
    align_umeyama,
    apply_transform,
    match_timestamps,
    matched_positions,
    yaw_rotation,
)
from creve.metrics.trajectory import (
    Trajectory,
    VectorSeries,
    estimate_series,
    integrate_positions,
    truth_velocities,
)

logger = logging.getLogger(__name__)


def rmse_per_axis(est: VectorSeries, gt: VectorSeries, max_dt: float = EvaluationDefaults.MAX_DT) -> np.ndarray:
    """
    Root-mean-square error per axis over timestamp-matched pairs.

    Args:
        est: Estimated vectors.
        gt: Reference vectors.
        max_dt: Largest allowed time offset (s) of a matched pair.

    Returns:
        sqrt(mean((est − gt)²)) for x, y and z.

    Raises:
        InsufficientDataException: With ``INSUFFICIENT_OVERLAP`` if no pair matches.
    """
    est_idx, gt_idx = match_timestamps(est.timestamps, gt.timestamps, max_dt)
    if len(est_idx) == 0:
        raise InsufficientDataException(
            f"No estimate lies within {max_dt} s of a reference sample.", ErrorCode.INSUFFICIENT_OVERLAP
        )
    errors = est.values[est_idx] - gt.values[gt_idx]
    return np.sqrt(np.mean(errors**2, axis=0))


@dataclass(frozen=True, eq=False)
class AteReport:
    """
    Statistics of the position error norms after alignment.

    ``rmse`` is the headline number. ``aligned`` and ``reference`` hold the
    matched positions the errors were computed from.
    """

    rmse: float
    mean: float
    median: float
    min: float
    max: float
    std: float
    per_timestamp_errors: np.ndarray
    timestamps: np.ndarray
    alignment: AlignmentMode
    aligned: np.ndarray = field(default_factory=lambda: np.zeros((0, 3)))
    reference: np.ndarray = field(default_factory=lambda: np.zeros((0, 3)))

    @classmethod
    def from_errors(
        cls, timestamps, aligned: np.ndarray, reference: np.ndarray, alignment: AlignmentMode
    ) -> "AteReport":
        errors = np.linalg.norm(aligned - reference, axis=1)
        return cls(
            rmse=float(np.sqrt(np.mean(errors**2))),
            mean=float(np.mean(errors)),
            median=float(np.median(errors)),
            min=float(np.min(errors)),
            max=float(np.max(errors)),
            std=float(np.std(errors)),
            per_timestamp_errors=errors,
            timestamps=np.asarray(timestamps, dtype=np.float64),
            alignment=alignment,
            aligned=aligned,
            reference=reference,
        )

    def to_dict(self) -> dict:
        return {
            "rmse": self.rmse,
            "mean": self.mean,
            "median": self.median,
            "min": self.min,
            "max": self.max,
            "std": self.std,
            "alignment": str(self.alignment),
            "headline": "rmse",
            "per_timestamp_errors": self.per_timestamp_errors.tolist(),
            "timestamps": self.timestamps.tolist(),
        }


def ate(
    est: Trajectory,
    gt: Trajectory,
    alignment: AlignmentMode = AlignmentMode.POS_YAW,
    max_dt: float = EvaluationDefaults.MAX_DT,
) -> AteReport:
    """
    Absolute trajectory error of ``est`` against ``gt``.

    Raises:
        InsufficientDataException: If the trajectories do not overlap (or
            overlap too little for the alignment).
        DegenerateGeometryException: If the alignment is undefined.
    """
    alignment = AlignmentMode(str(alignment))
    timestamps, p_est, p_gt = matched_positions(est, gt, max_dt)
    if alignment == AlignmentMode.POS_YAW:
        yaw, translation = align_pos_yaw(est, gt, max_dt)
        rotation = yaw_rotation(yaw)
    elif alignment == AlignmentMode.SE3:
        rotation, translation, _ = align_umeyama(est, gt, max_dt)
    else:
        rotation, translation = Rotation.identity(), np.zeros(3)
    aligned = apply_transform(p_est, rotation, translation)
    return AteReport.from_errors(timestamps, aligned, p_gt, alignment)


@dataclass(frozen=True)
class EpochCounts:
    """
    Accounting of the epochs of one estimation run.
    """

    total: int = 0
    constrained: int = 0
    zero_velocity: int = 0
    degenerate: int = 0
    skipped: int = 0

    @property
    def output_fraction(self) -> float:
        scans = self.total + self.skipped
        return self.total / scans if scans else 0.0

    def to_dict(self) -> dict:
        return {
            "total": self.total,
            "constrained": self.constrained,
            "zero_velocity": self.zero_velocity,
            "degenerate": self.degenerate,
            "skipped": self.skipped,
            "output_fraction": self.output_fraction,
        }


@dataclass(frozen=True, eq=False)
class EvaluationReport:
    """
    Velocity RMSE, ATE and epoch accounting of one estimation run.

    ``ate`` is ``None`` when the dataset has no ground truth or the
    trajectories are too short to align; ``notes`` then says why.
    """

    method: str
    rmse_radar: Optional[np.ndarray]
    rmse_nav: Optional[np.ndarray]
    ate: Optional[AteReport]
    epochs: EpochCounts
    notes: tuple = ()

    def to_dict(self) -> dict:
        return {
            "method": self.method,
            "velocity_rmse_radar": None if self.rmse_radar is None else self.rmse_radar.tolist(),
            "velocity_rmse_nav": None if self.rmse_nav is None else self.rmse_nav.tolist(),
            "ate": None if self.ate is None else self.ate.to_dict(),
            "epochs": self.epochs.to_dict(),
            "notes": list(self.notes),
        }


def count_epochs(estimates: Sequence, skipped: int = 0) -> EpochCounts:
    return EpochCounts(
        total=len(estimates),
        constrained=sum(1 for e in estimates if e.constrained),
        zero_velocity=sum(1 for e in estimates if e.zero_velocity),
        degenerate=sum(1 for e in estimates if e.degenerate),
        skipped=skipped,
    )


def evaluate_estimates(
    estimates: Sequence,
    truth: Optional[Sequence[PoseSample]],
    calib: ExtrinsicCalib,
    alignment: AlignmentMode = AlignmentMode.POS_YAW,
    max_dt: float = EvaluationDefaults.MAX_DT,
    method: str = "",
    skipped: int = 0,
) -> EvaluationReport:
    """
    Evaluate a run of estimates against a ground-truth pose stream.

    The dead-reckoned trajectory starts at the ground-truth position at the
    first estimate. Without ground truth only the epoch accounting is
    reported.

    Raises:
        InsufficientDataException: If estimates and ground truth do not overlap.
    """
    epochs = count_epochs(estimates, skipped)
    if not truth:
        logger.info("No ground truth, velocity RMSE and ATE skipped")
        return EvaluationReport(method, None, None, None, epochs, ("ATE skipped: dataset has no ground truth.",))
    if len(estimates) == 0:
        raise InsufficientDataException("Evaluation needs at least one estimate.", ErrorCode.INSUFFICIENT_OVERLAP)

    truth_nav, truth_radar = truth_velocities(truth, calib)
    rmse_nav = rmse_per_axis(estimate_series(estimates, "nav"), truth_nav, max_dt)
    rmse_radar = rmse_per_axis(estimate_series(estimates, "radar"), truth_radar, max_dt)

    gt = Trajectory.from_poses(truth)
    trajectory = integrate_positions(estimates, gt.position_at(estimates[0].timestamp))
    notes = ()
    try:
        ate_report = ate(trajectory, gt, alignment, max_dt)
    except (InsufficientDataException, DegenerateGeometryException) as e:
        if e.error_code == ErrorCode.INSUFFICIENT_OVERLAP:
            raise
        logger.warning("ATE skipped: %s", e.error_message)
        ate_report, notes = None, (f"ATE skipped: {e.error_message}",)
    return EvaluationReport(method, rmse_radar, rmse_nav, ate_report, epochs, notes)


def _reduction(baseline: float, candidate: float) -> Optional[float]:
    if baseline == 0.0:
        return None
    return 100.0 * (1.0 - candidate / baseline)


def compare_reports(baseline: dict, candidate: dict) -> dict:
    """
    Reduction in percent of the candidate's errors relative to the baseline's.

    Both arguments are report dictionaries as produced by
    ``EvaluationReport.to_dict``. A reduction is ``None`` when the baseline
    error is zero or either side lacks the metric.
    """

    def per_axis(key: str):
        if baseline.get(key) is None or candidate.get(key) is None:
            return None
        return [_reduction(b, c) for b, c in zip(baseline[key], candidate[key])]

    def ate_reduction(stat: str):
        if baseline.get("ate") is None or candidate.get("ate") is None:
            return None
        return _reduction(baseline["ate"][stat], candidate["ate"][stat])

    return {
        "baseline": baseline.get("method", ""),
        "candidate": candidate.get("method", ""),
        "velocity_rmse_radar_reduction_percent": per_axis("velocity_rmse_radar"),
        "velocity_rmse_nav_reduction_percent": per_axis("velocity_rmse_nav"),
        "ate_rmse_reduction_percent": ate_reduction("rmse"),
        "ate_mean_reduction_percent": ate_reduction("mean"),
    }
