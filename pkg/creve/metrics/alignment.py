"""
CREVE - Trajectory Alignment

Closed-form rigid alignments of an estimated trajectory onto ground truth:
4-DoF position + yaw and full SE(3) with the scale fixed to one.
Both return the transform (R, t) minimizing Σ‖gt_i − (R·est_i + t)‖² over
timestamp-matched pairs.
"""

import logging
from typing import Tuple

import numpy as np

from creve.constants import ErrorCode, EvaluationDefaults
from creve.exceptions import DegenerateGeometryException, InsufficientDataException
from creve.geometry.rotation import Rotation
from creve.metrics.trajectory import Trajectory

logger = logging.getLogger(__name__)

# Horizontal or 3D spread below which a point set cannot fix a rotation
_MIN_SPREAD = 1e-12


def match_timestamps(
    est_timestamps: np.ndarray, gt_timestamps: np.ndarray, max_dt: float
) -> Tuple[np.ndarray, np.ndarray]:
    """
    Pair every estimate with its nearest ground-truth sample.

    Ties go to the earlier ground-truth sample. Estimates with no sample
    within ``max_dt`` are dropped.

    Returns:
        (estimate indices, ground-truth indices) of the matched pairs.
    """
    est_timestamps = np.asarray(est_timestamps, dtype=np.float64)
    gt_timestamps = np.asarray(gt_timestamps, dtype=np.float64)
    if len(est_timestamps) == 0 or len(gt_timestamps) == 0:
        return np.zeros(0, dtype=np.int64), np.zeros(0, dtype=np.int64)
    right = np.clip(np.searchsorted(gt_timestamps, est_timestamps), 0, len(gt_timestamps) - 1)
    left = np.clip(right - 1, 0, len(gt_timestamps) - 1)
    use_left = np.abs(est_timestamps - gt_timestamps[left]) <= np.abs(gt_timestamps[right] - est_timestamps)
    nearest = np.where(use_left, left, right)
    keep = np.abs(gt_timestamps[nearest] - est_timestamps) <= max_dt
    return np.flatnonzero(keep), nearest[keep]


def matched_positions(
    est: Trajectory, gt: Trajectory, max_dt: float = EvaluationDefaults.MAX_DT
) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """
    Matched (timestamps, estimated positions, ground-truth positions).

    Raises:
        InsufficientDataException: If no estimate has a ground-truth sample within ``max_dt``.
    """
    est_idx, gt_idx = match_timestamps(est.timestamps, gt.timestamps, max_dt)
    if len(est_idx) == 0:
        raise InsufficientDataException(
            f"No estimate lies within {max_dt} s of a ground-truth sample.", ErrorCode.INSUFFICIENT_OVERLAP
        )
    return est.timestamps[est_idx], est.positions[est_idx], gt.positions[gt_idx]


def yaw_rotation(yaw: float) -> Rotation:
    return Rotation.from_euler(yaw)


def align_pos_yaw(
    est: Trajectory, gt: Trajectory, max_dt: float = EvaluationDefaults.MAX_DT
) -> Tuple[float, np.ndarray]:
    """
    Yaw about the navigation z-axis and translation best mapping ``est`` onto ``gt``.

    The horizontal tracks are treated as complex numbers; the optimal yaw is
    the argument of Σ conj(est_i)·gt_i over the centred points.

    Returns:
        (yaw in rad, translation).

    Raises:
        InsufficientDataException: If fewer than two pairs match.
        DegenerateGeometryException: If the matched estimates have no horizontal spread.
    """
    _, p_est, p_gt = matched_positions(est, gt, max_dt)
    if len(p_est) < 2:
        raise InsufficientDataException("Pos-yaw alignment needs at least two matched pairs.")
    mu_est, mu_gt = p_est.mean(axis=0), p_gt.mean(axis=0)
    est_xy = (p_est[:, 0] - mu_est[0]) + 1j * (p_est[:, 1] - mu_est[1])
    gt_xy = (p_gt[:, 0] - mu_gt[0]) + 1j * (p_gt[:, 1] - mu_gt[1])
    if np.sum(np.abs(est_xy) ** 2) <= _MIN_SPREAD:
        raise DegenerateGeometryException("Pos-yaw alignment is undefined for a trajectory without horizontal spread.")
    correlation = np.sum(np.conj(est_xy) * gt_xy)
    yaw = float(np.angle(correlation)) if abs(correlation) > _MIN_SPREAD else 0.0
    translation = mu_gt - yaw_rotation(yaw).rotate(mu_est)
    return yaw, translation


def align_umeyama(
    est: Trajectory, gt: Trajectory, max_dt: float = EvaluationDefaults.MAX_DT
) -> Tuple[Rotation, np.ndarray, float]:
    """
    Least-squares SE(3) alignment with the scale fixed to one.

    Returns:
        (rotation, translation, scale = 1.0).

    Raises:
        InsufficientDataException: If fewer than three pairs match.
        DegenerateGeometryException: If the matched estimates are collinear.
    """
    _, p_est, p_gt = matched_positions(est, gt, max_dt)
    if len(p_est) < 3:
        raise InsufficientDataException("SE(3) alignment needs at least three matched pairs.")
    mu_est, mu_gt = p_est.mean(axis=0), p_gt.mean(axis=0)
    est_centered, gt_centered = p_est - mu_est, p_gt - mu_gt
    if np.linalg.matrix_rank(est_centered, tol=np.sqrt(_MIN_SPREAD)) < 2:
        raise DegenerateGeometryException("SE(3) alignment is undefined for collinear trajectories.")

    correlation = gt_centered.T @ est_centered / len(p_est)
    U, _, Vt = np.linalg.svd(correlation)
    S = np.eye(3)
    if np.linalg.det(U) * np.linalg.det(Vt) < 0.0:
        S[2, 2] = -1.0
    rotation = Rotation.from_matrix(U @ S @ Vt)
    translation = mu_gt - rotation.rotate(mu_est)
    logger.debug("SE(3) alignment over %d pairs: rotation %s", len(p_est), rotation)
    return rotation, translation, 1.0


def apply_transform(positions: np.ndarray, rotation: Rotation, translation) -> np.ndarray:
    """Return R·p + t for every row of ``positions``."""
    return rotation.as_scipy().apply(np.asarray(positions).reshape(-1, 3)) + np.asarray(translation)
