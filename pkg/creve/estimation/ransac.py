"""
CREVE - RANSAC Ego-Velocity

Unconstrained least-squares ego-velocity from Doppler returns, iterative
RANSAC outlier rejection and zero-velocity detection.

Every static target i satisfies -v_D,i = p̄_iᵀ v^r, so a scan gives the linear
system H v = y with row i of H equal to p̄_iᵀ and y_i = -v_D,i.
"""

import logging
import math
from dataclasses import dataclass, field
from typing import Optional, Sequence, Tuple

import numpy as np

from creve.constants import RansacDefaults
from creve.domain import RadarScan, RadarTarget
from creve.exceptions import DegenerateGeometryException, InsufficientDataException, InvalidInputException

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class RansacParams:
    """
    Parameters of the RANSAC ego-velocity estimator.

    ``rng_seed`` seeds a numpy ``Generator``; the same scan and seed always
    select the same consensus set.
    """

    success_prob: float = RansacDefaults.SUCCESS_PROB
    outlier_prob: float = RansacDefaults.OUTLIER_PROB
    inlier_threshold: float = RansacDefaults.INLIER_THRESHOLD
    rng_seed: int = RansacDefaults.SEED

    def __post_init__(self):
        if not 0.0 < self.success_prob < 1.0:
            raise InvalidInputException(f"success_prob must lie in (0, 1), got {self.success_prob!r}.")
        if not 0.0 <= self.outlier_prob < 1.0:
            raise InvalidInputException(f"outlier_prob must lie in [0, 1), got {self.outlier_prob!r}.")
        if not self.inlier_threshold > 0.0:
            raise InvalidInputException(f"inlier_threshold must be positive, got {self.inlier_threshold!r}.")

    @property
    def iterations(self) -> int:
        """
        Number of minimal-sample hypotheses needed to draw at least one
        all-inlier sample with probability ``success_prob``.
        """
        all_inlier = (1.0 - self.outlier_prob) ** RansacDefaults.SAMPLE_SIZE
        if all_inlier >= 1.0:
            return 1
        n = math.log(1.0 - self.success_prob) / math.log(1.0 - all_inlier)
        return max(1, math.ceil(n))

    @property
    def max_iterations(self) -> int:
        """Hypothesis cap when the nominal draws leave the consensus short of the assumed inlier share."""
        return RansacDefaults.EXTENSION_FACTOR * self.iterations

    def expected_consensus(self, n: int) -> float:
        """Smallest consensus size consistent with ``outlier_prob`` for a scan of ``n`` targets."""
        return (1.0 - self.outlier_prob) * n


@dataclass(frozen=True, eq=False)
class RansacResult:
    velocity: np.ndarray
    inlier_indices: np.ndarray
    inlier_ratio: float
    degenerate: bool = False
    iterations: int = field(default=0, compare=False)


def doppler_system(targets: Sequence[RadarTarget]) -> Tuple[np.ndarray, np.ndarray]:
    """
    Build the Doppler least-squares system (H, y) of a target list.

    Args:
        targets: Radar targets, or a ``RadarScan``.

    Returns:
        H with unit line-of-sight rows and y = -v_D.
    """
    if isinstance(targets, RadarScan):
        positions, dopplers = targets.positions(), targets.dopplers()
    else:
        positions = np.array([t.position for t in targets], dtype=np.float64).reshape(-1, 3)
        dopplers = np.array([t.doppler for t in targets], dtype=np.float64)
    ranges = np.linalg.norm(positions, axis=1)
    return positions / ranges[:, None], -dopplers


def _solve_normal_equations(H: np.ndarray, y: np.ndarray) -> np.ndarray:
    HtH = H.T @ H
    cond = np.linalg.cond(HtH)
    if not np.isfinite(cond) or cond > RansacDefaults.MAX_CONDITION_NUMBER:
        raise DegenerateGeometryException(f"Doppler geometry is ill-conditioned (cond(HᵀH) = {cond:.3e}).")
    return np.linalg.solve(HtH, H.T @ y)


def lsq_velocity(targets: Sequence[RadarTarget]) -> np.ndarray:
    """
    Least-squares radar-frame ego-velocity of a set of static targets.

    Raises:
        InsufficientDataException: If fewer than 3 targets are given.
        DegenerateGeometryException: If the line-of-sight directions do not span 3D.
    """
    if len(targets) < RansacDefaults.SAMPLE_SIZE:
        raise InsufficientDataException(f"Velocity fit needs at least 3 targets, got {len(targets)}.")
    H, y = doppler_system(targets)
    return _solve_normal_equations(H, y)


def ransac_estimate(
    scan: RadarScan, params: RansacParams, rng: Optional[np.random.Generator] = None
) -> RansacResult:
    """
    Robust ego-velocity of one scan.

    Each hypothesis fits 3 distinct targets; the hypothesis with the largest
    consensus set wins (earliest hypothesis on ties) and the velocity is refit
    on that consensus set.

    After ``params.iterations`` hypotheses the search stops once the best
    consensus covers at least the ``1 - outlier_prob`` share of the scan;
    otherwise it keeps drawing up to ``params.max_iterations``.

    Args:
        scan: The radar scan.
        params: RANSAC parameters.
        rng: Optional generator overriding ``params.rng_seed``.

    Raises:
        InsufficientDataException: If the scan has fewer than 3 targets.
        DegenerateGeometryException: If every sampled triple is degenerate.
    """
    n = len(scan)
    if n < RansacDefaults.SAMPLE_SIZE:
        raise InsufficientDataException(f"RANSAC needs at least 3 targets, got {n}.")
    if rng is None:
        rng = np.random.default_rng(params.rng_seed)

    H, y = doppler_system(scan)
    nominal = params.iterations
    # consensus sizes are integers; the slack absorbs rounding in (1 - p)·n
    wanted = params.expected_consensus(n) - 1e-9
    best_mask: Optional[np.ndarray] = None
    best_count = 0
    best_velocity = None

    iterations = 0
    while iterations < params.max_iterations:
        if iterations >= nominal and best_count >= wanted:
            break
        iterations += 1
        sample = rng.choice(n, RansacDefaults.SAMPLE_SIZE, replace=False)
        try:
            hypothesis = _solve_normal_equations(H[sample], y[sample])
        except DegenerateGeometryException:
            continue
        mask = np.abs(H @ hypothesis - y) < params.inlier_threshold
        count = int(np.count_nonzero(mask))
        if count > best_count:
            best_mask, best_count, best_velocity = mask, count, hypothesis

    if best_mask is None:
        raise DegenerateGeometryException(f"All {iterations} RANSAC samples have degenerate geometry.")
    if iterations > nominal:
        logger.debug("RANSAC drew %d hypotheses, best consensus %d of %d targets", iterations, best_count, n)

    inliers = np.flatnonzero(best_mask)
    inliers.setflags(write=False)
    degenerate = False
    try:
        velocity = _solve_normal_equations(H[inliers], y[inliers])
    except DegenerateGeometryException:
        logger.debug("Consensus refit is degenerate, keeping the best hypothesis")
        velocity, degenerate = best_velocity, True
    return RansacResult(
        velocity=velocity,
        inlier_indices=inliers,
        inlier_ratio=len(inliers) / n,
        degenerate=degenerate,
        iterations=iterations,
    )


def detect_zero_velocity(scan: RadarScan, z_threshold: float) -> bool:
    """
    True when the median absolute Doppler of the scan lies below ``z_threshold``.
    """
    if len(scan) == 0:
        raise InsufficientDataException("Zero-velocity detection needs a non-empty scan.")
    return bool(np.median(np.abs(scan.dopplers())) < z_threshold)
