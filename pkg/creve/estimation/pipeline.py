"""
CREVE - Pipeline

The acceleration-constrained ego-velocity state machine. One ``step`` per
radar scan:

1. zero-velocity test on the median absolute Doppler;
2. otherwise RANSAC/LSQ velocity and inlier ratio;
3. radar-frame acceleration from the IMU with the current smoothed bias;
4. constraint half-width from the inlier ratio;
5. if the estimate leaves the acceleration box on any axis, a box-constrained
   solve on the targets the box can explain;
6. body velocity in the navigation frame with the lever-arm correction;
7. an accelerometer bias update when this epoch and the previous one both
   produced a constrained solution strictly inside the box.

All types here are immutable. ``step`` takes a state and returns a new one.
"""

import logging
from dataclasses import dataclass, field, replace
from typing import Optional, Sequence, Tuple

import numpy as np

from creve.constants import PipelineDefaults, RansacDefaults
from creve.domain import ExtrinsicCalib, ImuSample, RadarScan
from creve.estimation.box_lsq import AxisState, BoxConstraint, BoxLsqSolution, solve_box_lsq
from creve.estimation.ransac import RansacParams, detect_zero_velocity, doppler_system, ransac_estimate
from creve.exceptions import (
    DegenerateGeometryException,
    InsufficientDataException,
    InvalidInputException,
)
from creve.geometry.frames import as_vec3, gravity_nav, skew
from creve.geometry.rotation import Rotation

logger = logging.getLogger(__name__)


def _readonly(v: np.ndarray) -> np.ndarray:
    v = np.array(v, dtype=np.float64)
    v.setflags(write=False)
    return v


@dataclass(frozen=True, eq=False)
class GammaBounds:
    """
    Minimum and maximum constraint half-widths (m/s) per radar axis.
    """

    gamma_min: np.ndarray = field(default_factory=lambda: np.array(PipelineDefaults.GAMMA_MIN))
    gamma_max: np.ndarray = field(default_factory=lambda: np.array(PipelineDefaults.GAMMA_MAX))

    def __post_init__(self):
        gamma_min = _readonly(as_vec3(self.gamma_min, "gamma_min"))
        gamma_max = _readonly(as_vec3(self.gamma_max, "gamma_max"))
        if np.any(gamma_min <= 0.0):
            raise InvalidInputException(f"gamma_min must be positive, got {gamma_min.tolist()}.")
        if np.any(gamma_max < gamma_min):
            raise InvalidInputException(
                f"gamma_max {gamma_max.tolist()} must not be below gamma_min {gamma_min.tolist()}."
            )
        object.__setattr__(self, "gamma_min", gamma_min)
        object.__setattr__(self, "gamma_max", gamma_max)


@dataclass(frozen=True, eq=False)
class BiasFilter:
    """
    First-order low-pass filter smoothing the raw accelerometer bias samples.
    """

    cutoff_hz: float = PipelineDefaults.BIAS_CUTOFF_HZ
    state: np.ndarray = field(default_factory=lambda: np.zeros(3))
    initialized: bool = False

    def __post_init__(self):
        if not self.cutoff_hz > 0.0:
            raise InvalidInputException(f"Bias filter cutoff must be positive, got {self.cutoff_hz!r}.")
        object.__setattr__(self, "state", _readonly(as_vec3(self.state, "Bias filter state")))

    def alpha(self, dt: float) -> float:
        return dt / (dt + 1.0 / (2.0 * np.pi * self.cutoff_hz))

    def updated(self, raw, dt: float) -> "BiasFilter":
        """
        Return the filter after one sample. The first sample initializes the state.
        """
        if not dt > 0.0:
            raise InvalidInputException(f"Filter step must be positive, got {dt!r}.")
        raw = as_vec3(raw, "Raw bias")
        if not self.initialized:
            return BiasFilter(self.cutoff_hz, raw, True)
        return BiasFilter(self.cutoff_hz, self.state + self.alpha(dt) * (raw - self.state), True)


def bias_filter_update(bias_filter: BiasFilter, raw, dt: float) -> np.ndarray:
    """Return the smoothed bias after feeding ``raw`` through ``bias_filter``."""
    return bias_filter.updated(raw, dt).state


@dataclass(frozen=True, eq=False)
class PipelineState:
    """
    Everything carried from one radar epoch to the next.

    ``prev_timestamp`` is ``None`` before the first epoch. The
    ``prev_constrained_*`` pair is set only when the previous epoch ended
    with a constrained solution strictly inside its box.
    """

    bias_accel: BiasFilter
    bias_gyro: np.ndarray
    calib: ExtrinsicCalib
    gamma: GammaBounds
    ransac: RansacParams
    z_threshold: float = PipelineDefaults.Z_THRESHOLD
    prev_velocity_radar: Optional[np.ndarray] = None
    prev_velocity_nav: Optional[np.ndarray] = None
    prev_timestamp: Optional[float] = None
    prev_constrained_velocity_nav: Optional[np.ndarray] = None
    prev_constrained_timestamp: Optional[float] = None
    epoch: int = 0

    def __post_init__(self):
        object.__setattr__(self, "bias_gyro", _readonly(as_vec3(self.bias_gyro, "Gyro bias")))
        if not self.z_threshold > 0.0:
            raise InvalidInputException(f"z_threshold must be positive, got {self.z_threshold!r}.")


@dataclass(frozen=True, eq=False)
class VelocityEstimate:
    """
    Output of one radar epoch.

    ``constraint`` is the acceleration box of the epoch, ``None`` on the
    first epoch and for the unconstrained baseline.
    """

    timestamp: float
    velocity_radar: np.ndarray
    velocity_nav: np.ndarray
    inlier_ratio: float
    gamma_used: np.ndarray
    constrained: bool
    zero_velocity: bool
    accel_radar: np.ndarray
    degenerate: bool = False
    bias_accel: np.ndarray = field(default_factory=lambda: np.zeros(3))
    constraint: Optional[BoxConstraint] = None


def initial_state(
    calib: ExtrinsicCalib,
    gamma: Optional[GammaBounds] = None,
    ransac: Optional[RansacParams] = None,
    z_threshold: float = PipelineDefaults.Z_THRESHOLD,
    bias_cutoff_hz: float = PipelineDefaults.BIAS_CUTOFF_HZ,
    bias_gyro=None,
    bias_accel0=None,
) -> PipelineState:
    """
    Build the state before the first radar epoch.

    A bias from coarse alignment seeds the filter as already initialized;
    without one the first bias update initializes it.
    """
    if bias_accel0 is None:
        bias_filter = BiasFilter(bias_cutoff_hz)
    else:
        bias_filter = BiasFilter(bias_cutoff_hz, as_vec3(bias_accel0, "Initial accelerometer bias"), True)
    return PipelineState(
        bias_accel=bias_filter,
        bias_gyro=np.zeros(3) if bias_gyro is None else bias_gyro,
        calib=calib,
        gamma=gamma or GammaBounds(),
        ransac=ransac or RansacParams(),
        z_threshold=z_threshold,
    )


def coarse_align(
    imu: Sequence[ImuSample], gravity: float, attitude: Optional[Rotation] = None
) -> Tuple[np.ndarray, np.ndarray, Rotation]:
    """
    Stationary initialization from a window of IMU samples.

    Args:
        imu: IMU samples recorded while the platform is at rest.
        gravity: Gravity magnitude (m/s²).
        attitude: Known attitude C_b^n. When omitted, roll and pitch are
            levelled from the mean specific force and yaw is zero.

    Returns:
        (gyro bias, accelerometer bias, attitude).

    Raises:
        InsufficientDataException: If ``imu`` is empty.
    """
    if len(imu) == 0:
        raise InsufficientDataException("Coarse alignment needs at least one IMU sample.")
    forces = np.array([s.specific_force for s in imu])
    rates = np.array([s.angular_rate for s in imu])
    bias_gyro = rates.mean(axis=0)
    f_mean = forces.mean(axis=0)

    if attitude is None:
        fx, fy, fz = f_mean
        roll = np.arctan2(-fy, -fz)
        pitch = np.arctan2(fx, np.hypot(fy, fz))
        attitude = Rotation.from_euler(0.0, pitch, roll)

    bias_accel = f_mean + attitude.inverse().rotate(gravity_nav(gravity))
    logger.debug("Coarse alignment over %d samples: gyro bias %s, accel bias %s", len(imu), bias_gyro, bias_accel)
    return bias_gyro, bias_accel, attitude


def compute_acceleration(f_b, attitude: Rotation, bias_accel, calib: ExtrinsicCalib) -> np.ndarray:
    """
    Radar-frame acceleration C_b^r (f̄^b − b̂_a + C_n^b g^n).
    """
    gravity_body = attitude.inverse().rotate(gravity_nav(calib.gravity))
    return calib.rot_body_to_radar.rotate(np.asarray(f_b) - np.asarray(bias_accel) + gravity_body)


def compute_gamma(inlier_ratio: float, bounds: GammaBounds) -> np.ndarray:
    """
    Constraint half-width γ = γ_min + (γ_max − γ_min)·r².

    Raises:
        InvalidInputException: If the ratio lies outside [0, 1].
    """
    if not 0.0 <= inlier_ratio <= 1.0:
        raise InvalidInputException(f"Inlier ratio must lie in [0, 1], got {inlier_ratio!r}.")
    return bounds.gamma_min + (bounds.gamma_max - bounds.gamma_min) * inlier_ratio**2


def build_constraint(prev_v, accel_radar, dt: float, gamma) -> BoxConstraint:
    """
    Acceleration box prev_v + â·dt ± γ.

    Raises:
        InvalidInputException: If ``dt`` or any γ component is not positive.
    """
    if not dt > 0.0:
        raise InvalidInputException(f"Radar time step must be positive, got {dt!r}.")
    gamma = as_vec3(gamma, "gamma")
    if np.any(gamma <= 0.0):
        raise InvalidInputException(f"gamma must be positive, got {gamma.tolist()}.")
    center = as_vec3(prev_v, "Previous velocity") + as_vec3(accel_radar, "Acceleration") * dt
    return BoxConstraint(center - gamma, center + gamma)


def body_velocity_nav(v_radar, attitude: Rotation, angular_rate, bias_gyro, calib: ExtrinsicCalib) -> np.ndarray:
    """
    Body velocity in the navigation frame, C_b^n (C_r^b v − ⌊ω̄^b − b̂_g⌋ p_r^b).
    """
    omega = np.asarray(angular_rate, dtype=np.float64) - np.asarray(bias_gyro, dtype=np.float64)
    v_body = calib.rot_radar_to_body.rotate(v_radar) - skew(omega) @ calib.lever_arm
    return attitude.rotate(v_body)


def estimate_bias_raw(v_nav_k, v_nav_km1, f_b, attitude: Rotation, dt: float, gravity: float) -> np.ndarray:
    """
    Raw accelerometer bias f̄^b + C_n^b (g^n − Δv^n/dt).

    Raises:
        InvalidInputException: If ``dt`` is not positive.
    """
    if not dt > 0.0:
        raise InvalidInputException(f"Radar time step must be positive, got {dt!r}.")
    accel_nav = (np.asarray(v_nav_k, dtype=np.float64) - np.asarray(v_nav_km1, dtype=np.float64)) / dt
    return np.asarray(f_b, dtype=np.float64) + attitude.inverse().rotate(gravity_nav(gravity) - accel_nav)


def constraint_rows(H, y, constraint: BoxConstraint, inlier_threshold: float) -> np.ndarray:
    """
    Indices of the targets whose Doppler some velocity inside the box explains
    within ``inlier_threshold``: |y_i − H_i c| ≤ |H_i|·γ + threshold.
    """
    H = np.asarray(H, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    half_width = 0.5 * (constraint.upper - constraint.lower)
    slack = np.abs(H) @ half_width + inlier_threshold
    return np.flatnonzero(np.abs(y - H @ constraint.center) <= slack)


def constrained_solve(H, y, constraint: BoxConstraint, fallback_rows, inlier_threshold: float) -> BoxLsqSolution:
    """
    Box-constrained velocity from the targets the box can explain.

    Rows are the targets selected by ``constraint_rows``, or ``fallback_rows``
    when fewer than three qualify. The solution is refit once on the targets
    within ``inlier_threshold`` of it.
    """
    H = np.asarray(H, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    rows = constraint_rows(H, y, constraint, inlier_threshold)
    if len(rows) < RansacDefaults.SAMPLE_SIZE:
        rows = fallback_rows if len(fallback_rows) else np.arange(len(y))
    solution = solve_box_lsq(H[rows], y[rows], constraint)
    refit = np.flatnonzero(np.abs(H @ solution.velocity - y) < inlier_threshold)
    if len(refit) >= RansacDefaults.SAMPLE_SIZE and not np.array_equal(refit, rows):
        solution = solve_box_lsq(H[refit], y[refit], constraint)
    return solution


def _is_interior(solution: BoxLsqSolution) -> bool:
    return not solution.degenerate and all(s == AxisState.INTERIOR for s in solution.active_set)


def _epoch_rng(state: PipelineState) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence([state.ransac.rng_seed, state.epoch]))


def step(
    state: PipelineState,
    scan: RadarScan,
    f_b_at_scan,
    omega_at_scan,
    attitude_at_scan: Rotation,
    constrain: bool = True,
) -> Tuple[VelocityEstimate, PipelineState]:
    """
    Process one radar scan.

    With ``constrain=False`` the acceleration box is never built and the
    RANSAC estimate is emitted as is; this is the unconstrained baseline.

    Args:
        state: State after the previous epoch.
        scan: The radar scan, later than ``state.prev_timestamp``.
        f_b_at_scan: Specific force of the IMU sample nearest the scan.
        omega_at_scan: Angular rate of the IMU sample nearest the scan.
        attitude_at_scan: Attitude C_b^n at the scan time.
        constrain: Whether to apply the acceleration constraint.

    Returns:
        The epoch estimate and the advanced state.

    Raises:
        InsufficientDataException: If the scan is empty, or if RANSAC fails on the first epoch.
        DegenerateGeometryException: If RANSAC fails on the first epoch.
        InvalidInputException: If the scan is not later than the previous one.
    """
    if len(scan) == 0:
        raise InsufficientDataException(f"Radar scan at t={scan.timestamp!r} has no targets.")
    if state.prev_timestamp is not None and not scan.timestamp > state.prev_timestamp:
        raise InvalidInputException(
            f"Radar scan at t={scan.timestamp!r} is not later than the previous scan at t={state.prev_timestamp!r}."
        )
    f_b = as_vec3(f_b_at_scan, "Specific force")
    omega = as_vec3(omega_at_scan, "Angular rate")
    calib, params = state.calib, state.ransac
    dt = None if state.prev_timestamp is None else scan.timestamp - state.prev_timestamp
    H, y = doppler_system(scan)

    degenerate = False
    zero_velocity = detect_zero_velocity(scan, state.z_threshold)
    if zero_velocity:
        v_hat = np.zeros(3)
        inliers = np.flatnonzero(np.abs(y) < params.inlier_threshold)
        inlier_ratio = len(inliers) / len(scan)
    else:
        try:
            result = ransac_estimate(scan, params, rng=_epoch_rng(state))
            v_hat, inliers, inlier_ratio = result.velocity, result.inlier_indices, result.inlier_ratio
            degenerate = result.degenerate
        except (InsufficientDataException, DegenerateGeometryException) as e:
            if state.prev_velocity_radar is None:
                raise
            logger.warning("Scan at t=%.6f: %s Holding the previous velocity.", scan.timestamp, e.message)
            v_hat, inliers, inlier_ratio, degenerate = None, np.zeros(0, dtype=np.int64), 0.0, True

    accel_radar = compute_acceleration(f_b, attitude_at_scan, state.bias_accel.state, calib)
    gamma = compute_gamma(inlier_ratio, state.gamma)

    constraint = None
    constrained = False
    bias_filter = state.bias_accel
    interior_fix = False
    if not constrain or dt is None:
        velocity = state.prev_velocity_radar if v_hat is None else v_hat
    else:
        constraint = build_constraint(state.prev_velocity_radar, accel_radar, dt, gamma)
        if v_hat is None:
            # No Doppler solution: hold the previous velocity, limited to the box.
            held = state.prev_velocity_radar
            velocity = np.clip(held, constraint.lower, constraint.upper)
            constrained = bool(np.any(constraint.violated_axes(held)))
        elif not np.any(constraint.violated_axes(v_hat)):
            velocity = v_hat
        else:
            solution = constrained_solve(H, y, constraint, inliers, params.inlier_threshold)
            velocity, constrained, interior_fix = solution.velocity, True, _is_interior(solution)
            logger.debug(
                "Scan at t=%.6f: constraint active %s, velocity %s -> %s",
                scan.timestamp,
                [str(s) for s in solution.active_set],
                v_hat,
                velocity,
            )

    velocity = _readonly(velocity)
    velocity_nav = _readonly(body_velocity_nav(velocity, attitude_at_scan, omega, state.bias_gyro, calib))
    if interior_fix and state.prev_constrained_timestamp is not None:
        pair_dt = scan.timestamp - state.prev_constrained_timestamp
        raw = estimate_bias_raw(
            velocity_nav, state.prev_constrained_velocity_nav, f_b, attitude_at_scan, pair_dt, calib.gravity
        )
        bias_filter = bias_filter.updated(raw, pair_dt)

    estimate = VelocityEstimate(
        timestamp=scan.timestamp,
        velocity_radar=velocity,
        velocity_nav=velocity_nav,
        inlier_ratio=inlier_ratio,
        gamma_used=_readonly(gamma),
        constrained=constrained,
        zero_velocity=zero_velocity,
        accel_radar=_readonly(accel_radar),
        degenerate=degenerate,
        bias_accel=bias_filter.state,
        constraint=constraint,
    )
    new_state = replace(
        state,
        bias_accel=bias_filter,
        prev_velocity_radar=velocity,
        prev_velocity_nav=velocity_nav,
        prev_timestamp=scan.timestamp,
        prev_constrained_velocity_nav=velocity_nav if interior_fix else None,
        prev_constrained_timestamp=scan.timestamp if interior_fix else None,
        epoch=state.epoch + 1,
    )
    return estimate, new_state
