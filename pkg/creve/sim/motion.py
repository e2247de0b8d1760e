"""
CREVE - Motion Profiles

Analytic platform motion for the scenario generator. Every profile gives
position, velocity and acceleration in closed form, so ground truth carries
no discretization error. Time ``tau`` counts from the end of the stationary
prefix.
"""

from abc import ABC, abstractmethod
from dataclasses import dataclass
from typing import List, Tuple

import numpy as np
from scipy.interpolate import CubicSpline

from creve.constants import ScenarioDefaults, TrajectoryType
from creve.exceptions import InvalidInputException
from creve.geometry.rotation import Rotation

Kinematics = Tuple[np.ndarray, np.ndarray, np.ndarray]


def _column(tau) -> np.ndarray:
    return np.atleast_1d(np.asarray(tau, dtype=np.float64))[:, None]


class MotionProfile(ABC):
    """
    Abstract base class for translational motion in the navigation frame.
    """

    @abstractmethod
    def evaluate(self, tau) -> Kinematics:
        """
        Evaluate the profile.

        Args:
            tau: Times (s) since motion start, shape (N,).

        Returns:
            (positions, velocities, accelerations), each of shape (N, 3).
        """
        pass


class StationaryProfile(MotionProfile):
    def evaluate(self, tau) -> Kinematics:
        zeros = np.zeros((len(_column(tau)), 3))
        return zeros, zeros.copy(), zeros.copy()


class ConstantVelocityProfile(MotionProfile):
    def __init__(self, velocity):
        self._velocity = np.asarray(velocity, dtype=np.float64)

    def evaluate(self, tau) -> Kinematics:
        tau = _column(tau)
        return tau * self._velocity, np.tile(self._velocity, (len(tau), 1)), np.zeros((len(tau), 3))


class SinusoidProfile(MotionProfile):
    """
    Per-axis p_i(τ) = A_i·sin(2π·f_i·τ).
    """

    def __init__(self, amplitudes, frequencies):
        self._amplitudes = np.asarray(amplitudes, dtype=np.float64)
        self._omega = 2.0 * np.pi * np.asarray(frequencies, dtype=np.float64)

    def evaluate(self, tau) -> Kinematics:
        phase = _column(tau) * self._omega
        a, w = self._amplitudes, self._omega
        return a * np.sin(phase), a * w * np.cos(phase), -a * w**2 * np.sin(phase)


class WaypointSplineProfile(MotionProfile):
    """
    Clamped cubic spline through waypoints spread evenly over the motion time.

    Velocity is zero at the first and last waypoint.
    """

    def __init__(self, points, motion_duration: float):
        points = np.asarray(points, dtype=np.float64).reshape(-1, 3)
        if len(points) < 2:
            raise InvalidInputException("A waypoint spline needs at least two points.")
        if not motion_duration > 0.0:
            raise InvalidInputException(f"Motion duration must be positive, got {motion_duration!r}.")
        self._duration = motion_duration
        self._spline = CubicSpline(np.linspace(0.0, motion_duration, len(points)), points, bc_type="clamped")

    def evaluate(self, tau) -> Kinematics:
        tau = np.clip(_column(tau)[:, 0], 0.0, self._duration)
        return self._spline(tau), self._spline(tau, 1), self._spline(tau, 2)


def build_profile(trajectory: dict, motion_duration: float) -> MotionProfile:
    """
    Create the profile described by a ``scenario.trajectory`` section.

    Raises:
        InvalidInputException: If the trajectory type is unknown.
    """
    try:
        kind = TrajectoryType(trajectory.get("type"))
    except ValueError:
        raise InvalidInputException(f"Unknown trajectory type {trajectory.get('type')!r}.") from None
    if kind == TrajectoryType.CONSTANT_VELOCITY:
        return ConstantVelocityProfile(trajectory["velocity"])
    if kind == TrajectoryType.SINUSOID:
        return SinusoidProfile(trajectory["amplitudes"], trajectory["frequencies"])
    if kind == TrajectoryType.WAYPOINT_SPLINE:
        return WaypointSplineProfile(trajectory["points"], motion_duration)
    return StationaryProfile()


@dataclass(frozen=True)
class YawProfile:
    """
    Heading ψ(τ) = initial + rate·τ + amplitude·sin(2π·frequency·τ) (rad).
    """

    initial: float = 0.0
    rate: float = 0.0
    amplitude: float = 0.0
    frequency: float = 0.0

    def evaluate(self, tau) -> Tuple[np.ndarray, np.ndarray]:
        """Return (ψ, dψ/dτ) for every ``tau``."""
        tau = np.atleast_1d(np.asarray(tau, dtype=np.float64))
        omega = 2.0 * np.pi * self.frequency
        yaw = self.initial + self.rate * tau + self.amplitude * np.sin(omega * tau)
        yaw_rate = self.rate + self.amplitude * omega * np.cos(omega * tau)
        return yaw, yaw_rate


@dataclass(frozen=True)
class MotionSamples:
    """
    Platform state at a set of timestamps.

    The attitude is a pure yaw, so the body angular rate is (0, 0, ψ̇).
    """

    timestamps: np.ndarray
    positions: np.ndarray
    velocities: np.ndarray
    accelerations: np.ndarray
    yaw: np.ndarray
    yaw_rate: np.ndarray

    def attitudes(self) -> List[Rotation]:
        return [Rotation.from_euler(float(psi)) for psi in self.yaw]

    def angular_rates(self) -> np.ndarray:
        rates = np.zeros((len(self.timestamps), 3))
        rates[:, 2] = self.yaw_rate
        return rates


def onset_warp(tau, ramp: float) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """
    Time warp s(τ) whose rate ds/dτ rises linearly from 0 to 1 over ``ramp`` seconds.

    Returns:
        (s, ds/dτ, d²s/dτ²) for every ``tau``; negative ``tau`` maps to s = 0.
    """
    tau = np.maximum(np.atleast_1d(np.asarray(tau, dtype=np.float64)), 0.0)
    if ramp <= 0.0:
        return tau, np.ones_like(tau), np.zeros_like(tau)
    ramping = tau < ramp
    warped = np.where(ramping, tau**2 / (2.0 * ramp), tau - 0.5 * ramp)
    rate = np.where(ramping, tau / ramp, 1.0)
    curvature = np.where(ramping, 1.0 / ramp, 0.0)
    return warped, rate, curvature


class PlatformMotion:
    """
    Translational profile and yaw profile behind a stationary prefix.

    Before ``stationary_duration`` the platform rests at the profile's
    starting position and heading. Over the following ``onset_ramp`` seconds
    the profiles are played back at a rate rising from 0 to 1, so velocity
    and heading rate start from zero.
    """

    def __init__(
        self, profile: MotionProfile, yaw: YawProfile, stationary_duration: float = 0.0, onset_ramp: float = 0.0
    ):
        if onset_ramp < 0.0:
            raise InvalidInputException(f"Onset ramp must not be negative, got {onset_ramp!r}.")
        self._profile = profile
        self._yaw = yaw
        self._stationary_duration = stationary_duration
        self._onset_ramp = onset_ramp

    @property
    def stationary_duration(self) -> float:
        return self._stationary_duration

    @property
    def onset_ramp(self) -> float:
        return self._onset_ramp

    @classmethod
    def from_config(cls, trajectory: dict, yaw: dict, duration: float, stationary_duration: float) -> "PlatformMotion":
        motion_duration = duration - stationary_duration
        ramp = min(ScenarioDefaults.ONSET_RAMP, motion_duration) if stationary_duration > 0.0 else 0.0
        # the ramp delays the profile by ramp/2, the spline still ends at ``duration``
        profile = build_profile(trajectory, motion_duration - 0.5 * ramp)
        return cls(profile, YawProfile(**yaw), stationary_duration, ramp)

    def sample(self, timestamps) -> MotionSamples:
        t = np.atleast_1d(np.asarray(timestamps, dtype=np.float64))
        tau = t - self._stationary_duration
        moving = tau >= 0.0
        warped, rate, curvature = onset_warp(tau, self._onset_ramp)
        positions, velocities, accelerations = self._profile.evaluate(warped)
        yaw, yaw_rate = self._yaw.evaluate(warped)
        accelerations = accelerations * rate[:, None] ** 2 + velocities * curvature[:, None]
        velocities = velocities * rate[:, None]
        yaw_rate = yaw_rate * rate
        velocities[~moving] = 0.0
        accelerations[~moving] = 0.0
        yaw_rate = np.where(moving, yaw_rate, 0.0)
        return MotionSamples(t, positions, velocities, accelerations, yaw, yaw_rate)
