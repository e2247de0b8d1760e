"""
CREVE - Domain Objects

Timestamped sensor and ground-truth records shared by every module. All
records are immutable value types.
"""

from dataclasses import dataclass, field
from typing import Tuple

import numpy as np

from creve.constants import PipelineDefaults
from creve.exceptions import InvalidInputException
from creve.geometry.rotation import Rotation


def _frozen_vec3(value, name: str) -> np.ndarray:
    v = np.array(value, dtype=np.float64).reshape(-1)
    if v.shape != (3,) or not np.all(np.isfinite(v)):
        raise InvalidInputException(f"{name} must be 3 finite values, got {value!r}.")
    v.setflags(write=False)
    return v


def _vec_eq(a: np.ndarray, b: np.ndarray) -> bool:
    return bool(np.array_equal(a, b))


@dataclass(frozen=True, eq=False)
class RadarTarget:
    """
    One 4D radar detection: position in the radar frame (m) and Doppler (m/s).

    The Doppler follows the measurement model -v_D = p̄ᵀ v^r for a static target.
    """

    position: np.ndarray
    doppler: float

    def __post_init__(self):
        object.__setattr__(self, "position", _frozen_vec3(self.position, "Target position"))
        object.__setattr__(self, "doppler", float(self.doppler))
        if not np.isfinite(self.doppler):
            raise InvalidInputException("Target Doppler must be finite.")
        if np.linalg.norm(self.position) <= 0.0:
            raise InvalidInputException("Target range must be positive.")

    @property
    def direction(self) -> np.ndarray:
        return self.position / np.linalg.norm(self.position)

    def __eq__(self, other) -> bool:
        if not isinstance(other, RadarTarget):
            return NotImplemented
        return _vec_eq(self.position, other.position) and self.doppler == other.doppler


@dataclass(frozen=True)
class RadarScan:
    """
    Radar point cloud captured at one timestamp (s).
    """

    timestamp: float
    targets: Tuple[RadarTarget, ...] = field(default_factory=tuple)

    def __post_init__(self):
        object.__setattr__(self, "timestamp", float(self.timestamp))
        object.__setattr__(self, "targets", tuple(self.targets))

    def __len__(self) -> int:
        return len(self.targets)

    def positions(self) -> np.ndarray:
        """Return the N×3 array of target positions."""
        if not self.targets:
            return np.zeros((0, 3))
        return np.array([t.position for t in self.targets])

    def dopplers(self) -> np.ndarray:
        """Return the N-vector of Doppler velocities."""
        return np.array([t.doppler for t in self.targets], dtype=np.float64)

    @classmethod
    def from_arrays(cls, timestamp: float, positions: np.ndarray, dopplers: np.ndarray) -> "RadarScan":
        positions = np.asarray(positions, dtype=np.float64).reshape(-1, 3)
        dopplers = np.asarray(dopplers, dtype=np.float64).reshape(-1)
        if len(positions) != len(dopplers):
            raise InvalidInputException("Positions and Doppler values must have the same length.")
        return cls(timestamp, tuple(RadarTarget(p, d) for p, d in zip(positions, dopplers)))


@dataclass(frozen=True, eq=False)
class ImuSample:
    """
    Specific force (m/s², body frame) and angular rate (rad/s, body frame).
    """

    timestamp: float
    specific_force: np.ndarray
    angular_rate: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "timestamp", float(self.timestamp))
        object.__setattr__(self, "specific_force", _frozen_vec3(self.specific_force, "Specific force"))
        object.__setattr__(self, "angular_rate", _frozen_vec3(self.angular_rate, "Angular rate"))

    def __eq__(self, other) -> bool:
        if not isinstance(other, ImuSample):
            return NotImplemented
        return (
            self.timestamp == other.timestamp
            and _vec_eq(self.specific_force, other.specific_force)
            and _vec_eq(self.angular_rate, other.angular_rate)
        )


@dataclass(frozen=True, eq=False)
class PoseSample:
    """
    Ground-truth pose: position in the navigation frame (m) and attitude C_b^n.
    """

    timestamp: float
    position: np.ndarray
    attitude: Rotation

    def __post_init__(self):
        object.__setattr__(self, "timestamp", float(self.timestamp))
        object.__setattr__(self, "position", _frozen_vec3(self.position, "Pose position"))

    def __eq__(self, other) -> bool:
        if not isinstance(other, PoseSample):
            return NotImplemented
        return (
            self.timestamp == other.timestamp
            and _vec_eq(self.position, other.position)
            and self.attitude == other.attitude
        )


@dataclass(frozen=True, eq=False)
class ExtrinsicCalib:
    """
    Radar-to-body extrinsics (C_r^b, lever arm p_r^b in m) and gravity magnitude (m/s²).
    """

    rot_radar_to_body: Rotation = field(default_factory=Rotation.identity)
    lever_arm: np.ndarray = field(default_factory=lambda: np.zeros(3))
    gravity: float = PipelineDefaults.GRAVITY

    def __post_init__(self):
        object.__setattr__(self, "lever_arm", _frozen_vec3(self.lever_arm, "Lever arm"))
        object.__setattr__(self, "gravity", float(self.gravity))
        if not self.gravity > 0.0:
            raise InvalidInputException(f"Gravity must be positive, got {self.gravity!r}.")

    @property
    def rot_body_to_radar(self) -> Rotation:
        return self.rot_radar_to_body.inverse()

    def __eq__(self, other) -> bool:
        if not isinstance(other, ExtrinsicCalib):
            return NotImplemented
        return (
            self.rot_radar_to_body == other.rot_radar_to_body
            and _vec_eq(self.lever_arm, other.lever_arm)
            and self.gravity == other.gravity
        )
