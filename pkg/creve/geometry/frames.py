"""
CREVE - Frames

Vector helpers and attitude lookup.

Frame conventions: navigation frame is a NED local tangent plane, body frame
is FRD, radar frame is FLU. Gravity in the navigation frame is (0, 0, +g).
"""

from typing import TYPE_CHECKING, Sequence

import numpy as np
from scipy.spatial.transform import Slerp

from creve.exceptions import InsufficientDataException, InvalidInputException, OutOfRangeException
from creve.geometry.rotation import Rotation

if TYPE_CHECKING:
    from creve.domain import PoseSample


def as_vec3(value, name: str = "vector") -> np.ndarray:
    """
    Convert a value to a finite float64 3-vector.

    Raises:
        InvalidInputException: If the value does not have 3 finite components.
    """
    v = np.asarray(value, dtype=np.float64).reshape(-1)
    if v.shape != (3,):
        raise InvalidInputException(f"{name} must have 3 components, got shape {np.shape(value)}.")
    if not np.all(np.isfinite(v)):
        raise InvalidInputException(f"{name} must be finite, got {v.tolist()}.")
    return v


def gravity_nav(gravity: float) -> np.ndarray:
    return np.array([0.0, 0.0, gravity])


def skew(v) -> np.ndarray:
    """
    Return the skew-symmetric matrix with skew(v) @ w == cross(v, w).
    """
    x, y, z = np.asarray(v, dtype=np.float64)
    return np.array(
        [
            [0.0, -z, y],
            [z, 0.0, -x],
            [-y, x, 0.0],
        ]
    )


def rotate(rotation: Rotation, v) -> np.ndarray:
    return rotation.rotate(v)


def interpolate_attitude(poses: Sequence["PoseSample"], t: float) -> Rotation:
    """
    Spherically interpolate the attitude of a pose stream at time ``t``.

    An exact timestamp hit returns the stored attitude unchanged.

    Raises:
        InsufficientDataException: If the pose stream is empty.
        OutOfRangeException: If ``t`` lies outside the covered interval.
    """
    if len(poses) == 0:
        raise InsufficientDataException("Attitude lookup needs at least one pose.")
    timestamps = np.fromiter((p.timestamp for p in poses), dtype=np.float64, count=len(poses))
    return AttitudeInterpolator(timestamps, [p.attitude for p in poses]).at(t)


class AttitudeInterpolator:
    """
    Reusable slerp lookup over a fixed, time-sorted attitude stream.
    """

    def __init__(self, timestamps: np.ndarray, attitudes: Sequence[Rotation]):
        if len(timestamps) == 0 or len(timestamps) != len(attitudes):
            raise InsufficientDataException("Attitude lookup needs matching, non-empty timestamps and attitudes.")
        self._timestamps = np.asarray(timestamps, dtype=np.float64)
        self._attitudes = list(attitudes)
        self._slerp = None

    @property
    def start(self) -> float:
        return float(self._timestamps[0])

    @property
    def end(self) -> float:
        return float(self._timestamps[-1])

    def at(self, t: float) -> Rotation:
        if not (self.start <= t <= self.end):
            raise OutOfRangeException(t, self.start, self.end)
        index = int(np.searchsorted(self._timestamps, t))
        if index < len(self._timestamps) and self._timestamps[index] == t:
            return self._attitudes[index]
        if self._slerp is None:
            stacked = Rotation.stack_scipy(self._attitudes)
            self._slerp = Slerp(self._timestamps, stacked)
        return Rotation._from_scipy(self._slerp([t])[0])
