"""
CREVE - Trajectories

Timestamped vector series, dead-reckoned trajectories and ground-truth
velocities derived from a pose stream.
"""

from dataclasses import dataclass, field
from typing import Optional, Sequence, Tuple

import numpy as np

from creve.domain import ExtrinsicCalib, PoseSample
from creve.exceptions import InsufficientDataException, InvalidInputException
from creve.geometry.frames import as_vec3
from creve.geometry.rotation import Rotation


def _checked_series(timestamps, values, name: str) -> Tuple[np.ndarray, np.ndarray]:
    t = np.array(timestamps, dtype=np.float64).reshape(-1)
    v = np.array(values, dtype=np.float64).reshape(-1, 3) if len(t) else np.zeros((0, 3))
    if v.shape[0] != t.shape[0]:
        raise InvalidInputException(f"{name}: {len(t)} timestamps but {v.shape[0]} vectors.")
    if not (np.all(np.isfinite(t)) and np.all(np.isfinite(v))):
        raise InvalidInputException(f"{name} contains non-finite values.")
    if np.any(np.diff(t) <= 0.0):
        index = int(np.flatnonzero(np.diff(t) <= 0.0)[0]) + 1
        raise InvalidInputException(f"{name} timestamps must strictly increase (sample {index}, t={t[index]!r}).")
    t.setflags(write=False)
    v.setflags(write=False)
    return t, v


@dataclass(frozen=True, eq=False)
class VectorSeries:
    """
    Strictly time-ordered series of 3-vectors, e.g. velocities.
    """

    timestamps: np.ndarray
    values: np.ndarray

    def __post_init__(self):
        t, v = _checked_series(self.timestamps, self.values, "Vector series")
        object.__setattr__(self, "timestamps", t)
        object.__setattr__(self, "values", v)

    def __len__(self) -> int:
        return len(self.timestamps)


@dataclass(frozen=True, eq=False)
class Trajectory:
    """
    Positions (m, navigation frame) at strictly increasing timestamps, with
    optional body-to-nav attitudes.
    """

    timestamps: np.ndarray
    positions: np.ndarray
    attitudes: Optional[Tuple[Rotation, ...]] = field(default=None)

    def __post_init__(self):
        t, p = _checked_series(self.timestamps, self.positions, "Trajectory")
        object.__setattr__(self, "timestamps", t)
        object.__setattr__(self, "positions", p)
        if self.attitudes is not None:
            attitudes = tuple(self.attitudes)
            if len(attitudes) != len(t):
                raise InvalidInputException(f"Trajectory has {len(t)} positions but {len(attitudes)} attitudes.")
            object.__setattr__(self, "attitudes", attitudes)

    def __len__(self) -> int:
        return len(self.timestamps)

    @classmethod
    def from_poses(cls, poses: Sequence[PoseSample]) -> "Trajectory":
        return cls(
            np.array([p.timestamp for p in poses]),
            np.array([p.position for p in poses]).reshape(-1, 3),
            tuple(p.attitude for p in poses),
        )

    def position_at(self, t: float) -> np.ndarray:
        """Linearly interpolated position; ``t`` is clamped to the covered interval."""
        return np.array([np.interp(t, self.timestamps, self.positions[:, i]) for i in range(3)])


def integrate_velocities(timestamps, velocities, p0) -> Trajectory:
    """
    Rectangle-rule dead reckoning p_k = p_{k−1} + v_k·(t_k − t_{k−1}).

    The first sample anchors the trajectory at ``p0``.

    Raises:
        InsufficientDataException: If there are no samples.
        InvalidInputException: If timestamps do not strictly increase.
    """
    t, v = _checked_series(timestamps, velocities, "Velocity series")
    if len(t) == 0:
        raise InsufficientDataException("Position integration needs at least one velocity.")
    steps = v[1:] * np.diff(t)[:, None]
    positions = as_vec3(p0, "p0") + np.vstack([np.zeros((1, 3)), np.cumsum(steps, axis=0)])
    return Trajectory(t, positions)


def integrate_positions(estimates: Sequence, p0) -> Trajectory:
    """
    Integrate the navigation-frame body velocities of a run of estimates.

    Args:
        estimates: VelocityEstimate sequence in time order.
        p0: Position (m) at the first estimate.

    Returns:
        The dead-reckoned trajectory, one sample per estimate.

    Raises:
        InsufficientDataException: If ``estimates`` is empty.
        InvalidInputException: If timestamps do not strictly increase.
    """
    return integrate_velocities(
        [e.timestamp for e in estimates], np.array([e.velocity_nav for e in estimates]).reshape(-1, 3), p0
    )


def estimate_series(estimates: Sequence, frame: str = "nav") -> VectorSeries:
    """Velocity series of a run of estimates in the ``nav`` or ``radar`` frame."""
    attr = "velocity_nav" if frame == "nav" else "velocity_radar"
    return VectorSeries(
        [e.timestamp for e in estimates], np.array([getattr(e, attr) for e in estimates]).reshape(-1, 3)
    )


def truth_velocities(truth: Sequence[PoseSample], calib: ExtrinsicCalib) -> Tuple[VectorSeries, VectorSeries]:
    """
    Reference velocities derived from a pose stream.

    Positions are differentiated by central differences. The body angular
    rate comes from the relative rotation between neighbouring samples and
    feeds the lever-arm term of the radar-frame velocity
    v^r = C_b^r (C_n^b v^n + ω × p_r^b).

    Returns:
        (navigation-frame velocity, radar-frame velocity), one sample per pose.

    Raises:
        InsufficientDataException: If fewer than two poses are given.
    """
    if len(truth) < 2:
        raise InsufficientDataException("Velocity derivation needs at least two poses.")
    trajectory = Trajectory.from_poses(truth)
    t = trajectory.timestamps
    v_nav = np.gradient(trajectory.positions, t, axis=0)

    attitudes = Rotation.stack_scipy(trajectory.attitudes)
    lo = np.r_[0, np.arange(len(t) - 2), len(t) - 2]
    hi = np.r_[1, np.arange(2, len(t)), len(t) - 1]
    omega_body = (attitudes[lo].inv() * attitudes[hi]).as_rotvec() / (t[hi] - t[lo])[:, None]

    v_body = attitudes.inv().apply(v_nav) + np.cross(omega_body, calib.lever_arm)
    v_radar = calib.rot_body_to_radar.as_scipy().apply(v_body)
    return VectorSeries(t, v_nav), VectorSeries(t, v_radar)
