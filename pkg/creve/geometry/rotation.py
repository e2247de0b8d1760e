"""
CREVE - Rotation

Immutable SO(3) element stored as a unit quaternion (w, x, y, z). This is the
single representation used for C_b^n, C_n^b, C_r^b and C_b^r.
"""

from typing import Sequence, Union

import numpy as np
from scipy.spatial.transform import Rotation as _ScipyRotation

from creve.exceptions import InvalidInputException

ArrayLike = Union[Sequence[float], np.ndarray]


class Rotation:
    """
    Rotation stored as a unit quaternion in scalar-first order.

    The quaternion is renormalized on construction. ``rotate`` applies the
    active rotation, so a rotation built from C_b^n maps body-frame vectors
    into the navigation frame.
    """

    __slots__ = ("_wxyz",)

    def __init__(self, wxyz: ArrayLike):
        q = np.asarray(wxyz, dtype=np.float64).reshape(-1)
        if q.shape != (4,) or not np.all(np.isfinite(q)):
            raise InvalidInputException(f"Quaternion must be 4 finite values, got {wxyz!r}.")
        norm = np.linalg.norm(q)
        if norm < 1e-12:
            raise InvalidInputException("Quaternion norm is zero.")
        # Unit input is kept bit-for-bit, so construction is idempotent
        if abs(norm - 1.0) > 4.0 * np.finfo(np.float64).eps:
            q = q / norm
        q.setflags(write=False)
        self._wxyz = q

    @classmethod
    def identity(cls) -> "Rotation":
        return cls((1.0, 0.0, 0.0, 0.0))

    @classmethod
    def from_matrix(cls, matrix: ArrayLike) -> "Rotation":
        return cls._from_scipy(_ScipyRotation.from_matrix(np.asarray(matrix, dtype=np.float64)))

    @classmethod
    def from_rotvec(cls, rotvec: ArrayLike) -> "Rotation":
        return cls._from_scipy(_ScipyRotation.from_rotvec(np.asarray(rotvec, dtype=np.float64)))

    @classmethod
    def from_euler(cls, yaw: float, pitch: float = 0.0, roll: float = 0.0) -> "Rotation":
        """
        Build C_b^n from intrinsic z-y-x (yaw, pitch, roll) angles in radians.
        """
        return cls._from_scipy(_ScipyRotation.from_euler("ZYX", [yaw, pitch, roll]))

    @classmethod
    def _from_scipy(cls, rotation: _ScipyRotation) -> "Rotation":
        x, y, z, w = rotation.as_quat()
        return cls((w, x, y, z))

    @staticmethod
    def stack_scipy(rotations: Sequence["Rotation"]) -> _ScipyRotation:
        """
        Stack several rotations into one vectorized scipy rotation.
        """
        wxyz = np.array([r._wxyz for r in rotations], dtype=np.float64).reshape(-1, 4)
        return _ScipyRotation.from_quat(wxyz[:, [1, 2, 3, 0]])

    def as_scipy(self) -> _ScipyRotation:
        w, x, y, z = self._wxyz
        return _ScipyRotation.from_quat([x, y, z, w])

    def as_wxyz(self) -> np.ndarray:
        return self._wxyz.copy()

    def as_matrix(self) -> np.ndarray:
        """
        Return the direction cosine matrix.
        """
        w, x, y, z = self._wxyz
        return np.array(
            [
                [1.0 - 2.0 * (y * y + z * z), 2.0 * (x * y - w * z), 2.0 * (x * z + w * y)],
                [2.0 * (x * y + w * z), 1.0 - 2.0 * (x * x + z * z), 2.0 * (y * z - w * x)],
                [2.0 * (x * z - w * y), 2.0 * (y * z + w * x), 1.0 - 2.0 * (x * x + y * y)],
            ]
        )

    def as_euler(self) -> np.ndarray:
        """
        Return (yaw, pitch, roll) in radians, the inverse of ``from_euler``.
        """
        return self.as_scipy().as_euler("ZYX")

    def as_rotvec(self) -> np.ndarray:
        return self.as_scipy().as_rotvec()

    def inverse(self) -> "Rotation":
        w, x, y, z = self._wxyz
        return Rotation((w, -x, -y, -z))

    def compose(self, other: "Rotation") -> "Rotation":
        """
        Return ``self * other``: apply ``other`` first, then ``self``.
        """
        w1, x1, y1, z1 = self._wxyz
        w2, x2, y2, z2 = other._wxyz
        return Rotation(
            (
                w1 * w2 - x1 * x2 - y1 * y2 - z1 * z2,
                w1 * x2 + x1 * w2 + y1 * z2 - z1 * y2,
                w1 * y2 - x1 * z2 + y1 * w2 + z1 * x2,
                w1 * z2 + x1 * y2 - y1 * x2 + z1 * w2,
            )
        )

    def rotate(self, v: ArrayLike) -> np.ndarray:
        return self.as_matrix() @ np.asarray(v, dtype=np.float64)

    def angle_to(self, other: "Rotation") -> float:
        """
        Return the angle in radians of the relative rotation between two attitudes.
        """
        dot = abs(float(np.dot(self._wxyz, other._wxyz)))
        return 2.0 * float(np.arccos(min(1.0, dot)))

    def __mul__(self, other: "Rotation") -> "Rotation":
        if not isinstance(other, Rotation):
            return NotImplemented
        return self.compose(other)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Rotation):
            return NotImplemented
        return bool(np.array_equal(self._wxyz, other._wxyz))

    def __hash__(self) -> int:
        return hash(self._wxyz.tobytes())

    def __repr__(self) -> str:
        w, x, y, z = self._wxyz
        return f"Rotation(w={float(w)!r}, x={float(x)!r}, y={float(y)!r}, z={float(z)!r})"
