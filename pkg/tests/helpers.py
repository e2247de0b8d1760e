"""
Shared builders for the test suite
"""

import itertools
import tempfile
from typing import Optional, Tuple

import numpy as np

from creve.domain import RadarScan
from creve.geometry.rotation import Rotation


def random_rotation(rng: np.random.Generator) -> Rotation:
    """Uniformly random rotation; a normalized Gaussian quaternion is uniform on SO(3)."""
    q = rng.normal(size=4)
    return Rotation(q / np.linalg.norm(q))


def forward_directions(rng: np.random.Generator, n: int, half_angle: float = np.deg2rad(60.0)) -> np.ndarray:
    """Unit line-of-sight vectors spread over the radar field of view."""
    azimuth = rng.uniform(-half_angle, half_angle, n)
    elevation = rng.uniform(-half_angle, half_angle, n)
    return np.column_stack(
        [np.cos(elevation) * np.cos(azimuth), np.cos(elevation) * np.sin(azimuth), np.sin(elevation)]
    )


def planted_scan(
    velocity,
    n: int = 30,
    rng: Optional[np.random.Generator] = None,
    timestamp: float = 0.0,
    outlier_fraction: float = 0.0,
    outlier_offset: Tuple[float, float] = (1.0, 3.0),
    noise_std: float = 0.0,
) -> RadarScan:
    """
    Radar scan whose static targets satisfy -v_D = p̄ᵀ v.

    The first ``round(outlier_fraction * n)`` targets get a Doppler offset of
    random sign with magnitude in ``outlier_offset``.
    """
    rng = rng if rng is not None else np.random.default_rng(0)
    directions = forward_directions(rng, n)
    ranges = rng.uniform(2.0, 25.0, n)
    dopplers = -directions @ np.asarray(velocity, dtype=np.float64)
    n_out = int(round(outlier_fraction * n))
    if n_out:
        dopplers[:n_out] += rng.uniform(*outlier_offset, n_out) * rng.choice([-1.0, 1.0], n_out)
    if noise_std > 0.0:
        dopplers = dopplers + rng.normal(0.0, noise_std, n)
    return RadarScan.from_arrays(timestamp, directions * ranges[:, None], dopplers)


def object_scan(
    velocity,
    timestamp: float,
    rng: np.random.Generator,
    n_static: int = 6,
    n_object: int = 24,
    object_velocity=(4.0, 0.0, 0.0),
) -> RadarScan:
    """
    Few static targets spread over the field of view plus a larger moving
    object straight ahead whose Doppler matches ``object_velocity``.
    """
    static = forward_directions(rng, n_static)
    moving = forward_directions(rng, n_object, half_angle=np.deg2rad(10.0))
    dopplers = np.concatenate(
        [-static @ np.asarray(velocity, dtype=np.float64), -moving @ np.asarray(object_velocity, dtype=np.float64)]
    )
    ranges = rng.uniform(2.0, 25.0, n_static + n_object)
    return RadarScan.from_arrays(timestamp, np.vstack([static, moving]) * ranges[:, None], dopplers)


def collinear_scan(timestamp: float) -> RadarScan:
    """Five targets on the x axis; no 3-D velocity can be fitted."""
    return RadarScan.from_arrays(timestamp, [[float(r), 0.0, 0.0] for r in range(1, 6)], [-1.0] * 5)


def objective(H: np.ndarray, y: np.ndarray, v: np.ndarray) -> float:
    r = H @ v - y
    return 0.5 * float(r @ r)


def box_lsq_oracle(H: np.ndarray, y: np.ndarray, lower: np.ndarray, upper: np.ndarray) -> np.ndarray:
    """
    Exhaustive active-set solution of min ½‖Hv − y‖² on a box.

    Every one of the 3³ lower/free/upper assignments is solved as an
    equality-constrained subproblem; the feasible candidate of least
    objective wins.
    """
    best, best_value = None, np.inf
    for assignment in itertools.product((-1, 0, 1), repeat=3):
        state = np.array(assignment)
        v = np.where(state < 0, lower, upper).astype(np.float64)
        free = state == 0
        if np.any(free):
            rhs = y - H[:, ~free] @ v[~free]
            v[free] = np.linalg.lstsq(H[:, free], rhs, rcond=None)[0]
        if np.any(v < lower - 1e-12) or np.any(v > upper + 1e-12):
            continue
        value = objective(H, y, v)
        if value < best_value:
            best, best_value = v, value
    return best


def random_box_instance(rng: np.random.Generator, n: int = 20):
    """Random N×3 system with a box that usually excludes the unconstrained optimum."""
    H = rng.normal(size=(n, 3))
    y = rng.normal(size=n) * 3.0
    v_free = np.linalg.lstsq(H, y, rcond=None)[0]
    center = v_free + rng.normal(size=3)
    half_width = rng.uniform(0.05, 1.0, 3)
    return H, y, center - half_width, center + half_width


def temp_dir() -> str:
    return tempfile.mkdtemp(prefix="creve-test-")
