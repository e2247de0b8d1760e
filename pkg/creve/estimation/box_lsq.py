"""
CREVE - Box-Constrained Least Squares

Bounded-variable least squares for the 3-dimensional ego-velocity:

    minimize ½‖H v − y‖²  subject to  lower ≤ v ≤ upper (elementwise)

Primal active-set method: the unconstrained solution is clipped into the box
and refined on the remaining free variables, then variables whose gradient
points into the box are released one at a time until the KKT conditions hold.
"""

import logging
from dataclasses import dataclass
from typing import Tuple

import numpy as np

from creve.constants import SolverDefaults, _StrEnum
from creve.exceptions import ConvergenceException, InvalidInputException

logger = logging.getLogger(__name__)

_AT_LOWER = -1
_FREE = 0
_AT_UPPER = 1


class AxisState(_StrEnum):
    """
    Enum for the per-axis state of a box-constrained solution.
    """

    INTERIOR = "interior"
    AT_LOWER = "at_lower"
    AT_UPPER = "at_upper"


_AXIS_STATES = {_AT_LOWER: AxisState.AT_LOWER, _FREE: AxisState.INTERIOR, _AT_UPPER: AxisState.AT_UPPER}


@dataclass(frozen=True, eq=False)
class BoxConstraint:
    """
    Elementwise velocity bounds in the radar frame (m/s).
    """

    lower: np.ndarray
    upper: np.ndarray

    def __post_init__(self):
        lower = np.array(self.lower, dtype=np.float64).reshape(-1)
        upper = np.array(self.upper, dtype=np.float64).reshape(-1)
        if lower.shape != (3,) or upper.shape != (3,):
            raise InvalidInputException("Box bounds must have 3 components.")
        if not (np.all(np.isfinite(lower)) and np.all(np.isfinite(upper))):
            raise InvalidInputException("Box bounds must be finite.")
        if np.any(lower > upper):
            raise InvalidInputException(f"Box lower bound {lower.tolist()} exceeds upper bound {upper.tolist()}.")
        lower.setflags(write=False)
        upper.setflags(write=False)
        object.__setattr__(self, "lower", lower)
        object.__setattr__(self, "upper", upper)

    @property
    def center(self) -> np.ndarray:
        return 0.5 * (self.lower + self.upper)

    def contains(self, v, tol: float = 0.0) -> bool:
        v = np.asarray(v, dtype=np.float64)
        return bool(np.all(v >= self.lower - tol) and np.all(v <= self.upper + tol))

    def violated_axes(self, v, tol: float = SolverDefaults.FEASIBILITY_TOLERANCE) -> np.ndarray:
        """Return a boolean mask of the axes on which ``v`` leaves the box by more than ``tol``."""
        v = np.asarray(v, dtype=np.float64)
        return (v < self.lower - tol) | (v > self.upper + tol)

    def __eq__(self, other) -> bool:
        if not isinstance(other, BoxConstraint):
            return NotImplemented
        return bool(np.array_equal(self.lower, other.lower) and np.array_equal(self.upper, other.upper))


@dataclass(frozen=True, eq=False)
class BoxLsqSolution:
    velocity: np.ndarray
    active_set: Tuple[AxisState, AxisState, AxisState]
    iterations: int
    kkt_residual: float
    degenerate: bool = False


def kkt_residual(g: np.ndarray, on_bound: np.ndarray) -> float:
    """
    Largest KKT violation: |g_i| on free axes, g_i·s_i on bound axes where
    s_i is -1 at the lower and +1 at the upper bound.
    """
    violation = g * on_bound
    free = on_bound == _FREE
    violation[free] = np.abs(g[free])
    return float(np.max(violation))


def kkt_tolerance(H: np.ndarray, y: np.ndarray) -> float:
    scale = max(1.0, float(np.max(np.abs(H.T @ y))), float(np.max(np.abs(H.T @ H))))
    return SolverDefaults.KKT_TOLERANCE * scale


def _solve_free(H, y, x, free):
    fixed = ~free
    rhs = y - H[:, fixed] @ x[fixed]
    return np.linalg.lstsq(H[:, free], rhs, rcond=None)[0]


def solve_box_lsq(H, y, constraint: BoxConstraint) -> BoxLsqSolution:
    """
    Solve the box-constrained velocity least-squares problem.

    When H is rank deficient the minimizer is not unique; the free variables
    then take the minimum-norm least-squares values and the solution is
    flagged ``degenerate``.

    Args:
        H: N×3 design matrix, N ≥ 1.
        y: N-vector of observations.
        constraint: The velocity box.

    Returns:
        The constrained minimizer with its per-axis active set.

    Raises:
        InvalidInputException: If the inputs are malformed or non-finite.
        ConvergenceException: If the active set changes more than 64 times.
    """
    H = np.asarray(H, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64).reshape(-1)
    if H.ndim != 2 or H.shape[1] != 3 or H.shape[0] < 1:
        raise InvalidInputException(f"H must be N×3 with N ≥ 1, got shape {H.shape}.")
    if y.shape != (H.shape[0],):
        raise InvalidInputException(f"y must have {H.shape[0]} entries, got {y.shape[0]}.")
    if not (np.all(np.isfinite(H)) and np.all(np.isfinite(y))):
        raise InvalidInputException("H and y must be finite.")

    lb, ub = constraint.lower, constraint.upper
    tol = kkt_tolerance(H, y)
    degenerate = bool(np.linalg.matrix_rank(H) < 3)
    changes = 0

    x = np.linalg.lstsq(H, y, rcond=None)[0]
    on_bound = np.zeros(3, dtype=np.int64)
    on_bound[x <= lb] = _AT_LOWER
    on_bound[x >= ub] = _AT_UPPER
    x = np.clip(x, lb, ub)

    # Initialization: refit free variables, pinning any that leave the box.
    while True:
        free = on_bound == _FREE
        if not np.any(free):
            break
        z = _solve_free(H, y, x, free)
        idx = np.flatnonzero(free)
        below, above = z < lb[free], z > ub[free]
        x[idx] = np.clip(z, lb[free], ub[free])
        if not (np.any(below) or np.any(above)):
            break
        on_bound[idx[below]] = _AT_LOWER
        on_bound[idx[above]] = _AT_UPPER
        changes += int(np.count_nonzero(below) + np.count_nonzero(above))

    g = H.T @ (H @ x - y)
    residual = kkt_residual(g, on_bound)
    while residual > tol:
        if changes >= SolverDefaults.MAX_ACTIVE_SET_CHANGES:
            raise ConvergenceException(residual)
        release = int(np.argmax(g * on_bound))
        on_bound[release] = _FREE
        changes += 1

        while True:
            free = on_bound == _FREE
            idx = np.flatnonzero(free)
            x_free = x[idx]
            z = _solve_free(H, y, x, free)
            lb_free, ub_free = lb[idx], ub[idx]
            below = np.flatnonzero(z < lb_free)
            above = np.flatnonzero(z > ub_free)
            leaving = np.concatenate((below, above))
            if leaving.size == 0:
                x[idx] = z
                break
            # Step toward z until the first free variable reaches its bound.
            targets = np.concatenate((lb_free[below], ub_free[above]))
            alphas = (targets - x_free[leaving]) / (z[leaving] - x_free[leaving])
            i = int(np.argmin(alphas))
            alpha = float(np.clip(alphas[i], 0.0, 1.0))
            x[idx] = x_free + alpha * (z - x_free)
            hit = idx[leaving[i]]
            if i < below.size:
                on_bound[hit], x[hit] = _AT_LOWER, lb[hit]
            else:
                on_bound[hit], x[hit] = _AT_UPPER, ub[hit]
            changes += 1
            if changes >= SolverDefaults.MAX_ACTIVE_SET_CHANGES:
                g = H.T @ (H @ x - y)
                raise ConvergenceException(kkt_residual(g, on_bound))

        g = H.T @ (H @ x - y)
        residual = kkt_residual(g, on_bound)

    x = np.clip(x, lb, ub)
    if changes:
        logger.debug("Box solve converged after %d active-set changes, KKT residual %.3e", changes, residual)
    return BoxLsqSolution(
        velocity=x,
        active_set=tuple(_AXIS_STATES[int(s)] for s in on_bound),
        iterations=changes,
        kkt_residual=residual,
        degenerate=degenerate,
    )
