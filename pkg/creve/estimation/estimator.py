"""
CREVE - Ego-Velocity Estimators

This module drives the per-scan pipeline over a whole dataset. Two estimators
share the driver: the unconstrained RANSAC/LSQ baseline (REVE) and the
acceleration-constrained estimator (CREVE).
"""

import logging
import time
from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from typing import TYPE_CHECKING, Optional, Sequence, Tuple, Union

import numpy as np

from creve.config.pipeline_configuration import PipelineConfiguration
from creve.constants import Method
from creve.domain import ImuSample, RadarScan
from creve.estimation.pipeline import PipelineState, VelocityEstimate, coarse_align, initial_state, step
from creve.exceptions import (
    DegenerateGeometryException,
    InsufficientDataException,
    InvalidInputException,
    OutOfRangeException,
)
from creve.geometry.frames import AttitudeInterpolator
from creve.geometry.rotation import Rotation

if TYPE_CHECKING:
    from creve.io.dataset import Dataset

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class TimingStats:
    """
    Wall-clock statistics of the ``step`` calls of one run, in milliseconds.
    """

    count: int = 0
    mean_ms: float = 0.0
    p95_ms: float = 0.0
    max_ms: float = 0.0

    @classmethod
    def from_seconds(cls, durations: Sequence[float]) -> "TimingStats":
        if len(durations) == 0:
            return cls()
        ms = np.asarray(durations, dtype=np.float64) * 1e3
        return cls(len(ms), float(ms.mean()), float(np.percentile(ms, 95)), float(ms.max()))

    def to_dict(self) -> dict:
        return {"count": self.count, "mean_ms": self.mean_ms, "p95_ms": self.p95_ms, "max_ms": self.max_ms}


@dataclass(frozen=True)
class EstimationRun:
    """
    Result of running an estimator over a dataset.
    """

    method: Method
    estimates: Tuple[VelocityEstimate, ...] = field(default_factory=tuple)
    skipped_scans: int = 0
    timing: TimingStats = field(default_factory=TimingStats)

    def __len__(self) -> int:
        return len(self.estimates)


class _ImuLookup:
    """
    Nearest-sample lookup over a time-sorted IMU stream.
    """

    def __init__(self, imu: Sequence[ImuSample], max_gap_periods: float):
        if len(imu) == 0:
            raise InsufficientDataException("Dataset has no IMU samples.")
        self._imu = imu
        self._timestamps = np.fromiter((s.timestamp for s in imu), dtype=np.float64, count=len(imu))
        if len(imu) > 1:
            self._max_gap = max_gap_periods * float(np.median(np.diff(self._timestamps)))
        else:
            self._max_gap = np.inf

    def nearest(self, t: float) -> Optional[ImuSample]:
        """Return the sample nearest ``t``, or ``None`` if it is too far away."""
        index = int(np.searchsorted(self._timestamps, t))
        candidates = [i for i in (index - 1, index) if 0 <= i < len(self._timestamps)]
        best = min(candidates, key=lambda i: abs(self._timestamps[i] - t))
        if abs(self._timestamps[best] - t) > self._max_gap:
            return None
        return self._imu[best]

    def window(self, duration: float) -> Sequence[ImuSample]:
        """Return the samples of the first ``duration`` seconds, end excluded."""
        end = int(np.searchsorted(self._timestamps, self._timestamps[0] + duration, side="left"))
        return self._imu[: max(end, 1)]


class EgoVelocityEstimator(ABC):
    """
    Abstract base class for ego-velocity estimators.

    Subclasses only choose whether the acceleration constraint is applied;
    alignment, sensor association and timing are shared.
    """

    def __init__(self, pipeline_config: Optional[PipelineConfiguration] = None):
        self._config = pipeline_config or PipelineConfiguration()

    @property
    def config(self) -> PipelineConfiguration:
        return self._config

    @property
    @abstractmethod
    def method(self) -> Method:
        """
        Get the estimation method.

        Returns:
            The method this estimator implements.
        """
        pass

    @property
    @abstractmethod
    def constrain(self) -> bool:
        pass

    def initialize(self, dataset: "Dataset") -> Tuple[PipelineState, Rotation]:
        """
        Build the pipeline state before the first scan.

        Coarse alignment runs over the first ``alignment_duration`` seconds of
        IMU data, with the ground-truth attitude when the dataset has one.

        Returns:
            The initial state and the attitude used when no ground truth is available.
        """
        config = self._config
        lookup = _ImuLookup(dataset.imu, config.imu_max_gap_periods)
        bias_gyro, bias_accel0, attitude = None, None, Rotation.identity()
        if config.alignment_duration > 0.0:
            window = lookup.window(config.alignment_duration)
            truth_attitude = None
            interpolator = self._truth_interpolator(dataset)
            if interpolator is not None:
                try:
                    truth_attitude = interpolator.at(window[0].timestamp)
                except OutOfRangeException:
                    logger.warning("Alignment window starts before the ground truth; levelling from the IMU instead.")
            bias_gyro, bias_accel0, attitude = coarse_align(window, dataset.calib.gravity, truth_attitude)
            logger.info("Coarse alignment over %d IMU samples", len(window))

        state = initial_state(
            dataset.calib,
            gamma=config.gamma_bounds(),
            ransac=config.ransac.to_params(),
            z_threshold=config.z_threshold,
            bias_cutoff_hz=config.bias_cutoff_hz,
            bias_gyro=bias_gyro,
            bias_accel0=bias_accel0,
        )
        return state, attitude

    def run(self, dataset: "Dataset") -> EstimationRun:
        """
        Estimate the ego-velocity at every radar scan of a dataset.

        Scans without targets, without an IMU sample within
        ``imu_max_gap_periods`` IMU periods, or outside the ground-truth
        interval are skipped with a warning. A scan whose geometry fails
        before any velocity has been emitted is skipped as well.

        Args:
            dataset: The dataset to process.

        Returns:
            The estimates, the number of skipped scans and the ``step`` timing.

        Raises:
            InsufficientDataException: If the dataset has no IMU samples.
        """
        state, fallback_attitude = self.initialize(dataset)
        lookup = _ImuLookup(dataset.imu, self._config.imu_max_gap_periods)
        interpolator = self._truth_interpolator(dataset)

        estimates, durations, skipped = [], [], 0
        for scan in dataset.radar:
            inputs = self._inputs_at(scan, lookup, interpolator, fallback_attitude)
            if inputs is None:
                skipped += 1
                continue
            imu, attitude = inputs
            started = time.perf_counter()
            try:
                estimate, state = step(state, scan, imu.specific_force, imu.angular_rate, attitude, self.constrain)
            except (InsufficientDataException, DegenerateGeometryException) as e:
                if state.prev_timestamp is not None:
                    raise
                logger.warning("Scan at t=%.6f skipped before the first estimate: %s", scan.timestamp, e.message)
                skipped += 1
                continue
            durations.append(time.perf_counter() - started)
            estimates.append(estimate)

        run = EstimationRun(self.method, tuple(estimates), skipped, TimingStats.from_seconds(durations))
        logger.info(
            "%s estimated %d epochs, skipped %d scans, mean step %.3f ms",
            str(self.method).upper(),
            len(run),
            skipped,
            run.timing.mean_ms,
        )
        return run

    @staticmethod
    def _truth_interpolator(dataset: "Dataset") -> Optional[AttitudeInterpolator]:
        if not dataset.truth:
            return None
        timestamps = np.fromiter((p.timestamp for p in dataset.truth), dtype=np.float64, count=len(dataset.truth))
        return AttitudeInterpolator(timestamps, [p.attitude for p in dataset.truth])

    @staticmethod
    def _inputs_at(
        scan: RadarScan,
        lookup: _ImuLookup,
        interpolator: Optional[AttitudeInterpolator],
        fallback_attitude: Rotation,
    ) -> Optional[Tuple[ImuSample, Rotation]]:
        if len(scan) == 0:
            logger.warning("Scan at t=%.6f has no targets, skipped", scan.timestamp)
            return None
        imu = lookup.nearest(scan.timestamp)
        if imu is None:
            logger.warning("Scan at t=%.6f has no IMU sample close enough, skipped", scan.timestamp)
            return None
        if interpolator is None:
            return imu, fallback_attitude
        try:
            return imu, interpolator.at(scan.timestamp)
        except OutOfRangeException as e:
            logger.warning("Scan at t=%.6f skipped: %s", scan.timestamp, e.error_message)
            return None

    @classmethod
    def builder(cls) -> "EstimatorBuilder":
        """
        Create a builder for constructing estimators.

        Returns:
            A new builder instance.
        """
        return EstimatorBuilder()


class ReveEstimator(EgoVelocityEstimator):
    """
    Unconstrained RANSAC/LSQ baseline. A degenerate scan repeats the previous velocity.
    """

    @property
    def method(self) -> Method:
        return Method.REVE

    @property
    def constrain(self) -> bool:
        return False


class CreveEstimator(EgoVelocityEstimator):
    """
    Acceleration-constrained estimator with adaptive box width and accelerometer bias tracking.
    """

    @property
    def method(self) -> Method:
        return Method.CREVE

    @property
    def constrain(self) -> bool:
        return True


class EstimatorBuilder:
    """
    Builder for constructing EgoVelocityEstimator instances.
    """

    def __init__(self):
        self._method: Method = Method.CREVE
        self._pipeline_config: Optional[PipelineConfiguration] = None

    def method(self, method: Union[Method, str]) -> "EstimatorBuilder":
        """
        Set the estimation method.

        Args:
            method: ``reve`` or ``creve``.

        Returns:
            This builder instance for method chaining.

        Raises:
            InvalidInputException: If the method is unknown.
        """
        try:
            self._method = Method(str(method))
        except ValueError:
            raise InvalidInputException(f"Unknown estimation method {method!r}.") from None
        return self

    def pipeline_config(self, pipeline_config: PipelineConfiguration) -> "EstimatorBuilder":
        self._pipeline_config = pipeline_config
        return self

    def build(self) -> EgoVelocityEstimator:
        """
        Build the estimator.

        Returns:
            A ReveEstimator or CreveEstimator using a copy of the configured pipeline settings.
        """
        config = PipelineConfiguration.copy(self._pipeline_config) if self._pipeline_config else None
        if self._method == Method.REVE:
            return ReveEstimator(config)
        return CreveEstimator(config)
