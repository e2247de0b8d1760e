"""
CREVE - Scenario Generator

Synthetic radar, IMU and ground-truth streams with planted sensor biases,
clutter outliers, ghost targets and moving objects. Generation is a pure
function of the configuration: every radar scan draws from its own
generator seeded by (rng_seed, scan index, stream).
"""

import logging
from dataclasses import dataclass
from typing import TYPE_CHECKING, Optional, Tuple

import numpy as np

from creve.config.scenario_configuration import ScenarioConfiguration
from creve.constants import ScenarioDefaults
from creve.domain import ExtrinsicCalib, ImuSample, PoseSample, RadarScan
from creve.exceptions import InvalidInputException, OutOfRangeException
from creve.geometry.frames import gravity_nav
from creve.geometry.rotation import Rotation
from creve.metrics.trajectory import VectorSeries
from creve.sim.motion import MotionSamples, PlatformMotion

if TYPE_CHECKING:
    from creve.io.dataset import Dataset

logger = logging.getLogger(__name__)

_RADAR_STREAM = 0
_IMU_STREAM = 1


def _stream(seed: int, index: int, stream: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence([seed, index, stream]))


def _sample_times(duration: float, rate: float) -> np.ndarray:
    return np.arange(int(np.floor(duration * rate + 1e-9)) + 1) / rate


@dataclass(frozen=True, eq=False)
class Scenario:
    """
    Generated sensor streams and the analytic truth behind them.
    """

    radar: Tuple[RadarScan, ...]
    imu: Tuple[ImuSample, ...]
    truth: Tuple[PoseSample, ...]
    truth_velocity_radar: VectorSeries
    truth_velocity_nav: VectorSeries
    calib: ExtrinsicCalib
    config: ScenarioConfiguration
    motion: PlatformMotion

    def to_dataset(self) -> "Dataset":
        """Wrap the streams in the canonical dataset container."""
        from creve.io.dataset import Dataset, DatasetMetadata

        metadata = DatasetMetadata(self.config.name, "creve-sim", self.config.rng_seed)
        return Dataset(self.radar, self.imu, self.truth, self.calib, metadata)


def scenario_calib(config: ScenarioConfiguration) -> ExtrinsicCalib:
    """
    Radar-to-body extrinsics: the FLU-to-FRD flip followed by the configured mounting yaw.
    """
    rotation = Rotation.from_euler(np.deg2rad(config.extrinsic_yaw_deg), 0.0, np.pi)
    return ExtrinsicCalib(rotation, np.asarray(config.lever_arm, dtype=np.float64), config.gravity)


def radar_velocities(samples: MotionSamples, calib: ExtrinsicCalib) -> np.ndarray:
    """
    Radar-frame velocity v^r = C_b^r (C_n^b v^n + ω × p_r^b) at every sample.
    """
    nav_to_body = Rotation.stack_scipy(samples.attitudes()).inv()
    v_body = nav_to_body.apply(samples.velocities) + np.cross(samples.angular_rates(), calib.lever_arm)
    return calib.rot_body_to_radar.as_scipy().apply(v_body).reshape(-1, 3)


def _directions(rng: np.random.Generator, n: int, fov_deg: float) -> np.ndarray:
    half = np.deg2rad(fov_deg) / 2.0
    azimuth = rng.uniform(-half, half, n)
    elevation = rng.uniform(-half, half, n)
    return np.column_stack(
        [np.cos(elevation) * np.cos(azimuth), np.cos(elevation) * np.sin(azimuth), np.sin(elevation)]
    )


def _generate_scan(
    config: ScenarioConfiguration,
    index: int,
    t: float,
    v_radar: np.ndarray,
    object_velocities_radar: np.ndarray,
    ghost_bound: float,
) -> RadarScan:
    rng = _stream(config.rng_seed, index, _RADAR_STREAM)
    n = config.n_static_targets
    directions = _directions(rng, n, config.fov_deg)
    ranges = rng.uniform(config.min_range, config.max_range, n)
    dopplers = -directions @ v_radar

    category = rng.random(n)
    ghost = category < config.ghost_fraction
    clutter = ~ghost & (category < config.ghost_fraction + config.outlier_fraction)
    dopplers[ghost] = rng.uniform(-ghost_bound, ghost_bound, int(ghost.sum()))
    low, high = ScenarioDefaults.CLUTTER_OFFSET
    offsets = rng.uniform(low, high, int(clutter.sum())) * rng.choice([-1.0, 1.0], int(clutter.sum()))
    dopplers[clutter] += offsets

    positions = [directions * ranges[:, None]]
    all_dopplers = [dopplers]
    for obj, v_obj in zip(config.dynamic_objects, object_velocities_radar):
        present = rng.random() < obj["presence"]
        count = obj["count"]
        obj_directions = _directions(rng, count, config.fov_deg)
        obj_ranges = rng.uniform(config.min_range, config.max_range, count)
        if present:
            positions.append(obj_directions * obj_ranges[:, None])
            all_dopplers.append(-obj_directions @ (v_radar - v_obj))

    positions = np.vstack(positions)
    dopplers = np.concatenate(all_dopplers)
    dopplers = dopplers + rng.normal(0.0, config.doppler_noise_std, len(dopplers))
    if config.position_noise_std > 0.0:
        positions = positions + rng.normal(0.0, config.position_noise_std, positions.shape)
    return RadarScan.from_arrays(t, positions, dopplers)


def _generate_imu(config: ScenarioConfiguration, motion: PlatformMotion) -> Tuple[ImuSample, ...]:
    rng = _stream(config.rng_seed, 0, _IMU_STREAM)
    samples = motion.sample(_sample_times(config.duration, config.imu_rate))
    nav_to_body = Rotation.stack_scipy(samples.attitudes()).inv()
    n = len(samples.timestamps)
    forces = nav_to_body.apply(samples.accelerations - gravity_nav(config.gravity)).reshape(-1, 3)
    forces = forces + np.asarray(config.accel_bias) + rng.normal(0.0, config.accel_noise_std, (n, 3))
    rates = samples.angular_rates() + np.asarray(config.gyro_bias) + rng.normal(0.0, config.gyro_noise_std, (n, 3))
    return tuple(ImuSample(t, f, w) for t, f, w in zip(samples.timestamps, forces, rates))


def generate(config: Optional[ScenarioConfiguration] = None) -> Scenario:
    """
    Generate a synthetic scenario.

    Static targets are drawn uniformly in the field of view at every scan and
    obey -v_D = p̄ᵀ v^r. Each of them is replaced by a ghost with probability
    ``ghost_fraction`` (uniform Doppler) or gets a clutter offset with
    probability ``outlier_fraction``. Each dynamic object is seen in a scan
    with probability ``presence`` and contributes ``count`` targets moving
    with its velocity.

    Args:
        config: Scenario configuration; defaults when omitted.

    Returns:
        The scenario.

    Raises:
        InvalidInputException: Listing every offending field of an invalid configuration.
    """
    from creve.util.validator_util import ValidatorUtil

    config = ScenarioConfiguration.copy(config) if config is not None else ScenarioConfiguration()
    problems = ValidatorUtil.scenario_problems(config)
    if problems:
        raise InvalidInputException("Invalid scenario configuration: " + "; ".join(problems) + ".")

    calib = scenario_calib(config)
    motion = PlatformMotion.from_config(config.trajectory, config.yaw, config.duration, config.stationary_duration)

    radar_samples = motion.sample(_sample_times(config.duration, config.radar_rate))
    v_radar = radar_velocities(radar_samples, calib)
    ghost_bound = 2.0 * max(float(np.max(np.linalg.norm(v_radar, axis=1))), 1.0)

    nav_to_radar = calib.rot_body_to_radar.as_scipy() * Rotation.stack_scipy(radar_samples.attitudes()).inv()
    object_velocities = [
        nav_to_radar.apply(np.asarray(obj["velocity"], dtype=np.float64)).reshape(-1, 3)
        for obj in config.dynamic_objects
    ]
    radar = tuple(
        _generate_scan(config, k, t, v_radar[k], [v[k] for v in object_velocities], ghost_bound)
        for k, t in enumerate(radar_samples.timestamps)
    )

    imu = _generate_imu(config, motion)

    truth_samples = motion.sample(_sample_times(config.duration, config.truth_rate))
    truth = tuple(
        PoseSample(t, p, attitude)
        for t, p, attitude in zip(truth_samples.timestamps, truth_samples.positions, truth_samples.attitudes())
    )

    logger.info(
        "Generated scenario %r: %d scans, %d IMU samples, %d poses",
        config.name,
        len(radar),
        len(imu),
        len(truth),
    )
    return Scenario(
        radar=radar,
        imu=imu,
        truth=truth,
        truth_velocity_radar=VectorSeries(radar_samples.timestamps, v_radar),
        truth_velocity_nav=VectorSeries(radar_samples.timestamps, radar_samples.velocities),
        calib=calib,
        config=config,
        motion=motion,
    )


def truth_at(scenario: Scenario, t: float) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """
    Closed-form truth at time ``t``.

    Returns:
        (radar-frame velocity, navigation-frame velocity, navigation-frame acceleration).

    Raises:
        OutOfRangeException: If ``t`` lies outside [0, duration].
    """
    duration = scenario.config.duration
    if not 0.0 <= t <= duration:
        raise OutOfRangeException(t, 0.0, duration)
    samples = scenario.motion.sample([t])
    return radar_velocities(samples, scenario.calib)[0], samples.velocities[0], samples.accelerations[0]
