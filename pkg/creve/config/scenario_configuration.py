"""
CREVE - Scenario Configuration

Configuration of the synthetic radar/IMU scenario generator.
"""

import copy as _copy
from typing import List, Optional, Tuple

from creve.constants import PipelineDefaults, ScenarioDefaults, TrajectoryType

Vec3 = Tuple[float, float, float]


def _plain(value):
    if isinstance(value, dict):
        return {key: _plain(item) for key, item in value.items()}
    if isinstance(value, (list, tuple)):
        return [_plain(item) for item in value]
    return value


class ScenarioConfiguration:
    """
    Scenario configuration class.

    ``trajectory`` is a mapping with a ``type`` key (``stationary``,
    ``constant_velocity``, ``sinusoid``, ``waypoint_spline``) and the
    parameters of that type. ``yaw`` holds ``initial``, ``rate``,
    ``amplitude`` and ``frequency`` of the heading profile
    ψ(t) = initial + rate·t + amplitude·sin(2π·frequency·t). Each entry of
    ``dynamic_objects`` holds ``velocity`` (m/s, navigation frame), ``count``
    and ``presence`` (probability of the object being seen in a scan).
    """

    FLOAT_KEYS = (
        "duration",
        "stationary_duration",
        "radar_rate",
        "imu_rate",
        "truth_rate",
        "fov_deg",
        "min_range",
        "max_range",
        "outlier_fraction",
        "ghost_fraction",
        "doppler_noise_std",
        "position_noise_std",
        "accel_noise_std",
        "gyro_noise_std",
        "extrinsic_yaw_deg",
        "gravity",
    )
    INT_KEYS = ("n_static_targets", "rng_seed")
    VEC3_KEYS = ("accel_bias", "gyro_bias", "lever_arm")
    KEYS = FLOAT_KEYS + INT_KEYS + VEC3_KEYS + ("name", "trajectory", "yaw", "dynamic_objects")

    def __init__(self):
        self._name: str = ScenarioDefaults.NAME
        self._duration: float = ScenarioDefaults.DURATION
        self._stationary_duration: float = ScenarioDefaults.STATIONARY_DURATION
        self._radar_rate: float = ScenarioDefaults.RADAR_RATE
        self._imu_rate: float = ScenarioDefaults.IMU_RATE
        self._truth_rate: float = ScenarioDefaults.TRUTH_RATE
        self._trajectory: dict = {
            "type": str(TrajectoryType.WAYPOINT_SPLINE),
            "points": [list(p) for p in ScenarioDefaults.WAYPOINTS],
        }
        self._yaw: dict = {
            "initial": 0.0,
            "rate": 0.0,
            "amplitude": ScenarioDefaults.YAW_AMPLITUDE,
            "frequency": ScenarioDefaults.YAW_FREQUENCY,
        }
        self._n_static_targets: int = ScenarioDefaults.N_STATIC_TARGETS
        self._fov_deg: float = ScenarioDefaults.FOV_DEG
        self._min_range: float = ScenarioDefaults.MIN_RANGE
        self._max_range: float = ScenarioDefaults.MAX_RANGE
        self._outlier_fraction: float = ScenarioDefaults.OUTLIER_FRACTION
        self._dynamic_objects: List[dict] = []
        self._ghost_fraction: float = ScenarioDefaults.GHOST_FRACTION
        self._doppler_noise_std: float = ScenarioDefaults.DOPPLER_NOISE_STD
        self._position_noise_std: float = ScenarioDefaults.POSITION_NOISE_STD
        self._accel_bias: Vec3 = ScenarioDefaults.ACCEL_BIAS
        self._gyro_bias: Vec3 = ScenarioDefaults.GYRO_BIAS
        self._accel_noise_std: float = ScenarioDefaults.ACCEL_NOISE_STD
        self._gyro_noise_std: float = ScenarioDefaults.GYRO_NOISE_STD
        self._rng_seed: int = ScenarioDefaults.SEED
        self._extrinsic_yaw_deg: float = ScenarioDefaults.EXTRINSIC_YAW_DEG
        self._lever_arm: Vec3 = ScenarioDefaults.LEVER_ARM
        self._gravity: float = PipelineDefaults.GRAVITY

    @property
    def name(self) -> str:
        return self._name

    @name.setter
    def name(self, value: str):
        self._name = value

    @property
    def duration(self) -> float:
        """Total scenario length (s), stationary prefix included."""
        return self._duration

    @duration.setter
    def duration(self, value: float):
        self._duration = value

    @property
    def stationary_duration(self) -> float:
        return self._stationary_duration

    @stationary_duration.setter
    def stationary_duration(self, value: float):
        self._stationary_duration = value

    @property
    def radar_rate(self) -> float:
        return self._radar_rate

    @radar_rate.setter
    def radar_rate(self, value: float):
        self._radar_rate = value

    @property
    def imu_rate(self) -> float:
        return self._imu_rate

    @imu_rate.setter
    def imu_rate(self, value: float):
        self._imu_rate = value

    @property
    def truth_rate(self) -> float:
        return self._truth_rate

    @truth_rate.setter
    def truth_rate(self, value: float):
        self._truth_rate = value

    @property
    def trajectory(self) -> dict:
        return self._trajectory

    @trajectory.setter
    def trajectory(self, value: dict):
        self._trajectory = value

    @property
    def yaw(self) -> dict:
        return self._yaw

    @yaw.setter
    def yaw(self, value: dict):
        self._yaw = value

    @property
    def n_static_targets(self) -> int:
        return self._n_static_targets

    @n_static_targets.setter
    def n_static_targets(self, value: int):
        self._n_static_targets = value

    @property
    def fov_deg(self) -> float:
        return self._fov_deg

    @fov_deg.setter
    def fov_deg(self, value: float):
        self._fov_deg = value

    @property
    def min_range(self) -> float:
        return self._min_range

    @min_range.setter
    def min_range(self, value: float):
        self._min_range = value

    @property
    def max_range(self) -> float:
        return self._max_range

    @max_range.setter
    def max_range(self, value: float):
        self._max_range = value

    @property
    def outlier_fraction(self) -> float:
        return self._outlier_fraction

    @outlier_fraction.setter
    def outlier_fraction(self, value: float):
        self._outlier_fraction = value

    @property
    def dynamic_objects(self) -> List[dict]:
        return self._dynamic_objects

    @dynamic_objects.setter
    def dynamic_objects(self, value: List[dict]):
        self._dynamic_objects = value

    @property
    def ghost_fraction(self) -> float:
        return self._ghost_fraction

    @ghost_fraction.setter
    def ghost_fraction(self, value: float):
        self._ghost_fraction = value

    @property
    def doppler_noise_std(self) -> float:
        return self._doppler_noise_std

    @doppler_noise_std.setter
    def doppler_noise_std(self, value: float):
        self._doppler_noise_std = value

    @property
    def position_noise_std(self) -> float:
        return self._position_noise_std

    @position_noise_std.setter
    def position_noise_std(self, value: float):
        self._position_noise_std = value

    @property
    def accel_bias(self) -> Vec3:
        return self._accel_bias

    @accel_bias.setter
    def accel_bias(self, value: Vec3):
        self._accel_bias = tuple(value)

    @property
    def gyro_bias(self) -> Vec3:
        return self._gyro_bias

    @gyro_bias.setter
    def gyro_bias(self, value: Vec3):
        self._gyro_bias = tuple(value)

    @property
    def accel_noise_std(self) -> float:
        return self._accel_noise_std

    @accel_noise_std.setter
    def accel_noise_std(self, value: float):
        self._accel_noise_std = value

    @property
    def gyro_noise_std(self) -> float:
        return self._gyro_noise_std

    @gyro_noise_std.setter
    def gyro_noise_std(self, value: float):
        self._gyro_noise_std = value

    @property
    def rng_seed(self) -> int:
        return self._rng_seed

    @rng_seed.setter
    def rng_seed(self, value: int):
        self._rng_seed = value

    @property
    def extrinsic_yaw_deg(self) -> float:
        """Yaw (deg) of the radar mounting relative to the body frame."""
        return self._extrinsic_yaw_deg

    @extrinsic_yaw_deg.setter
    def extrinsic_yaw_deg(self, value: float):
        self._extrinsic_yaw_deg = value

    @property
    def lever_arm(self) -> Vec3:
        return self._lever_arm

    @lever_arm.setter
    def lever_arm(self, value: Vec3):
        self._lever_arm = tuple(value)

    @property
    def gravity(self) -> float:
        return self._gravity

    @gravity.setter
    def gravity(self, value: float):
        self._gravity = value

    def with_seed(self, seed: int) -> "ScenarioConfiguration":
        """Return a copy generating with another seed."""
        scenario = ScenarioConfiguration.copy(self)
        scenario._rng_seed = seed
        return scenario

    def to_dict(self) -> dict:
        data = {key: getattr(self, key) for key in self.FLOAT_KEYS + self.INT_KEYS}
        data.update({key: list(getattr(self, key)) for key in self.VEC3_KEYS})
        data["name"] = self._name
        data["trajectory"] = _plain(self._trajectory)
        data["yaw"] = dict(self._yaw)
        data["dynamic_objects"] = [
            {"velocity": list(obj["velocity"]), "count": obj["count"], "presence": obj["presence"]}
            for obj in self._dynamic_objects
        ]
        return data

    def __repr__(self) -> str:
        fields = ", ".join(f"{key}={value!r}" for key, value in sorted(self.to_dict().items()))
        return f"ScenarioConfiguration({fields})"

    def __eq__(self, other) -> bool:
        if not isinstance(other, ScenarioConfiguration):
            return NotImplemented
        return self.to_dict() == other.to_dict()

    def __hash__(self) -> int:
        return hash(repr(self))

    @staticmethod
    def copy(source: "ScenarioConfiguration") -> Optional["ScenarioConfiguration"]:
        """
        Create a deep copy of the scenario configuration.
        """
        if source is None:
            return None
        scenario_configuration = ScenarioConfiguration()
        for attr, value in vars(source).items():
            setattr(scenario_configuration, attr, _copy.deepcopy(value))
        return scenario_configuration

    @classmethod
    def from_dict(cls, data: dict, path: str = "scenario") -> "ScenarioConfiguration":
        """
        Create a ScenarioConfiguration instance from a dictionary.

        Supports both camelCase (JSON config style) and snake_case (Python style) keys.
        Nested sections are type-checked; ranges are checked separately by
        ``ValidatorUtil.validate_scenario_config``.

        Raises:
            ConfigException: If a key is unknown or a value has the wrong type.
        """
        from creve.util.string_util import StringUtil
        from creve.util.validator_util import ValidatorUtil

        scenario_config = cls()
        if data is not None:
            normalized_data = StringUtil.normalize_keys(ValidatorUtil.to_section(data, path))
            ValidatorUtil.reject_unknown_keys(normalized_data, cls.KEYS, path)

            for key in cls.FLOAT_KEYS:
                if key in normalized_data:
                    setattr(scenario_config, key, ValidatorUtil.to_float(normalized_data[key], f"{path}.{key}"))
            for key in cls.INT_KEYS:
                if key in normalized_data:
                    setattr(scenario_config, key, ValidatorUtil.to_int(normalized_data[key], f"{path}.{key}"))
            for key in cls.VEC3_KEYS:
                if key in normalized_data:
                    setattr(scenario_config, key, ValidatorUtil.to_vec3(normalized_data[key], f"{path}.{key}"))
            if "name" in normalized_data:
                scenario_config.name = str(normalized_data["name"])
            if "trajectory" in normalized_data:
                scenario_config.trajectory = ValidatorUtil.parse_trajectory(
                    normalized_data["trajectory"], f"{path}.trajectory"
                )
            if "yaw" in normalized_data:
                scenario_config.yaw = ValidatorUtil.parse_yaw(normalized_data["yaw"], f"{path}.yaw")
            if "dynamic_objects" in normalized_data:
                scenario_config.dynamic_objects = ValidatorUtil.parse_dynamic_objects(
                    normalized_data["dynamic_objects"], f"{path}.dynamic_objects"
                )
        return scenario_config
