"""
CREVE - Pipeline Configuration
"""

from typing import TYPE_CHECKING, Optional, Tuple

from creve.config.ransac_configuration import RansacConfiguration
from creve.constants import PipelineDefaults

if TYPE_CHECKING:
    from creve.estimation.pipeline import GammaBounds


class PipelineConfiguration:
    """
    Estimation pipeline configuration class.

    Holds the top-level keys of a configuration file and its ``ransac`` section.
    """

    KEYS = (
        "gamma_min",
        "gamma_max",
        "z_threshold",
        "bias_cutoff_hz",
        "gravity",
        "alignment_duration",
        "imu_max_gap_periods",
        "ransac",
    )

    def __init__(self):
        self._gamma_min: Tuple[float, float, float] = PipelineDefaults.GAMMA_MIN
        self._gamma_max: Tuple[float, float, float] = PipelineDefaults.GAMMA_MAX
        self._z_threshold: float = PipelineDefaults.Z_THRESHOLD
        self._bias_cutoff_hz: float = PipelineDefaults.BIAS_CUTOFF_HZ
        self._gravity: float = PipelineDefaults.GRAVITY
        self._alignment_duration: float = PipelineDefaults.ALIGNMENT_DURATION
        self._imu_max_gap_periods: float = PipelineDefaults.IMU_MAX_GAP_PERIODS
        self._ransac: RansacConfiguration = RansacConfiguration()

    @property
    def gamma_min(self) -> Tuple[float, float, float]:
        return self._gamma_min

    @gamma_min.setter
    def gamma_min(self, value: Tuple[float, float, float]):
        self._gamma_min = tuple(value)

    @property
    def gamma_max(self) -> Tuple[float, float, float]:
        return self._gamma_max

    @gamma_max.setter
    def gamma_max(self, value: Tuple[float, float, float]):
        self._gamma_max = tuple(value)

    @property
    def z_threshold(self) -> float:
        return self._z_threshold

    @z_threshold.setter
    def z_threshold(self, value: float):
        self._z_threshold = value

    @property
    def bias_cutoff_hz(self) -> float:
        return self._bias_cutoff_hz

    @bias_cutoff_hz.setter
    def bias_cutoff_hz(self, value: float):
        self._bias_cutoff_hz = value

    @property
    def gravity(self) -> float:
        return self._gravity

    @gravity.setter
    def gravity(self, value: float):
        self._gravity = value

    @property
    def alignment_duration(self) -> float:
        """Length (s) of the stationary coarse-alignment window; 0 disables alignment."""
        return self._alignment_duration

    @alignment_duration.setter
    def alignment_duration(self, value: float):
        self._alignment_duration = value

    @property
    def imu_max_gap_periods(self) -> float:
        return self._imu_max_gap_periods

    @imu_max_gap_periods.setter
    def imu_max_gap_periods(self, value: float):
        self._imu_max_gap_periods = value

    @property
    def ransac(self) -> RansacConfiguration:
        return self._ransac

    @ransac.setter
    def ransac(self, value: RansacConfiguration):
        self._ransac = value

    def gamma_bounds(self) -> "GammaBounds":
        from creve.estimation.pipeline import GammaBounds

        return GammaBounds(self._gamma_min, self._gamma_max)

    def to_dict(self) -> dict:
        return {
            "gamma_min": list(self._gamma_min),
            "gamma_max": list(self._gamma_max),
            "z_threshold": self._z_threshold,
            "bias_cutoff_hz": self._bias_cutoff_hz,
            "gravity": self._gravity,
            "alignment_duration": self._alignment_duration,
            "imu_max_gap_periods": self._imu_max_gap_periods,
            "ransac": self._ransac.to_dict(),
        }

    def _key(self) -> tuple:
        return (
            self._gamma_min,
            self._gamma_max,
            self._z_threshold,
            self._bias_cutoff_hz,
            self._gravity,
            self._alignment_duration,
            self._imu_max_gap_periods,
            self._ransac,
        )

    def __repr__(self) -> str:
        return (
            f"PipelineConfiguration(gamma_min={self._gamma_min}, "
            f"gamma_max={self._gamma_max}, "
            f"z_threshold={self._z_threshold}, "
            f"bias_cutoff_hz={self._bias_cutoff_hz}, "
            f"gravity={self._gravity}, "
            f"alignment_duration={self._alignment_duration}, "
            f"imu_max_gap_periods={self._imu_max_gap_periods}, "
            f"ransac={self._ransac})"
        )

    def __eq__(self, other) -> bool:
        if not isinstance(other, PipelineConfiguration):
            return NotImplemented
        return self._key() == other._key()

    def __hash__(self) -> int:
        return hash(self._key())

    @staticmethod
    def copy(source: "PipelineConfiguration") -> Optional["PipelineConfiguration"]:
        """
        Create a copy of the pipeline configuration, including its RANSAC section.
        """
        if source is None:
            return None
        pipeline_configuration = PipelineConfiguration()
        pipeline_configuration._gamma_min = source._gamma_min
        pipeline_configuration._gamma_max = source._gamma_max
        pipeline_configuration._z_threshold = source._z_threshold
        pipeline_configuration._bias_cutoff_hz = source._bias_cutoff_hz
        pipeline_configuration._gravity = source._gravity
        pipeline_configuration._alignment_duration = source._alignment_duration
        pipeline_configuration._imu_max_gap_periods = source._imu_max_gap_periods
        pipeline_configuration._ransac = RansacConfiguration.copy(source._ransac)
        return pipeline_configuration

    @classmethod
    def from_dict(cls, data: dict, path: str = "") -> "PipelineConfiguration":
        """
        Create a PipelineConfiguration instance from a dictionary.

        Supports both camelCase (JSON config style) and snake_case (Python style) keys.

        Args:
            data: Dictionary containing PipelineConfiguration properties.
            path: Dotted path of the section, used in error messages.

        Returns:
            A PipelineConfiguration instance with values from the dictionary.

        Raises:
            ConfigException: If a key is unknown or a value has the wrong type.
        """
        from creve.util.string_util import StringUtil
        from creve.util.validator_util import ValidatorUtil

        def key(name: str) -> str:
            return f"{path}.{name}" if path else name

        pipeline_config = cls()
        if data is not None:
            normalized_data = StringUtil.normalize_keys(ValidatorUtil.to_section(data, path or "config"))
            ValidatorUtil.reject_unknown_keys(normalized_data, cls.KEYS, path)

            if "gamma_min" in normalized_data:
                pipeline_config.gamma_min = ValidatorUtil.to_vec3(normalized_data["gamma_min"], key("gamma_min"))
            if "gamma_max" in normalized_data:
                pipeline_config.gamma_max = ValidatorUtil.to_vec3(normalized_data["gamma_max"], key("gamma_max"))
            if "z_threshold" in normalized_data:
                pipeline_config.z_threshold = ValidatorUtil.to_float(normalized_data["z_threshold"], key("z_threshold"))
            if "bias_cutoff_hz" in normalized_data:
                pipeline_config.bias_cutoff_hz = ValidatorUtil.to_float(
                    normalized_data["bias_cutoff_hz"], key("bias_cutoff_hz")
                )
            if "gravity" in normalized_data:
                pipeline_config.gravity = ValidatorUtil.to_float(normalized_data["gravity"], key("gravity"))
            if "alignment_duration" in normalized_data:
                pipeline_config.alignment_duration = ValidatorUtil.to_float(
                    normalized_data["alignment_duration"], key("alignment_duration")
                )
            if "imu_max_gap_periods" in normalized_data:
                pipeline_config.imu_max_gap_periods = ValidatorUtil.to_float(
                    normalized_data["imu_max_gap_periods"], key("imu_max_gap_periods")
                )
            if "ransac" in normalized_data:
                if normalized_data["ransac"] is not None:
                    pipeline_config.ransac = RansacConfiguration.from_dict(normalized_data["ransac"], key("ransac"))
        return pipeline_config
