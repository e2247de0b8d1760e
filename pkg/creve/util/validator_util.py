"""
CREVE - Validator Utility

This module provides validation utilities for configuration values.
"""

import math
from numbers import Integral, Real
from typing import TYPE_CHECKING, Any, Iterable, List, Optional, Tuple

from creve.constants import (
    DYNAMIC_OBJECT_KEYS,
    TRAJECTORY_KEYS,
    YAW_KEYS,
    AlignmentMode,
    ErrorCode,
    TrajectoryType,
)
from creve.exceptions import ConfigException

if TYPE_CHECKING:
    from creve.config.evaluation_configuration import EvaluationConfiguration
    from creve.config.pipeline_configuration import PipelineConfiguration
    from creve.config.ransac_configuration import RansacConfiguration
    from creve.config.scenario_configuration import ScenarioConfiguration


def _key(path: str, key: str) -> str:
    return f"{path}.{key}" if path else key


def _not_valid(key: str, rule: str, value: Any) -> ConfigException:
    return ConfigException(ErrorCode.CONFIG_VALUE_NOT_VALID, f"{key} {rule}, got {value!r}.")


class ValidatorUtil:
    """
    Utility class for validation operations.
    """

    @staticmethod
    def reject_unknown_keys(data: dict, allowed: Iterable[str], path: str = "") -> None:
        """
        Validate that a normalized configuration section has only known keys.

        Args:
            data: Section with snake_case keys.
            allowed: Known keys of the section.
            path: Dotted path of the section, used in the error message.

        Raises:
            ConfigException: Naming the first unknown key.
        """
        allowed = set(allowed)
        for key in data:
            if key not in allowed:
                raise ConfigException(ErrorCode.UNKNOWN_CONFIG_KEY, f"Unknown config key: {_key(path, key)}.")

    @staticmethod
    def to_float(value: Any, key: str) -> float:
        if isinstance(value, bool) or not isinstance(value, Real) or not math.isfinite(value):
            raise _not_valid(key, "must be a finite number", value)
        return float(value)

    @staticmethod
    def to_int(value: Any, key: str) -> int:
        if isinstance(value, bool) or not isinstance(value, Integral):
            raise _not_valid(key, "must be an integer", value)
        return int(value)

    @staticmethod
    def to_vec3(value: Any, key: str) -> Tuple[float, float, float]:
        if not isinstance(value, (list, tuple)) or len(value) != 3:
            raise _not_valid(key, "must be a list of 3 numbers", value)
        return tuple(ValidatorUtil.to_float(v, f"{key}[{i}]") for i, v in enumerate(value))

    @staticmethod
    def to_section(value: Any, key: str) -> dict:
        if not isinstance(value, dict):
            raise _not_valid(key, "must be an object", value)
        return value

    @staticmethod
    def parse_trajectory(value: Any, key: str = "scenario.trajectory") -> dict:
        """
        Normalize and type-check a trajectory section.

        Raises:
            ConfigException: If the type is unknown, a key is unknown for the
                type, or a value has the wrong shape.
        """
        from creve.util.string_util import StringUtil

        data = StringUtil.normalize_keys(ValidatorUtil.to_section(value, key))
        try:
            kind = TrajectoryType(data.get("type"))
        except ValueError:
            allowed = ", ".join(str(t) for t in TrajectoryType)
            raise _not_valid(_key(key, "type"), f"must be one of {allowed}", data.get("type")) from None
        ValidatorUtil.reject_unknown_keys(data, TRAJECTORY_KEYS[kind], key)
        parsed: dict = {"type": str(kind)}
        if kind == TrajectoryType.CONSTANT_VELOCITY:
            parsed["velocity"] = ValidatorUtil.to_vec3(data.get("velocity"), _key(key, "velocity"))
        elif kind == TrajectoryType.SINUSOID:
            parsed["amplitudes"] = ValidatorUtil.to_vec3(data.get("amplitudes"), _key(key, "amplitudes"))
            parsed["frequencies"] = ValidatorUtil.to_vec3(data.get("frequencies"), _key(key, "frequencies"))
        elif kind == TrajectoryType.WAYPOINT_SPLINE:
            points = data.get("points")
            if not isinstance(points, (list, tuple)) or len(points) < 2:
                raise _not_valid(_key(key, "points"), "must be a list of at least 2 points", points)
            parsed["points"] = [ValidatorUtil.to_vec3(p, f"{key}.points[{i}]") for i, p in enumerate(points)]
        return parsed

    @staticmethod
    def parse_yaw(value: Any, key: str = "scenario.yaw") -> dict:
        from creve.util.string_util import StringUtil

        data = StringUtil.normalize_keys(ValidatorUtil.to_section(value, key))
        ValidatorUtil.reject_unknown_keys(data, YAW_KEYS, key)
        return {name: ValidatorUtil.to_float(data.get(name, 0.0), _key(key, name)) for name in YAW_KEYS}

    @staticmethod
    def parse_dynamic_objects(value: Any, key: str = "scenario.dynamic_objects") -> List[dict]:
        from creve.util.string_util import StringUtil

        if not isinstance(value, (list, tuple)):
            raise _not_valid(key, "must be a list", value)
        parsed = []
        for i, item in enumerate(value):
            item_key = f"{key}[{i}]"
            data = StringUtil.normalize_keys(ValidatorUtil.to_section(item, item_key))
            ValidatorUtil.reject_unknown_keys(data, DYNAMIC_OBJECT_KEYS, item_key)
            parsed.append(
                {
                    "velocity": ValidatorUtil.to_vec3(data.get("velocity"), _key(item_key, "velocity")),
                    "count": ValidatorUtil.to_int(data.get("count"), _key(item_key, "count")),
                    "presence": ValidatorUtil.to_float(data.get("presence", 1.0), _key(item_key, "presence")),
                }
            )
        return parsed

    @staticmethod
    def validate_ransac_config(ransac: "RansacConfiguration", path: str = "ransac") -> None:
        """
        Validate RANSAC configuration ranges.

        Raises:
            ConfigException: If validation fails.
        """
        if not 0.0 < ransac.success_prob < 1.0:
            raise _not_valid(_key(path, "success_prob"), "must lie in (0, 1)", ransac.success_prob)
        if not 0.0 <= ransac.outlier_prob < 1.0:
            raise _not_valid(_key(path, "outlier_prob"), "must lie in [0, 1)", ransac.outlier_prob)
        if not ransac.inlier_threshold > 0.0:
            raise _not_valid(_key(path, "inlier_threshold"), "must be > 0", ransac.inlier_threshold)
        if ransac.seed < 0:
            raise _not_valid(_key(path, "seed"), "must be >= 0", ransac.seed)

    @staticmethod
    def validate_pipeline_config(pipeline: "PipelineConfiguration", radar_rate: Optional[float] = None) -> None:
        """
        Validate estimation pipeline configuration ranges.

        Args:
            pipeline: The pipeline configuration.
            radar_rate: Radar rate (Hz); when given, the bias filter cutoff
                must lie below its Nyquist frequency.

        Raises:
            ConfigException: If validation fails.
        """
        if any(g <= 0.0 for g in pipeline.gamma_min):
            raise _not_valid("gamma_min", "must be > 0 on every axis", list(pipeline.gamma_min))
        if any(hi < lo for lo, hi in zip(pipeline.gamma_min, pipeline.gamma_max)):
            raise _not_valid("gamma_max", "must be >= gamma_min on every axis", list(pipeline.gamma_max))
        if not pipeline.z_threshold > 0.0:
            raise _not_valid("z_threshold", "must be > 0", pipeline.z_threshold)
        if not pipeline.bias_cutoff_hz > 0.0:
            raise _not_valid("bias_cutoff_hz", "must be > 0", pipeline.bias_cutoff_hz)
        if radar_rate is not None and not pipeline.bias_cutoff_hz < radar_rate / 2.0:
            rule = f"must be below half the radar rate ({radar_rate / 2.0} Hz)"
            raise _not_valid("bias_cutoff_hz", rule, pipeline.bias_cutoff_hz)
        if not pipeline.gravity > 0.0:
            raise _not_valid("gravity", "must be > 0", pipeline.gravity)
        if not pipeline.alignment_duration >= 0.0:
            raise _not_valid("alignment_duration", "must be >= 0", pipeline.alignment_duration)
        if not pipeline.imu_max_gap_periods > 0.0:
            raise _not_valid("imu_max_gap_periods", "must be > 0", pipeline.imu_max_gap_periods)
        ValidatorUtil.validate_ransac_config(pipeline.ransac)

    @staticmethod
    def validate_evaluation_config(evaluation: "EvaluationConfiguration") -> None:
        """
        Validate evaluation configuration ranges.

        Raises:
            ConfigException: If validation fails.
        """
        if not evaluation.max_dt > 0.0:
            raise _not_valid("evaluation.max_dt", "must be > 0", evaluation.max_dt)
        if not isinstance(evaluation.alignment, AlignmentMode):
            raise _not_valid("evaluation.alignment", "must be one of none, se3, pos-yaw", evaluation.alignment)

    @staticmethod
    def scenario_problems(scenario: "ScenarioConfiguration") -> List[str]:
        """
        List every invalid field of a scenario configuration.

        Returns:
            One message per offending field, empty when the configuration is valid.
        """
        problems = []

        def check(ok: bool, key: str, rule: str, value: Any):
            if not ok:
                problems.append(f"scenario.{key} {rule}, got {value!r}")

        check(scenario.duration > 0.0, "duration", "must be > 0", scenario.duration)
        check(
            0.0 <= scenario.stationary_duration < scenario.duration,
            "stationary_duration",
            "must lie in [0, duration)",
            scenario.stationary_duration,
        )
        for name in ("radar_rate", "imu_rate", "truth_rate"):
            check(getattr(scenario, name) > 0.0, name, "must be > 0", getattr(scenario, name))
        check(scenario.n_static_targets >= 0, "n_static_targets", "must be >= 0", scenario.n_static_targets)
        check(0.0 < scenario.fov_deg <= 180.0, "fov_deg", "must lie in (0, 180]", scenario.fov_deg)
        check(
            0.0 < scenario.min_range <= scenario.max_range,
            "min_range",
            "must lie in (0, max_range]",
            scenario.min_range,
        )
        for name in ("outlier_fraction", "ghost_fraction"):
            value = getattr(scenario, name)
            check(0.0 <= value < 1.0, name, "must lie in [0, 1)", value)
        check(
            scenario.outlier_fraction + scenario.ghost_fraction < 1.0,
            "ghost_fraction",
            "plus outlier_fraction must be < 1",
            scenario.ghost_fraction,
        )
        for name in ("doppler_noise_std", "position_noise_std", "accel_noise_std", "gyro_noise_std"):
            value = getattr(scenario, name)
            check(value >= 0.0, name, "must be >= 0", value)
        check(scenario.rng_seed >= 0, "rng_seed", "must be >= 0", scenario.rng_seed)
        check(scenario.gravity > 0.0, "gravity", "must be > 0", scenario.gravity)
        for i, obj in enumerate(scenario.dynamic_objects):
            check(obj["count"] >= 0, f"dynamic_objects[{i}].count", "must be >= 0", obj["count"])
            check(
                0.0 <= obj["presence"] <= 1.0,
                f"dynamic_objects[{i}].presence",
                "must lie in [0, 1]",
                obj["presence"],
            )
        total = scenario.n_static_targets + sum(obj["count"] for obj in scenario.dynamic_objects)
        check(total > 0, "n_static_targets", "plus dynamic object targets must be > 0", scenario.n_static_targets)
        return problems

    @staticmethod
    def validate_scenario_config(scenario: "ScenarioConfiguration") -> None:
        """
        Validate scenario configuration ranges.

        Raises:
            ConfigException: Listing every offending field.
        """
        problems = ValidatorUtil.scenario_problems(scenario)
        if problems:
            raise ConfigException(ErrorCode.CONFIG_VALUE_NOT_VALID, "; ".join(problems) + ".")
