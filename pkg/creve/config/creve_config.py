"""
CREVE - Configuration

Top-level configuration: the estimation pipeline keys sit at the root of the
JSON document, next to the ``evaluation`` and ``scenario`` sections.
"""

import logging
from typing import Optional

from creve.config.evaluation_configuration import EvaluationConfiguration
from creve.config.pipeline_configuration import PipelineConfiguration
from creve.config.scenario_configuration import ScenarioConfiguration
from creve.constants import ErrorCode
from creve.exceptions import ConfigException

logger = logging.getLogger(__name__)


class CreveConfig:
    """
    Full configuration of a simulate, estimate and evaluate run.
    """

    SECTIONS = ("evaluation", "scenario")

    def __init__(self):
        self._pipeline: PipelineConfiguration = PipelineConfiguration()
        self._evaluation: EvaluationConfiguration = EvaluationConfiguration()
        self._scenario: ScenarioConfiguration = ScenarioConfiguration()

    @property
    def pipeline(self) -> PipelineConfiguration:
        return self._pipeline

    @pipeline.setter
    def pipeline(self, value: PipelineConfiguration):
        self._pipeline = value

    @property
    def evaluation(self) -> EvaluationConfiguration:
        return self._evaluation

    @evaluation.setter
    def evaluation(self, value: EvaluationConfiguration):
        self._evaluation = value

    @property
    def scenario(self) -> ScenarioConfiguration:
        return self._scenario

    @scenario.setter
    def scenario(self, value: ScenarioConfiguration):
        self._scenario = value

    def validate(self) -> None:
        """
        Validate every section.

        Raises:
            ConfigException: If any value is out of range.
        """
        from creve.util.validator_util import ValidatorUtil

        ValidatorUtil.validate_pipeline_config(self._pipeline, radar_rate=self._scenario.radar_rate)
        ValidatorUtil.validate_evaluation_config(self._evaluation)
        ValidatorUtil.validate_scenario_config(self._scenario)

    def to_dict(self) -> dict:
        data = self._pipeline.to_dict()
        data["evaluation"] = self._evaluation.to_dict()
        data["scenario"] = self._scenario.to_dict()
        return data

    def __repr__(self) -> str:
        return f"CreveConfig(pipeline={self._pipeline}, evaluation={self._evaluation}, scenario={self._scenario})"

    def __eq__(self, other) -> bool:
        if not isinstance(other, CreveConfig):
            return NotImplemented
        return (
            self._pipeline == other._pipeline
            and self._evaluation == other._evaluation
            and self._scenario == other._scenario
        )

    def __hash__(self) -> int:
        return hash((self._pipeline, self._evaluation, self._scenario))

    @staticmethod
    def copy(source: "CreveConfig") -> Optional["CreveConfig"]:
        if source is None:
            return None
        config = CreveConfig()
        config._pipeline = PipelineConfiguration.copy(source._pipeline)
        config._evaluation = EvaluationConfiguration.copy(source._evaluation)
        config._scenario = ScenarioConfiguration.copy(source._scenario)
        return config

    @classmethod
    def from_dict(cls, data: dict) -> "CreveConfig":
        """
        Create a CreveConfig instance from a dictionary.

        Supports both camelCase (JSON config style) and snake_case (Python style) keys.

        Args:
            data: Dictionary parsed from a configuration file.

        Returns:
            A CreveConfig instance with values from the dictionary.

        Raises:
            ConfigException: If a key is unknown or a value has the wrong type.
        """
        from creve.util.string_util import StringUtil

        config = cls()
        if data is not None:
            normalized_data = StringUtil.normalize_keys(data)
            pipeline_data = {k: v for k, v in normalized_data.items() if k not in cls.SECTIONS}
            config.pipeline = PipelineConfiguration.from_dict(pipeline_data)
            if normalized_data.get("evaluation") is not None:
                config.evaluation = EvaluationConfiguration.from_dict(normalized_data["evaluation"])
            if normalized_data.get("scenario") is not None:
                config.scenario = ScenarioConfiguration.from_dict(normalized_data["scenario"])
        return config


def load_config(config_path: Optional[str] = None) -> CreveConfig:
    """
    Load and validate a configuration file.

    Args:
        config_path: Path of a JSON configuration file. ``None`` returns the
            documented defaults.

    Returns:
        The validated configuration.

    Raises:
        ConfigException: On a read or parse error, an unknown key, or an
            out-of-range value.
    """
    from creve.util.config_reader import ConfigReader
    from creve.util.json_util import JSONUtil

    if config_path is None:
        config = CreveConfig()
    else:
        content = ConfigReader.get_config_as_string(config_path)
        if content.strip():
            try:
                data = JSONUtil.parse_map(content)
            except ValueError as e:
                raise ConfigException(ErrorCode.CONFIG_PARSE_FAILED, f"{config_path}: {e}", cause=e) from e
        else:
            data = {}
        config = CreveConfig.from_dict(data)
        logger.info("Loaded configuration from %s", config_path)
    config.validate()
    return config
