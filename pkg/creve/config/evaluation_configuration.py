"""
CREVE - Evaluation Configuration
"""

from typing import Optional

from creve.constants import AlignmentMode, EvaluationDefaults


class EvaluationConfiguration:
    """
    Evaluation harness configuration class.
    """

    KEYS = ("max_dt", "alignment")

    def __init__(self):
        self._max_dt: float = EvaluationDefaults.MAX_DT
        self._alignment: AlignmentMode = AlignmentMode(EvaluationDefaults.ALIGNMENT)

    @property
    def max_dt(self) -> float:
        """Largest time offset (s) between an estimate and its matched ground-truth sample."""
        return self._max_dt

    @max_dt.setter
    def max_dt(self, value: float):
        self._max_dt = value

    @property
    def alignment(self) -> AlignmentMode:
        return self._alignment

    @alignment.setter
    def alignment(self, value: AlignmentMode):
        self._alignment = value

    def to_dict(self) -> dict:
        return {"max_dt": self._max_dt, "alignment": str(self._alignment)}

    def __repr__(self) -> str:
        return f"EvaluationConfiguration(max_dt={self._max_dt}, alignment={self._alignment})"

    def __eq__(self, other) -> bool:
        if not isinstance(other, EvaluationConfiguration):
            return NotImplemented
        return self._max_dt == other._max_dt and self._alignment == other._alignment

    def __hash__(self) -> int:
        return hash((self._max_dt, self._alignment))

    @staticmethod
    def copy(source: "EvaluationConfiguration") -> Optional["EvaluationConfiguration"]:
        if source is None:
            return None
        evaluation_configuration = EvaluationConfiguration()
        evaluation_configuration._max_dt = source._max_dt
        evaluation_configuration._alignment = source._alignment
        return evaluation_configuration

    @classmethod
    def from_dict(cls, data: dict, path: str = "evaluation") -> "EvaluationConfiguration":
        """
        Create an EvaluationConfiguration instance from a dictionary.

        Supports both camelCase (JSON config style) and snake_case (Python style) keys.

        Raises:
            ConfigException: If a key is unknown or a value is not valid.
        """
        from creve.constants import ErrorCode
        from creve.exceptions import ConfigException
        from creve.util.string_util import StringUtil
        from creve.util.validator_util import ValidatorUtil

        evaluation_config = cls()
        if data is not None:
            normalized_data = StringUtil.normalize_keys(ValidatorUtil.to_section(data, path))
            ValidatorUtil.reject_unknown_keys(normalized_data, cls.KEYS, path)

            if "max_dt" in normalized_data:
                evaluation_config.max_dt = ValidatorUtil.to_float(normalized_data["max_dt"], f"{path}.max_dt")
            if "alignment" in normalized_data:
                try:
                    evaluation_config.alignment = AlignmentMode(normalized_data["alignment"])
                except ValueError:
                    raise ConfigException(
                        ErrorCode.CONFIG_VALUE_NOT_VALID,
                        f"{path}.alignment must be one of none, se3, pos-yaw, got {normalized_data['alignment']!r}.",
                    ) from None
        return evaluation_config
