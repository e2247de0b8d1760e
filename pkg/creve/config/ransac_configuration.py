"""
CREVE - RANSAC Configuration
"""

from typing import TYPE_CHECKING, Optional

from creve.constants import RansacDefaults

if TYPE_CHECKING:
    from creve.estimation.ransac import RansacParams


class RansacConfiguration:
    """
    RANSAC configuration class.
    """

    KEYS = ("success_prob", "outlier_prob", "inlier_threshold", "seed")

    def __init__(self):
        self._success_prob: float = RansacDefaults.SUCCESS_PROB
        self._outlier_prob: float = RansacDefaults.OUTLIER_PROB
        self._inlier_threshold: float = RansacDefaults.INLIER_THRESHOLD
        self._seed: int = RansacDefaults.SEED

    @property
    def success_prob(self) -> float:
        return self._success_prob

    @success_prob.setter
    def success_prob(self, value: float):
        self._success_prob = value

    @property
    def outlier_prob(self) -> float:
        return self._outlier_prob

    @outlier_prob.setter
    def outlier_prob(self, value: float):
        self._outlier_prob = value

    @property
    def inlier_threshold(self) -> float:
        return self._inlier_threshold

    @inlier_threshold.setter
    def inlier_threshold(self, value: float):
        self._inlier_threshold = value

    @property
    def seed(self) -> int:
        return self._seed

    @seed.setter
    def seed(self, value: int):
        self._seed = value

    def to_params(self) -> "RansacParams":
        """
        Build the immutable estimator parameters.
        """
        from creve.estimation.ransac import RansacParams

        return RansacParams(self._success_prob, self._outlier_prob, self._inlier_threshold, self._seed)

    def to_dict(self) -> dict:
        return {key: getattr(self, key) for key in self.KEYS}

    def __repr__(self) -> str:
        return (
            f"RansacConfiguration(success_prob={self._success_prob}, "
            f"outlier_prob={self._outlier_prob}, "
            f"inlier_threshold={self._inlier_threshold}, "
            f"seed={self._seed})"
        )

    def __eq__(self, other) -> bool:
        if not isinstance(other, RansacConfiguration):
            return NotImplemented
        return (
            self._success_prob == other._success_prob
            and self._outlier_prob == other._outlier_prob
            and self._inlier_threshold == other._inlier_threshold
            and self._seed == other._seed
        )

    def __hash__(self) -> int:
        return hash((self._success_prob, self._outlier_prob, self._inlier_threshold, self._seed))

    @staticmethod
    def copy(source: "RansacConfiguration") -> Optional["RansacConfiguration"]:
        """
        Create a copy of the RANSAC configuration.

        Args:
            source: The source configuration to copy.

        Returns:
            A new RansacConfiguration instance with copied values.
        """
        if source is None:
            return None
        ransac_configuration = RansacConfiguration()
        ransac_configuration._success_prob = source._success_prob
        ransac_configuration._outlier_prob = source._outlier_prob
        ransac_configuration._inlier_threshold = source._inlier_threshold
        ransac_configuration._seed = source._seed
        return ransac_configuration

    @classmethod
    def from_dict(cls, data: dict, path: str = "ransac") -> "RansacConfiguration":
        """
        Create a RansacConfiguration instance from a dictionary.

        Supports both camelCase (JSON config style) and snake_case (Python style) keys.

        Args:
            data: Dictionary containing RansacConfiguration properties.
            path: Dotted path of the section, used in error messages.

        Returns:
            A RansacConfiguration instance with values from the dictionary.

        Raises:
            ConfigException: If a key is unknown or a value has the wrong type.
        """
        from creve.util.string_util import StringUtil
        from creve.util.validator_util import ValidatorUtil

        ransac_config = cls()
        if data is not None:
            normalized_data = StringUtil.normalize_keys(ValidatorUtil.to_section(data, path))
            ValidatorUtil.reject_unknown_keys(normalized_data, cls.KEYS, path)

            if "success_prob" in normalized_data:
                ransac_config.success_prob = ValidatorUtil.to_float(
                    normalized_data["success_prob"], f"{path}.success_prob"
                )
            if "outlier_prob" in normalized_data:
                ransac_config.outlier_prob = ValidatorUtil.to_float(
                    normalized_data["outlier_prob"], f"{path}.outlier_prob"
                )
            if "inlier_threshold" in normalized_data:
                ransac_config.inlier_threshold = ValidatorUtil.to_float(
                    normalized_data["inlier_threshold"], f"{path}.inlier_threshold"
                )
            if "seed" in normalized_data:
                ransac_config.seed = ValidatorUtil.to_int(normalized_data["seed"], f"{path}.seed")
        return ransac_config
