"""
Tests for EvaluationConfiguration class
"""

import unittest

from creve.config.evaluation_configuration import EvaluationConfiguration
from creve.constants import AlignmentMode, ErrorCode
from creve.exceptions import ConfigException
from creve.util.validator_util import ValidatorUtil


class TestEvaluationConfiguration(unittest.TestCase):
    """Test cases for EvaluationConfiguration class"""

    def test_default_values(self):
        """Test default values"""
        config = EvaluationConfiguration()
        self.assertEqual(config.max_dt, 0.05)
        self.assertIs(config.alignment, AlignmentMode.POS_YAW)

    def test_copy(self):
        """Test copy method"""
        source = EvaluationConfiguration()
        source.alignment = AlignmentMode.SE3
        target = EvaluationConfiguration.copy(source)
        self.assertIsNot(source, target)
        self.assertEqual(target.alignment, AlignmentMode.SE3)
        self.assertIsNone(EvaluationConfiguration.copy(None))

    def test_to_dict(self):
        """Test that the alignment is written as its string value"""
        self.assertEqual(EvaluationConfiguration().to_dict(), {"max_dt": 0.05, "alignment": "pos-yaw"})

    def test_from_dict(self):
        """Test camelCase keys and alignment lookup"""
        config = EvaluationConfiguration.from_dict({"maxDt": 0.1, "alignment": "none"})
        self.assertEqual(config.max_dt, 0.1)
        self.assertIs(config.alignment, AlignmentMode.NONE)

    def test_from_dict_bad_alignment(self):
        """Test an alignment mode that does not exist"""
        with self.assertRaises(ConfigException) as context:
            EvaluationConfiguration.from_dict({"alignment": "sim3"})
        self.assertEqual(context.exception.error_code, ErrorCode.CONFIG_VALUE_NOT_VALID)
        self.assertIn("evaluation.alignment", str(context.exception))

    def test_from_dict_unknown_key(self):
        """Test an unknown key"""
        with self.assertRaises(ConfigException) as context:
            EvaluationConfiguration.from_dict({"window": 3})
        self.assertEqual(context.exception.error_code, ErrorCode.UNKNOWN_CONFIG_KEY)

    def test_validate(self):
        """Test range validation"""
        config = EvaluationConfiguration()
        ValidatorUtil.validate_evaluation_config(config)
        config.max_dt = 0.0
        with self.assertRaises(ConfigException):
            ValidatorUtil.validate_evaluation_config(config)
        config.max_dt = 0.05
        config.alignment = "se3"
        with self.assertRaises(ConfigException):
            ValidatorUtil.validate_evaluation_config(config)


if __name__ == "__main__":
    unittest.main()
