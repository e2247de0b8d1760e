"""
Tests for ValidatorUtil class
"""

import unittest

from creve.constants import ErrorCode
from creve.exceptions import ConfigException
from creve.util.validator_util import ValidatorUtil


class TestValidatorUtil(unittest.TestCase):
    """Test cases for ValidatorUtil class"""

    def test_reject_unknown_keys(self):
        """Test reject_unknown_keys"""
        ValidatorUtil.reject_unknown_keys({"a": 1}, ("a", "b"))
        with self.assertRaises(ConfigException) as context:
            ValidatorUtil.reject_unknown_keys({"a": 1, "c": 2}, ("a", "b"), "section")
        self.assertEqual(context.exception.error_code, ErrorCode.UNKNOWN_CONFIG_KEY)
        self.assertIn("section.c", str(context.exception))

    def test_to_float(self):
        """Test to_float accepts numbers and rejects the rest"""
        self.assertEqual(ValidatorUtil.to_float(2, "k"), 2.0)
        self.assertIsInstance(ValidatorUtil.to_float(2, "k"), float)
        for value in (True, "1.0", None, float("nan"), float("inf")):
            with self.subTest(value=value):
                with self.assertRaises(ConfigException):
                    ValidatorUtil.to_float(value, "k")

    def test_to_int(self):
        """Test to_int rejects floats and booleans"""
        self.assertEqual(ValidatorUtil.to_int(4, "k"), 4)
        for value in (4.0, False, "4"):
            with self.subTest(value=value):
                with self.assertRaises(ConfigException):
                    ValidatorUtil.to_int(value, "k")

    def test_to_vec3(self):
        """Test to_vec3 names the offending component"""
        self.assertEqual(ValidatorUtil.to_vec3([1, 2, 3], "v"), (1.0, 2.0, 3.0))
        with self.assertRaises(ConfigException) as context:
            ValidatorUtil.to_vec3([1, None, 3], "v")
        self.assertIn("v[1]", str(context.exception))

    def test_to_section(self):
        """Test to_section"""
        self.assertEqual(ValidatorUtil.to_section({"a": 1}, "s"), {"a": 1})
        with self.assertRaises(ConfigException):
            ValidatorUtil.to_section("a", "s")

    def test_parse_trajectory_camel_case(self):
        """Test that trajectory keys are normalized"""
        parsed = ValidatorUtil.parse_trajectory({"type": "sinusoid", "amplitudes": [1, 0, 0], "frequencies": [1, 0, 0]})
        self.assertEqual(parsed["amplitudes"], (1.0, 0.0, 0.0))

    def test_parse_trajectory_missing_type(self):
        """Test a trajectory without a type"""
        with self.assertRaises(ConfigException) as context:
            ValidatorUtil.parse_trajectory({"velocity": [1, 0, 0]})
        self.assertIn("scenario.trajectory.type", str(context.exception))


if __name__ == "__main__":
    unittest.main()
