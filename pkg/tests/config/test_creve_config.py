"""
Tests for CreveConfig and load_config
"""

import os
import shutil
import unittest
from pathlib import Path

from creve.config import CreveConfig, load_config
from creve.config.evaluation_configuration import EvaluationConfiguration
from creve.config.pipeline_configuration import PipelineConfiguration
from creve.config.scenario_configuration import ScenarioConfiguration
from creve.constants import AlignmentMode, ErrorCode
from creve.exceptions import ConfigException
from tests.helpers import temp_dir

TEST_CONFIG = os.path.join(os.path.dirname(__file__), "test_config.json")


class TestCreveConfig(unittest.TestCase):
    """Test cases for CreveConfig class"""

    def test_defaults(self):
        """Test that a new configuration holds default sections"""
        config = CreveConfig()
        self.assertEqual(config.pipeline, PipelineConfiguration())
        self.assertEqual(config.evaluation, EvaluationConfiguration())
        self.assertEqual(config.scenario, ScenarioConfiguration())

    def test_from_dict_splits_sections(self):
        """Test that root keys go to the pipeline and sections to their classes"""
        config = CreveConfig.from_dict(
            {"zThreshold": 0.02, "evaluation": {"alignment": "none"}, "scenario": {"duration": 20.0}}
        )
        self.assertEqual(config.pipeline.z_threshold, 0.02)
        self.assertIs(config.evaluation.alignment, AlignmentMode.NONE)
        self.assertEqual(config.scenario.duration, 20.0)

    def test_from_dict_none_and_null_sections(self):
        """Test None input and null sections"""
        self.assertEqual(CreveConfig.from_dict(None), CreveConfig())
        self.assertEqual(CreveConfig.from_dict({"evaluation": None, "scenario": None}), CreveConfig())

    def test_copy(self):
        """Test that copy is deep"""
        source = CreveConfig()
        target = CreveConfig.copy(source)
        self.assertEqual(source, target)
        target.pipeline.ransac.seed = 3
        target.scenario.duration = 1.0
        self.assertEqual(source.pipeline.ransac.seed, 0)
        self.assertEqual(source.scenario.duration, 60.0)
        self.assertIsNone(CreveConfig.copy(None))

    def test_to_dict_round_trip(self):
        """Test that to_dict output loads back to an equal configuration"""
        config = CreveConfig.from_dict({"ransac": {"seed": 5}, "scenario": {"rngSeed": 2}})
        self.assertEqual(CreveConfig.from_dict(config.to_dict()), config)

    def test_repr(self):
        """Test __repr__ names every section"""
        text = repr(CreveConfig())
        for name in ("pipeline=", "evaluation=", "scenario="):
            self.assertIn(name, text)


class TestLoadConfig(unittest.TestCase):
    """Test cases for load_config"""

    def setUp(self):
        self.directory = Path(temp_dir())

    def tearDown(self):
        shutil.rmtree(self.directory, ignore_errors=True)

    def write(self, text: str) -> str:
        path = self.directory / "config.json"
        path.write_text(text, encoding="utf-8")
        return str(path)

    def test_defaults_without_path(self):
        """Test that no path gives the defaults"""
        self.assertEqual(load_config(), CreveConfig())

    def test_load_file(self):
        """Test loading the sample configuration file"""
        config = load_config(TEST_CONFIG)
        self.assertEqual(config.pipeline.gamma_max, (1.5, 1.5, 2.5))
        self.assertEqual(config.pipeline.alignment_duration, 5.0)
        self.assertEqual(config.pipeline.ransac.success_prob, 0.999)
        self.assertEqual(config.pipeline.ransac.seed, 11)
        self.assertEqual(config.evaluation.max_dt, 0.02)
        self.assertIs(config.evaluation.alignment, AlignmentMode.SE3)
        self.assertEqual(config.scenario.name, "loop")
        self.assertEqual(config.scenario.n_static_targets, 40)
        self.assertEqual(config.scenario.trajectory["velocity"], (1.0, 0.0, 0.0))
        self.assertEqual(config.scenario.dynamic_objects[0]["presence"], 0.3)

    def test_empty_file(self):
        """Test that an empty file gives the defaults"""
        self.assertEqual(load_config(self.write("  \n")), CreveConfig())

    def test_missing_file(self):
        """Test a path that does not exist"""
        with self.assertRaises(ConfigException) as context:
            load_config(str(self.directory / "absent.json"))
        self.assertEqual(context.exception.error_code, ErrorCode.LOAD_CONFIG_FILE_FAILED)

    def test_invalid_json(self):
        """Test a file that is not JSON"""
        with self.assertRaises(ConfigException) as context:
            load_config(self.write("{gammaMin: 1"))
        self.assertEqual(context.exception.error_code, ErrorCode.CONFIG_PARSE_FAILED)

    def test_json_array(self):
        """Test a JSON document that is not an object"""
        with self.assertRaises(ConfigException) as context:
            load_config(self.write("[1, 2, 3]"))
        self.assertEqual(context.exception.error_code, ErrorCode.CONFIG_PARSE_FAILED)

    def test_unknown_key(self):
        """Test that an unknown key fails the load"""
        with self.assertRaises(ConfigException) as context:
            load_config(self.write('{"evaluation": {"maxDt": 0.1, "metric": "rpe"}}'))
        self.assertEqual(context.exception.error_code, ErrorCode.UNKNOWN_CONFIG_KEY)
        self.assertIn("evaluation.metric", str(context.exception))

    def test_out_of_range_value(self):
        """Test that validation runs after parsing"""
        with self.assertRaises(ConfigException) as context:
            load_config(self.write('{"zThreshold": -1}'))
        self.assertEqual(context.exception.error_code, ErrorCode.CONFIG_VALUE_NOT_VALID)

    def test_cutoff_checked_against_scenario_radar_rate(self):
        """Test that the bias cutoff is validated against the scenario radar rate"""
        with self.assertRaises(ConfigException):
            load_config(self.write('{"biasCutoffHz": 3.0, "scenario": {"radarRate": 5.0}}'))
        self.assertEqual(load_config(self.write('{"biasCutoffHz": 3.0}')).pipeline.bias_cutoff_hz, 3.0)


if __name__ == "__main__":
    unittest.main()
