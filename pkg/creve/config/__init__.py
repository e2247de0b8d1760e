"""
CREVE - Configuration Module

This module contains the configuration classes of the estimators, the
evaluation harness and the scenario generator.
"""

from creve.config.creve_config import CreveConfig, load_config
from creve.config.evaluation_configuration import EvaluationConfiguration
from creve.config.pipeline_configuration import PipelineConfiguration
from creve.config.ransac_configuration import RansacConfiguration
from creve.config.scenario_configuration import ScenarioConfiguration

__all__ = [
    "CreveConfig",
    "EvaluationConfiguration",
    "PipelineConfiguration",
    "RansacConfiguration",
    "ScenarioConfiguration",
    "load_config",
]
