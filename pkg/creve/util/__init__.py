"""
CREVE - Utility Module

This module contains utility classes for string manipulation, JSON parsing,
file and CSV operations, and configuration validation.
"""

from creve.util.config_reader import ConfigReader
from creve.util.csv_util import CsvUtil
from creve.util.file_util import FileUtil
from creve.util.json_util import JSONUtil
from creve.util.string_util import StringUtil
from creve.util.validator_util import ValidatorUtil

__all__ = [
    "StringUtil",
    "JSONUtil",
    "FileUtil",
    "CsvUtil",
    "ValidatorUtil",
    "ConfigReader",
]
