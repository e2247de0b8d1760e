"""
CREVE - Config Reader

This module provides utilities for reading configuration files.
"""

import os

from creve.constants import ErrorCode
from creve.exceptions import ConfigException


class ConfigReader:
    """
    Utility class for reading configuration files.
    """

    @staticmethod
    def get_config_as_string(config_path: str) -> str:
        """
        Load configuration file content as string.

        Args:
            config_path: Config file path. ``~`` is expanded; relative paths
                resolve against the current working directory.

        Returns:
            Configuration file content as string.

        Raises:
            ConfigException: If config file doesn't exist or read fails.
        """
        expanded_config_path = os.path.expanduser(config_path)
        if not os.path.isfile(expanded_config_path):
            raise ConfigException(
                ErrorCode.LOAD_CONFIG_FILE_FAILED,
                f"Config file not found at path: {expanded_config_path}.",
            )
        return ConfigReader._load_file_as_string(expanded_config_path)

    @staticmethod
    def _load_file_as_string(file_path: str) -> str:
        """
        Load file content as string.

        Args:
            file_path: The file path.

        Returns:
            File content as string.

        Raises:
            ConfigException: If read fails.
        """
        try:
            with open(file_path, encoding="utf-8") as f:
                return f.read()
        except (OSError, UnicodeDecodeError) as e:
            raise ConfigException(
                ErrorCode.LOAD_CONFIG_FILE_FAILED, f"Failed to read config file {file_path}: {e}"
            ) from e
