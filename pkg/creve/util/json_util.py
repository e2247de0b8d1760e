"""
CREVE - JSON Utility

This module provides JSON serialization and deserialization utilities.
"""

import json
from typing import Any

import numpy as np


def _to_builtin(obj: Any) -> Any:
    if isinstance(obj, np.ndarray):
        return obj.tolist()
    if isinstance(obj, np.generic):
        return obj.item()
    raise TypeError(f"Object of type {type(obj).__name__} is not JSON serializable")


class JSONUtil:
    """
    Utility class for JSON operations.
    """

    @staticmethod
    def to_json_string(obj: Any, pretty: bool = False) -> str:
        """
        Convert an object to JSON string.

        Keys are sorted so that equal objects always serialize to identical
        text. numpy arrays and scalars are converted to plain lists and numbers.

        Args:
            obj: Object to convert.
            pretty: Indent the output by two spaces.

        Returns:
            JSON string representation.
        """
        return json.dumps(obj, sort_keys=True, indent=2 if pretty else None, default=_to_builtin, allow_nan=True)

    @staticmethod
    def parse_map(json_string: str) -> dict[str, Any]:
        """
        Parse JSON string to a map.

        Args:
            json_string: JSON string to parse.

        Returns:
            Parsed map.

        Raises:
            ValueError: If JSON parsing fails or the document is not an object.
        """
        try:
            data = json.loads(json_string)
        except json.JSONDecodeError as e:
            raise ValueError(f"Failed to parse JSON map: {e}") from e
        if not isinstance(data, dict):
            raise ValueError("Failed to parse JSON map: JSON is not an object")
        return data
