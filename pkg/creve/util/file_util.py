"""
CREVE - File Utility

This module provides file reading and writing utilities.
"""

import logging
from pathlib import Path
from typing import Union

from creve.constants import ErrorCode
from creve.exceptions import DatasetException

logger = logging.getLogger(__name__)

PathLike = Union[str, Path]


class FileUtil:
    """
    Utility class for file operations.
    """

    @staticmethod
    def require_file(file_path: PathLike) -> Path:
        """
        Check that a file exists.

        Args:
            file_path: Path to the file.

        Returns:
            The path as a ``Path``.

        Raises:
            DatasetException: If the file does not exist.
        """
        path = Path(file_path)
        if not path.is_file():
            raise DatasetException(ErrorCode.MISSING_FILE, f"File does not exist: {path}", file_name=path.name)
        return path

    @staticmethod
    def read_file(file_path: PathLike) -> str:
        """
        Read file content as string.

        Args:
            file_path: Path to the file.

        Returns:
            File content as string.

        Raises:
            DatasetException: If the file doesn't exist or cannot be read.
        """
        path = FileUtil.require_file(file_path)
        try:
            return path.read_text(encoding="utf-8")
        except OSError as e:
            logger.error(f"Error reading file: {e}")
            raise DatasetException(ErrorCode.MISSING_FILE, f"Cannot read {path}: {e}", file_name=path.name) from e

    @staticmethod
    def ensure_dir(dir_path: PathLike) -> Path:
        """
        Create a directory and its parents if they don't exist.

        Raises:
            DatasetException: If the directory cannot be created.
        """
        path = Path(dir_path)
        try:
            path.mkdir(parents=True, exist_ok=True)
        except OSError as e:
            raise DatasetException(ErrorCode.WRITE_FAILED, f"Cannot create directory {path}: {e}") from e
        return path

    @staticmethod
    def write_file(file_path: PathLike, content: str) -> None:
        """
        Write content to file, creating parent directories as needed.

        Args:
            file_path: Path to the file.
            content: Content to write.

        Raises:
            DatasetException: If the file cannot be written.
        """
        path = Path(file_path)
        FileUtil.ensure_dir(path.parent)
        try:
            with open(path, "w", encoding="utf-8", newline="\n") as f:
                f.write(content)
        except OSError as e:
            logger.error(f"Error writing file: {e}")
            raise DatasetException(ErrorCode.WRITE_FAILED, f"Cannot write {path}: {e}", file_name=path.name) from e
