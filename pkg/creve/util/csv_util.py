"""
CREVE - CSV Utility

This module reads and writes the comma-separated tables of the dataset and
result formats: one optional ``#`` comment line, a mandatory header row, and
numeric rows written with 17 significant digits.
"""

import io
import logging
from pathlib import Path
from typing import Sequence, Tuple

import numpy as np
import pandas as pd

from creve.constants import DatasetFileConstants, ErrorCode
from creve.exceptions import DatasetException
from creve.util.file_util import FileUtil, PathLike

logger = logging.getLogger(__name__)


class CsvUtil:
    """
    Utility class for numeric CSV tables.
    """

    @staticmethod
    def write_table(file_path: PathLike, frame: pd.DataFrame, comment: str = "") -> None:
        """
        Write a data frame as CSV.

        Float columns use ``%.17g`` so that every float64 survives the round
        trip; integer columns are written as integers.

        Args:
            file_path: Output path.
            frame: The table, columns in output order.
            comment: Optional first line, starting with ``#``.

        Raises:
            DatasetException: If the file cannot be written.
        """
        body = frame.to_csv(index=False, float_format=DatasetFileConstants.FLOAT_FORMAT, lineterminator="\n")
        FileUtil.write_file(file_path, (comment + "\n" if comment else "") + body)

    @staticmethod
    def read_table(file_path: PathLike, columns: Sequence[str]) -> Tuple[pd.DataFrame, np.ndarray]:
        """
        Read a numeric CSV table.

        Blank lines and lines starting with ``#`` are ignored. The first
        remaining line must be the header.

        Args:
            file_path: Path of the table.
            columns: Expected header.

        Returns:
            (float64 data frame, 1-based file line number of every row).

        Raises:
            DatasetException: ``MISSING_FILE`` if the file does not exist;
                ``SCHEMA_MISMATCH`` if the header differs; ``MALFORMED_ROW``
                with the line number for a wrong column count or a
                non-numeric or non-finite value.
        """
        name = Path(file_path).name
        text = FileUtil.read_file(file_path)
        numbered = [
            (number, line)
            for number, line in enumerate(text.splitlines(), start=1)
            if line.strip() and not line.lstrip().startswith("#")
        ]
        if not numbered:
            raise DatasetException(ErrorCode.SCHEMA_MISMATCH, f"{name} has no header row.", file_name=name)

        header_line, header = numbered[0]
        found = tuple(cell.strip() for cell in header.split(","))
        if found != tuple(columns):
            raise DatasetException(
                ErrorCode.SCHEMA_MISMATCH,
                f"{name}:{header_line}: expected header {','.join(columns)}, got {header}",
                file_name=name,
                line=header_line,
            )

        rows = numbered[1:]
        line_numbers = np.array([number for number, _ in rows], dtype=np.int64)
        for number, line in rows:
            count = line.count(",") + 1
            if count != len(columns):
                raise DatasetException(
                    ErrorCode.MALFORMED_ROW,
                    f"{name}:{number}: expected {len(columns)} columns, got {count}",
                    file_name=name,
                    line=number,
                )
        if not rows:
            return pd.DataFrame({c: pd.Series(dtype=np.float64) for c in columns}), line_numbers

        body = "\n".join(line for _, line in rows)
        cells = pd.read_csv(io.StringIO(body), header=None, names=list(columns), dtype=str, keep_default_na=False)
        numeric = cells.apply(pd.to_numeric, errors="coerce").to_numpy(dtype=np.float64)
        bad = ~np.all(np.isfinite(numeric), axis=1)
        if np.any(bad):
            index = int(np.flatnonzero(bad)[0])
            raise DatasetException(
                ErrorCode.MALFORMED_ROW,
                f"{name}:{line_numbers[index]}: non-numeric or non-finite value in {rows[index][1]!r}",
                file_name=name,
                line=int(line_numbers[index]),
            )

        frame = pd.read_csv(
            io.StringIO(body), header=None, names=list(columns), dtype=np.float64, float_precision="round_trip"
        )
        logger.debug("Read %d rows from %s", len(frame), file_path)
        return frame, line_numbers

    @staticmethod
    def require_increasing(
        timestamps: np.ndarray, line_numbers: np.ndarray, file_name: str, strict: bool = True
    ) -> None:
        """
        Check that timestamps increase from row to row.

        Raises:
            DatasetException: ``NON_MONOTONIC_TIMESTAMP`` naming the first offending line.
        """
        steps = np.diff(np.asarray(timestamps, dtype=np.float64))
        bad = steps <= 0.0 if strict else steps < 0.0
        if np.any(bad):
            index = int(np.flatnonzero(bad)[0]) + 1
            line = int(line_numbers[index])
            raise DatasetException(
                ErrorCode.NON_MONOTONIC_TIMESTAMP,
                f"{file_name}:{line}: timestamp {timestamps[index]!r} does not increase "
                f"(previous {timestamps[index - 1]!r})",
                file_name=file_name,
                line=line,
            )
