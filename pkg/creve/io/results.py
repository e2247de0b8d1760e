"""
CREVE - Result Files

Estimates CSV, evaluation report JSON, aligned-trajectory CSV, method
comparison JSON and the run manifest written into every output directory.
"""

import logging
import platform
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional, Sequence, Tuple

import numpy as np
import pandas as pd

from creve.constants import ErrorCode, ResultFileConstants
from creve.estimation.pipeline import VelocityEstimate
from creve.exceptions import DatasetException
from creve.metrics.evaluation import AteReport
from creve.util.csv_util import CsvUtil
from creve.util.file_util import FileUtil, PathLike
from creve.util.json_util import JSONUtil

logger = logging.getLogger(__name__)

_FLAG_COLUMNS = ("constrained", "zero_velocity", "degenerate")


def write_estimates(estimates: Sequence[VelocityEstimate], path: PathLike) -> None:
    """
    Write estimates as CSV, one row per epoch; flags are written as 0/1.

    Raises:
        DatasetException: If the file cannot be written.
    """
    rows = np.array(
        [
            [
                e.timestamp,
                *e.velocity_radar,
                *e.velocity_nav,
                e.inlier_ratio,
                *e.gamma_used,
                e.constrained,
                e.zero_velocity,
                *e.accel_radar,
                *e.bias_accel,
                e.degenerate,
            ]
            for e in estimates
        ],
        dtype=np.float64,
    ).reshape(-1, len(ResultFileConstants.ESTIMATE_COLUMNS))
    frame = pd.DataFrame(rows, columns=list(ResultFileConstants.ESTIMATE_COLUMNS))
    for column in _FLAG_COLUMNS:
        frame[column] = frame[column].astype(np.int64)
    CsvUtil.write_table(path, frame)
    logger.info("Wrote %d estimates to %s", len(frame), path)


def read_estimates(path: PathLike) -> Tuple[VelocityEstimate, ...]:
    """
    Read an estimates CSV. The per-epoch constraint box is not stored and comes back as ``None``.

    Raises:
        DatasetException: For a missing file, a malformed row or non-monotonic timestamps.
    """
    frame, lines = CsvUtil.read_table(path, ResultFileConstants.ESTIMATE_COLUMNS)
    CsvUtil.require_increasing(frame["t"].to_numpy(), lines, Path(path).name)

    def vec(row, *names):
        return np.array([row[n] for n in names])

    estimates = []
    for _, row in frame.iterrows():
        estimates.append(
            VelocityEstimate(
                timestamp=float(row["t"]),
                velocity_radar=vec(row, "vx_r", "vy_r", "vz_r"),
                velocity_nav=vec(row, "vx_n", "vy_n", "vz_n"),
                inlier_ratio=float(row["inlier_ratio"]),
                gamma_used=vec(row, "gamma_x", "gamma_y", "gamma_z"),
                constrained=bool(row["constrained"]),
                zero_velocity=bool(row["zero_velocity"]),
                accel_radar=vec(row, "ax_r", "ay_r", "az_r"),
                degenerate=bool(row["degenerate"]),
                bias_accel=vec(row, "bias_ax", "bias_ay", "bias_az"),
            )
        )
    logger.info("Read %d estimates from %s", len(estimates), path)
    return tuple(estimates)


def write_json(data: dict, path: PathLike) -> None:
    """Write a mapping as indented JSON with sorted keys."""
    FileUtil.write_file(path, JSONUtil.to_json_string(data, pretty=True) + "\n")


def read_json(path: PathLike) -> dict:
    name = Path(path).name
    try:
        return JSONUtil.parse_map(FileUtil.read_file(path))
    except ValueError as e:
        raise DatasetException(ErrorCode.SCHEMA_MISMATCH, f"{name}: {e}", file_name=name) from e


def write_report(report, path: PathLike) -> None:
    """
    Write an evaluation report (an ``EvaluationReport`` or its dictionary) as JSON.
    """
    write_json(report if isinstance(report, dict) else report.to_dict(), path)
    logger.info("Wrote report to %s", path)


def read_report(path: PathLike) -> dict:
    return read_json(path)


def write_aligned_trajectory(report: AteReport, path: PathLike) -> None:
    """
    Write the aligned estimate next to the matched ground truth, one row per matched epoch.
    """
    frame = pd.DataFrame(
        np.column_stack([report.timestamps, report.aligned, report.reference, report.per_timestamp_errors]).reshape(
            -1, len(ResultFileConstants.ALIGNED_TRAJECTORY_COLUMNS)
        ),
        columns=list(ResultFileConstants.ALIGNED_TRAJECTORY_COLUMNS),
    )
    CsvUtil.write_table(path, frame)


def build_version() -> str:
    """Package and interpreter version, e.g. ``creve/0.1.0 Python/3.11.4``."""
    from creve import __version__

    python_version = f"{sys.version_info.major}.{sys.version_info.minor}.{sys.version_info.micro}"
    return f"creve/{__version__} Python/{python_version} ({platform.system()}; {platform.machine()})"


@dataclass(frozen=True)
class RunManifest:
    """
    Provenance of one CLI invocation: command, configuration snapshot,
    input dataset, version, seed and ``step`` timing.
    """

    command: str
    config: dict = field(default_factory=dict)
    dataset_path: Optional[str] = None
    version: str = field(default_factory=build_version)
    seed: Optional[int] = None
    timing: Optional[dict] = None
    extra: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        data = {
            "command": self.command,
            "config": self.config,
            "dataset_path": self.dataset_path,
            "version": self.version,
            "seed": self.seed,
            "timing": self.timing,
        }
        data.update(self.extra)
        return data


def write_manifest(manifest: RunManifest, out_dir: PathLike) -> Path:
    """
    Write ``manifest.json`` into an output directory, replacing any previous one.

    Returns:
        The manifest path.
    """
    path = Path(out_dir) / ResultFileConstants.MANIFEST_FILE
    write_json(manifest.to_dict(), path)
    return path
