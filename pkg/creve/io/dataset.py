"""
CREVE - Dataset Format

The canonical on-disk dataset: a directory holding ``radar.csv``,
``imu.csv``, ``calib.json`` and optionally ``ground_truth.csv``. Real
recordings are converted into this layout outside the library; the
simulator writes it directly.
"""

import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional, Sequence, Tuple

import numpy as np
import pandas as pd

from creve.constants import DatasetFileConstants, ErrorCode, PipelineDefaults
from creve.domain import ExtrinsicCalib, ImuSample, PoseSample, RadarScan
from creve.exceptions import CreveException, DatasetException, InvalidInputException
from creve.geometry.rotation import Rotation
from creve.util.csv_util import CsvUtil
from creve.util.file_util import FileUtil, PathLike
from creve.util.json_util import JSONUtil

logger = logging.getLogger(__name__)

CALIB_KEYS = ("format_version", "q_rb", "p_rb", "gravity", "metadata")
METADATA_KEYS = ("name", "source", "seed")


@dataclass(frozen=True)
class DatasetMetadata:
    """
    Descriptive fields stored in ``calib.json``.
    """

    name: str = ""
    source: str = ""
    seed: Optional[int] = None

    def to_dict(self) -> dict:
        return {"name": self.name, "source": self.source, "seed": self.seed}


def _require_sorted(timestamps: Sequence[float], what: str) -> None:
    if np.any(np.diff(np.asarray(timestamps, dtype=np.float64)) <= 0.0):
        raise InvalidInputException(f"{what} timestamps must strictly increase.")


@dataclass(frozen=True, eq=False)
class Dataset:
    """
    Radar scans, IMU samples, optional ground-truth poses and extrinsics of one recording.
    """

    radar: Tuple[RadarScan, ...]
    imu: Tuple[ImuSample, ...]
    truth: Tuple[PoseSample, ...] = ()
    calib: ExtrinsicCalib = field(default_factory=ExtrinsicCalib)
    metadata: DatasetMetadata = field(default_factory=DatasetMetadata)

    def __post_init__(self):
        for name in ("radar", "imu", "truth"):
            records = tuple(getattr(self, name) or ())
            _require_sorted([r.timestamp for r in records], name)
            object.__setattr__(self, name, records)

    @property
    def has_truth(self) -> bool:
        return len(self.truth) > 0

    def __eq__(self, other) -> bool:
        if not isinstance(other, Dataset):
            return NotImplemented
        return (
            self.radar == other.radar
            and self.imu == other.imu
            and self.truth == other.truth
            and self.calib == other.calib
            and self.metadata == other.metadata
        )


def _calib_to_dict(calib: ExtrinsicCalib, metadata: DatasetMetadata) -> dict:
    return {
        "format_version": DatasetFileConstants.FORMAT_VERSION,
        "q_rb": calib.rot_radar_to_body.as_wxyz().tolist(),
        "p_rb": calib.lever_arm.tolist(),
        "gravity": calib.gravity,
        "metadata": metadata.to_dict(),
    }


def save_dataset(dataset: Dataset, path: PathLike) -> None:
    """
    Write a dataset in the canonical format.

    Raises:
        DatasetException: If a file cannot be written.
    """
    directory = FileUtil.ensure_dir(path)
    c = DatasetFileConstants

    scan_ids = np.concatenate([np.full(len(s), k, dtype=np.int64) for k, s in enumerate(dataset.radar)] or [[]])
    times = np.concatenate([np.full(len(s), s.timestamp) for s in dataset.radar] or [[]])
    positions = np.vstack([s.positions() for s in dataset.radar] or [np.zeros((0, 3))])
    dopplers = np.concatenate([s.dopplers() for s in dataset.radar] or [[]])
    radar = pd.DataFrame({"scan_id": scan_ids.astype(np.int64), "t": times.astype(np.float64)})
    for i, axis in enumerate(("px", "py", "pz")):
        radar[axis] = positions[:, i]
    radar["doppler"] = dopplers.astype(np.float64)
    CsvUtil.write_table(directory / c.RADAR_FILE, radar, c.RADAR_COMMENT)

    imu = pd.DataFrame(
        np.array(
            [[s.timestamp, *s.specific_force, *s.angular_rate] for s in dataset.imu], dtype=np.float64
        ).reshape(-1, len(c.IMU_COLUMNS)),
        columns=list(c.IMU_COLUMNS),
    )
    CsvUtil.write_table(directory / c.IMU_FILE, imu, c.IMU_COMMENT)

    if dataset.has_truth:
        truth = pd.DataFrame(
            np.array([[p.timestamp, *p.position, *p.attitude.as_wxyz()] for p in dataset.truth], dtype=np.float64),
            columns=list(c.GROUND_TRUTH_COLUMNS),
        )
        CsvUtil.write_table(directory / c.GROUND_TRUTH_FILE, truth, c.GROUND_TRUTH_COMMENT)

    FileUtil.write_file(
        directory / c.CALIB_FILE, JSONUtil.to_json_string(_calib_to_dict(dataset.calib, dataset.metadata), True) + "\n"
    )
    logger.info(
        "Saved dataset to %s: %d scans, %d IMU samples, %d poses",
        directory,
        len(dataset.radar),
        len(dataset.imu),
        len(dataset.truth),
    )


def _schema_error(file_name: str, message: str) -> DatasetException:
    return DatasetException(ErrorCode.SCHEMA_MISMATCH, f"{file_name}: {message}", file_name=file_name)


def _vector(data: dict, key: str, size: int, file_name: str) -> np.ndarray:
    value = data.get(key)
    try:
        vector = np.asarray(value, dtype=np.float64).reshape(-1)
    except (TypeError, ValueError):
        vector = np.zeros(0)
    if vector.shape != (size,) or not np.all(np.isfinite(vector)):
        raise _schema_error(file_name, f"'{key}' must be {size} finite numbers, got {value!r}")
    return vector


def _load_calib(path: Path, default_gravity: float) -> Tuple[ExtrinsicCalib, DatasetMetadata]:
    name = path.name
    try:
        data = JSONUtil.parse_map(FileUtil.read_file(path))
    except ValueError as e:
        raise _schema_error(name, str(e)) from e
    unknown = sorted(set(data) - set(CALIB_KEYS))
    if unknown:
        raise _schema_error(name, f"unknown key '{unknown[0]}'")
    if data.get("format_version") != DatasetFileConstants.FORMAT_VERSION:
        raise _schema_error(
            name, f"format_version must be {DatasetFileConstants.FORMAT_VERSION}, got {data.get('format_version')!r}"
        )
    gravity = data.get("gravity", default_gravity)
    try:
        calib = ExtrinsicCalib(
            Rotation(_vector(data, "q_rb", 4, name)), _vector(data, "p_rb", 3, name), float(gravity)
        )
    except (InvalidInputException, TypeError, ValueError) as e:
        raise _schema_error(name, str(e)) from e

    meta = data.get("metadata") or {}
    if not isinstance(meta, dict) or set(meta) - set(METADATA_KEYS):
        raise _schema_error(name, f"'metadata' may only hold {', '.join(METADATA_KEYS)}")
    seed = meta.get("seed")
    metadata = DatasetMetadata(
        str(meta.get("name", "")), str(meta.get("source", "")), None if seed is None else int(seed)
    )
    return calib, metadata


def _load_radar(path: Path) -> Tuple[RadarScan, ...]:
    name = path.name
    frame, lines = CsvUtil.read_table(path, DatasetFileConstants.RADAR_COLUMNS)
    if frame.empty:
        return ()
    ids = frame["scan_id"].to_numpy()
    if np.any(ids != np.round(ids)):
        index = int(np.flatnonzero(ids != np.round(ids))[0])
        raise DatasetException(
            ErrorCode.MALFORMED_ROW, f"{name}:{lines[index]}: scan_id must be an integer", name, int(lines[index])
        )
    times = frame["t"].to_numpy()
    starts = np.flatnonzero(np.r_[True, ids[1:] != ids[:-1]])
    ends = np.r_[starts[1:], len(ids)]

    for start, end in zip(starts, ends):
        mismatch = np.flatnonzero(times[start:end] != times[start])
        if len(mismatch):
            line = int(lines[start + mismatch[0]])
            raise DatasetException(
                ErrorCode.MALFORMED_ROW, f"{name}:{line}: scan {int(ids[start])} has several timestamps", name, line
            )
    if len(np.unique(ids[starts])) != len(starts):
        seen, line = set(), None
        for start in starts:
            if ids[start] in seen:
                line = int(lines[start])
                break
            seen.add(ids[start])
        raise DatasetException(ErrorCode.MALFORMED_ROW, f"{name}:{line}: scan_id rows are not contiguous", name, line)
    CsvUtil.require_increasing(times[starts], lines[starts], name)

    positions = frame[["px", "py", "pz"]].to_numpy()
    dopplers = frame["doppler"].to_numpy()
    scans = []
    for start, end in zip(starts, ends):
        try:
            scans.append(RadarScan.from_arrays(times[start], positions[start:end], dopplers[start:end]))
        except InvalidInputException as e:
            ranges = np.linalg.norm(positions[start:end], axis=1)
            line = int(lines[start + int(np.argmin(ranges))])
            raise DatasetException(ErrorCode.MALFORMED_ROW, f"{name}:{line}: {e.error_message}", name, line) from e
    return tuple(scans)


def _load_imu(path: Path) -> Tuple[ImuSample, ...]:
    frame, lines = CsvUtil.read_table(path, DatasetFileConstants.IMU_COLUMNS)
    values = frame.to_numpy()
    CsvUtil.require_increasing(values[:, 0], lines, path.name)
    return tuple(ImuSample(row[0], row[1:4], row[4:7]) for row in values)


def _load_truth(path: Path) -> Tuple[PoseSample, ...]:
    name = path.name
    frame, lines = CsvUtil.read_table(path, DatasetFileConstants.GROUND_TRUTH_COLUMNS)
    values = frame.to_numpy()
    CsvUtil.require_increasing(values[:, 0], lines, name)
    poses = []
    for row, line in zip(values, lines):
        try:
            poses.append(PoseSample(row[0], row[1:4], Rotation(row[4:8])))
        except InvalidInputException as e:
            raise DatasetException(ErrorCode.MALFORMED_ROW, f"{name}:{line}: {e.error_message}", name, int(line)) from e
    return tuple(poses)


def load_dataset(path: PathLike, default_gravity: float = PipelineDefaults.GRAVITY) -> Dataset:
    """
    Load a dataset in the canonical format.

    Args:
        path: Dataset directory.
        default_gravity: Gravity (m/s²) used when ``calib.json`` has none.

    Returns:
        The dataset. Every row of every file becomes part of it.

    Raises:
        DatasetException: For a missing file, a malformed row, a
            non-monotonic timestamp or a schema violation, naming the file
            and, for row problems, the line.
    """
    directory = Path(path)
    c = DatasetFileConstants
    if not directory.is_dir():
        raise DatasetException(ErrorCode.MISSING_FILE, f"Dataset directory does not exist: {directory}")
    for required in (c.RADAR_FILE, c.IMU_FILE, c.CALIB_FILE):
        FileUtil.require_file(directory / required)

    calib, metadata = _load_calib(directory / c.CALIB_FILE, default_gravity)
    radar = _load_radar(directory / c.RADAR_FILE)
    imu = _load_imu(directory / c.IMU_FILE)
    truth_path = directory / c.GROUND_TRUTH_FILE
    truth = _load_truth(truth_path) if truth_path.is_file() else ()

    logger.info(
        "Loaded dataset %s: %d scans (%d targets), %d IMU samples, %d poses",
        directory,
        len(radar),
        sum(len(s) for s in radar),
        len(imu),
        len(truth),
    )
    try:
        return Dataset(radar, imu, truth, calib, metadata)
    except CreveException as e:
        raise DatasetException(ErrorCode.SCHEMA_MISMATCH, str(e)) from e
