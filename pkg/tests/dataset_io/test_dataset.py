"""
Tests for the canonical dataset format
"""

import shutil
import unittest
from pathlib import Path

import numpy as np
from numpy.testing import assert_array_equal

from creve.constants import DatasetFileConstants, ErrorCode
from creve.domain import ExtrinsicCalib, ImuSample, PoseSample, RadarScan
from creve.exceptions import DatasetException, InvalidInputException
from creve.geometry.rotation import Rotation
from creve.io.dataset import Dataset, DatasetMetadata, load_dataset, save_dataset
from tests.helpers import planted_scan, random_rotation, temp_dir

CALIB_JSON = '{"format_version": 1, "q_rb": [0, 1, 0, 0], "p_rb": [0.1, 0, -0.05], "gravity": 9.8}\n'
RADAR_HEADER = "scan_id,t,px,py,pz,doppler"
IMU_HEADER = "t,fx,fy,fz,wx,wy,wz"


def sample_dataset(with_truth: bool = True) -> Dataset:
    rng = np.random.default_rng(3)
    radar = tuple(planted_scan((1.0, 0.2, -0.1), n=8, rng=rng, timestamp=0.1 * k) for k in range(4))
    imu = tuple(ImuSample(0.01 * k, rng.normal(size=3), rng.normal(size=3)) for k in range(40))
    truth = ()
    if with_truth:
        truth = tuple(PoseSample(0.02 * k, rng.normal(size=3), random_rotation(rng)) for k in range(20))
    calib = ExtrinsicCalib(Rotation.from_euler(0.1, 0.0, np.pi), np.array([0.1, 0.0, -0.05]), 9.80665)
    return Dataset(radar, imu, truth, calib, DatasetMetadata("unit", "test", 7))


class DatasetFileTestCase(unittest.TestCase):
    """Base class writing dataset files into a temporary directory"""

    def setUp(self):
        self.directory = Path(temp_dir())

    def tearDown(self):
        shutil.rmtree(self.directory, ignore_errors=True)

    def write(self, name: str, text: str) -> None:
        (self.directory / name).write_text(text, encoding="utf-8")

    def write_minimal(self, radar_rows=("0,0.0,1,0,0,-1", "0,0.0,0,1,0,0"), imu_rows=("0.0,0,0,-9.8,0,0,0",)):
        self.write(DatasetFileConstants.RADAR_FILE, "\n".join((RADAR_HEADER, *radar_rows)) + "\n")
        self.write(DatasetFileConstants.IMU_FILE, "\n".join((IMU_HEADER, *imu_rows)) + "\n")
        self.write(DatasetFileConstants.CALIB_FILE, CALIB_JSON)

    def assert_dataset_error(self, code: ErrorCode, line=None) -> DatasetException:
        with self.assertRaises(DatasetException) as context:
            load_dataset(self.directory)
        self.assertEqual(context.exception.error_code, code)
        if line is not None:
            self.assertEqual(context.exception.line, line)
        return context.exception


class TestDataset(unittest.TestCase):
    """Test cases for the Dataset container"""

    def test_has_truth(self):
        """Test has_truth with and without poses"""
        self.assertTrue(sample_dataset().has_truth)
        self.assertFalse(sample_dataset(with_truth=False).has_truth)

    def test_unsorted_streams_rejected(self):
        """Test that records must be in increasing time order"""
        scans = (RadarScan(0.2), RadarScan(0.1))
        with self.assertRaises(InvalidInputException):
            Dataset(scans, ())

    def test_lists_become_tuples(self):
        """Test that record sequences are stored as tuples"""
        dataset = Dataset([RadarScan(0.0)], [ImuSample(0.0, np.zeros(3), np.zeros(3))])
        self.assertIsInstance(dataset.radar, tuple)
        self.assertIsInstance(dataset.imu, tuple)
        self.assertEqual(dataset.truth, ())


class TestSaveAndLoad(DatasetFileTestCase):
    """Test cases for save_dataset and load_dataset"""

    def test_round_trip_is_exact(self):
        """Test that a saved dataset loads back bit-for-bit"""
        original = sample_dataset()
        save_dataset(original, self.directory)
        loaded = load_dataset(self.directory)
        self.assertEqual(loaded, original)
        self.assertEqual(loaded.metadata, DatasetMetadata("unit", "test", 7))

    def test_files_written(self):
        """Test the file layout and comment lines"""
        save_dataset(sample_dataset(), self.directory)
        c = DatasetFileConstants
        for name in (c.RADAR_FILE, c.IMU_FILE, c.GROUND_TRUTH_FILE, c.CALIB_FILE):
            self.assertTrue((self.directory / name).is_file(), name)
        lines = (self.directory / c.RADAR_FILE).read_text(encoding="utf-8").splitlines()
        self.assertEqual(lines[0], c.RADAR_COMMENT)
        self.assertEqual(lines[1], RADAR_HEADER)

    def test_without_truth(self):
        """Test that no ground-truth file is written or required"""
        save_dataset(sample_dataset(with_truth=False), self.directory)
        self.assertFalse((self.directory / DatasetFileConstants.GROUND_TRUTH_FILE).exists())
        self.assertFalse(load_dataset(self.directory).has_truth)

    def test_empty_scans_dropped(self):
        """Test that a scan without targets has no rows and does not come back"""
        rng = np.random.default_rng(0)
        scans = (
            planted_scan((1.0, 0.0, 0.0), n=3, rng=rng, timestamp=0.0),
            RadarScan(0.1),
            planted_scan((1.0, 0.0, 0.0), n=3, rng=rng, timestamp=0.2),
        )
        save_dataset(Dataset(scans, ()), self.directory)
        loaded = load_dataset(self.directory)
        self.assertEqual([s.timestamp for s in loaded.radar], [0.0, 0.2])
        self.assertEqual(loaded.radar[1], scans[2])

    def test_creates_directory(self):
        """Test saving into a directory that does not exist yet"""
        target = self.directory / "nested" / "dataset"
        save_dataset(sample_dataset(), target)
        self.assertTrue((target / DatasetFileConstants.CALIB_FILE).is_file())

    def test_minimal_files(self):
        """Test loading hand-written files"""
        self.write_minimal()
        dataset = load_dataset(self.directory)
        self.assertEqual(len(dataset.radar), 1)
        assert_array_equal(dataset.radar[0].dopplers(), [-1.0, 0.0])
        self.assertEqual(dataset.calib.gravity, 9.8)
        self.assertEqual(dataset.calib.rot_radar_to_body, Rotation([0.0, 1.0, 0.0, 0.0]))
        self.assertEqual(dataset.metadata, DatasetMetadata())

    def test_comment_and_blank_lines_ignored(self):
        """Test that comment and blank lines are skipped"""
        self.write_minimal(radar_rows=("# first scan", "", "0,0.0,1,0,0,-1"))
        self.assertEqual(len(load_dataset(self.directory).radar[0]), 1)

    def test_default_gravity(self):
        """Test that a calibration without gravity uses the given default"""
        self.write_minimal()
        self.write(DatasetFileConstants.CALIB_FILE, '{"format_version": 1, "q_rb": [1, 0, 0, 0], "p_rb": [0, 0, 0]}')
        self.assertEqual(load_dataset(self.directory, default_gravity=9.7).calib.gravity, 9.7)


class TestLoadErrors(DatasetFileTestCase):
    """Test cases for rejected dataset files"""

    def test_missing_directory(self):
        """Test loading from a directory that does not exist"""
        with self.assertRaises(DatasetException) as context:
            load_dataset(self.directory / "absent")
        self.assertEqual(context.exception.error_code, ErrorCode.MISSING_FILE)

    def test_missing_imu_file(self):
        """Test that the IMU file is required"""
        self.write_minimal()
        (self.directory / DatasetFileConstants.IMU_FILE).unlink()
        error = self.assert_dataset_error(ErrorCode.MISSING_FILE)
        self.assertEqual(error.file_name, DatasetFileConstants.IMU_FILE)

    def test_wrong_header(self):
        """Test a radar file with a different header"""
        self.write_minimal()
        self.write(DatasetFileConstants.RADAR_FILE, "id,t,x,y,z,v\n0,0,1,0,0,0\n")
        self.assert_dataset_error(ErrorCode.SCHEMA_MISMATCH, line=1)

    def test_non_numeric_value(self):
        """Test that a non-numeric cell names its line"""
        self.write_minimal(radar_rows=("0,0.0,1,0,0,-1", "0,0.0,abc,0,0,-1"))
        error = self.assert_dataset_error(ErrorCode.MALFORMED_ROW, line=3)
        self.assertEqual(error.file_name, DatasetFileConstants.RADAR_FILE)
        self.assertIn("radar.csv:3", str(error))

    def test_wrong_column_count(self):
        """Test a row with a missing column"""
        self.write_minimal(imu_rows=("0.0,0,0,-9.8,0,0,0", "0.01,0,0,-9.8,0,0"))
        self.assert_dataset_error(ErrorCode.MALFORMED_ROW, line=3)

    def test_non_finite_value(self):
        """Test that NaN is rejected"""
        self.write_minimal(imu_rows=("0.0,0,0,nan,0,0,0",))
        self.assert_dataset_error(ErrorCode.MALFORMED_ROW, line=2)

    def test_non_monotonic_imu(self):
        """Test IMU timestamps that go backwards"""
        self.write_minimal(imu_rows=("0.0,0,0,-9.8,0,0,0", "0.02,0,0,-9.8,0,0,0", "0.01,0,0,-9.8,0,0,0"))
        self.assert_dataset_error(ErrorCode.NON_MONOTONIC_TIMESTAMP, line=4)

    def test_non_monotonic_scans(self):
        """Test radar scans out of time order"""
        self.write_minimal(radar_rows=("0,0.1,1,0,0,-1", "1,0.05,1,0,0,-1"))
        self.assert_dataset_error(ErrorCode.NON_MONOTONIC_TIMESTAMP, line=3)

    def test_scan_with_several_timestamps(self):
        """Test one scan_id with differing timestamps"""
        self.write_minimal(radar_rows=("0,0.0,1,0,0,-1", "0,0.01,0,1,0,0"))
        self.assert_dataset_error(ErrorCode.MALFORMED_ROW, line=3)

    def test_non_contiguous_scan_rows(self):
        """Test a scan_id that reappears after another scan"""
        self.write_minimal(radar_rows=("0,0.0,1,0,0,-1", "1,0.1,1,0,0,-1", "0,0.0,0,1,0,0"))
        self.assert_dataset_error(ErrorCode.MALFORMED_ROW, line=4)

    def test_fractional_scan_id(self):
        """Test a scan_id that is not an integer"""
        self.write_minimal(radar_rows=("0.5,0.0,1,0,0,-1",))
        self.assert_dataset_error(ErrorCode.MALFORMED_ROW, line=2)

    def test_zero_range_target(self):
        """Test a target at the sensor origin"""
        self.write_minimal(radar_rows=("0,0.0,1,0,0,-1", "0,0.0,0,0,0,0"))
        self.assert_dataset_error(ErrorCode.MALFORMED_ROW, line=3)

    def test_unknown_calib_key(self):
        """Test an unexpected key in calib.json"""
        self.write_minimal()
        self.write(DatasetFileConstants.CALIB_FILE, CALIB_JSON.replace("{", '{"scale": 2, ', 1))
        error = self.assert_dataset_error(ErrorCode.SCHEMA_MISMATCH)
        self.assertIn("scale", str(error))

    def test_format_version(self):
        """Test an unsupported format version"""
        self.write_minimal()
        self.write(DatasetFileConstants.CALIB_FILE, CALIB_JSON.replace('"format_version": 1', '"format_version": 2'))
        self.assert_dataset_error(ErrorCode.SCHEMA_MISMATCH)

    def test_bad_quaternion(self):
        """Test a quaternion with the wrong number of components"""
        self.write_minimal()
        self.write(DatasetFileConstants.CALIB_FILE, CALIB_JSON.replace("[0, 1, 0, 0]", "[0, 1, 0]"))
        self.assert_dataset_error(ErrorCode.SCHEMA_MISMATCH)

    def test_calib_not_json(self):
        """Test a calibration file that is not JSON"""
        self.write_minimal()
        self.write(DatasetFileConstants.CALIB_FILE, "q_rb: [1, 0, 0, 0]\n")
        self.assert_dataset_error(ErrorCode.SCHEMA_MISMATCH)

    def test_unknown_metadata_key(self):
        """Test metadata holding an unexpected field"""
        self.write_minimal()
        self.write(DatasetFileConstants.CALIB_FILE, CALIB_JSON.replace("}", ', "metadata": {"owner": "x"}}'))
        self.assert_dataset_error(ErrorCode.SCHEMA_MISMATCH)


if __name__ == "__main__":
    unittest.main()
