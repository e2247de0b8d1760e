"""
Unit tests for CREVE domain records
"""

import dataclasses

import numpy as np
import pytest
from numpy.testing import assert_allclose, assert_array_equal

from creve import ExtrinsicCalib, ImuSample, InvalidInputException, PoseSample, RadarScan, RadarTarget, Rotation


class TestRadarTarget:
    """Test cases for RadarTarget"""

    def test_direction_is_unit(self):
        target = RadarTarget([3.0, 4.0, 0.0], -1.0)
        assert_allclose(target.direction, [0.6, 0.8, 0.0])

    def test_zero_range_rejected(self):
        with pytest.raises(InvalidInputException):
            RadarTarget([0.0, 0.0, 0.0], 1.0)

    def test_non_finite_rejected(self):
        with pytest.raises(InvalidInputException):
            RadarTarget([1.0, 0.0, 0.0], float("nan"))
        with pytest.raises(InvalidInputException):
            RadarTarget([1.0, np.inf, 0.0], 0.0)

    def test_immutable(self):
        target = RadarTarget([1.0, 0.0, 0.0], 0.5)
        with pytest.raises(dataclasses.FrozenInstanceError):
            target.doppler = 1.0
        with pytest.raises(ValueError):
            target.position[0] = 2.0

    def test_equality(self):
        assert RadarTarget([1.0, 2.0, 3.0], 0.5) == RadarTarget([1.0, 2.0, 3.0], 0.5)
        assert RadarTarget([1.0, 2.0, 3.0], 0.5) != RadarTarget([1.0, 2.0, 3.0], 0.6)


class TestRadarScan:
    """Test cases for RadarScan"""

    def test_from_arrays(self):
        scan = RadarScan.from_arrays(1.5, [[1.0, 0.0, 0.0], [0.0, 2.0, 0.0]], [-1.0, 0.5])
        assert len(scan) == 2
        assert scan.timestamp == 1.5
        assert_array_equal(scan.positions(), [[1.0, 0.0, 0.0], [0.0, 2.0, 0.0]])
        assert_array_equal(scan.dopplers(), [-1.0, 0.5])

    def test_empty_scan(self):
        scan = RadarScan(0.0)
        assert len(scan) == 0
        assert scan.positions().shape == (0, 3)
        assert scan.dopplers().shape == (0,)

    def test_length_mismatch(self):
        with pytest.raises(InvalidInputException):
            RadarScan.from_arrays(0.0, [[1.0, 0.0, 0.0]], [1.0, 2.0])


class TestImuSample:
    """Test cases for ImuSample"""

    def test_fields(self):
        sample = ImuSample(0.1, [0.0, 0.0, -9.81], [0.0, 0.0, 0.1])
        assert sample.timestamp == 0.1
        assert_array_equal(sample.specific_force, [0.0, 0.0, -9.81])

    def test_wrong_shape(self):
        with pytest.raises(InvalidInputException):
            ImuSample(0.0, [0.0, 0.0], [0.0, 0.0, 0.0])

    def test_equality(self):
        a = ImuSample(0.0, [1.0, 2.0, 3.0], [0.0, 0.0, 0.0])
        assert a == ImuSample(0.0, [1.0, 2.0, 3.0], [0.0, 0.0, 0.0])
        assert a != ImuSample(0.1, [1.0, 2.0, 3.0], [0.0, 0.0, 0.0])


class TestPoseSample:
    """Test cases for PoseSample"""

    def test_equality(self):
        a = PoseSample(1.0, [1.0, 2.0, 3.0], Rotation.from_euler(0.2))
        assert a == PoseSample(1.0, [1.0, 2.0, 3.0], Rotation.from_euler(0.2))
        assert a != PoseSample(1.0, [1.0, 2.0, 3.0], Rotation.identity())


class TestExtrinsicCalib:
    """Test cases for ExtrinsicCalib"""

    def test_defaults(self):
        calib = ExtrinsicCalib()
        assert calib.gravity == 9.81
        assert_array_equal(calib.lever_arm, np.zeros(3))
        assert calib.rot_radar_to_body == Rotation.identity()

    def test_body_to_radar_is_inverse(self):
        calib = ExtrinsicCalib(Rotation.from_euler(0.3, 0.0, np.pi), [0.1, 0.0, -0.05])
        v = np.array([1.0, -2.0, 0.5])
        assert_allclose(calib.rot_body_to_radar.rotate(calib.rot_radar_to_body.rotate(v)), v, atol=1e-12)

    def test_non_positive_gravity(self):
        with pytest.raises(InvalidInputException):
            ExtrinsicCalib(gravity=0.0)
