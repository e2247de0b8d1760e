"""
Tests for frame helpers and attitude interpolation
"""

import unittest

import numpy as np
from numpy.testing import assert_allclose, assert_array_equal

from creve.domain import PoseSample
from creve.exceptions import InsufficientDataException, InvalidInputException, OutOfRangeException
from creve.geometry.frames import AttitudeInterpolator, as_vec3, gravity_nav, interpolate_attitude, rotate, skew
from creve.geometry.rotation import Rotation


class TestSkew(unittest.TestCase):
    """Test cases for skew"""

    def test_cross_product(self):
        """Test skew(v) @ w equals v x w"""
        assert_array_equal(skew([0.0, 0.0, 1.0]) @ [1.0, 0.0, 0.0], [0.0, 1.0, 0.0])

    def test_zero_vector(self):
        """Test skew of zero is the zero matrix"""
        assert_array_equal(skew([0.0, 0.0, 0.0]), np.zeros((3, 3)))

    def test_antisymmetry(self):
        """Test skew(v)^T = -skew(v)"""
        m = skew([1.0, 2.0, 3.0])
        assert_array_equal(m.T, -m)

    def test_random_vectors(self):
        """Test skew(a) b = -skew(b) a and agreement with numpy cross"""
        rng = np.random.default_rng(3)
        for _ in range(20):
            a, b = rng.normal(size=3), rng.normal(size=3)
            assert_allclose(skew(a) @ b, np.cross(a, b), atol=1e-12)
            assert_allclose(skew(a) @ b, -skew(b) @ a, atol=1e-12)


class TestVectorHelpers(unittest.TestCase):
    """Test cases for as_vec3, gravity_nav and rotate"""

    def test_as_vec3(self):
        """Test conversion to a float vector"""
        assert_array_equal(as_vec3([1, 2, 3]), [1.0, 2.0, 3.0])

    def test_as_vec3_rejects_bad_input(self):
        """Test wrong shapes and non-finite values"""
        for bad in ([1.0, 2.0], [1.0, np.inf, 0.0]):
            with self.assertRaises(InvalidInputException):
                as_vec3(bad, "v")

    def test_gravity_points_down(self):
        """Test gravity in the NED navigation frame"""
        assert_array_equal(gravity_nav(9.81), [0.0, 0.0, 9.81])

    def test_rotate(self):
        """Test rotate delegates to the rotation"""
        assert_array_equal(rotate(Rotation.identity(), [1.0, 2.0, 3.0]), [1.0, 2.0, 3.0])


class TestInterpolateAttitude(unittest.TestCase):
    """Test cases for attitude interpolation"""

    def setUp(self):
        self.poses = [
            PoseSample(0.0, [0.0, 0.0, 0.0], Rotation.identity()),
            PoseSample(1.0, [1.0, 0.0, 0.0], Rotation.from_euler(np.pi / 2)),
            PoseSample(2.0, [2.0, 0.0, 0.0], Rotation.from_euler(np.pi / 2)),
        ]

    def test_exact_hit_returns_stored_attitude(self):
        """Test a sample timestamp returns that sample's attitude"""
        self.assertIs(interpolate_attitude(self.poses, 1.0), self.poses[1].attitude)

    def test_slerp_midpoint(self):
        """Test midpoint between identity and a quarter yaw"""
        expected = Rotation.from_euler(np.pi / 4).as_matrix()
        assert_allclose(interpolate_attitude(self.poses, 0.5).as_matrix(), expected, atol=1e-9)

    def test_out_of_range(self):
        """Test lookups outside the covered interval"""
        with self.assertRaises(OutOfRangeException) as context:
            interpolate_attitude(self.poses, -0.1)
        self.assertEqual(context.exception.start, 0.0)
        self.assertEqual(context.exception.end, 2.0)
        with self.assertRaises(OutOfRangeException):
            interpolate_attitude(self.poses, 2.5)

    def test_empty_stream(self):
        """Test lookup in an empty pose stream"""
        with self.assertRaises(InsufficientDataException):
            interpolate_attitude([], 0.0)

    def test_interpolator_bounds(self):
        """Test AttitudeInterpolator start and end"""
        interpolator = AttitudeInterpolator(np.array([0.0, 1.0]), [Rotation.identity(), Rotation.identity()])
        self.assertEqual(interpolator.start, 0.0)
        self.assertEqual(interpolator.end, 1.0)
        assert_allclose(interpolator.at(0.3).as_matrix(), np.eye(3), atol=1e-12)


if __name__ == "__main__":
    unittest.main()
