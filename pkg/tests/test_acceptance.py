"""
End-to-end checks of the estimators on synthetic scenarios
"""

import time
import unittest

import numpy as np
import pytest
from numpy.testing import assert_allclose, assert_array_equal

from creve.config.pipeline_configuration import PipelineConfiguration
from creve.config.scenario_configuration import ScenarioConfiguration
from creve.constants import AlignmentMode, RansacDefaults
from creve.domain import ExtrinsicCalib, RadarScan
from creve.estimation.box_lsq import BoxConstraint, solve_box_lsq
from creve.estimation.estimator import EgoVelocityEstimator
from creve.estimation.pipeline import GammaBounds, compute_gamma, initial_state, step
from creve.estimation.ransac import doppler_system
from creve.geometry.rotation import Rotation
from creve.io.dataset import Dataset
from creve.metrics.evaluation import evaluate_estimates
from creve.sim.scenario import generate
from tests.helpers import box_lsq_oracle, collinear_scan, forward_directions, objective, random_box_instance


def scenario_config(**overrides) -> ScenarioConfiguration:
    config = ScenarioConfiguration()
    for key, value in overrides.items():
        setattr(config, key, value)
    return config


def noiseless_config(**overrides) -> ScenarioConfiguration:
    values = dict(
        duration=10.0,
        stationary_duration=0.0,
        imu_rate=100.0,
        truth_rate=50.0,
        trajectory={"type": "constant_velocity", "velocity": (2.0, 0.5, 0.0)},
        ghost_fraction=0.0,
        outlier_fraction=0.0,
        doppler_noise_std=0.0,
        accel_bias=(0.0, 0.0, 0.0),
        gyro_bias=(0.0, 0.0, 0.0),
        accel_noise_std=0.0,
        gyro_noise_std=0.0,
    )
    values.update(overrides)
    return scenario_config(**values)


def benchmark_config(seed: int) -> ScenarioConfiguration:
    """
    Structured-outlier scenario: half of the static returns are ghosts and a
    40-target moving object is seen in half of the scans, so about 60 percent
    of all returns break the static Doppler model.
    """
    return scenario_config(
        duration=120.0,
        stationary_duration=10.0,
        n_static_targets=40,
        ghost_fraction=0.5,
        doppler_noise_std=0.05,
        dynamic_objects=[{"velocity": (4.0, -4.0, 2.0), "count": 40, "presence": 0.5}],
        rng_seed=seed,
    )


def bias_config(seed: int) -> ScenarioConfiguration:
    """High-outlier scenario with a planted accelerometer bias and a dense static scene."""
    return scenario_config(
        duration=120.0,
        stationary_duration=10.0,
        n_static_targets=96,
        ghost_fraction=0.5,
        doppler_noise_std=0.02,
        accel_bias=(0.05, -0.03, 0.08),
        dynamic_objects=[{"velocity": (4.0, -4.0, 2.0), "count": 60, "presence": 0.5}],
        rng_seed=seed,
    )


def outlier_share(scenario) -> float:
    """Mean per-scan share of returns whose Doppler misses the true ego-velocity by the inlier threshold."""
    shares = []
    for scan, v in zip(scenario.radar, scenario.truth_velocity_radar.values):
        H, y = doppler_system(scan)
        shares.append(float(np.mean(np.abs(y - H @ v) >= RansacDefaults.INLIER_THRESHOLD)))
    return float(np.mean(shares))


def pipeline_config(**overrides) -> PipelineConfiguration:
    config = PipelineConfiguration()
    for key, value in overrides.items():
        setattr(config, key, value)
    return config


def run(method: str, dataset: Dataset, config: PipelineConfiguration):
    return EgoVelocityEstimator.builder().method(method).pipeline_config(config).build().run(dataset)


class TestNoiselessRecovery(unittest.TestCase):
    """Test planted velocity recovery without noise or outliers"""

    @classmethod
    def setUpClass(cls):
        cls.scenario = generate(noiseless_config())
        cls.dataset = cls.scenario.to_dataset()
        cls.config = pipeline_config(alignment_duration=0.0)

    def test_every_scan_recovered(self):
        """Test both methods against the analytic radar velocity"""
        truth = self.scenario.truth_velocity_radar
        for method in ("reve", "creve"):
            with self.subTest(method=method):
                estimates = run(method, self.dataset, self.config).estimates
                assert_array_equal([e.timestamp for e in estimates], truth.timestamps)
                assert_allclose(np.array([e.velocity_radar for e in estimates]), truth.values, atol=1e-6)

    def test_trajectory_error_small(self):
        """Test that integrating the recovered velocity tracks the ground truth"""
        estimates = run("creve", self.dataset, self.config).estimates
        report = evaluate_estimates(estimates, self.dataset.truth, self.dataset.calib, AlignmentMode.NONE)
        self.assertLess(report.ate.max, 1e-3)


class TestGammaLimit(unittest.TestCase):
    """Test that an unbounded box reproduces the baseline"""

    def test_bitwise_equal_to_reve(self):
        """Test CREVE with huge gamma against REVE on a noisy scenario"""
        dataset = generate(
            scenario_config(duration=12.0, stationary_duration=3.0, imu_rate=100.0, truth_rate=50.0, rng_seed=2)
        ).to_dataset()
        config = pipeline_config(gamma_min=(1e6, 1e6, 1e6), gamma_max=(1e6, 1e6, 1e6), alignment_duration=2.0)
        reve = run("reve", dataset, config).estimates
        creve = run("creve", dataset, config).estimates
        self.assertEqual(len(reve), len(creve))
        for a, b in zip(reve, creve):
            assert_array_equal(a.velocity_radar, b.velocity_radar)
            assert_array_equal(a.velocity_nav, b.velocity_nav)

    def test_degenerate_scan_matches_reve(self):
        """Test a scan without usable geometry is handled identically by both methods"""
        dataset = generate(
            scenario_config(duration=8.0, stationary_duration=2.0, imu_rate=100.0, truth_rate=50.0, rng_seed=3)
        ).to_dataset()
        index = 40
        radar = list(dataset.radar)
        radar[index] = collinear_scan(radar[index].timestamp)
        tampered = Dataset(tuple(radar), dataset.imu, dataset.truth, dataset.calib, dataset.metadata)
        config = pipeline_config(gamma_min=(1e6, 1e6, 1e6), gamma_max=(1e6, 1e6, 1e6), alignment_duration=1.5)
        reve = run("reve", tampered, config).estimates
        creve = run("creve", tampered, config).estimates
        k = [e.timestamp for e in creve].index(radar[index].timestamp)
        self.assertTrue(creve[k].degenerate)
        self.assertFalse(creve[k].constrained)
        assert_array_equal(creve[k].velocity_radar, reve[k].velocity_radar)
        self.assertEqual(len(reve), len(creve))
        for a, b in zip(reve, creve):
            assert_array_equal(a.velocity_nav, b.velocity_nav)


class TestGammaAdaptation(unittest.TestCase):
    """Test the box width adaptation over a run"""

    def test_sweep_monotone(self):
        """Test compute_gamma is nondecreasing over a sweep of inlier ratios"""
        gammas = np.array([compute_gamma(r, GammaBounds()) for r in np.linspace(0.0, 1.0, 101)])
        self.assertTrue(np.all(np.diff(gammas, axis=0) >= 0.0))

    def test_emitted_gamma_monotone_in_inlier_ratio(self):
        """Test the gamma_used of a run sorted by inlier ratio"""
        dataset = generate(
            scenario_config(
                duration=8.0, stationary_duration=2.0, imu_rate=100.0, truth_rate=50.0, ghost_fraction=0.3, rng_seed=5
            )
        ).to_dataset()
        estimates = run("creve", dataset, pipeline_config(alignment_duration=1.5)).estimates
        ordered = sorted(estimates, key=lambda e: e.inlier_ratio)
        gammas = np.array([e.gamma_used for e in ordered])
        self.assertTrue(np.all(np.diff(gammas, axis=0) >= 0.0))


class TestZeroVelocity(unittest.TestCase):
    """Test zero-velocity handling on synthetic data"""

    def test_stationary_segment_exactly_zero(self):
        """Test that scans of the stationary prefix give exactly zero velocity"""
        config = scenario_config(
            duration=6.0, stationary_duration=3.0, imu_rate=100.0, truth_rate=50.0, doppler_noise_std=0.02
        )
        dataset = generate(config).to_dataset()
        for method in ("reve", "creve"):
            with self.subTest(method=method):
                estimates = run(method, dataset, pipeline_config(alignment_duration=2.0)).estimates
                stationary = [e for e in estimates if e.timestamp < 2.9]
                self.assertGreater(len(stationary), 20)
                for e in stationary:
                    self.assertTrue(e.zero_velocity)
                    assert_array_equal(e.velocity_radar, np.zeros(3))

    def test_false_detection_overridden(self):
        """Test a near-zero-Doppler scan during fast motion"""
        config = noiseless_config(
            trajectory={"type": "constant_velocity", "velocity": (4.0, 0.0, 0.0)},
            yaw={"initial": 0.0, "rate": 0.0, "amplitude": 0.0, "frequency": 0.0},
        )
        dataset = generate(config).to_dataset()
        index = 30
        original = dataset.radar[index]
        fake = RadarScan.from_arrays(original.timestamp, original.positions(), np.full(len(original), 0.01))
        radar = dataset.radar[:index] + (fake,) + dataset.radar[index + 1 :]
        tampered = Dataset(radar, dataset.imu, dataset.truth, dataset.calib, dataset.metadata)
        settings = pipeline_config(alignment_duration=0.0)

        reve = run("reve", tampered, settings).estimates[index]
        self.assertTrue(reve.zero_velocity)
        assert_array_equal(reve.velocity_radar, np.zeros(3))

        creve = run("creve", tampered, settings).estimates[index]
        self.assertTrue(creve.zero_velocity)
        self.assertTrue(creve.constrained)
        self.assertGreater(creve.velocity_radar[0], 1.5)
        self.assertTrue(creve.constraint.contains(creve.velocity_radar, tol=1e-9))


@pytest.mark.slow
class TestSolverBenchmark(unittest.TestCase):
    """Test the box solver against the exhaustive oracle at scale"""

    def test_oracle_equivalence_and_speed(self):
        """Test 1000 random 20x3 instances"""
        rng = np.random.default_rng(2024)
        elapsed = 0.0
        for _ in range(1000):
            H, y, lower, upper = random_box_instance(rng)
            started = time.perf_counter()
            solution = solve_box_lsq(H, y, BoxConstraint(lower, upper))
            elapsed += time.perf_counter() - started
            expected = box_lsq_oracle(H, y, lower, upper)
            self.assertLessEqual(objective(H, y, solution.velocity), objective(H, y, expected) + 1e-10)
            assert_allclose(solution.velocity, expected, atol=1e-8)
        self.assertLess(elapsed / 1000, 1e-3)


@pytest.mark.slow
class TestStepRuntime(unittest.TestCase):
    """Test step() timing on dense scans"""

    def test_mean_step_below_ten_ms(self):
        """Test 256-target scans"""
        rng = np.random.default_rng(0)
        velocity = np.array([3.0, 0.5, -0.2])
        state = initial_state(ExtrinsicCalib())
        durations = []
        for k in range(200):
            directions = forward_directions(rng, 256)
            dopplers = -directions @ velocity + rng.normal(0.0, 0.05, 256)
            dopplers[:64] += rng.uniform(1.0, 3.0, 64)
            scan = RadarScan.from_arrays(0.1 * k, directions * rng.uniform(2.0, 25.0, (256, 1)), dopplers)
            started = time.perf_counter()
            _, state = step(state, scan, [0.0, 0.0, -9.81], np.zeros(3), Rotation.identity())
            durations.append(time.perf_counter() - started)
        self.assertLess(np.mean(durations), 0.01)


@pytest.mark.slow
class TestOutlierBenchmark(unittest.TestCase):
    """Test CREVE against REVE on the structured-outlier scenario over ten seeds"""

    @classmethod
    def setUpClass(cls):
        cls.reports = {"reve": [], "creve": []}
        cls.shares = []
        for seed in range(10):
            scenario = generate(benchmark_config(seed))
            cls.shares.append(outlier_share(scenario))
            dataset = scenario.to_dataset()
            for method in cls.reports:
                estimates = run(method, dataset, PipelineConfiguration()).estimates
                report = evaluate_estimates(estimates, dataset.truth, dataset.calib, AlignmentMode.POS_YAW)
                cls.reports[method].append(report)

    def test_outlier_share(self):
        """Test that about 60 percent of the returns break the static model"""
        self.assertAlmostEqual(float(np.mean(self.shares)), 0.6, delta=0.05)

    def test_velocity_rmse_reduced(self):
        """Test per-axis RMSE at most 0.7 times the baseline on two of three axes"""
        reve = np.mean([r.rmse_radar for r in self.reports["reve"]], axis=0)
        creve = np.mean([r.rmse_radar for r in self.reports["creve"]], axis=0)
        self.assertGreaterEqual(int(np.sum(creve <= 0.7 * reve)), 2)

    def test_ate_reduced(self):
        """Test mean ATE at most 0.8 times the baseline"""
        reve = np.mean([r.ate.mean for r in self.reports["reve"]])
        creve = np.mean([r.ate.mean for r in self.reports["creve"]])
        self.assertLessEqual(creve, 0.8 * reve)


@pytest.mark.slow
class TestBiasRecovery(unittest.TestCase):
    """Test accelerometer bias tracking through frequent constraint activations"""

    @classmethod
    def setUpClass(cls):
        cls.runs = []
        for seed in range(3):
            dataset = generate(bias_config(seed)).to_dataset()
            cls.runs.append(run("creve", dataset, PipelineConfiguration()).estimates)

    def test_bias_within_tolerance_after_run(self):
        """Test the smoothed bias within 0.02 m/s² of the planted bias on every axis"""
        for seed, estimates in enumerate(self.runs):
            with self.subTest(seed=seed):
                error = estimates[-1].bias_accel - np.array([0.05, -0.03, 0.08])
                self.assertTrue(np.all(np.abs(error) < 0.02), f"bias error {error}")

    def test_bias_updated_regularly(self):
        """Test that consecutive constrained epochs keep feeding the bias filter"""
        for seed, estimates in enumerate(self.runs):
            with self.subTest(seed=seed):
                biases = np.array([e.bias_accel for e in estimates])
                updates = int(np.count_nonzero(np.any(np.diff(biases, axis=0) != 0.0, axis=1)))
                self.assertGreater(updates, 100)
                self.assertGreater(sum(e.constrained for e in estimates), 300)


if __name__ == "__main__":
    unittest.main()
