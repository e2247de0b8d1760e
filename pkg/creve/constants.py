"""
CREVE - Constants

This module contains constant definitions shared by the estimators, the
simulator, the dataset format and the command-line interface.
"""

from enum import Enum, IntEnum


class _StrEnum(Enum):
    """
    Base enum class that returns the value when converted to string.
    """

    def __str__(self) -> str:
        return self.value


class PipelineDefaults:
    """
    Default values of the estimation pipeline.
    """

    GAMMA_MIN = (0.04, 0.04, 0.04)
    GAMMA_MAX = (2.0, 2.0, 2.0)
    Z_THRESHOLD = 0.05
    BIAS_CUTOFF_HZ = 0.01
    GRAVITY = 9.81
    ALIGNMENT_DURATION = 10.0
    # Nearest IMU sample must lie within this many IMU periods of the scan
    IMU_MAX_GAP_PERIODS = 1.5


class RansacDefaults:
    """
    Default values of the RANSAC ego-velocity estimator.
    """

    SUCCESS_PROB = 0.99
    OUTLIER_PROB = 0.4
    INLIER_THRESHOLD = 0.15
    SEED = 0
    SAMPLE_SIZE = 3
    # Hypothesis cap, as a multiple of the nominal count, while the best
    # consensus stays below the assumed inlier share
    EXTENSION_FACTOR = 5
    # HᵀH condition number above which a Doppler geometry is degenerate
    MAX_CONDITION_NUMBER = 1e8


class SolverDefaults:
    """
    Default values of the box-constrained least-squares solver.
    """

    KKT_TOLERANCE = 1e-9
    # Slack (m/s) before an estimate counts as leaving the box
    FEASIBILITY_TOLERANCE = 1e-9
    MAX_ACTIVE_SET_CHANGES = 64


class EvaluationDefaults:
    """
    Default values of the evaluation harness.
    """

    MAX_DT = 0.05
    ALIGNMENT = "pos-yaw"


class ScenarioDefaults:
    """
    Default values of the synthetic scenario generator.
    """

    NAME = "synthetic"
    DURATION = 60.0
    STATIONARY_DURATION = 10.0
    # Seconds over which motion eases in after the stationary prefix
    ONSET_RAMP = 2.0
    RADAR_RATE = 10.0
    IMU_RATE = 400.0
    TRUTH_RATE = 100.0
    WAYPOINTS = ((0.0, 0.0, 0.0), (8.0, 0.0, 0.0), (8.0, 6.0, -0.5), (0.0, 6.0, 0.0), (0.0, 0.0, 0.0))
    YAW_AMPLITUDE = 0.3
    YAW_FREQUENCY = 0.05
    N_STATIC_TARGETS = 64
    FOV_DEG = 120.0
    MIN_RANGE = 1.0
    MAX_RANGE = 30.0
    OUTLIER_FRACTION = 0.0
    GHOST_FRACTION = 0.05
    DOPPLER_NOISE_STD = 0.05
    POSITION_NOISE_STD = 0.0
    ACCEL_BIAS = (0.05, -0.03, 0.08)
    GYRO_BIAS = (0.001, -0.001, 0.0005)
    ACCEL_NOISE_STD = 0.02
    GYRO_NOISE_STD = 0.001
    SEED = 0
    EXTRINSIC_YAW_DEG = 5.0
    LEVER_ARM = (0.1, 0.0, -0.05)
    # Clutter outliers get a Doppler offset with magnitude in this range (m/s)
    CLUTTER_OFFSET = (0.5, 3.0)


class DatasetFileConstants:
    """
    File names and column layouts of the canonical dataset format.
    """

    FORMAT_VERSION = 1

    RADAR_FILE = "radar.csv"
    IMU_FILE = "imu.csv"
    GROUND_TRUTH_FILE = "ground_truth.csv"
    CALIB_FILE = "calib.json"

    RADAR_COLUMNS = ("scan_id", "t", "px", "py", "pz", "doppler")
    IMU_COLUMNS = ("t", "fx", "fy", "fz", "wx", "wy", "wz")
    GROUND_TRUTH_COLUMNS = ("t", "px", "py", "pz", "qw", "qx", "qy", "qz")

    RADAR_COMMENT = "# radar frame FLU; position m; doppler m/s"
    IMU_COMMENT = "# body frame FRD; specific force m/s^2; angular rate rad/s"
    GROUND_TRUTH_COMMENT = "# nav frame NED; position m; quaternion body-to-nav (w, x, y, z)"

    # 17 significant digits make every float64 survive a text round trip
    FLOAT_FORMAT = "%.17g"


class ResultFileConstants:
    """
    File names and column layouts of estimation and evaluation outputs.
    """

    ESTIMATES_FILE = "estimates.csv"
    REPORT_FILE = "report.json"
    ALIGNED_TRAJECTORY_FILE = "aligned_trajectory.csv"
    COMPARISON_FILE = "comparison.json"
    MANIFEST_FILE = "manifest.json"

    ESTIMATE_COLUMNS = (
        "t",
        "vx_r",
        "vy_r",
        "vz_r",
        "vx_n",
        "vy_n",
        "vz_n",
        "inlier_ratio",
        "gamma_x",
        "gamma_y",
        "gamma_z",
        "constrained",
        "zero_velocity",
        "ax_r",
        "ay_r",
        "az_r",
        "bias_ax",
        "bias_ay",
        "bias_az",
        "degenerate",
    )

    ALIGNED_TRAJECTORY_COLUMNS = ("t", "est_x", "est_y", "est_z", "gt_x", "gt_y", "gt_z", "error_norm")


class Method(_StrEnum):
    """
    Enum for ego-velocity estimation methods.
    """

    REVE = "reve"
    CREVE = "creve"


class AlignmentMode(_StrEnum):
    """
    Enum for trajectory alignment modes used before computing ATE.
    """

    NONE = "none"
    SE3 = "se3"
    POS_YAW = "pos-yaw"


class TrajectoryType(_StrEnum):
    """
    Enum for the analytic motion profiles of the scenario generator.
    """

    STATIONARY = "stationary"
    CONSTANT_VELOCITY = "constant_velocity"
    SINUSOID = "sinusoid"
    WAYPOINT_SPLINE = "waypoint_spline"


TRAJECTORY_KEYS = {
    TrajectoryType.STATIONARY: ("type",),
    TrajectoryType.CONSTANT_VELOCITY: ("type", "velocity"),
    TrajectoryType.SINUSOID: ("type", "amplitudes", "frequencies"),
    TrajectoryType.WAYPOINT_SPLINE: ("type", "points"),
}

YAW_KEYS = ("initial", "rate", "amplitude", "frequency")

DYNAMIC_OBJECT_KEYS = ("velocity", "count", "presence")


class ExitCode(IntEnum):
    """
    Process exit codes of the command-line interface.
    """

    SUCCESS = 0
    UNEXPECTED = 1
    # argparse reports usage errors with 2
    USAGE = 2
    CONFIG = 3
    IO = 4
    NUMERICAL = 5


class ErrorCode(_StrEnum):
    """
    Enum for error codes.
    """

    INSUFFICIENT_DATA = "InsufficientData"
    DEGENERATE_GEOMETRY = "DegenerateGeometry"
    CONVERGENCE_FAILED = "ConvergenceFailed"
    INVALID_INPUT = "InvalidInput"
    OUT_OF_RANGE = "OutOfRange"
    INSUFFICIENT_OVERLAP = "InsufficientOverlap"
    LOAD_CONFIG_FILE_FAILED = "LoadConfigFileFailed"
    CONFIG_PARSE_FAILED = "ConfigParseFailed"
    UNKNOWN_CONFIG_KEY = "UnknownConfigKey"
    CONFIG_VALUE_NOT_VALID = "ConfigValueNotValid"
    MISSING_FILE = "MissingFile"
    MALFORMED_ROW = "MalformedRow"
    NON_MONOTONIC_TIMESTAMP = "NonMonotonicTimestamp"
    SCHEMA_MISMATCH = "SchemaMismatch"
    WRITE_FAILED = "WriteFailed"
