"""
CREVE - Radar Ego-Velocity Estimation

Acceleration-constrained radar ego-velocity estimation with a synthetic
scenario generator and an odometry evaluation harness.
"""

# Config
from creve.config import (
    CreveConfig,
    EvaluationConfiguration,
    PipelineConfiguration,
    RansacConfiguration,
    ScenarioConfiguration,
    load_config,
)

# Constants
from creve.constants import AlignmentMode, ErrorCode, ExitCode, Method, TrajectoryType

# Domain
from creve.domain import ExtrinsicCalib, ImuSample, PoseSample, RadarScan, RadarTarget

# Estimation
from creve.estimation import (
    BoxConstraint,
    CreveEstimator,
    EgoVelocityEstimator,
    EstimationRun,
    EstimatorBuilder,
    PipelineState,
    ReveEstimator,
    VelocityEstimate,
    compute_gamma,
    initial_state,
    ransac_estimate,
    solve_box_lsq,
    step,
)

# Exceptions
from creve.exceptions import (
    ConfigException,
    ConvergenceException,
    CreveException,
    DatasetException,
    DegenerateGeometryException,
    EstimationException,
    InsufficientDataException,
    InvalidInputException,
    OutOfRangeException,
)

# Geometry
from creve.geometry import Rotation

# I/O
from creve.io import Dataset, DatasetMetadata, load_dataset, save_dataset

# Metrics
from creve.metrics import ate, compare_reports, evaluate_estimates, integrate_positions, rmse_per_axis

# Simulation
from creve.sim import Scenario, generate

# Version management - keep at the end, skip import sorting
from importlib import metadata  # isort: skip

try:
    __version__ = metadata.version(__package__)
except metadata.PackageNotFoundError:
    # Case where package metadata is not available.
    __version__ = ""
del metadata  # avoids polluting the results of dir(__package__)

__all__ = [
    # Config
    "CreveConfig",
    "EvaluationConfiguration",
    "PipelineConfiguration",
    "RansacConfiguration",
    "ScenarioConfiguration",
    "load_config",
    # Constants
    "AlignmentMode",
    "ErrorCode",
    "ExitCode",
    "Method",
    "TrajectoryType",
    # Domain
    "ExtrinsicCalib",
    "ImuSample",
    "PoseSample",
    "RadarScan",
    "RadarTarget",
    # Estimation
    "BoxConstraint",
    "CreveEstimator",
    "EgoVelocityEstimator",
    "EstimationRun",
    "EstimatorBuilder",
    "PipelineState",
    "ReveEstimator",
    "VelocityEstimate",
    "compute_gamma",
    "initial_state",
    "ransac_estimate",
    "solve_box_lsq",
    "step",
    # Exceptions
    "ConfigException",
    "ConvergenceException",
    "CreveException",
    "DatasetException",
    "DegenerateGeometryException",
    "EstimationException",
    "InsufficientDataException",
    "InvalidInputException",
    "OutOfRangeException",
    # Geometry
    "Rotation",
    # I/O
    "Dataset",
    "DatasetMetadata",
    "load_dataset",
    "save_dataset",
    # Metrics
    "ate",
    "compare_reports",
    "evaluate_estimates",
    "integrate_positions",
    "rmse_per_axis",
    # Simulation
    "Scenario",
    "generate",
]
