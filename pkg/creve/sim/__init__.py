"""
CREVE - Simulation Module

Synthetic radar/IMU scenarios with analytic ground truth.
"""

from creve.sim.motion import (
    ConstantVelocityProfile,
    MotionProfile,
    PlatformMotion,
    SinusoidProfile,
    StationaryProfile,
    WaypointSplineProfile,
    YawProfile,
)
from creve.sim.scenario import Scenario, generate, truth_at

__all__ = [
    "ConstantVelocityProfile",
    "MotionProfile",
    "PlatformMotion",
    "Scenario",
    "SinusoidProfile",
    "StationaryProfile",
    "WaypointSplineProfile",
    "YawProfile",
    "generate",
    "truth_at",
]
