"""
CREVE - Geometry

Rotations, frame conventions and attitude interpolation.
"""

from creve.geometry.frames import AttitudeInterpolator, as_vec3, gravity_nav, interpolate_attitude, rotate, skew
from creve.geometry.rotation import Rotation

__all__ = [
    "AttitudeInterpolator",
    "Rotation",
    "as_vec3",
    "gravity_nav",
    "interpolate_attitude",
    "rotate",
    "skew",
]
