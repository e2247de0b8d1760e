"""
Builders shared by the metrics tests
"""

import numpy as np

from creve.estimation.pipeline import VelocityEstimate


def estimate(t, v_nav, v_radar=None, constrained=False, zero_velocity=False, degenerate=False) -> VelocityEstimate:
    v_nav = np.asarray(v_nav, dtype=np.float64)
    return VelocityEstimate(
        timestamp=t,
        velocity_radar=v_nav if v_radar is None else np.asarray(v_radar, dtype=np.float64),
        velocity_nav=v_nav,
        inlier_ratio=1.0,
        gamma_used=np.full(3, 2.0),
        constrained=constrained,
        zero_velocity=zero_velocity,
        accel_radar=np.zeros(3),
        degenerate=degenerate,
    )
