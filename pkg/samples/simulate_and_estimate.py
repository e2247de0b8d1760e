import numpy as np

from creve import AlignmentMode, EgoVelocityEstimator, ScenarioConfiguration, evaluate_estimates, generate


def simulate_and_estimate():
    scenario_config = ScenarioConfiguration()
    scenario_config.duration = 30.0
    scenario_config.ghost_fraction = 0.2
    dataset = generate(scenario_config).to_dataset()

    for method in ("reve", "creve"):
        estimator = EgoVelocityEstimator.builder().method(method).build()
        run = estimator.run(dataset)
        report = evaluate_estimates(run.estimates, dataset.truth, dataset.calib, AlignmentMode.POS_YAW, method=method)
        print(f"{method}: {len(run)} epochs, mean step {run.timing.mean_ms:.3f} ms")
        print("  velocity RMSE (radar frame):", np.round(report.rmse_radar, 4))
        if report.ate is not None:
            print(f"  ATE rmse {report.ate.rmse:.3f} m, mean {report.ate.mean:.3f} m")


if __name__ == "__main__":
    simulate_and_estimate()
