import sys

from creve import EgoVelocityEstimator, evaluate_estimates, load_config, load_dataset


def evaluate_saved_dataset(dataset_dir: str, config_path: str = None):
    config = load_config(config_path)
    dataset = load_dataset(dataset_dir, default_gravity=config.pipeline.gravity)
    estimator = EgoVelocityEstimator.builder().method("creve").pipeline_config(config.pipeline).build()
    run = estimator.run(dataset)
    report = evaluate_estimates(
        run.estimates,
        dataset.truth,
        dataset.calib,
        alignment=config.evaluation.alignment,
        max_dt=config.evaluation.max_dt,
        method="creve",
        skipped=run.skipped_scans,
    )
    print(report.to_dict())


if __name__ == "__main__":
    if len(sys.argv) < 2:
        print("usage: python evaluate_saved_dataset.py DATASET_DIR [CONFIG_JSON]")
        sys.exit(2)
    evaluate_saved_dataset(sys.argv[1], sys.argv[2] if len(sys.argv) > 2 else None)
