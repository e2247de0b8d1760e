"""
CREVE - Command Line Interface

Subcommands ``simulate``, ``estimate``, ``evaluate`` and ``compare``. Every
subcommand writes its outputs plus one ``manifest.json`` into ``--out`` and
maps library failures onto ``ExitCode`` values.
"""

import argparse
import logging
from pathlib import Path
from typing import Callable, Dict, Optional, Sequence

from creve.config.creve_config import CreveConfig, load_config
from creve.constants import AlignmentMode, ExitCode, Method, ResultFileConstants
from creve.exceptions import ConfigException, CreveException, DatasetException, EstimationException
from creve.util.file_util import FileUtil

logger = logging.getLogger(__name__)

LOG_FORMAT = "%(asctime)s %(levelname)s %(name)s: %(message)s"


def _load(args: argparse.Namespace) -> CreveConfig:
    return load_config(args.config)


def cmd_simulate(args: argparse.Namespace) -> None:
    """Generate a synthetic scenario and write it as a canonical dataset."""
    from creve.io.dataset import save_dataset
    from creve.io.results import RunManifest, write_manifest
    from creve.sim.scenario import generate

    config = _load(args)
    if args.seed is not None:
        config.scenario = config.scenario.with_seed(args.seed)
        config.validate()
    scenario = generate(config.scenario)
    out_dir = FileUtil.ensure_dir(args.out)
    save_dataset(scenario.to_dataset(), out_dir)
    write_manifest(
        RunManifest(command="simulate", config=config.to_dict(), seed=config.scenario.rng_seed),
        out_dir,
    )


def cmd_estimate(args: argparse.Namespace) -> None:
    """Run REVE or CREVE over every scan of a dataset and write the estimates."""
    from creve.estimation.estimator import EgoVelocityEstimator
    from creve.io.dataset import load_dataset
    from creve.io.results import RunManifest, write_estimates, write_manifest

    config = _load(args)
    if args.seed is not None:
        config.pipeline.ransac.seed = args.seed
        config.validate()
    dataset = load_dataset(args.dataset, default_gravity=config.pipeline.gravity)
    estimator = EgoVelocityEstimator.builder().method(args.method).pipeline_config(config.pipeline).build()
    run = estimator.run(dataset)

    out_dir = FileUtil.ensure_dir(args.out)
    write_estimates(run.estimates, out_dir / ResultFileConstants.ESTIMATES_FILE)
    write_manifest(
        RunManifest(
            command="estimate",
            config=config.to_dict(),
            dataset_path=str(args.dataset),
            seed=config.pipeline.ransac.seed,
            timing=run.timing.to_dict(),
            extra={"method": str(run.method), "epochs": len(run), "skipped_scans": run.skipped_scans},
        ),
        out_dir,
    )


def _estimate_provenance(estimates_path: Path) -> dict:
    from creve.io.results import read_json

    manifest = estimates_path.parent / ResultFileConstants.MANIFEST_FILE
    if not manifest.is_file():
        return {}
    data = read_json(manifest)
    return data if data.get("command") == "estimate" else {}


def cmd_evaluate(args: argparse.Namespace) -> None:
    """Evaluate an estimates file against the ground truth of its dataset."""
    from creve.io.dataset import load_dataset
    from creve.io.results import RunManifest, read_estimates, write_aligned_trajectory, write_manifest, write_report
    from creve.metrics.evaluation import evaluate_estimates

    config = _load(args)
    alignment = AlignmentMode(args.alignment) if args.alignment else config.evaluation.alignment
    estimates_path = Path(args.estimates)
    if estimates_path.is_dir():
        estimates_path = estimates_path / ResultFileConstants.ESTIMATES_FILE
    provenance = _estimate_provenance(estimates_path)

    estimates = read_estimates(estimates_path)
    dataset = load_dataset(args.dataset, default_gravity=config.pipeline.gravity)
    report = evaluate_estimates(
        estimates,
        dataset.truth,
        dataset.calib,
        alignment=alignment,
        max_dt=config.evaluation.max_dt,
        method=provenance.get("method", ""),
        skipped=int(provenance.get("skipped_scans", 0)),
    )

    out_dir = FileUtil.ensure_dir(args.out)
    write_report(report, out_dir / ResultFileConstants.REPORT_FILE)
    if report.ate is not None:
        write_aligned_trajectory(report.ate, out_dir / ResultFileConstants.ALIGNED_TRAJECTORY_FILE)
    write_manifest(
        RunManifest(
            command="evaluate",
            config=config.to_dict(),
            dataset_path=str(args.dataset),
            extra={"estimates_path": str(estimates_path), "alignment": str(alignment)},
        ),
        out_dir,
    )


def cmd_compare(args: argparse.Namespace) -> None:
    """Compare two evaluation reports and write the error reductions."""
    from creve.io.results import RunManifest, read_report, write_json, write_manifest
    from creve.metrics.evaluation import compare_reports

    def report_path(path: str) -> Path:
        p = Path(path)
        return p / ResultFileConstants.REPORT_FILE if p.is_dir() else p

    baseline, candidate = report_path(args.baseline), report_path(args.candidate)
    comparison = compare_reports(read_report(baseline), read_report(candidate))
    out_dir = FileUtil.ensure_dir(args.out)
    write_json(comparison, out_dir / ResultFileConstants.COMPARISON_FILE)
    write_manifest(
        RunManifest(command="compare", extra={"baseline_path": str(baseline), "candidate_path": str(candidate)}),
        out_dir,
    )


COMMANDS: Dict[str, Callable[[argparse.Namespace], None]] = {
    "simulate": cmd_simulate,
    "estimate": cmd_estimate,
    "evaluate": cmd_evaluate,
    "compare": cmd_compare,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="creve", description="Acceleration-constrained radar ego-velocity estimation."
    )
    parser.add_argument("-v", "--verbose", action="store_true", help="Log at DEBUG level")
    subparsers = parser.add_subparsers(dest="command", metavar="COMMAND")
    subparsers.required = True

    simulate = subparsers.add_parser("simulate", help="Generate a synthetic dataset")
    simulate.add_argument("--config", default=None, help="JSON configuration file")
    simulate.add_argument("--out", required=True, help="Output dataset directory")
    simulate.add_argument("--seed", type=int, default=None, help="Override scenario.rng_seed")

    estimate = subparsers.add_parser("estimate", help="Estimate ego-velocity over a dataset")
    estimate.add_argument("dataset", help="Dataset directory")
    estimate.add_argument("--config", default=None, help="JSON configuration file")
    estimate.add_argument(
        "--method", choices=[m.value for m in Method], default=Method.CREVE.value, help="Estimator (default: creve)"
    )
    estimate.add_argument("--out", required=True, help="Output directory")
    estimate.add_argument("--seed", type=int, default=None, help="Override ransac.seed")

    evaluate = subparsers.add_parser("evaluate", help="Compute velocity RMSE and ATE of an estimates file")
    evaluate.add_argument("--estimates", required=True, help="Estimates CSV or the directory holding it")
    evaluate.add_argument("--dataset", required=True, help="Dataset directory")
    evaluate.add_argument(
        "--alignment",
        choices=[m.value for m in AlignmentMode],
        default=None,
        help="Trajectory alignment before ATE (default: evaluation.alignment)",
    )
    evaluate.add_argument("--config", default=None, help="JSON configuration file")
    evaluate.add_argument("--out", required=True, help="Output directory")

    compare = subparsers.add_parser("compare", help="Compare two evaluation reports")
    compare.add_argument("--baseline", required=True, help="Baseline report.json or its directory")
    compare.add_argument("--candidate", required=True, help="Candidate report.json or its directory")
    compare.add_argument("--out", required=True, help="Output directory")
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    """
    Entry point of the ``creve`` console script.

    Returns:
        The process exit code.
    """
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.INFO, format=LOG_FORMAT)

    try:
        COMMANDS[args.command](args)
    except ConfigException as e:
        logger.error("Configuration error: %s", e)
        return int(ExitCode.CONFIG)
    except DatasetException as e:
        logger.error("I/O error: %s", e)
        return int(ExitCode.IO)
    except EstimationException as e:
        logger.error("Numerical error: %s", e)
        return int(ExitCode.NUMERICAL)
    except CreveException as e:
        logger.error("Unexpected error: %s", e)
        return int(ExitCode.UNEXPECTED)
    return int(ExitCode.SUCCESS)
