"""
CREVE - I/O Module

The canonical dataset format and the result files.
"""

from creve.io.dataset import Dataset, DatasetMetadata, load_dataset, save_dataset
from creve.io.results import (
    RunManifest,
    read_estimates,
    read_report,
    write_aligned_trajectory,
    write_estimates,
    write_manifest,
    write_report,
)

__all__ = [
    "Dataset",
    "DatasetMetadata",
    "RunManifest",
    "load_dataset",
    "read_estimates",
    "read_report",
    "save_dataset",
    "write_aligned_trajectory",
    "write_estimates",
    "write_manifest",
    "write_report",
]
