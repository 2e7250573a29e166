"""
Writers for the result files.

All CSVs use fixed 6-decimal reals, '.' as decimal separator and '\\n' line
endings, so the same run produces byte-identical files on any platform.
"""

import json
from dataclasses import asdict
from pathlib import Path
from typing import Sequence, Union

import pandas as pd

from .core import SimConfig
from .experiments import PairedSRResult, SRSummary, SweepCell
from .metrics import ACQUISITION_COLUMNS, TIMESERIES_COLUMNS, RunResult

FLOAT_FORMAT = "%.6f"

SWEEP_COLUMNS = [
    "C",
    "p",
    "replicates",
    "mean_final_fitness",
    "stderr_final_fitness",
    "reached_fraction",
    "mean_time_to_threshold",
    "mean_peak_diversity",
    "mean_peak_iteration",
]
SR_PAIR_COLUMNS = [
    "seed",
    "final_mean_fitness_sr",
    "final_mean_fitness_nosr",
    "peak_div_sr",
    "peak_div_nosr",
    "peak_iter_sr",
    "peak_iter_nosr",
    "final_seg_index_sr",
    "initial_seg_index_sr",
]
SR_SUMMARY_COLUMNS = [
    "replicates",
    "win_rate",
    "mean_fitness_difference",
    "mean_peak_iteration_difference",
    "mean_peak_diversity_difference",
    "mean_final_seg_index",
    "mean_initial_seg_index",
]

PathLike = Union[str, Path]


def write_csv(frame: pd.DataFrame, path: PathLike) -> Path:
    path = Path(path)
    frame.to_csv(path, index=False, float_format=FLOAT_FORMAT, lineterminator="\n")
    return path


def write_timeseries(result: RunResult, path: PathLike) -> Path:
    return write_csv(result.to_frame()[TIMESERIES_COLUMNS], path)


def write_acquisitions(result: RunResult, path: PathLike) -> Path:
    return write_csv(result.to_frame()[ACQUISITION_COLUMNS], path)


def write_run_meta(config: SimConfig, seed: int, path: PathLike) -> Path:
    path = Path(path)
    meta = {"config": config.to_dict(), "seed": seed}
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        json.dump(meta, f, indent=2, sort_keys=True)
        f.write("\n")
    return path


def write_sweep(cells: Sequence[SweepCell], path: PathLike) -> Path:
    rows = [
        {
            "C": float(cell.c),
            "p": float(cell.p),
            "replicates": cell.replicates,
            "mean_final_fitness": cell.mean_final_fitness,
            "stderr_final_fitness": cell.stderr_final_fitness,
            "reached_fraction": cell.reached_fraction,
            "mean_time_to_threshold": cell.mean_time_to_threshold,
            "mean_peak_diversity": cell.mean_peak_diversity,
            "mean_peak_iteration": cell.mean_peak_iteration,
        }
        for cell in cells
    ]
    frame = pd.DataFrame(rows, columns=SWEEP_COLUMNS)
    # None -> empty field; keep the column numeric so it gets 6 decimals
    frame["mean_time_to_threshold"] = pd.to_numeric(frame["mean_time_to_threshold"], errors="coerce")
    return write_csv(frame, path)


def write_sr_pairs(pairs: Sequence[PairedSRResult], path: PathLike) -> Path:
    frame = pd.DataFrame([asdict(pair) for pair in pairs], columns=SR_PAIR_COLUMNS)
    return write_csv(frame, path)


def write_sr_summary(summary: SRSummary, path: PathLike) -> Path:
    frame = pd.DataFrame([asdict(summary)], columns=SR_SUMMARY_COLUMNS)
    return write_csv(frame, path)
