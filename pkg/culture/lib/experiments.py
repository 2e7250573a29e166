"""
Replicated runs, (C, p) sweeps and paired social-regulation comparisons.

Every run owns its world and its random stream, so runs are farmed out to a
process pool and collected in job order; aggregates therefore do not depend
on how many workers were used. Sweep seeds are derived from the base seed
and the (C index, p index, replicate index) path, so any cell can be
recomputed on its own.
"""

import math
import os
import sys
from dataclasses import dataclass
from multiprocessing import Pool
from pathlib import Path
from typing import Callable, Dict, List, NamedTuple, Optional, Sequence, Tuple

import numpy as np
import pandas as pd

# Add project root to path for config import
sys.path.insert(0, str(Path(__file__).parent.parent.parent))
from config import THREADS_ENV_VAR

from .core import SimConfig, new_world
from .dynamics import step
from .fitness import get_fitness
from .metrics import TIMESERIES_COLUMNS, RunResult, compute_iteration_metrics, summarize_run
from .rng import SplitMix64, derive_seed

ProgressCallback = Callable[[int, int], None]


class StatSummary(NamedTuple):
    mean: float
    std: float
    ci95: float

    def stderr(self, n: int) -> float:
        return self.std / math.sqrt(n)


def stats_mean_std_ci(values: Sequence[float]) -> StatSummary:
    """
    Mean, sample standard deviation (n - 1) and 95% normal CI half-width.

    Raises:
        ValueError: no values
    """
    data = np.asarray(values, dtype=float)
    if data.size == 0:
        raise ValueError("need at least one value")
    mean = float(data.mean())
    std = float(data.std(ddof=1)) if data.size > 1 else 0.0
    return StatSummary(mean, std, 1.96 * std / math.sqrt(data.size))


def run_sim(config: SimConfig, seed: Optional[int] = None, keep_world: bool = False) -> RunResult:
    """
    One complete run: iteration 0 plus config.iterations synchronous steps.

    Args:
        config: Run configuration
        seed: Run seed; defaults to config.seed
        keep_world: Attach the final WorldState to the result

    Returns:
        RunResult with iterations + 1 metric rows
    """
    seed = config.seed if seed is None else seed
    config = config.replace(seed=seed).validate()
    fitness = get_fitness(config)
    rng = SplitMix64(seed)
    world = new_world(config, rng)

    result = RunResult(config=config, seed=seed, series=[compute_iteration_metrics(world)])
    for _ in range(config.iterations):
        world, metrics = step(world, config, fitness, rng)
        result.series.append(metrics)
    if keep_world:
        result.final_world = world
    return result


def worker_count(jobs: int) -> int:
    """Worker processes for a batch: EVOC_THREADS if set, else the CPU count, never more than jobs."""
    env_value = os.environ.get(THREADS_ENV_VAR)
    if env_value:
        try:
            limit = int(env_value)
        except ValueError:
            raise ValueError(f"{THREADS_ENV_VAR} must be an integer, got {env_value!r}")
        if limit < 1:
            raise ValueError(f"{THREADS_ENV_VAR} must be >= 1, got {limit}")
    else:
        limit = os.cpu_count() or 1
    return max(1, min(limit, jobs))


def _run_job(job: Tuple[SimConfig, int]) -> RunResult:
    config, seed = job
    return run_sim(config, seed)


def run_many(jobs: Sequence[Tuple[SimConfig, int]], progress: Optional[ProgressCallback] = None) -> List[RunResult]:
    """Run (config, seed) jobs, possibly in parallel; results come back in job order."""
    total = len(jobs)
    workers = worker_count(total)
    results: List[RunResult] = []
    if workers == 1:
        for job in jobs:
            results.append(_run_job(job))
            if progress:
                progress(len(results), total)
        return results

    chunksize = max(1, total // (workers * 4))
    with Pool(processes=workers) as pool:
        for result in pool.imap(_run_job, jobs, chunksize=chunksize):
            results.append(result)
            if progress:
                progress(len(results), total)
    return results


@dataclass
class ReplicateAggregate:
    """Per-iteration mean curves and run-level statistics over a set of seeds."""

    seeds: List[int]
    curves: pd.DataFrame
    runs: pd.DataFrame
    final_fitness: StatSummary
    peak_diversity: StatSummary
    peak_iteration: StatSummary
    final_diversity: StatSummary
    final_seg_index: StatSummary
    reached_fraction: float
    time_to_threshold: Optional[StatSummary]  # over runs that reached the threshold only

    @property
    def replicates(self) -> int:
        return len(self.seeds)


def aggregate_runs(results: Sequence[RunResult], f_max: float) -> ReplicateAggregate:
    """Aggregate runs in ascending seed order, so the input order does not matter."""
    if not results:
        raise ValueError("need at least one run to aggregate")
    ordered = sorted(results, key=lambda r: r.seed)

    frames = []
    for result in ordered:
        frame = result.to_frame()[TIMESERIES_COLUMNS]
        frame.insert(0, "seed", result.seed)
        frames.append(frame)
    stacked = pd.concat(frames, ignore_index=True)
    value_columns = TIMESERIES_COLUMNS[1:]
    curves = stacked.groupby("iteration")[value_columns].agg(["mean", "std"])
    curves.columns = [f"{column}_{stat}" for column, stat in curves.columns]
    curves = curves.fillna(0.0).reset_index()

    runs = pd.DataFrame([summarize_run(result, f_max) for result in ordered])
    reached = [t for t in runs["time_to_threshold"] if t is not None and not pd.isna(t)]

    return ReplicateAggregate(
        seeds=[result.seed for result in ordered],
        curves=curves,
        runs=runs,
        final_fitness=stats_mean_std_ci(runs["final_fitness"]),
        peak_diversity=stats_mean_std_ci(runs["peak_diversity"]),
        peak_iteration=stats_mean_std_ci(runs["peak_iteration"]),
        final_diversity=stats_mean_std_ci(runs["final_diversity"]),
        final_seg_index=stats_mean_std_ci(runs["final_seg_index"]),
        reached_fraction=len(reached) / len(ordered),
        time_to_threshold=stats_mean_std_ci(reached) if reached else None,
    )


def run_replicates(
    config: SimConfig,
    seeds: Sequence[int],
    progress: Optional[ProgressCallback] = None,
) -> ReplicateAggregate:
    """Independent runs of one config, one per seed, aggregated."""
    if not seeds:
        raise ValueError("need at least one seed")
    config.validate()
    results = run_many([(config, seed) for seed in seeds], progress)
    return aggregate_runs(results, get_fitness(config).max_fitness())


@dataclass
class SweepCell:
    c: float
    p: float
    replicates: int
    mean_final_fitness: float
    stderr_final_fitness: float
    reached_fraction: float
    mean_time_to_threshold: Optional[float]
    stderr_time_to_threshold: Optional[float]
    mean_peak_diversity: float
    stderr_peak_diversity: float
    mean_peak_iteration: float
    stderr_peak_iteration: float

    @classmethod
    def from_aggregate(cls, c: float, p: float, agg: ReplicateAggregate) -> "SweepCell":
        ttt = agg.time_to_threshold
        return cls(
            c=c,
            p=p,
            replicates=agg.replicates,
            mean_final_fitness=agg.final_fitness.mean,
            stderr_final_fitness=agg.final_fitness.stderr(agg.replicates),
            reached_fraction=agg.reached_fraction,
            mean_time_to_threshold=ttt.mean if ttt else None,
            stderr_time_to_threshold=ttt.stderr(round(agg.reached_fraction * agg.replicates)) if ttt else None,
            mean_peak_diversity=agg.peak_diversity.mean,
            stderr_peak_diversity=agg.peak_diversity.stderr(agg.replicates),
            mean_peak_iteration=agg.peak_iteration.mean,
            stderr_peak_iteration=agg.peak_iteration.stderr(agg.replicates),
        )


def sweep_seeds(base_seed: int, c_index: int, p_index: int, replicates: int) -> List[int]:
    return [derive_seed(base_seed, c_index, p_index, r) for r in range(replicates)]


def sweep(
    base_config: SimConfig,
    c_grid: Sequence[float],
    p_grid: Sequence[float],
    replicates: int,
    progress: Optional[ProgressCallback] = None,
) -> List[SweepCell]:
    """
    Replicated runs over every (C, p) pair.

    Returns:
        One SweepCell per pair, row-major in (C, p)
    """
    if not c_grid or not p_grid:
        raise ValueError("C and p grids must not be empty")
    if replicates < 1:
        raise ValueError(f"replicates must be >= 1, got {replicates}")

    cells = []
    jobs = []
    for c_index, c in enumerate(c_grid):
        for p_index, p in enumerate(p_grid):
            config = base_config.replace(creator_fraction=float(c), creator_p_invent=float(p)).validate()
            cells.append((c, p, config))
            jobs.extend((config, seed) for seed in sweep_seeds(base_config.seed, c_index, p_index, replicates))

    results = run_many(jobs, progress)
    f_max = get_fitness(base_config.validate()).max_fitness()

    out = []
    for index, (c, p, _config) in enumerate(cells):
        chunk = results[index * replicates : (index + 1) * replicates]
        out.append(SweepCell.from_aggregate(c, p, aggregate_runs(chunk, f_max)))
    return out


def homogeneous_ratio_experiment(
    base_config: SimConfig,
    p_grid: Sequence[float],
    replicates: int,
    progress: Optional[ProgressCallback] = None,
) -> List[SweepCell]:
    """Every agent equally able to invent and imitate (C = 1); sweep p only."""
    return sweep(base_config, [1.0], p_grid, replicates, progress)


def sweep_frame(cells: Sequence[SweepCell]) -> pd.DataFrame:
    return pd.DataFrame([vars(cell) for cell in cells])


def best_p_by_c(cells: Sequence[SweepCell]) -> Dict[float, float]:
    """For each C, the p with the highest mean final fitness (ties: smallest p)."""
    frame = sweep_frame(cells).sort_values(["c", "p"], kind="stable")
    best = frame.loc[frame.groupby("c", sort=True)["mean_final_fitness"].idxmax()]
    return dict(zip(best["c"], best["p"]))


def best_c_by_p(cells: Sequence[SweepCell]) -> Dict[float, float]:
    """For each p, the C with the highest mean final fitness (ties: smallest C)."""
    frame = sweep_frame(cells).sort_values(["p", "c"], kind="stable")
    best = frame.loc[frame.groupby("p", sort=True)["mean_final_fitness"].idxmax()]
    return dict(zip(best["p"], best["c"]))


def fastest_p(cells: Sequence[SweepCell]) -> Optional[float]:
    """p with the smallest mean time-to-threshold among cells where some run reached it."""
    reached = [cell for cell in cells if cell.mean_time_to_threshold is not None]
    if not reached:
        return None
    return min(reached, key=lambda cell: (cell.mean_time_to_threshold, cell.p)).p


def diversity_correlations(
    cells: Sequence[SweepCell],
    fixed_p: float = 0.5,
    fixed_c: float = 1.0,
) -> Dict[str, Optional[float]]:
    """
    Spearman correlation of mean peak diversity with C (at fixed p) and with p (at fixed C).

    Returns None for a slice with fewer than two cells or no variation.
    """
    frame = sweep_frame(cells)

    def _spearman(rows: pd.DataFrame, column: str) -> Optional[float]:
        if len(rows) < 2:
            return None
        value = rows[column].corr(rows["mean_peak_diversity"], method="spearman")
        return None if pd.isna(value) else float(value)

    return {
        "vs_c": _spearman(frame[np.isclose(frame["p"], fixed_p)], "c"),
        "vs_p": _spearman(frame[np.isclose(frame["c"], fixed_c)], "p"),
    }


@dataclass
class PairedSRResult:
    seed: int
    final_mean_fitness_sr: float
    final_mean_fitness_nosr: float
    peak_div_sr: int
    peak_div_nosr: int
    peak_iter_sr: int
    peak_iter_nosr: int
    final_seg_index_sr: float
    initial_seg_index_sr: float


@dataclass
class SRSummary:
    replicates: int
    win_rate: float
    mean_fitness_difference: float
    mean_peak_iteration_difference: float
    mean_peak_diversity_difference: float
    mean_final_seg_index: float
    mean_initial_seg_index: float


def sr_arms(base_config: SimConfig) -> Tuple[SimConfig, SimConfig]:
    """(regulated, control) configs; both start every agent at p_invent = creator_p_invent."""
    shared = base_config.replace(creator_fraction=1.0)
    return shared.replace(sr_enabled=True).validate(), shared.replace(sr_enabled=False).validate()


def sr_compare(
    base_config: SimConfig,
    seeds: Sequence[int],
    progress: Optional[ProgressCallback] = None,
) -> Tuple[List[PairedSRResult], SRSummary]:
    """
    Paired runs with and without social regulation, one pair per seed.

    Returns:
        Tuple of (per-seed pairs in seed order given, summary)
    """
    if not seeds:
        raise ValueError("need at least one seed")
    sr_config, control_config = sr_arms(base_config)
    jobs = []
    for seed in seeds:
        jobs.append((sr_config, seed))
        jobs.append((control_config, seed))
    results = run_many(jobs, progress)
    f_max = get_fitness(sr_config).max_fitness()

    pairs = []
    for index, seed in enumerate(seeds):
        sr_run, control_run = results[2 * index], results[2 * index + 1]
        sr_stats, control_stats = summarize_run(sr_run, f_max), summarize_run(control_run, f_max)
        initial = sr_run.series[0]
        pairs.append(
            PairedSRResult(
                seed=seed,
                final_mean_fitness_sr=sr_stats["final_fitness"],
                final_mean_fitness_nosr=control_stats["final_fitness"],
                peak_div_sr=sr_stats["peak_diversity"],
                peak_div_nosr=control_stats["peak_diversity"],
                peak_iter_sr=sr_stats["peak_iteration"],
                peak_iter_nosr=control_stats["peak_iteration"],
                final_seg_index_sr=sr_stats["final_seg_index"],
                initial_seg_index_sr=initial.frac_p_low + initial.frac_p_high,
            )
        )

    frame = pd.DataFrame([vars(pair) for pair in pairs])
    summary = SRSummary(
        replicates=len(pairs),
        win_rate=float((frame["final_mean_fitness_sr"] > frame["final_mean_fitness_nosr"]).mean()),
        mean_fitness_difference=float((frame["final_mean_fitness_sr"] - frame["final_mean_fitness_nosr"]).mean()),
        mean_peak_iteration_difference=float((frame["peak_iter_sr"] - frame["peak_iter_nosr"]).mean()),
        mean_peak_diversity_difference=float((frame["peak_div_sr"] - frame["peak_div_nosr"]).mean()),
        mean_final_seg_index=float(frame["final_seg_index_sr"].mean()),
        mean_initial_seg_index=float(frame["initial_seg_index_sr"].mean()),
    )
    return pairs, summary


def sr_seeds(base_seed: int, replicates: int) -> List[int]:
    """Paired seeds for sr_compare, derived like sweep seeds but on a one-index path."""
    return [derive_seed(base_seed, r) for r in range(replicates)]
