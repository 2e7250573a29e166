"""
Console reporting shared by the numbered experiment scripts and the CLI.
"""

import os
import sys
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence

# Add project root to path for config import
sys.path.insert(0, str(Path(__file__).parent.parent.parent))
from config import DEFAULT_SEED, EXPERIMENT_SCALE_ENV_VAR, EXPERIMENT_SCALES

from .core import SimConfig
from .experiments import (
    ReplicateAggregate,
    SRSummary,
    SweepCell,
    run_replicates,
    run_sim,
    sr_compare,
    sr_seeds,
)
from .outputs import write_sr_pairs, write_sr_summary, write_timeseries
from .plotting import plot_csv
from .snapshot import segregation_map


def scale_settings() -> Dict[str, Any]:
    """Replicates and grids for the scale named by EXPERIMENT_SCALE (default: quick)."""
    name = os.environ.get(EXPERIMENT_SCALE_ENV_VAR, "quick")
    if name not in EXPERIMENT_SCALES:
        raise ValueError(f"{EXPERIMENT_SCALE_ENV_VAR} must be one of {sorted(EXPERIMENT_SCALES)}, got {name!r}")
    settings = dict(EXPERIMENT_SCALES[name])
    settings["name"] = name
    return settings


def base_seed() -> int:
    return DEFAULT_SEED


def print_banner(title: str) -> None:
    print("=" * 60)
    print(title)
    print("=" * 60)


def print_config(config: SimConfig, extra: Optional[Dict[str, Any]] = None) -> None:
    print("Configuration:")
    for key, value in config.to_dict().items():
        print(f"  {key}: {value}")
    for key, value in (extra or {}).items():
        print(f"  {key}: {value}")
    print()


def check(claim: str, passed: bool, detail: str = "") -> bool:
    """Print one qualitative claim with its outcome."""
    mark = "✅" if passed else "⚠️ "
    suffix = f" ({detail})" if detail else ""
    print(f"  {mark} {claim}{suffix}")
    return passed


def progress(label: str):
    def report(done: int, total: int) -> None:
        if done == total or done % max(1, total // 10) == 0:
            print(f"  ⏳ {label}: {done}/{total} runs", flush=True)

    return report


def _opt(value: Optional[float], width: int = 10, digits: int = 2) -> str:
    return f"{'-':>{width}}" if value is None else f"{value:>{width}.{digits}f}"


def print_sweep_table(cells: Sequence[SweepCell]) -> None:
    print(f"  {'C':>5} {'p':>5} {'final fit':>10} {'±se':>7} {'reached':>8} {'t_thresh':>10} {'peak div':>9} {'peak it':>8}")
    print(f"  {'-' * 5} {'-' * 5} {'-' * 10} {'-' * 7} {'-' * 8} {'-' * 10} {'-' * 9} {'-' * 8}")
    for cell in cells:
        print(
            f"  {cell.c:>5.2f} {cell.p:>5.2f} {cell.mean_final_fitness:>10.3f} {cell.stderr_final_fitness:>7.3f}"
            f" {cell.reached_fraction:>8.2f} {_opt(cell.mean_time_to_threshold)} {cell.mean_peak_diversity:>9.1f}"
            f" {cell.mean_peak_iteration:>8.1f}"
        )


def print_fitness_grid(cells: Sequence[SweepCell]) -> None:
    """Final mean fitness as a C (rows) x p (columns) grid."""
    c_values: List[float] = sorted({cell.c for cell in cells})
    p_values: List[float] = sorted({cell.p for cell in cells})
    lookup = {(cell.c, cell.p): cell.mean_final_fitness for cell in cells}
    print("  C \\ p " + "".join(f"{p:>7.2f}" for p in p_values))
    for c in c_values:
        print(f"  {c:>5.2f} " + "".join(_opt(lookup.get((c, p)), width=7, digits=2) for p in p_values))


def print_sr_summary(summary: SRSummary) -> None:
    print(f"  Paired seeds:                     {summary.replicates}")
    print(f"  SR win rate (final fitness):      {summary.win_rate:.3f}")
    print(f"  Mean fitness difference (SR-ctl): {summary.mean_fitness_difference:+.3f}")
    print(f"  Mean peak-iteration difference:   {summary.mean_peak_iteration_difference:+.2f}")
    print(f"  Mean peak-diversity difference:   {summary.mean_peak_diversity_difference:+.2f}")
    print(f"  Segregation index, iteration 0:   {summary.mean_initial_seg_index:.3f}")
    print(f"  Segregation index, final:         {summary.mean_final_seg_index:.3f}")


def diversity_rise_and_fall(aggregate: ReplicateAggregate) -> float:
    """Fraction of runs whose diversity peaks after iteration 0 and ends below the peak."""
    runs = aggregate.runs
    rising = (runs["peak_iteration"] > 0) & (runs["final_diversity"] < runs["peak_diversity"])
    return float(rising.mean())


def social_regulation_study(config: SimConfig, replicates: int, output_dir: Path, tag: str) -> bool:
    """
    Diversity pattern of the unregulated society, then the paired SR comparison
    with segregation and diversity-timing claims. Writes sr_pairs/sr_summary
    CSVs, one SR time series with its chart, and a segregation map.

    Returns:
        True when every claim held
    """
    seeds = sr_seeds(config.seed, replicates)
    ok = True

    print(f"🔍 Diversity over time without regulation (C = 1, p = {config.creator_p_invent:g})")
    control = run_replicates(config.replace(creator_fraction=1.0, sr_enabled=False), seeds, progress("control"))
    fraction = diversity_rise_and_fall(control)
    ok &= check("diversity rises then falls in at least 90% of runs", fraction >= 0.9, f"{fraction:.0%} of runs")

    print(f"\n🔍 Paired comparison with and without social regulation (delta = {config.sr_delta:g})")
    pairs, summary = sr_compare(config, seeds, progress("sr-compare"))
    print_sr_summary(summary)
    written = [
        write_sr_pairs(pairs, output_dir / f"sr_pairs_{tag}.csv"),
        write_sr_summary(summary, output_dir / f"sr_summary_{tag}.csv"),
    ]

    print("\n📋 Claims:")
    ok &= check(
        "SR raises final mean fitness in at least 70% of pairs",
        summary.win_rate >= 0.7 and summary.mean_fitness_difference > 0,
        f"win rate {summary.win_rate:.2f}, mean difference {summary.mean_fitness_difference:+.3f}",
    )
    ok &= check(
        "SR splits the society into conformers and creators",
        summary.mean_final_seg_index >= 0.6 and summary.mean_final_seg_index > summary.mean_initial_seg_index,
        f"{summary.mean_initial_seg_index:.2f} → {summary.mean_final_seg_index:.2f}",
    )
    ok &= check(
        "diversity peaks earlier under SR",
        summary.mean_peak_iteration_difference < 0,
        f"{summary.mean_peak_iteration_difference:+.2f} iterations",
    )
    ok &= check(
        "diversity peaks higher under SR",
        summary.mean_peak_diversity_difference > 0,
        f"{summary.mean_peak_diversity_difference:+.2f} ideas",
    )

    sr_config = config.replace(creator_fraction=1.0, sr_enabled=True).validate()
    example = run_sim(sr_config, seeds[0], keep_world=True)
    timeseries = write_timeseries(example, output_dir / f"timeseries_sr_{tag}.csv")
    chart = plot_csv(timeseries, output_dir / f"segregation_sr_{tag}.svg", ["mean_p_invent", "frac_p_low", "frac_p_high"])
    written.extend([timeseries, chart])

    world = example.final_world
    print(f"\n📊 Final society under SR, seed {seeds[0]} ('C' creator, '.' conformer, 'o' in between):")
    grid = segregation_map([agent.p_invent for agent in world.agents], world.width)
    for row in grid.splitlines():
        print(f"  {row}")

    print()
    for path in written:
        print(f"📁 {path}")
    return ok
