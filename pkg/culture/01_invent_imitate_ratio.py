#!/usr/bin/env python3
"""
Experiment 1: Invention to imitation ratio

Every agent can both invent and imitate (C = 1). Sweeping the shared
invention probability p shows how fast a society reaches 90% of the
optimum: imitation alone never gets started, invention alone never
consolidates. Also confirms the frozen society (p = 0).
"""

import os
import time
from pathlib import Path

from lib.core import SimConfig
from lib.experiments import fastest_p, homogeneous_ratio_experiment, run_replicates
from lib.outputs import write_sweep
from lib.reports import base_seed, check, print_banner, print_config, print_sweep_table, progress, scale_settings
from lib.rng import derive_seed

LANDSCAPES = ["ref6x3", "additive6x3"]
OUTPUT_DIR = Path("output")
SLOWDOWN_AT_P1 = 1.10


def frozen_society(replicates: int) -> bool:
    """With nobody inventing, nothing ever happens."""
    print("🔍 Frozen society: p_invent = 0 for every agent")
    config = SimConfig(creator_fraction=1.0, creator_p_invent=0.0, seed=base_seed())
    seeds = [derive_seed(base_seed(), 100, r) for r in range(replicates)]
    aggregate = run_replicates(config, seeds)
    curves = aggregate.curves
    frozen = bool((curves["mean_fitness_mean"] == 0).all() and (curves["diversity_mean"] == 1).all())
    return check("mean fitness 0 and diversity 1 at every iteration, every seed", frozen)


def ratio_sweep(fitness_name: str, p_grid, replicates: int) -> bool:
    print(f"\n📊 Homogeneous p sweep on {fitness_name}")
    config = SimConfig(fitness_name=fitness_name, seed=base_seed())
    cells = homogeneous_ratio_experiment(config, p_grid, replicates, progress(fitness_name))
    print_sweep_table(cells)
    path = write_sweep(cells, OUTPUT_DIR / f"ratio_{fitness_name}.csv")
    print(f"  💾 {path}")

    best = fastest_p(cells)
    if best is None:
        return check("some p reaches the threshold", False)
    times = {cell.p: cell.mean_time_to_threshold for cell in cells}
    best_time = times[best]
    interior = 0 < best < 1
    ok = check(f"fastest p = {best:g} lies strictly inside (0, 1)", interior, f"{best_time:.2f} iterations")

    p_one = times.get(1.0)
    if p_one is None:
        ok &= check("p = 1.0 is slower than the fastest p", True, "p = 1.0 never reached the threshold")
    else:
        ok &= check(
            f"p = 1.0 at least {SLOWDOWN_AT_P1 - 1:.0%} slower than the fastest p",
            best != 1.0 and p_one >= SLOWDOWN_AT_P1 * best_time,
            f"{p_one:.2f} vs {best_time:.2f} iterations",
        )
    ratio = best / (1 - best) if best < 1 else float("inf")
    print(f"  💡 Fastest invent:imitate ratio ≈ {ratio:.2f}:1")
    return ok


def main():
    print_banner("Experiment 1: Invention to Imitation Ratio")
    settings = scale_settings()
    os.makedirs(OUTPUT_DIR, exist_ok=True)
    print_config(SimConfig(), {"scale": settings["name"], "replicates": settings["replicates"], "p_grid": settings["p_grid"]})

    start = time.time()
    results = [frozen_society(settings["replicates"])]
    for fitness_name in LANDSCAPES:
        results.append(ratio_sweep(fitness_name, settings["p_grid"], settings["replicates"]))

    print(f"\n✅ Experiment 1 completed in {time.time() - start:.2f} seconds")
    if not all(results):
        print("❌ At least one invention ratio claim failed")
        raise SystemExit(1)


if __name__ == "__main__":
    main()
