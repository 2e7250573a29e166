#!/usr/bin/env python3
"""
Experiment 2: Creators versus creativity

Only a fraction C of agents (the creators) invent, each with probability p;
everyone else only imitates. Sweeps C x p and reports which creativity
level suits each creator fraction, and how peak diversity tracks both.
"""

import os
import time
from pathlib import Path

from lib.core import SimConfig
from lib.experiments import best_c_by_p, best_p_by_c, diversity_correlations, sweep, sweep_frame
from lib.outputs import write_sweep
from lib.plotting import render_svg
from lib.reports import base_seed, check, print_banner, print_config, print_fitness_grid, progress, scale_settings

OUTPUT_DIR = Path("output")


def main():
    print_banner("Experiment 2: Creators versus Creativity")
    settings = scale_settings()
    os.makedirs(OUTPUT_DIR, exist_ok=True)
    config = SimConfig(seed=base_seed())
    print_config(
        config,
        {
            "scale": settings["name"],
            "replicates": settings["replicates"],
            "c_grid": settings["c_grid"],
            "p_grid": settings["p_grid"],
        },
    )

    start = time.time()
    cells = sweep(config, settings["c_grid"], settings["p_grid"], settings["replicates"], progress("sweep"))
    elapsed = time.time() - start
    path = write_sweep(cells, OUTPUT_DIR / "sweep.csv")
    print(f"💾 {path}  ({len(cells)} cells in {elapsed:.2f} seconds)")

    print("\n📊 Final mean fitness by creator fraction C and creativity p:")
    print_fitness_grid(cells)

    by_c = best_p_by_c(cells)
    by_p = best_c_by_p(cells)
    print("\n📊 Best creativity p for each C:")
    for c, p in by_c.items():
        print(f"  C = {c:.2f} → p = {p:.2f}")
    print("\n📊 Best creator fraction C for each p:")
    for p, c in by_p.items():
        print(f"  p = {p:.2f} → C = {c:.2f}")

    lowest_c, highest_c = min(by_c), max(by_c)
    print("\n📋 Claims:")
    results = [
        check(
            "low C wants at least as much creativity as high C",
            by_c[lowest_c] >= by_c[highest_c],
            f"best p {by_c[lowest_c]:g} at C={lowest_c:g}, {by_c[highest_c]:g} at C={highest_c:g}",
        )
    ]

    correlations = diversity_correlations(cells)
    for key, label in (("vs_c", "C (p = 0.5)"), ("vs_p", "p (C = 1.0)")):
        rho = correlations[key]
        if rho is None:
            results.append(check(f"peak diversity rises with {label}", False, "slice missing from the grid"))
        else:
            results.append(check(f"peak diversity rises with {label}", rho > 0, f"Spearman rho = {rho:+.3f}"))

    frame = sweep_frame([cell for cell in cells if cell.c == highest_c])
    chart = render_svg(frame, ["mean_final_fitness"], title=f"Final mean fitness vs p at C = {highest_c:g}", x_column="p")
    chart_path = OUTPUT_DIR / "fitness_vs_p.svg"
    chart.write(chart_path, encoding="utf-8", xml_declaration=True)
    print(f"\n📁 {chart_path}")

    print(f"\n✅ Experiment 2 completed in {time.time() - start:.2f} seconds")
    if not all(results):
        print("❌ At least one creators versus creativity claim failed")
        raise SystemExit(1)


if __name__ == "__main__":
    main()
