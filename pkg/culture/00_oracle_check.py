#!/usr/bin/env python3
"""
Experiment 0: Landscape oracles

Computes the exact optimum of every landscape by exhaustive enumeration and,
for the chained landscape, by dynamic programming over steps. Then checks
that a handful of simulated runs never report a fitness above the oracle.
"""

import time

from lib.core import SimConfig
from lib.experiments import run_many
from lib.fitness import (
    Additive6x3Landscape,
    Chain6x3Landscape,
    Ref6x3Landscape,
    chain_optimum_dp,
    global_optimum_enumerate,
    get_landscape,
)
from lib.reports import base_seed, check, print_banner, scale_settings
from lib.rng import derive_seed

EXPECTED_ENUMERATION = {
    "ref6x3": (14.0, 16),
    "additive6x3": (6.0, 64),
}
EXPECTED_CHAIN = {1: 14.0, 2: 40.0, 3: 66.0}


def check_single_step_landscapes() -> bool:
    print("🔍 Enumerating single-step landscapes (3^6 = 729 actions)...")
    ok = True
    for landscape in (Ref6x3Landscape(), Additive6x3Landscape()):
        best, count = global_optimum_enumerate(landscape, landscape.parts)
        expected = EXPECTED_ENUMERATION[landscape.name]
        ok &= check(f"{landscape.name}: max={best:g} optima_count={count}", (best, count) == expected, f"expected {expected}")
    return ok


def check_chain_landscape() -> bool:
    print("\n🔍 Chained landscape (beta = 2): dynamic programming vs enumeration")
    print(f"  {'T':>3} {'DP max':>8} {'enumerated':>11} {'optima':>8}")
    ok = True
    for steps, expected in EXPECTED_CHAIN.items():
        dp_max = chain_optimum_dp(steps)
        enumerated = "-"
        optima = "-"
        if steps <= 2:
            landscape = Chain6x3Landscape(steps=steps)
            best, count = global_optimum_enumerate(landscape, landscape.parts * steps)
            enumerated, optima = f"{best:g}", str(count)
            ok &= best == dp_max
        print(f"  {steps:>3} {dp_max:>8g} {enumerated:>11} {optima:>8}")
        ok &= dp_max == expected
    check("DP agrees with enumeration and with the closed-form optima", ok)
    return ok


def check_runs_bounded(replicates: int) -> bool:
    print(f"\n🔍 Simulated runs never exceed the oracle ({replicates} seeds per landscape)...")
    configs = [
        SimConfig(fitness_name="ref6x3"),
        SimConfig(fitness_name="additive6x3"),
        SimConfig(fitness_name="chain6x3", steps_per_action=3, sr_enabled=True),
    ]
    ok = True
    for index, config in enumerate(configs):
        oracle = get_landscape(config.fitness_name, config.steps_per_action, config.chain_beta).max_fitness()
        seeds = [derive_seed(base_seed(), 900 + index, r) for r in range(replicates)]
        results = run_many([(config.validate(), seed) for seed in seeds])
        observed = max(row.max_fitness for result in results for row in result.series)
        label = f"{config.fitness_name} (T={config.steps_per_action})"
        ok &= check(f"{label}: highest fitness seen {observed:g} <= oracle {oracle:g}", observed <= oracle + 1e-9)
    return ok


def main():
    print_banner("Experiment 0: Landscape Oracles")
    settings = scale_settings()
    start = time.time()

    results = [
        check_single_step_landscapes(),
        check_chain_landscape(),
        check_runs_bounded(settings["replicates"]),
    ]

    print(f"\n✅ Oracle checks completed in {time.time() - start:.2f} seconds")
    if not all(results):
        print("❌ At least one exact oracle check failed")
        raise SystemExit(1)


if __name__ == "__main__":
    main()
