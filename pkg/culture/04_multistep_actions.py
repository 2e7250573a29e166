#!/usr/bin/env python3
"""
Experiment 4: Multi-step actions

Repeats the social regulation study with three-step actions on the chained
landscape, where fitness also rewards limbs that keep moving between steps.
"""

import os
import sys
import time
from pathlib import Path

# Add project root to path for config import
sys.path.insert(0, str(Path(__file__).parent.parent))
from config import SR_DELTAS

from lib.core import SimConfig
from lib.fitness import chain_optimum_dp
from lib.reports import base_seed, print_banner, print_config, scale_settings, social_regulation_study

OUTPUT_DIR = Path("output")
STEPS = 3


def main():
    print_banner("Experiment 4: Multi-Step Actions")
    settings = scale_settings()
    os.makedirs(OUTPUT_DIR, exist_ok=True)
    config = SimConfig(
        fitness_name="chain6x3", steps_per_action=STEPS, sr_delta=SR_DELTAS["chain6x3"], seed=base_seed()
    )
    print_config(
        config,
        {
            "scale": settings["name"],
            "paired seeds": settings["replicates"],
            "oracle max": chain_optimum_dp(STEPS, config.chain_beta),
        },
    )

    start = time.time()
    ok = social_regulation_study(config, settings["replicates"], OUTPUT_DIR, f"chain6x3_t{STEPS}")
    print(f"\n✅ Experiment 4 completed in {time.time() - start:.2f} seconds")
    if not ok:
        print("❌ At least one social regulation claim failed")
        raise SystemExit(1)


if __name__ == "__main__":
    main()
