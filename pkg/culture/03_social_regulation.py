#!/usr/bin/env python3
"""
Experiment 3: Social regulation

Agents whose inventions beat the society's previous average become more
inventive, and those whose inventions fall short become more imitative.
Compares paired runs with and without that feedback on the single-step
reference landscape.
"""

import os
import sys
import time
from pathlib import Path

# Add project root to path for config import
sys.path.insert(0, str(Path(__file__).parent.parent))
from config import SR_DELTAS

from lib.core import SimConfig
from lib.reports import base_seed, print_banner, print_config, scale_settings, social_regulation_study

OUTPUT_DIR = Path("output")


def main():
    print_banner("Experiment 3: Social Regulation")
    settings = scale_settings()
    os.makedirs(OUTPUT_DIR, exist_ok=True)
    config = SimConfig(creator_fraction=1.0, creator_p_invent=0.5, sr_delta=SR_DELTAS["ref6x3"], seed=base_seed())
    print_config(config, {"scale": settings["name"], "paired seeds": settings["replicates"]})

    start = time.time()
    ok = social_regulation_study(config, settings["replicates"], OUTPUT_DIR, "ref6x3")
    print(f"\n✅ Experiment 3 completed in {time.time() - start:.2f} seconds")
    if not ok:
        print("❌ At least one social regulation claim failed")
        raise SystemExit(1)


if __name__ == "__main__":
    main()
