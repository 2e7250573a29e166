#!/usr/bin/env python3
"""
Command-line front end for the cultural evolution simulator.

Subcommands:
- run:        one run, writes timeseries.csv, acquisitions.csv, run_meta.json
              and a compressed snapshot of the final world
- sweep:      replicated (C, p) sweep, writes sweep.csv
- sr-compare: paired runs with/without social regulation, writes sr_pairs.csv
              and sr_summary.csv
- oracle:     exact optimum of a fitness landscape
- plot:       SVG line chart of CSV columns
- reproduce:  runs the numbered experiment scripts in order

Exit codes: 0 success, 2 usage or configuration error, 3 I/O error.
"""

import argparse
import os
import subprocess
import sys
import time
from pathlib import Path
from typing import Any, Dict, List, Optional

# Add project root to path for config import
sys.path.insert(0, str(Path(__file__).parent.parent))
from config import EXPERIMENT_SCALE_ENV_VAR, EXPERIMENT_SCALES

from lib.config_file import ConfigError, ExperimentConfig, load_config
from lib.experiments import run_sim, sr_compare, sr_seeds, sweep
from lib.fitness import Chain6x3Landscape, get_landscape, global_optimum_enumerate
from lib.outputs import (
    write_acquisitions,
    write_run_meta,
    write_sr_pairs,
    write_sr_summary,
    write_sweep,
    write_timeseries,
)
from lib.plotting import PlotError, plot_csv
from lib.reports import progress
from lib.snapshot import save_snapshot

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_IO = 3

SCRIPT_DIR = Path(__file__).parent

EXPERIMENT_PHASES = [
    (0, "Landscape Oracles", "00_oracle_check.py"),
    (1, "Invent:Imitate Ratio", "01_invent_imitate_ratio.py"),
    (2, "Creators vs Creativity", "02_creators_vs_creativity.py"),
    (3, "Social Regulation", "03_social_regulation.py"),
    (4, "Multi-Step Actions", "04_multistep_actions.py"),
]


def _format_value(value: float) -> str:
    return str(int(value)) if float(value).is_integer() else f"{value:g}"


def _output_dir(args: argparse.Namespace, experiment: ExperimentConfig) -> Path:
    out = Path(args.out or experiment.output_dir or "output")
    os.makedirs(out, exist_ok=True)
    return out


def cmd_run(args: argparse.Namespace) -> int:
    experiment = load_config(args.config)
    config = experiment.sim
    seed = config.seed if args.seed is None else args.seed
    config = config.replace(seed=seed).validate()
    out = _output_dir(args, experiment)

    print(f"🚀 Running {config.grid_width}x{config.grid_height} society for {config.iterations} iterations (seed {seed})")
    result = run_sim(config, seed, keep_world=True)

    written = [
        write_timeseries(result, out / "timeseries.csv"),
        write_acquisitions(result, out / "acquisitions.csv"),
        write_run_meta(config, seed, out / "run_meta.json"),
    ]
    snapshot_path, snapshot_size = save_snapshot(result.final_world, out / "final_world.msgpack.zst")
    written.append(snapshot_path)

    final = result.final
    print(f"📊 Final mean fitness: {final.mean_fitness:.3f}  diversity: {final.diversity}  mean p_invent: {final.mean_p_invent:.3f}")
    for path in written:
        print(f"📁 {path}")
    print(f"💾 Snapshot size: {snapshot_size:,} bytes")
    return EXIT_OK


def cmd_sweep(args: argparse.Namespace) -> int:
    experiment = load_config(args.config)
    if experiment.sweep is None:
        raise ConfigError("sweep", "block missing from config")
    settings = experiment.sweep
    out = _output_dir(args, experiment)

    cells_total = len(settings.c_grid) * len(settings.p_grid)
    print(f"🚀 Sweeping {cells_total} (C, p) cells x {settings.replicates} replicates")
    start = time.time()
    cells = sweep(experiment.sim, settings.c_grid, settings.p_grid, settings.replicates, progress("sweep"))
    path = write_sweep(cells, out / "sweep.csv")
    print(f"✅ Sweep completed in {time.time() - start:.2f} seconds")
    print(f"📁 {path}")
    return EXIT_OK


def cmd_sr_compare(args: argparse.Namespace) -> int:
    experiment = load_config(args.config)
    if experiment.sr_compare is None:
        raise ConfigError("sr_compare", "block missing from config")
    settings = experiment.sr_compare
    out = _output_dir(args, experiment)

    if args.replicates is not None:
        if args.replicates < 1:
            raise ConfigError("replicates", f"must be >= 1, got {args.replicates}")
        seeds = sr_seeds(experiment.sim.seed, args.replicates)
    else:
        seeds = settings.seeds or sr_seeds(experiment.sim.seed, settings.replicates)

    print(f"🚀 Comparing social regulation on {len(seeds)} paired seeds (delta={experiment.sim.sr_delta})")
    pairs, summary = sr_compare(experiment.sim, seeds, progress("sr-compare"))
    written = [write_sr_pairs(pairs, out / "sr_pairs.csv"), write_sr_summary(summary, out / "sr_summary.csv")]
    print(f"📊 SR win rate: {summary.win_rate:.3f}  mean fitness difference: {summary.mean_fitness_difference:+.3f}")
    for path in written:
        print(f"📁 {path}")
    return EXIT_OK


def cmd_oracle(args: argparse.Namespace) -> int:
    try:
        landscape = get_landscape(args.fitness, steps=args.steps, beta=args.beta)
    except ValueError as e:
        raise ConfigError("fitness", str(e))

    if isinstance(landscape, Chain6x3Landscape):
        print(f"max={_format_value(landscape.max_fitness())}")
    else:
        best, count = global_optimum_enumerate(landscape, landscape.parts * landscape.steps)
        print(f"max={_format_value(best)} optima_count={count}")
    return EXIT_OK


def cmd_plot(args: argparse.Namespace) -> int:
    columns = [column.strip() for column in args.columns.split(",") if column.strip()]
    path = plot_csv(args.input, args.out, columns)
    print(f"📁 {path}")
    return EXIT_OK


def run_phase(phase_number: int, phase_name: str, script_name: str, scale: str) -> Dict[str, Any]:
    """
    Run one numbered experiment script as a subprocess and capture its result.

    Returns:
        Dictionary with phase results
    """
    print(f"\n{'=' * 80}")
    print(f"RUNNING EXPERIMENT {phase_number}: {phase_name}")
    print(f"{'=' * 80}")

    start_time = time.time()
    env = dict(os.environ, **{EXPERIMENT_SCALE_ENV_VAR: scale})
    result = subprocess.run(
        [sys.executable, script_name], capture_output=True, text=True, cwd=str(SCRIPT_DIR), env=env
    )
    execution_time = time.time() - start_time
    print(result.stdout)
    if result.stderr:
        print(f"STDERR: {result.stderr}")

    if result.returncode != 0:
        print(f"❌ Experiment {phase_number} failed with return code {result.returncode}")
        return {
            "phase": phase_number,
            "name": phase_name,
            "error": f"Failed with return code {result.returncode}",
            "execution_time": execution_time,
            "status": "failed",
        }

    print(f"\n✅ Experiment {phase_number} completed in {execution_time:.2f} seconds")
    return {"phase": phase_number, "name": phase_name, "execution_time": execution_time, "status": "success"}


def cmd_reproduce(args: argparse.Namespace) -> int:
    print(f"🚀 Reproducing the experiment families at scale '{args.scale}'")
    selected = [phase for phase in EXPERIMENT_PHASES if args.only is None or phase[0] in args.only]
    results: List[Dict[str, Any]] = []
    for phase_number, phase_name, script_name in selected:
        results.append(run_phase(phase_number, phase_name, script_name, args.scale))

    print(f"\n📋 Experiment Summary:")
    total_time = 0.0
    for result in results:
        status = "✅ SUCCESS" if result["status"] == "success" else "❌ FAILED"
        total_time += result["execution_time"]
        print(f"  Experiment {result['phase']}: {result['name']:<28} {status}  {result['execution_time']:.2f}s")
    print(f"\n  Total execution time: {total_time:.2f} seconds")
    return EXIT_OK if all(r["status"] == "success" for r in results) else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(description="Agent-based simulator of invention and imitation in cultural evolution")
    subparsers = parser.add_subparsers(dest="command", required=True)

    run = subparsers.add_parser("run", help="Single run with time series output")
    run.add_argument("--config", required=True, help="JSON config file")
    run.add_argument("--seed", type=int, default=None, help="Override the config seed")
    run.add_argument("--out", default=None, help="Output directory (default: config output_dir or ./output)")
    run.set_defaults(handler=cmd_run)

    sweep_cmd = subparsers.add_parser("sweep", help="Replicated (C, p) sweep")
    sweep_cmd.add_argument("--config", required=True, help="JSON config file with a sweep block")
    sweep_cmd.add_argument("--out", default=None, help="Output directory")
    sweep_cmd.set_defaults(handler=cmd_sweep)

    sr = subparsers.add_parser("sr-compare", help="Paired comparison with and without social regulation")
    sr.add_argument("--config", required=True, help="JSON config file with an sr_compare block")
    sr.add_argument("--replicates", type=int, default=None, help="Override the number of paired seeds")
    sr.add_argument("--out", default=None, help="Output directory")
    sr.set_defaults(handler=cmd_sr_compare)

    oracle = subparsers.add_parser("oracle", help="Exact optimum of a fitness landscape")
    oracle.add_argument("--fitness", required=True, help="Landscape name (ref6x3, additive6x3, chain6x3)")
    oracle.add_argument("--steps", type=int, default=1, help="Steps per action for chain landscapes")
    oracle.add_argument("--beta", type=float, default=2.0, help="Alternation weight for chain landscapes")
    oracle.set_defaults(handler=cmd_oracle)

    plot = subparsers.add_parser("plot", help="SVG line chart of CSV columns over iteration")
    plot.add_argument("--in", dest="input", required=True, help="Input CSV")
    plot.add_argument("--out", required=True, help="Output SVG")
    plot.add_argument("--columns", required=True, help="Comma-separated column names")
    plot.set_defaults(handler=cmd_plot)

    reproduce = subparsers.add_parser("reproduce", help="Run the numbered experiment scripts")
    reproduce.add_argument("--scale", choices=sorted(EXPERIMENT_SCALES), default="quick", help="Experiment scale")
    reproduce.add_argument("--only", type=int, nargs="+", default=None, help="Experiment numbers to run")
    reproduce.set_defaults(handler=cmd_reproduce)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.handler(args)
    except (ConfigError, PlotError) as e:
        print(f"❌ {e}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as e:
        print(f"❌ I/O error: {e}", file=sys.stderr)
        return EXIT_IO
    except ValueError as e:
        print(f"❌ {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
