import math

import pandas as pd
import pytest

from helpers import CONFIGS_DIR
from lib.config_file import load_config
from lib.core import SimConfig
from lib.experiments import (
    SweepCell,
    aggregate_runs,
    best_c_by_p,
    best_p_by_c,
    diversity_correlations,
    fastest_p,
    homogeneous_ratio_experiment,
    run_many,
    run_replicates,
    run_sim,
    sr_compare,
    sr_seeds,
    stats_mean_std_ci,
    sweep,
    sweep_seeds,
    worker_count,
)
from lib.outputs import write_sweep, write_timeseries
from lib.reports import diversity_rise_and_fall
from lib.rng import derive_seed


def _cell(c, p, fitness=0.0, ttt=None, peak=1.0):
    return SweepCell(
        c=c,
        p=p,
        replicates=1,
        mean_final_fitness=fitness,
        stderr_final_fitness=0.0,
        reached_fraction=1.0 if ttt is not None else 0.0,
        mean_time_to_threshold=ttt,
        stderr_time_to_threshold=None,
        mean_peak_diversity=peak,
        stderr_peak_diversity=0.0,
        mean_peak_iteration=0.0,
        stderr_peak_iteration=0.0,
    )


@pytest.mark.parametrize(
    "values, mean, std, ci95",
    [
        ([1, 2, 3, 4, 5], 3.0, 1.5811388, 1.385929),
        ([2, 4], 3.0, math.sqrt(2), 1.96),
        ([1, 1, 1, 1], 1.0, 0.0, 0.0),
        ([5], 5.0, 0.0, 0.0),
        ([7.0], 7.0, 0.0, 0.0),
    ],
)
def test_stats_examples(values, mean, std, ci95):
    stats = stats_mean_std_ci(values)
    assert stats.mean == pytest.approx(mean)
    assert stats.std == pytest.approx(std, abs=1e-6)
    assert stats.ci95 == pytest.approx(ci95, abs=1e-6)


def test_stats_need_values():
    with pytest.raises(ValueError):
        stats_mean_std_ci([])


def test_run_sim_is_deterministic(small_config, tmp_path):
    first = write_timeseries(run_sim(small_config), tmp_path / "a.csv")
    second = write_timeseries(run_sim(small_config), tmp_path / "b.csv")
    assert first.read_bytes() == second.read_bytes()


def test_run_sim_seed_override(small_config):
    assert run_sim(small_config, seed=99).seed == 99
    assert run_sim(small_config, seed=99).series == run_sim(small_config.replace(seed=99)).series


def test_keep_world(small_config):
    assert run_sim(small_config).final_world is None
    world = run_sim(small_config, keep_world=True).final_world
    assert world.iteration == small_config.iterations


def test_frozen_society_every_seed():
    config = SimConfig(creator_fraction=0.0, iterations=20)
    for seed in range(5):
        result = run_sim(config, seed)
        assert all(row.mean_fitness == 0.0 and row.diversity == 1 for row in result.series)


def test_fitness_never_exceeds_the_oracle(small_config):
    for fitness_name, steps, oracle in (("ref6x3", 1, 14.0), ("chain6x3", 3, 66.0)):
        config = small_config.replace(fitness_name=fitness_name, steps_per_action=steps, sr_enabled=True)
        for seed in range(3):
            assert max(row.max_fitness for row in run_sim(config, seed).series) <= oracle


def test_invention_improves_on_the_resting_start():
    config = SimConfig(creator_fraction=1.0, creator_p_invent=0.5)
    improved = 0
    for seed in range(100):
        series = run_sim(config, seed).series
        improved += series[-1].mean_fitness > series[0].mean_fitness
    assert improved >= 95


def test_moderate_invention_settles_near_the_optimum():
    config = SimConfig(creator_fraction=1.0, creator_p_invent=0.33)
    finals = [run_sim(config, seed).final.mean_fitness for seed in range(50)]
    assert sum(final >= 0.9 * 14.0 for final in finals) >= 40


def test_heavy_invention_settles_below_the_optimum():
    # inventions keep breaking matched pairs, so p = 0.67 plateaus short of 14
    config = SimConfig(creator_fraction=1.0, creator_p_invent=0.67)
    finals = [run_sim(config, seed).final.mean_fitness for seed in range(50)]
    assert sum(final >= 0.8 * 14.0 for final in finals) >= 40
    assert sum(finals) / len(finals) < 0.9 * 14.0


def test_worker_count(monkeypatch):
    monkeypatch.setenv("EVOC_THREADS", "3")
    assert worker_count(10) == 3
    assert worker_count(2) == 2
    monkeypatch.setenv("EVOC_THREADS", "zero")
    with pytest.raises(ValueError):
        worker_count(10)
    monkeypatch.setenv("EVOC_THREADS", "0")
    with pytest.raises(ValueError):
        worker_count(10)


def test_parallel_runs_match_serial(small_config, monkeypatch):
    jobs = [(small_config, seed) for seed in range(4)]
    serial = run_many(jobs)
    monkeypatch.setenv("EVOC_THREADS", "2")
    parallel = run_many(jobs)
    assert [r.series for r in serial] == [r.series for r in parallel]


def test_sweep_independent_of_worker_count(small_config, monkeypatch, tmp_path):
    config = small_config.replace(iterations=15)
    serial = write_sweep(sweep(config, [0.5, 1.0], [0.3, 0.7], 2), tmp_path / "serial.csv")
    monkeypatch.setenv("EVOC_THREADS", "2")
    parallel = write_sweep(sweep(config, [0.5, 1.0], [0.3, 0.7], 2), tmp_path / "parallel.csv")
    assert serial.read_bytes() == parallel.read_bytes()


def test_aggregate_is_order_independent(small_config):
    results = run_many([(small_config, seed) for seed in (5, 1, 3)])
    forward = aggregate_runs(results, 14.0)
    backward = aggregate_runs(list(reversed(results)), 14.0)
    assert forward.seeds == [1, 3, 5]
    pd.testing.assert_frame_equal(forward.curves, backward.curves)
    assert forward.final_fitness == backward.final_fitness


def test_run_replicates_frozen(small_config):
    aggregate = run_replicates(small_config.replace(creator_fraction=0.0), [1, 2, 3])
    assert aggregate.replicates == 3
    assert aggregate.reached_fraction == 0.0
    assert aggregate.time_to_threshold is None
    assert (aggregate.curves["mean_fitness_mean"] == 0).all()
    assert (aggregate.curves["diversity_std"] == 0).all()
    assert len(aggregate.curves) == small_config.iterations + 1


def test_run_replicates_requires_seeds(small_config):
    with pytest.raises(ValueError):
        run_replicates(small_config, [])


def test_sweep_layout_and_seeds(small_config):
    config = small_config.replace(iterations=10)
    cells = sweep(config, [0.0, 1.0], [0.2, 0.8], 2)
    assert [(cell.c, cell.p) for cell in cells] == [(0.0, 0.2), (0.0, 0.8), (1.0, 0.2), (1.0, 0.8)]
    assert all(cell.replicates == 2 for cell in cells)
    assert cells[0].mean_final_fitness == 0.0
    assert cells[1].mean_final_fitness == 0.0
    assert sweep_seeds(7, 1, 0, 2) == [derive_seed(7, 1, 0, 0), derive_seed(7, 1, 0, 1)]


def test_sweep_cell_can_be_recomputed_alone(small_config):
    config = small_config.replace(iterations=10)
    cells = sweep(config, [0.5, 1.0], [0.3, 0.6], 3)
    alone = run_replicates(config.replace(creator_fraction=1.0, creator_p_invent=0.6), sweep_seeds(config.seed, 1, 1, 3))
    assert cells[3].mean_final_fitness == alone.final_fitness.mean


@pytest.mark.parametrize("c_grid, p_grid, replicates", [([], [0.5], 1), ([0.5], [], 1), ([0.5], [0.5], 0)])
def test_sweep_rejects_empty_inputs(small_config, c_grid, p_grid, replicates):
    with pytest.raises(ValueError):
        sweep(small_config, c_grid, p_grid, replicates)


def test_homogeneous_ratio_experiment(small_config):
    cells = homogeneous_ratio_experiment(small_config.replace(iterations=10), [0.0, 0.5], 2)
    assert [(cell.c, cell.p) for cell in cells] == [(1.0, 0.0), (1.0, 0.5)]
    assert cells[0].mean_final_fitness == 0.0
    assert cells[0].mean_time_to_threshold is None


def test_best_and_fastest_selection():
    cells = [
        _cell(0.1, 0.5, fitness=3.0, ttt=None),
        _cell(0.1, 0.9, fitness=5.0, ttt=40.0),
        _cell(1.0, 0.5, fitness=9.0, ttt=12.0),
        _cell(1.0, 0.9, fitness=9.0, ttt=30.0),
    ]
    assert best_p_by_c(cells) == {0.1: 0.9, 1.0: 0.5}
    assert best_c_by_p(cells) == {0.5: 1.0, 0.9: 1.0}
    assert fastest_p(cells) == 0.5
    assert fastest_p([_cell(1.0, 0.5)]) is None


def test_diversity_correlations():
    cells = [_cell(c, 0.5, peak=10 * c) for c in (0.2, 0.6, 1.0)] + [_cell(1.0, p, peak=20 * p) for p in (0.2, 0.9)]
    correlations = diversity_correlations(cells)
    assert correlations["vs_c"] == pytest.approx(1.0)
    assert correlations["vs_p"] == pytest.approx(1.0)
    assert diversity_correlations(cells[:1]) == {"vs_c": None, "vs_p": None}


def test_sr_compare_with_zero_delta_is_a_no_op(small_config):
    config = small_config.replace(sr_delta=0.0, iterations=15)
    pairs, summary = sr_compare(config, sr_seeds(config.seed, 3))
    assert summary.replicates == 3
    assert summary.win_rate == 0.0
    assert summary.mean_fitness_difference == 0.0
    assert summary.mean_peak_iteration_difference == 0.0
    for pair in pairs:
        assert pair.final_mean_fitness_sr == pair.final_mean_fitness_nosr
        assert pair.peak_div_sr == pair.peak_div_nosr


def test_sr_compare_single_pair(small_config):
    pairs, summary = sr_compare(small_config.replace(iterations=10), [42])
    assert [pair.seed for pair in pairs] == [42]
    assert summary.replicates == 1
    assert pairs[0].initial_seg_index_sr == 0.0
    with pytest.raises(ValueError):
        sr_compare(small_config, [])


def test_sr_seeds():
    assert sr_seeds(5, 3) == [derive_seed(5, 0), derive_seed(5, 1), derive_seed(5, 2)]


def test_best_p_by_c_breaks_ties_on_the_smallest_p():
    cells = [
        _cell(0.5, 0.9, fitness=7.0),
        _cell(0.5, 0.2, fitness=7.0),
        _cell(0.5, 0.6, fitness=7.0),
        _cell(0.1, 0.4, fitness=1.0),
    ]
    assert best_p_by_c(cells) == {0.1: 0.4, 0.5: 0.2}


@pytest.mark.parametrize("config_name", ["sr.json", "multistep_sr.json"])
def test_social_regulation_pays_off(config_name):
    experiment = load_config(CONFIGS_DIR / config_name)
    seeds = sr_seeds(experiment.sim.seed, experiment.sr_compare.replicates)
    _, summary = sr_compare(experiment.sim, seeds)
    assert summary.replicates == 30
    assert summary.win_rate >= 0.7
    assert summary.mean_fitness_difference > 0
    assert summary.mean_final_seg_index >= 0.6
    assert summary.mean_final_seg_index > summary.mean_initial_seg_index
    assert summary.mean_peak_iteration_difference < 0
    assert summary.mean_peak_diversity_difference > 0


@pytest.mark.parametrize("config_name", ["sr.json", "multistep_sr.json"])
def test_unregulated_diversity_rises_then_falls(config_name):
    experiment = load_config(CONFIGS_DIR / config_name)
    seeds = sr_seeds(experiment.sim.seed, experiment.sr_compare.replicates)
    control = run_replicates(experiment.sim.replace(creator_fraction=1.0, sr_enabled=False), seeds)
    assert diversity_rise_and_fall(control) >= 0.9
