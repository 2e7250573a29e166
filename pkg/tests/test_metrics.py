import pytest

from helpers import ALL_DOWN, ALL_UP, world_with
from lib.core import SimConfig
from lib.experiments import run_sim
from lib.metrics import (
    TIMESERIES_COLUMNS,
    compute_iteration_metrics,
    diversity,
    is_conformer,
    is_creator,
    max_fitness_now,
    mean_fitness,
    peak_diversity,
    segregation_index,
    summarize_run,
    time_to_threshold,
)


def test_initial_world_observables():
    world = world_with(SimConfig())
    assert diversity(world) == 1
    assert mean_fitness(world) == 0.0
    assert max_fitness_now(world) == 0.0


def test_two_idea_classes():
    world = world_with(SimConfig(), ideas={i: ALL_UP if i < 50 else ALL_DOWN for i in range(100)})
    assert diversity(world) == 2


def test_half_at_optimum():
    world = world_with(SimConfig(), ideas={i: ALL_UP for i in range(50)})
    assert mean_fitness(world) == 7.0
    assert max_fitness_now(world) == 14.0


def test_all_ideas_distinct():
    ideas = {}
    for i in range(9):
        ideas[i] = ((i // 3, i % 3, 0, 0, 0, 0),)
    world = world_with(SimConfig(grid_width=3, grid_height=3), ideas=ideas)
    assert diversity(world) == 9


@pytest.mark.parametrize(
    "p_values, expected",
    [
        ({}, (0.0, 0.0)),
        ({i: 0.0 if i < 50 else 1.0 for i in range(100)}, (0.5, 0.5)),
        ({i: 0.05 for i in range(100)}, (1.0, 0.0)),
    ],
)
def test_segregation_index(p_values, expected):
    world = world_with(SimConfig(creator_p_invent=0.5), p_invent=p_values)
    assert segregation_index(world) == expected


def test_band_edges_survive_additive_steps():
    assert is_conformer(0.5 - 0.1 - 0.1 - 0.1 - 0.1)
    assert is_creator(0.5 + 0.1 + 0.1 + 0.1 + 0.1)
    assert not is_conformer(0.2)
    assert not is_creator(0.8)


def test_iteration_metrics_of_initial_world():
    world = world_with(SimConfig(creator_fraction=0.0))
    metrics = compute_iteration_metrics(world)
    assert (metrics.iteration, metrics.mean_fitness, metrics.max_fitness, metrics.diversity) == (0, 0.0, 0.0, 1)
    assert (metrics.mean_p_invent, metrics.frac_p_low, metrics.frac_p_high) == (0.0, 1.0, 0.0)


def test_time_to_threshold():
    assert time_to_threshold([0, 5, 13, 14], 0.9, 14) == 2
    assert time_to_threshold([0, 5, 6], 0.9, 14) is None
    assert time_to_threshold([0, 0, 0], 0.5, 0) == 0


@pytest.mark.parametrize("theta", [0.0, 1.5, -0.1])
def test_time_to_threshold_rejects_bad_theta(theta):
    with pytest.raises(ValueError):
        time_to_threshold([0, 1], theta, 14)


@pytest.mark.parametrize(
    "series, expected",
    [
        ([1, 40, 80, 60, 20], (2, 80)),
        ([1, 1, 1], (0, 1)),
        ([1, 5, 5, 2], (1, 5)),
    ],
)
def test_peak_diversity(series, expected):
    assert peak_diversity(series) == expected


def test_peak_diversity_rejects_empty_series():
    with pytest.raises(ValueError):
        peak_diversity([])


def test_run_series_shape_and_summary(small_config):
    result = run_sim(small_config)
    assert len(result.series) == small_config.iterations + 1
    assert [row.iteration for row in result.series] == list(range(small_config.iterations + 1))
    assert list(result.to_frame()[TIMESERIES_COLUMNS].columns) == TIMESERIES_COLUMNS
    assert result.series[0].diversity == 1

    summary = summarize_run(result, 14.0)
    assert summary["seed"] == small_config.seed
    assert summary["final_fitness"] == result.final.mean_fitness
    assert summary["peak_diversity"] == max(row.diversity for row in result.series)
    assert 0.0 <= summary["final_seg_index"] <= 1.0


@pytest.mark.parametrize("fitness_name, steps, oracle", [("ref6x3", 1, 14.0), ("chain6x3", 3, 66.0)])
@pytest.mark.parametrize("sr_enabled", [False, True])
def test_mean_below_max_below_oracle(small_config, fitness_name, steps, oracle, sr_enabled):
    config = small_config.replace(fitness_name=fitness_name, steps_per_action=steps, sr_enabled=sr_enabled)
    for seed in range(3):
        for row in run_sim(config, seed).series:
            assert row.mean_fitness <= row.max_fitness <= oracle


def test_time_to_threshold_grows_with_theta(small_config):
    thetas = [round(0.05 * i, 2) for i in range(1, 21)]
    for seed in range(4):
        series = [row.mean_fitness for row in run_sim(small_config, seed).series]
        times = [time_to_threshold(series, theta, 14.0) for theta in thetas]
        for lower, higher in zip(times, times[1:]):
            if lower is None:
                assert higher is None
            elif higher is not None:
                assert higher >= lower


@pytest.mark.parametrize("creator_fraction, creator_p_invent", [(0.5, 0.5), (0.3, 0.9), (1.0, 0.1)])
def test_bands_stay_put_without_regulation(small_config, creator_fraction, creator_p_invent):
    config = small_config.replace(creator_fraction=creator_fraction, creator_p_invent=creator_p_invent)
    series = run_sim(config).series
    first = series[0]
    for row in series:
        assert row.frac_p_low == first.frac_p_low
        assert row.frac_p_high == first.frac_p_high
        assert row.mean_p_invent == first.mean_p_invent
