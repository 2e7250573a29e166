import itertools

import numpy as np
import pytest

from lib.core import SimConfig
from lib.fitness import (
    Additive6x3Landscape,
    CapacityError,
    Chain6x3Landscape,
    Ref6x3Landscape,
    all_vectors,
    alternation,
    chain_optimum_dp,
    eval_additive,
    eval_chain,
    eval_ref6x3,
    get_fitness,
    get_landscape,
    global_optimum_enumerate,
)


@pytest.mark.parametrize(
    "vector, expected",
    [
        ((0, 0, 0, 0, 0, 0), 0.0),
        ((1, 0, 0, 0, 0, 0), 1.0),
        ((0, 1, 2, 0, 0, 0), 2.0),
        ((0, 1, 1, 0, 0, 0), 6.0),
        ((0, 1, 1, 2, 2, 0), 12.0),
        ((1, 2, 2, 1, 1, 2), 14.0),
    ],
)
def test_ref6x3_values(vector, expected):
    assert eval_ref6x3(vector) == expected


def test_breaking_a_matched_pair_costs_the_bonus():
    assert eval_ref6x3((1, 1, 1, 1, 1, 1)) - eval_ref6x3((1, 2, 1, 1, 1, 1)) == 4.0
    assert eval_ref6x3((1, 1, 1, 1, 1, 1)) - eval_ref6x3((1, 0, 1, 1, 1, 1)) == 5.0


def test_wrong_part_count_rejected():
    with pytest.raises(ValueError):
        eval_ref6x3((0, 1, 1))
    with pytest.raises(ValueError):
        eval_additive((0,) * 7)


def test_alternation_and_chain():
    assert alternation((0, 1, 1, 0, 0, 0), (0, 2, 2, 0, 0, 0)) == 2
    assert alternation((0, 1, 1, 0, 0, 0), (0, 1, 0, 0, 0, 0)) == 0
    assert eval_chain(((0, 1, 1, 0, 0, 0), (0, 2, 2, 0, 0, 0))) == 16.0
    assert eval_chain(((0, 1, 1, 0, 0, 0), (0, 2, 2, 0, 0, 0)), beta=0.0) == 12.0
    with pytest.raises(ValueError):
        eval_chain(())


def test_ref6x3_oracle():
    assert global_optimum_enumerate(Ref6x3Landscape(), 6) == (14.0, 16)
    assert global_optimum_enumerate(eval_ref6x3, 6) == (14.0, 16)


def test_additive6x3_oracle():
    assert global_optimum_enumerate(Additive6x3Landscape(), 6) == (6.0, 64)


@pytest.mark.parametrize("steps, expected", [(1, 14.0), (2, 40.0), (3, 66.0)])
def test_chain_dp(steps, expected):
    assert chain_optimum_dp(steps) == expected
    assert Chain6x3Landscape(steps=steps).max_fitness() == expected


def test_chain_dp_matches_enumeration_at_two_steps():
    best, count = global_optimum_enumerate(Chain6x3Landscape(steps=2), 12)
    assert best == chain_optimum_dp(2) == 40.0
    assert count >= 1


def test_chain_dp_without_alternation_bonus():
    assert chain_optimum_dp(3, beta=0.0) == 42.0


def test_chain_dp_rejects_zero_steps():
    with pytest.raises(ValueError):
        chain_optimum_dp(0)


def test_enumeration_capacity_limit():
    with pytest.raises(CapacityError):
        global_optimum_enumerate(eval_additive, 15)


def test_batch_matches_scalar_evaluation():
    vectors = all_vectors(6, 3)
    assert vectors.shape == (729, 6)
    actions = vectors.reshape(729, 1, 6)
    expected = [eval_ref6x3(tuple(int(v) for v in row)) for row in vectors]
    np.testing.assert_array_equal(Ref6x3Landscape().evaluate_batch(actions), expected)


def test_chain_batch_matches_scalar_on_samples():
    landscape = Chain6x3Landscape(steps=3)
    rng = np.random.default_rng(0)
    actions = rng.integers(0, 3, size=(200, 3, 6))
    expected = [landscape.evaluate(tuple(tuple(int(v) for v in s) for s in a)) for a in actions]
    np.testing.assert_allclose(landscape.evaluate_batch(actions), expected)


def test_landscape_step_count_checked():
    with pytest.raises(ValueError):
        Ref6x3Landscape().evaluate(((0,) * 6, (0,) * 6))
    with pytest.raises(ValueError):
        Chain6x3Landscape(steps=3).evaluate(((0,) * 6,))


def test_registry():
    assert isinstance(get_landscape("ref6x3"), Ref6x3Landscape)
    assert get_landscape("chain6x3", steps=2, beta=1.0).beta == 1.0
    with pytest.raises(ValueError):
        get_landscape("unknown")
    with pytest.raises(ValueError):
        get_landscape("ref6x3", steps=2)


def test_get_fitness_shares_instances():
    config = SimConfig()
    assert get_fitness(config) is get_fitness(config.replace(seed=1))
    assert get_fitness(config).max_fitness() == 14.0


def test_ref6x3_ignores_which_way_parts_move():
    swap = {0: 0, 1: 2, 2: 1}
    for vector in itertools.product(range(3), repeat=6):
        assert eval_ref6x3(tuple(swap[value] for value in vector)) == eval_ref6x3(vector)


def test_ref6x3_setting_a_resting_part_in_motion_never_hurts():
    for vector in itertools.product(range(3), repeat=6):
        before = eval_ref6x3(vector)
        for part, value in enumerate(vector):
            if value:
                continue
            for moving in (1, 2):
                moved = vector[:part] + (moving,) + vector[part + 1 :]
                assert eval_ref6x3(moved) >= before + 1
