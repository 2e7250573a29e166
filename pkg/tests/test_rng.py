import pytest

from lib.rng import BLOCK_SIZE, MASK64, SplitMix64, derive_seed, mix64, rng_next


def test_reference_outputs_for_seed_zero():
    rng = SplitMix64(0)
    assert [rng.next_u64() for _ in range(3)] == [
        0xE220A8397B1DCDAF,
        0x6E789E6AA1B965F4,
        0x06C45D188009454F,
    ]


def test_rng_next_matches_stateful_stream():
    rng = SplitMix64(42)
    state = 42
    for _ in range(5):
        state, value = rng_next(state)
        assert rng.next_u64() == value
    assert rng.state == state
    assert rng.draws == 5


def test_stream_is_seamless_across_blocks():
    rng = SplitMix64(2**64 - 5)
    state = 2**64 - 5
    for _ in range(BLOCK_SIZE + 10):
        state, value = rng_next(state)
        if rng.draws % 2:
            assert rng.uniform01() == (value >> 11) * 2.0**-53
        else:
            assert rng.next_u64() == value
    assert rng.state == state


def test_negative_seed_wraps_to_64_bits():
    assert SplitMix64(-1).state == MASK64


def test_same_seed_same_stream():
    a, b = SplitMix64(20150201), SplitMix64(20150201)
    assert [a.uniform01() for _ in range(100)] == [b.uniform01() for _ in range(100)]


def test_uniform01_in_unit_interval():
    rng = SplitMix64(3)
    values = [rng.uniform01() for _ in range(10_000)]
    assert all(0.0 <= v < 1.0 for v in values)
    assert abs(sum(values) / len(values) - 0.5) < 0.02


def test_range_bounds_and_frequencies():
    rng = SplitMix64(11)
    counts = [0, 0, 0]
    for _ in range(10_000):
        counts[rng.range(3)] += 1
    for count in counts:
        assert abs(count / 10_000 - 1 / 3) < 0.02


@pytest.mark.parametrize("n", [0, -1])
def test_range_rejects_non_positive_bound(n):
    with pytest.raises(ValueError):
        SplitMix64(1).range(n)


def test_every_derived_draw_consumes_one_output():
    rng = SplitMix64(5)
    rng.uniform01()
    rng.range(7)
    rng.weighted_index([1.0, 2.0, 3.0])
    assert rng.draws == 3


def test_weighted_index_never_picks_zero_weight():
    rng = SplitMix64(9)
    picks = {rng.weighted_index([0.0, 1.0, 0.0]) for _ in range(200)}
    assert picks == {1}


def test_weighted_index_proportions():
    rng = SplitMix64(17)
    hits = sum(1 for _ in range(10_000) if rng.weighted_index([11.0, 1.0, 1.0]) == 0)
    assert abs(hits / 10_000 - 11 / 13) < 0.02


def test_shuffle_is_a_permutation_and_uses_n_minus_one_draws():
    rng = SplitMix64(23)
    items = list(range(100))
    rng.shuffle(items)
    assert sorted(items) == list(range(100))
    assert items != list(range(100))
    assert rng.draws == 99


def test_sample_without_replacement():
    sample = SplitMix64(31).sample_without_replacement(100, 15)
    assert len(sample) == len(set(sample)) == 15
    assert all(0 <= i < 100 for i in sample)


def test_derive_seed_is_deterministic_and_path_sensitive():
    assert derive_seed(123) == 123
    assert derive_seed(123, 0, 1) == derive_seed(123, 0, 1)
    seeds = {derive_seed(123, c, p, r) for c in range(3) for p in range(3) for r in range(3)}
    assert len(seeds) == 27
    assert derive_seed(123, 0, 1) != derive_seed(123, 1, 0)
    assert derive_seed(123, 0) == mix64(123 ^ 0x9E3779B97F4A7C15)
