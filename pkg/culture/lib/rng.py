"""
Deterministic random number stream for simulation runs.

SplitMix64 is small enough to write out in full (see docs/prng.md), so any
other implementation can reproduce a run bit for bit. One stream is created
per run from the run seed; agents consume draws in ascending id order.
"""

from typing import List, MutableSequence, Sequence, Tuple

import numpy as np

MASK64 = (1 << 64) - 1
GOLDEN_GAMMA = 0x9E3779B97F4A7C15
_MIX_MUL_1 = 0xBF58476D1CE4E5B9
_MIX_MUL_2 = 0x94D049BB133111EB
_INV_2_53 = 1.0 / (1 << 53)
BLOCK_SIZE = 4096


def mix64(z: int) -> int:
    """SplitMix64 output finaliser: a bijective scramble of a 64-bit integer."""
    z &= MASK64
    z = ((z ^ (z >> 30)) * _MIX_MUL_1) & MASK64
    z = ((z ^ (z >> 27)) * _MIX_MUL_2) & MASK64
    return z ^ (z >> 31)


def rng_next(state: int) -> Tuple[int, int]:
    """
    Advance a SplitMix64 state by one step.

    Args:
        state: Current 64-bit state

    Returns:
        Tuple of (new_state, 64-bit output value)
    """
    state = (state + GOLDEN_GAMMA) & MASK64
    return state, mix64(state)


def derive_seed(base_seed: int, *indices: int) -> int:
    """
    Derive an independent run seed from a base seed and a path of indices.

    Used by sweeps so any (cell, replicate) can be recomputed in isolation.
    """
    h = base_seed & MASK64
    for index in indices:
        h = mix64(h ^ (((index + 1) * GOLDEN_GAMMA) & MASK64))
    return h


def _mix64_block(start: int, count: int) -> np.ndarray:
    """Outputs of the next `count` steps from state `start`, as uint64."""
    with np.errstate(over="ignore"):
        z = np.arange(1, count + 1, dtype=np.uint64) * np.uint64(GOLDEN_GAMMA) + np.uint64(start)
        z = (z ^ (z >> np.uint64(30))) * np.uint64(_MIX_MUL_1)
        z = (z ^ (z >> np.uint64(27))) * np.uint64(_MIX_MUL_2)
        return z ^ (z >> np.uint64(31))


class SplitMix64:
    """
    Stateful SplitMix64 stream with the derived draws used by the model.

    The k-th output is mix64(seed + k * GAMMA), so outputs are computed in
    blocks with numpy and handed out one at a time. The sequence is the one
    repeated rng_next calls produce.
    """

    __slots__ = ("_seed", "draws", "_raw", "_uniform", "_offset")

    def __init__(self, seed: int):
        self._seed = seed & MASK64
        self.draws = 0
        self._raw: List[int] = []
        self._uniform: List[float] = []
        self._offset = 0

    @property
    def state(self) -> int:
        return (self._seed + self.draws * GOLDEN_GAMMA) & MASK64

    def _refill(self) -> None:
        block = _mix64_block(self.state, BLOCK_SIZE)
        self._raw = block.tolist()
        # top 53 bits are exact in a double
        self._uniform = ((block >> np.uint64(11)).astype(np.float64) * _INV_2_53).tolist()
        self._offset = 0

    def _take(self) -> int:
        if self._offset == len(self._raw):
            self._refill()
        index = self._offset
        self._offset += 1
        self.draws += 1
        return index

    def next_u64(self) -> int:
        return self._raw[self._take()]

    def uniform01(self) -> float:
        """Uniform real in [0, 1) built from the top 53 bits."""
        return self._uniform[self._take()]

    def range(self, n: int) -> int:
        """Uniform integer in [0, n)."""
        if n <= 0:
            raise ValueError(f"range bound must be positive, got {n}")
        return int(self.uniform01() * n)

    def weighted_index(self, weights: Sequence[float]) -> int:
        """Index drawn with probability proportional to weights (one draw)."""
        total = sum(weights)
        target = self.uniform01() * total
        cumulative = 0.0
        for index, weight in enumerate(weights):
            cumulative += weight
            if target < cumulative:
                return index
        # float round-off on the last bucket
        return len(weights) - 1

    def shuffle(self, items: MutableSequence) -> None:
        """Fisher-Yates shuffle in place, last index first."""
        for i in range(len(items) - 1, 0, -1):
            j = self.range(i + 1)
            items[i], items[j] = items[j], items[i]

    def sample_without_replacement(self, population: int, k: int) -> List[int]:
        """First k ids of a shuffled range(population)."""
        ids = list(range(population))
        self.shuffle(ids)
        return ids[:k]
