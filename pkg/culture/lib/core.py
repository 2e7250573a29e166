"""
Domain types and world construction for the cultural evolution simulator.

An agent lives on one cell of a toroidal grid and holds a single idea for an
action: T steps of K body-part states. Agents never move, die or reproduce;
only their ideas, the fitness of those ideas, their invention probability
and their learned trend model change over a run.
"""

import math
import sys
import dataclasses
from dataclasses import asdict, dataclass, field
from enum import Enum, IntEnum
from functools import lru_cache
from pathlib import Path
from typing import Any, Dict, List, Tuple, Union

import numpy as np

# Add project root to path for config import
sys.path.insert(0, str(Path(__file__).parent.parent.parent))
from config import DEFAULT_SEED

from .rng import MASK64, SplitMix64

ActionVector = Tuple[int, ...]
Action = Tuple[ActionVector, ...]  # T steps; T = 1 for single-step landscapes


class ConfigError(ValueError):
    """Invalid run configuration. The message starts with the offending field name."""

    def __init__(self, field_name: str, message: str):
        super().__init__(f"{field_name}: {message}")
        self.field_name = field_name


class PartState(IntEnum):
    REST = 0
    UP = 1
    DOWN = 2


PART_VALUES = len(PartState)


class Neighborhood(str, Enum):
    VON_NEUMANN = "von_neumann"
    MOORE = "moore"


@dataclass(frozen=True)
class SimConfig:
    """All parameters of a single run. Call validate() before use."""

    grid_width: int = 10
    grid_height: int = 10
    parts: int = 6
    steps_per_action: int = 1
    creator_fraction: float = 1.0
    creator_p_invent: float = 0.5
    mutation_rate: float = 1.0 / 6.0
    trend_bias_enabled: bool = True
    sr_enabled: bool = False
    sr_delta: float = 0.1
    neighborhood: Neighborhood = Neighborhood.VON_NEUMANN
    iterations: int = 100
    threshold_fraction: float = 0.9
    seed: int = DEFAULT_SEED
    fitness_name: str = "ref6x3"
    chain_beta: float = 2.0

    @property
    def num_agents(self) -> int:
        return self.grid_width * self.grid_height

    @property
    def num_creators(self) -> int:
        # round half up, tolerant of float noise such as 0.15 * 100
        return int(math.floor(self.creator_fraction * self.num_agents + 0.5 + 1e-9))

    def replace(self, **changes: Any) -> "SimConfig":
        return dataclasses.replace(self, **changes)

    def to_dict(self) -> Dict[str, Any]:
        values = asdict(self)
        values["neighborhood"] = self.neighborhood.value
        return values

    def validate(self) -> "SimConfig":
        """
        Check every field range.

        Returns:
            self, so calls can be chained

        Raises:
            ConfigError: naming the first offending field
        """
        for name in ("grid_width", "grid_height"):
            value = getattr(self, name)
            _require_int(name, value)
            if value < 2:
                raise ConfigError(name, f"must be >= 2 (imitation needs a distinct neighbor), got {value}")
        for name in ("parts", "steps_per_action", "iterations"):
            value = getattr(self, name)
            _require_int(name, value)
            if value < 1:
                raise ConfigError(name, f"must be >= 1, got {value}")

        _require_range("creator_fraction", self.creator_fraction, 0.0, 1.0)
        _require_range("creator_p_invent", self.creator_p_invent, 0.0, 1.0)
        _require_range("mutation_rate", self.mutation_rate, 0.0, 1.0, low_open=True)
        _require_range("sr_delta", self.sr_delta, 0.0, 1.0)
        _require_range("threshold_fraction", self.threshold_fraction, 0.0, 1.0, low_open=True)
        _require_number("chain_beta", self.chain_beta)
        if self.chain_beta < 0:
            raise ConfigError("chain_beta", f"must be >= 0, got {self.chain_beta}")

        for name in ("trend_bias_enabled", "sr_enabled"):
            if not isinstance(getattr(self, name), bool):
                raise ConfigError(name, f"must be true or false, got {getattr(self, name)!r}")
        if not isinstance(self.neighborhood, Neighborhood):
            raise ConfigError("neighborhood", f"must be one of {[n.value for n in Neighborhood]}")

        _require_int("seed", self.seed)
        if not -(1 << 63) <= self.seed <= MASK64:
            raise ConfigError("seed", f"must fit in 64 bits, got {self.seed}")

        from .fitness import LANDSCAPES

        if self.fitness_name not in LANDSCAPES:
            raise ConfigError("fitness_name", f"unknown landscape {self.fitness_name!r}, available: {sorted(LANDSCAPES)}")
        landscape_cls = LANDSCAPES[self.fitness_name]
        if self.parts != landscape_cls.parts:
            raise ConfigError("parts", f"{self.fitness_name} needs {landscape_cls.parts} parts, got {self.parts}")
        if not landscape_cls.multi_step and self.steps_per_action != 1:
            raise ConfigError(
                "fitness_name", f"{self.fitness_name} is single-step; use chain6x3 for steps_per_action > 1"
            )
        return self


def _require_int(name: str, value: Any) -> None:
    if isinstance(value, bool) or not isinstance(value, int):
        raise ConfigError(name, f"must be an integer, got {value!r}")


def _require_number(name: str, value: Any) -> None:
    if isinstance(value, bool) or not isinstance(value, (int, float)) or math.isnan(value):
        raise ConfigError(name, f"must be a number, got {value!r}")


def _require_range(name: str, value: Any, low: float, high: float, low_open: bool = False) -> None:
    _require_number(name, value)
    too_low = value <= low if low_open else value < low
    if too_low or value > high:
        bracket = "(" if low_open else "["
        raise ConfigError(name, f"must be in {bracket}{low:g}, {high:g}], got {value}")


@dataclass(eq=False)
class TrendModel:
    """
    Per-position running tallies of observed part values and the fitness they came with.

    Positions are (step, part) pairs flattened to step * K + part. counts and
    sums are (positions, 3) arrays; inside a world they are rows of one
    society-wide block that the step rebuilds each iteration.
    """

    counts: np.ndarray
    sums: np.ndarray

    @classmethod
    def empty(cls, positions: int) -> "TrendModel":
        return cls(
            counts=np.zeros((positions, PART_VALUES), dtype=np.int64),
            sums=np.zeros((positions, PART_VALUES), dtype=np.float64),
        )

    @property
    def positions(self) -> int:
        return self.counts.shape[0]

    def estimate(self, position: int, value: int) -> float:
        count = int(self.counts[position, value])
        return float(self.sums[position, value]) / count if count else 0.0

    def weights(self, position: int) -> List[float]:
        counts = self.counts[position].tolist()
        sums = self.sums[position].tolist()
        return [1.0 + (total / count if count else 0.0) for total, count in zip(sums, counts)]

    def observe(self, action: Action, fitness: float) -> None:
        """Record one observed action in place."""
        values = np.fromiter((value for step in action for value in step), dtype=np.intp, count=self.positions)
        rows = np.arange(self.positions)
        self.counts[rows, values] += 1
        self.sums[rows, values] += fitness

    def copy(self) -> "TrendModel":
        return TrendModel(counts=self.counts.copy(), sums=self.sums.copy())

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, TrendModel):
            return NotImplemented
        return np.array_equal(self.counts, other.counts) and np.array_equal(self.sums, other.sums)


@dataclass
class AgentState:
    id: int
    idea: Action
    idea_fitness: float
    p_invent: float
    trends: TrendModel = field(repr=False)


@dataclass
class WorldState:
    width: int
    height: int
    agents: List[AgentState]
    iteration: int = 0
    prev_mean_fitness: float = 0.0
    neighborhood: Neighborhood = Neighborhood.VON_NEUMANN

    @property
    def size(self) -> int:
        return self.width * self.height


def rest_action(parts: int, steps: int = 1) -> Action:
    """The all-Rest idea every agent starts with: standing still, doing nothing."""
    return tuple(tuple([int(PartState.REST)] * parts) for _ in range(steps))


def new_world(config: SimConfig, seed: Union[int, SplitMix64]) -> WorldState:
    """
    Build the iteration-0 world.

    Every agent starts at the all-Rest idea. Exactly round(C * N) agents,
    drawn without replacement from the run stream, become creators with
    p_invent = p; everyone else never invents.

    Args:
        config: Run configuration (validated here)
        seed: Run seed, or the run's stream when the caller keeps using it

    Returns:
        Fresh WorldState at iteration 0
    """
    from .fitness import get_fitness

    config.validate()
    rng = seed if isinstance(seed, SplitMix64) else SplitMix64(seed)
    fitness = get_fitness(config)

    n = config.num_agents
    creators = set(rng.sample_without_replacement(n, config.num_creators))
    idea = rest_action(config.parts, config.steps_per_action)
    idea_fitness = fitness.evaluate(idea)
    positions = config.parts * config.steps_per_action

    agents = [
        AgentState(
            id=agent_id,
            idea=idea,
            idea_fitness=idea_fitness,
            p_invent=config.creator_p_invent if agent_id in creators else 0.0,
            trends=TrendModel.empty(positions),
        )
        for agent_id in range(n)
    ]
    return WorldState(
        width=config.grid_width,
        height=config.grid_height,
        agents=agents,
        iteration=0,
        prev_mean_fitness=idea_fitness,
        neighborhood=config.neighborhood,
    )


_OFFSETS = {
    # (d_row, d_col) in the fixed order N, E, S, W, NE, SE, SW, NW
    Neighborhood.VON_NEUMANN: ((-1, 0), (0, 1), (1, 0), (0, -1)),
    Neighborhood.MOORE: ((-1, 0), (0, 1), (1, 0), (0, -1), (-1, 1), (1, 1), (1, -1), (-1, -1)),
}


@lru_cache(maxsize=64)
def neighbor_table(width: int, height: int, neighborhood: Neighborhood) -> Tuple[Tuple[int, ...], ...]:
    """Neighbor ids of every cell on a width x height torus."""
    table = []
    for agent_id in range(width * height):
        row, col = divmod(agent_id, width)
        table.append(
            tuple(((row + dr) % height) * width + (col + dc) % width for dr, dc in _OFFSETS[neighborhood])
        )
    return tuple(table)


def neighbors(world: WorldState, agent_id: int) -> Tuple[int, ...]:
    """
    Toroidal neighbors of an agent in the order N, E, S, W[, NE, SE, SW, NW].

    Raises:
        ValueError: agent_id outside the grid
    """
    if not 0 <= agent_id < world.size:
        raise ValueError(f"agent_id {agent_id} out of range for {world.width}x{world.height} grid")
    return neighbor_table(world.width, world.height, world.neighborhood)[agent_id]
