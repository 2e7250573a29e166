"""
The per-iteration update of the society.

Each iteration every agent, in ascending id order, decides whether to invent
or imitate, adopts the resulting idea and learns from what it and its
neighbors did. Under social regulation an agent that invented moves its
invention probability up or down by how its invention compares with the
previous mean. All reads refer to the pre-step world, so the update is
synchronous and its random draws depend only on the pre-step world.

Invented ideas are adopted unconditionally; imitation only adopts a
neighbor's idea that is strictly fitter than the agent's own.
"""

from enum import Enum
from typing import Optional, Sequence, Tuple

import numpy as np

from .core import PART_VALUES, Action, AgentState, SimConfig, TrendModel, WorldState, neighbor_table
from .fitness import FitnessFunction
from .metrics import AcquisitionCounts, IterationMetrics, compute_iteration_metrics
from .rng import SplitMix64


class AcquireChoice(Enum):
    INVENT = "invent"
    IMITATE = "imitate"


def decide_acquire(agent: AgentState, rng: SplitMix64) -> AcquireChoice:
    """Invent with probability p_invent; always exactly one draw."""
    return AcquireChoice.INVENT if rng.uniform01() < agent.p_invent else AcquireChoice.IMITATE


def invent(agent: AgentState, config: SimConfig, rng: SplitMix64) -> Action:
    """
    Mutate the agent's current idea into a candidate.

    Every position is redrawn with probability mutation_rate. The new value is
    uniform over the part states, or, with trend bias on, proportional to
    1 + the agent's learned fitness estimate for that value at that position.
    """
    trends = agent.trends if config.trend_bias_enabled else None
    mutation_rate = config.mutation_rate
    position = 0
    steps = []
    for step in agent.idea:
        values = list(step)
        for part in range(len(values)):
            if rng.uniform01() < mutation_rate:
                if trends is None:
                    values[part] = rng.range(PART_VALUES)
                else:
                    values[part] = rng.weighted_index(trends.weights(position))
            position += 1
        steps.append(tuple(values))
    return tuple(steps)


def imitate(world_prev: WorldState, agent: AgentState, config: SimConfig) -> Optional[Action]:
    """
    Fittest neighbor's idea if strictly fitter than the agent's own, else None (keep).

    Ties between neighbors go to the lowest agent id. No random draws.
    """
    table = neighbor_table(world_prev.width, world_prev.height, world_prev.neighborhood)
    best = None
    for neighbor_id in table[agent.id]:
        candidate = world_prev.agents[neighbor_id]
        if (
            best is None
            or candidate.idea_fitness > best.idea_fitness
            or (candidate.idea_fitness == best.idea_fitness and candidate.id < best.id)
        ):
            best = candidate
    if best is not None and best.idea_fitness > agent.idea_fitness:
        return best.idea
    return None


def update_trends(trends: TrendModel, action: Action, fitness: float) -> TrendModel:
    """Copy of the model with one more observation of action at the given fitness."""
    if fitness < 0:
        raise ValueError(f"fitness must be non-negative, got {fitness}")
    updated = trends.copy()
    updated.observe(action, fitness)
    return updated


def sr_update(p_invent: float, own_fitness: float, prev_mean: float, delta: float) -> float:
    """
    Social regulation: create more when fitter than the previous mean, imitate more otherwise.

    Equality counts as not fitter. The result is clamped to [0, 1].
    """
    if own_fitness > prev_mean:
        return min(1.0, p_invent + delta)
    return max(0.0, p_invent - delta)


def learn_trends(
    world_prev: WorldState, ideas: Sequence[Action], idea_fitness: Sequence[float]
) -> Tuple[np.ndarray, np.ndarray]:
    """
    Society-wide trend tallies after one iteration of observation.

    Every agent observes its own new idea, then each neighbor's pre-step idea
    in neighbor order. Returns fresh (agents, positions, 3) count and sum
    blocks; the pre-step models are not modified.
    """
    prev_agents = world_prev.agents
    n = len(prev_agents)
    counts = np.stack([agent.trends.counts for agent in prev_agents])
    sums = np.stack([agent.trends.sums for agent in prev_agents])
    rows = np.arange(n)[:, None]
    positions = np.arange(counts.shape[1])[None, :]

    own = np.array(ideas, dtype=np.intp).reshape(n, -1)
    counts[rows, positions, own] += 1
    sums[rows, positions, own] += np.array(idea_fitness, dtype=np.float64)[:, None]

    prev_ideas = np.array([agent.idea for agent in prev_agents], dtype=np.intp).reshape(n, -1)
    prev_fitness = np.array([agent.idea_fitness for agent in prev_agents], dtype=np.float64)
    table = np.array(neighbor_table(world_prev.width, world_prev.height, world_prev.neighborhood), dtype=np.intp)
    for column in table.T:
        counts[rows, positions, prev_ideas[column]] += 1
        sums[rows, positions, prev_ideas[column]] += prev_fitness[column][:, None]
    return counts, sums


def step(
    world: WorldState,
    config: SimConfig,
    fitness: FitnessFunction,
    rng: SplitMix64,
) -> Tuple[WorldState, IterationMetrics]:
    """
    Advance the world by one synchronous iteration.

    Args:
        world: Pre-step world (left untouched)
        config: Run configuration
        fitness: Landscape used to score ideas
        rng: The run's stream

    Returns:
        Tuple of (post-step world, metrics of the post-step world)
    """
    prev_mean = world.prev_mean_fitness
    counts = AcquisitionCounts()

    ideas = []
    fitnesses = []
    p_invents = []
    for agent in world.agents:
        p_invent = agent.p_invent
        if decide_acquire(agent, rng) is AcquireChoice.INVENT:
            idea = invent(agent, config, rng)
            idea_fitness = agent.idea_fitness if idea == agent.idea else fitness.evaluate(idea)
            counts.invented += 1
            if idea_fitness < agent.idea_fitness:
                counts.breakdowns += 1
            if config.sr_enabled:
                p_invent = sr_update(p_invent, idea_fitness, prev_mean, config.sr_delta)
        else:
            adopted = imitate(world, agent, config)
            if adopted is None:
                idea, idea_fitness = agent.idea, agent.idea_fitness
                counts.kept += 1
            else:
                idea, idea_fitness = adopted, fitness.evaluate(adopted)
                counts.imitated += 1
        ideas.append(idea)
        fitnesses.append(idea_fitness)
        p_invents.append(p_invent)

    trend_counts, trend_sums = learn_trends(world, ideas, fitnesses)
    new_agents = [
        AgentState(
            id=agent.id,
            idea=ideas[i],
            idea_fitness=fitnesses[i],
            p_invent=p_invents[i],
            trends=TrendModel(trend_counts[i], trend_sums[i]),
        )
        for i, agent in enumerate(world.agents)
    ]

    new_world = WorldState(
        width=world.width,
        height=world.height,
        agents=new_agents,
        iteration=world.iteration + 1,
        prev_mean_fitness=sum(fitnesses) / len(fitnesses),
        neighborhood=world.neighborhood,
    )
    return new_world, compute_iteration_metrics(new_world, counts)
