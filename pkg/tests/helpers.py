"""Builders for hand-made worlds."""

import dataclasses
from pathlib import Path
from typing import Dict, Tuple

from lib.core import SimConfig, WorldState, new_world
from lib.fitness import get_fitness

UP_ARMS = ((0, 1, 1, 0, 0, 0),)  # fitness 6
ALL_UP = ((1, 1, 1, 1, 1, 1),)  # fitness 14
ALL_DOWN = ((2, 2, 2, 2, 2, 2),)  # fitness 14

CULTURE_DIR = Path(__file__).parent.parent / "culture"
CONFIGS_DIR = CULTURE_DIR / "configs"


def world_with(config: SimConfig, ideas: Dict[int, Tuple] = None, p_invent: Dict[int, float] = None, seed: int = 1) -> WorldState:
    """A fresh world with some agents' ideas and invention probabilities overridden."""
    world = new_world(config, seed)
    fitness = get_fitness(config)
    agents = []
    for agent in world.agents:
        changes = {}
        if ideas and agent.id in ideas:
            changes["idea"] = ideas[agent.id]
            changes["idea_fitness"] = fitness.evaluate(ideas[agent.id])
        if p_invent and agent.id in p_invent:
            changes["p_invent"] = p_invent[agent.id]
        agents.append(dataclasses.replace(agent, **changes) if changes else agent)
    mean = sum(a.idea_fitness for a in agents) / len(agents)
    return dataclasses.replace(world, agents=agents, prev_mean_fitness=mean)
