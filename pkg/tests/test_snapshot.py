import msgpack
import pytest

from helpers import ALL_UP, UP_ARMS, world_with
from lib.core import SimConfig
from lib.experiments import run_sim
from lib.snapshot import decode_snapshot, encode_snapshot, load_snapshot, save_snapshot, segregation_map


def test_snapshot_preserves_the_society(tmp_path):
    world = world_with(SimConfig(), ideas={3: ALL_UP, 4: UP_ARMS}, p_invent={3: 0.9})
    path, size = save_snapshot(world, tmp_path / "world.msgpack.zst")
    assert path.stat().st_size == size
    snapshot = load_snapshot(path)
    assert (snapshot.width, snapshot.height, snapshot.iteration) == (10, 10, 0)
    assert (snapshot.steps, snapshot.parts) == (1, 6)
    assert snapshot.ideas == [agent.idea for agent in world.agents]
    assert snapshot.fitness == [agent.idea_fitness for agent in world.agents]
    assert snapshot.p_invent == [agent.p_invent for agent in world.agents]


def test_snapshot_of_multistep_run():
    config = SimConfig(grid_width=4, grid_height=4, fitness_name="chain6x3", steps_per_action=3, iterations=10)
    world = run_sim(config, keep_world=True).final_world
    snapshot = decode_snapshot(encode_snapshot(world))
    assert snapshot.steps == 3
    assert snapshot.iteration == 10
    assert snapshot.ideas == [agent.idea for agent in world.agents]


def test_compressed_snapshot_is_smaller(tmp_path):
    world = world_with(SimConfig())
    _, size = save_snapshot(world, tmp_path / "world.msgpack.zst")
    assert size < len(encode_snapshot(world))


def test_unknown_version_rejected():
    with pytest.raises(ValueError):
        decode_snapshot(msgpack.packb({"version": 99}))


def test_segregation_map():
    assert segregation_map([0.0, 1.0, 0.5, 0.05], 2) == ". C\no ."
