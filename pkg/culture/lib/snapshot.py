"""
Compact world snapshots: columnar msgpack compressed with zstd.

A snapshot keeps what is needed to inspect a society after a run (who
holds which idea, how fit it is, and how inventive each agent has become)
and drops the trend models.
"""

import sys
from dataclasses import dataclass
from pathlib import Path
from typing import List, Tuple, Union

import msgpack
import zstandard as zstd

# Add project root to path for config import
sys.path.insert(0, str(Path(__file__).parent.parent.parent))
from config import DEFAULT_ZSTD_LEVEL

from .core import Action, WorldState
from .metrics import is_conformer, is_creator

SNAPSHOT_VERSION = 1


@dataclass
class WorldSnapshot:
    width: int
    height: int
    iteration: int
    steps: int
    parts: int
    ideas: List[Action]
    fitness: List[float]
    p_invent: List[float]


def encode_snapshot(world: WorldState) -> bytes:
    """Columnar msgpack payload of a world (uncompressed)."""
    first = world.agents[0].idea
    steps, parts = len(first), len(first[0])
    flat_ideas = [value for agent in world.agents for step in agent.idea for value in step]
    payload = {
        "version": SNAPSHOT_VERSION,
        "width": world.width,
        "height": world.height,
        "iteration": world.iteration,
        "steps": steps,
        "parts": parts,
        "ideas": bytes(flat_ideas),  # part values fit in one byte each
        "fitness": [agent.idea_fitness for agent in world.agents],
        "p_invent": [agent.p_invent for agent in world.agents],
    }
    return msgpack.packb(payload, use_bin_type=True)


def decode_snapshot(data: bytes) -> WorldSnapshot:
    payload = msgpack.unpackb(data, raw=False)
    if payload.get("version") != SNAPSHOT_VERSION:
        raise ValueError(f"Unsupported snapshot version: {payload.get('version')}")
    steps, parts = payload["steps"], payload["parts"]
    flat = payload["ideas"]
    width = steps * parts
    ideas = []
    for start in range(0, len(flat), width):
        chunk = flat[start : start + width]
        ideas.append(tuple(tuple(chunk[s * parts : (s + 1) * parts]) for s in range(steps)))
    return WorldSnapshot(
        width=payload["width"],
        height=payload["height"],
        iteration=payload["iteration"],
        steps=steps,
        parts=parts,
        ideas=ideas,
        fitness=list(payload["fitness"]),
        p_invent=list(payload["p_invent"]),
    )


def save_snapshot(world: WorldState, path: Union[str, Path], level: int = DEFAULT_ZSTD_LEVEL) -> Tuple[Path, int]:
    """
    Write a zstd-compressed snapshot.

    Returns:
        Tuple of (path, compressed size in bytes)
    """
    path = Path(path)
    compressed = zstd.ZstdCompressor(level=level).compress(encode_snapshot(world))
    with open(path, "wb") as f:
        f.write(compressed)
    return path, len(compressed)


def load_snapshot(path: Union[str, Path]) -> WorldSnapshot:
    with open(path, "rb") as f:
        compressed = f.read()
    return decode_snapshot(zstd.ZstdDecompressor().decompress(compressed))


def segregation_map(p_invent: List[float], width: int) -> str:
    """
    Text map of the grid: 'C' creator band, '.' conformer band, 'o' in between.
    """
    rows = []
    for start in range(0, len(p_invent), width):
        row = []
        for p in p_invent[start : start + width]:
            if is_creator(p):
                row.append("C")
            elif is_conformer(p):
                row.append(".")
            else:
                row.append("o")
        rows.append(" ".join(row))
    return "\n".join(rows)
