"""
Observables of a society and summaries of a run's time series.

Diversity counts distinct ideas by exact equality (two different optima
count twice). The segregation bands split agents into conformers
(p_invent <= 0.1) and creators (p_invent >= 0.9).
"""

from dataclasses import asdict, dataclass, field
from typing import Any, Dict, List, Optional, Sequence, Tuple, Union

import pandas as pd

from .core import SimConfig, WorldState

P_LOW_BAND = 0.1
P_HIGH_BAND = 0.9
_BAND_EPS = 1e-9  # additive SR steps land a hair off the band edges

TIMESERIES_COLUMNS = [
    "iteration",
    "mean_fitness",
    "max_fitness",
    "diversity",
    "mean_p_invent",
    "frac_p_low",
    "frac_p_high",
]
ACQUISITION_COLUMNS = ["iteration", "invented", "imitated", "kept", "breakdowns"]


@dataclass
class AcquisitionCounts:
    """How agents acquired their idea during one iteration."""

    invented: int = 0
    imitated: int = 0
    kept: int = 0
    breakdowns: int = 0  # inventions that lowered the inventor's fitness


@dataclass(frozen=True)
class IterationMetrics:
    iteration: int
    mean_fitness: float
    max_fitness: float
    diversity: int
    mean_p_invent: float
    frac_p_low: float
    frac_p_high: float
    invented: int = 0
    imitated: int = 0
    kept: int = 0
    breakdowns: int = 0


@dataclass
class RunResult:
    """Full time series of one run, iteration 0 included."""

    config: SimConfig
    seed: int
    series: List[IterationMetrics] = field(default_factory=list)
    final_world: Optional[WorldState] = field(default=None, repr=False, compare=False)

    @property
    def final(self) -> IterationMetrics:
        return self.series[-1]

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame([asdict(row) for row in self.series])


def diversity(world: WorldState) -> int:
    """Number of distinct ideas currently implemented."""
    return len({agent.idea for agent in world.agents})


def mean_fitness(world: WorldState) -> float:
    return sum(agent.idea_fitness for agent in world.agents) / len(world.agents)


def max_fitness_now(world: WorldState) -> float:
    return max(agent.idea_fitness for agent in world.agents)


def is_conformer(p_invent: float) -> bool:
    return p_invent <= P_LOW_BAND + _BAND_EPS


def is_creator(p_invent: float) -> bool:
    return p_invent >= P_HIGH_BAND - _BAND_EPS


def segregation_index(world: WorldState) -> Tuple[float, float]:
    """Fractions of agents in the conformer band and in the creator band."""
    n = len(world.agents)
    low = sum(1 for agent in world.agents if is_conformer(agent.p_invent))
    high = sum(1 for agent in world.agents if is_creator(agent.p_invent))
    return low / n, high / n


def compute_iteration_metrics(world: WorldState, counts: Optional[AcquisitionCounts] = None) -> IterationMetrics:
    counts = counts or AcquisitionCounts()
    frac_low, frac_high = segregation_index(world)
    return IterationMetrics(
        iteration=world.iteration,
        mean_fitness=float(mean_fitness(world)),
        max_fitness=float(max_fitness_now(world)),
        diversity=diversity(world),
        mean_p_invent=float(sum(agent.p_invent for agent in world.agents) / len(world.agents)),
        frac_p_low=float(frac_low),
        frac_p_high=float(frac_high),
        invented=counts.invented,
        imitated=counts.imitated,
        kept=counts.kept,
        breakdowns=counts.breakdowns,
    )


SeriesLike = Sequence[Union[IterationMetrics, float, int]]


def _column(series: SeriesLike, name: str) -> List[Tuple[int, Any]]:
    """(iteration, value) pairs from metrics rows, or from bare values indexed from 0."""
    pairs = []
    for index, row in enumerate(series):
        if isinstance(row, IterationMetrics):
            pairs.append((row.iteration, getattr(row, name)))
        else:
            pairs.append((index, row))
    return pairs


def time_to_threshold(series: SeriesLike, theta: float, f_max: float) -> Optional[int]:
    """
    First iteration whose mean fitness reaches theta * f_max.

    Args:
        series: IterationMetrics rows, or bare mean-fitness values
        theta: Threshold fraction in (0, 1]
        f_max: Landscape maximum

    Returns:
        Iteration number, or None when the threshold is never reached
    """
    if not 0 < theta <= 1:
        raise ValueError(f"theta must be in (0, 1], got {theta}")
    if f_max < 0:
        raise ValueError(f"f_max must be non-negative, got {f_max}")
    threshold = theta * f_max
    for iteration, value in _column(series, "mean_fitness"):
        if value >= threshold:
            return iteration
    return None


def peak_diversity(series: SeriesLike) -> Tuple[int, int]:
    """Earliest iteration attaining the maximum diversity, and that maximum."""
    pairs = _column(series, "diversity")
    if not pairs:
        raise ValueError("series must not be empty")
    best_iteration, best_value = pairs[0]
    for iteration, value in pairs[1:]:
        if value > best_value:
            best_iteration, best_value = iteration, value
    return best_iteration, best_value


def summarize_run(result: RunResult, f_max: float) -> Dict[str, Any]:
    """Run-level statistics used by replicate aggregation."""
    peak_iteration, peak_value = peak_diversity(result.series)
    return {
        "seed": result.seed,
        "final_fitness": result.final.mean_fitness,
        "time_to_threshold": time_to_threshold(result.series, result.config.threshold_fraction, f_max),
        "peak_diversity": peak_value,
        "peak_iteration": peak_iteration,
        "final_diversity": result.final.diversity,
        "final_seg_index": result.final.frac_p_low + result.final.frac_p_high,
    }
