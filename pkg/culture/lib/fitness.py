"""
Fitness landscapes over actions, and exact oracles for their global optima.

Parts of a 6-part body are ordered (head, left_arm, right_arm, left_leg,
right_leg, torso). The reference landscape rewards every moving part and
adds a bonus when both arms (or both legs) move the same way, so the value
of one part depends on another: inventing on one arm can break a
co-adapted pair. The all-Rest action scores zero everywhere.

Scalar evaluators are plain Python (they run inside the simulation loop);
oracles enumerate with numpy.
"""

from abc import ABC, abstractmethod
from functools import lru_cache
from typing import Callable, Dict, Optional, Sequence, Tuple, Type, Union

import numpy as np

from .core import Action, ActionVector, PART_VALUES, SimConfig

BODY_PARTS = ("head", "left_arm", "right_arm", "left_leg", "right_leg", "torso")
HEAD, LEFT_ARM, RIGHT_ARM, LEFT_LEG, RIGHT_LEG, TORSO = range(6)
SYMMETRY_BONUS = 4.0
DEFAULT_CHAIN_BETA = 2.0
MAX_ENUMERATION = 10**7


class CapacityError(ValueError):
    """Search space too large for exhaustive enumeration."""


def _check_parts(vector: Sequence[int]) -> None:
    if len(vector) != len(BODY_PARTS):
        raise ValueError(f"action step must have {len(BODY_PARTS)} parts, got {len(vector)}")


def eval_additive(vector: ActionVector) -> float:
    """Number of moving parts, no interactions."""
    _check_parts(vector)
    return float(sum(1 for value in vector if value))


def eval_ref6x3(vector: ActionVector) -> float:
    """
    Reference epistatic landscape for one 6-part step.

    F(a) = moving parts + 4 * [arms move alike] + 4 * [legs move alike]
    """
    _check_parts(vector)
    score = float(sum(1 for value in vector if value))
    if vector[LEFT_ARM] and vector[LEFT_ARM] == vector[RIGHT_ARM]:
        score += SYMMETRY_BONUS
    if vector[LEFT_LEG] and vector[LEFT_LEG] == vector[RIGHT_LEG]:
        score += SYMMETRY_BONUS
    return score


def alternation(previous: ActionVector, current: ActionVector) -> int:
    """Parts moving in both steps and switching direction between them."""
    return sum(1 for a, b in zip(previous, current) if a and b and a != b)


def eval_chain(steps: Action, beta: float = DEFAULT_CHAIN_BETA) -> float:
    """
    Multi-step landscape: per-step reference score plus beta per alternating part
    between consecutive steps (dance-like movement).
    """
    if not steps:
        raise ValueError("multi-step action needs at least one step")
    score = 0.0
    for index, step in enumerate(steps):
        score += eval_ref6x3(step)
        if index:
            score += beta * alternation(steps[index - 1], step)
    return score


class FitnessFunction(ABC):
    """A pure map from action to non-negative effectiveness."""

    name: str = ""
    parts: int = len(BODY_PARTS)
    multi_step: bool = False

    def __init__(self, steps: int = 1):
        self.steps = steps
        self._max: Optional[float] = None

    @abstractmethod
    def evaluate(self, action: Action) -> float:
        ...

    def evaluate_batch(self, actions: np.ndarray) -> np.ndarray:
        """Scores for an array of shape (n, steps, parts). Subclasses vectorise this."""
        return np.array([self.evaluate(tuple(tuple(int(v) for v in s) for s in a)) for a in actions], dtype=float)

    def max_fitness(self) -> float:
        if self._max is None:
            self._max = self._oracle_max()
        return self._max

    def _oracle_max(self) -> float:
        return global_optimum_enumerate(self, self.parts * self.steps, PART_VALUES)[0]

    def __repr__(self) -> str:
        return f"{type(self).__name__}(steps={self.steps})"


class Ref6x3Landscape(FitnessFunction):
    name = "ref6x3"

    def evaluate(self, action: Action) -> float:
        if len(action) != 1:
            raise ValueError(f"{self.name} is single-step, got {len(action)} steps")
        return eval_ref6x3(action[0])

    def evaluate_batch(self, actions: np.ndarray) -> np.ndarray:
        return _ref6x3_batch(actions).sum(axis=1)


class Additive6x3Landscape(FitnessFunction):
    name = "additive6x3"

    def evaluate(self, action: Action) -> float:
        if len(action) != 1:
            raise ValueError(f"{self.name} is single-step, got {len(action)} steps")
        return eval_additive(action[0])

    def evaluate_batch(self, actions: np.ndarray) -> np.ndarray:
        return (actions != 0).sum(axis=(1, 2)).astype(float)


class Chain6x3Landscape(FitnessFunction):
    name = "chain6x3"
    multi_step = True

    def __init__(self, steps: int = 1, beta: float = DEFAULT_CHAIN_BETA):
        super().__init__(steps)
        self.beta = beta

    def evaluate(self, action: Action) -> float:
        if len(action) != self.steps:
            raise ValueError(f"{self.name} expects {self.steps} steps, got {len(action)}")
        return eval_chain(action, self.beta)

    def evaluate_batch(self, actions: np.ndarray) -> np.ndarray:
        score = _ref6x3_batch(actions).sum(axis=1)
        if actions.shape[1] > 1:
            prev, curr = actions[:, :-1, :], actions[:, 1:, :]
            alt = ((prev != 0) & (curr != 0) & (prev != curr)).sum(axis=(1, 2))
            score = score + self.beta * alt
        return score

    def _oracle_max(self) -> float:
        return chain_optimum_dp(self.steps, self.beta)

    def __repr__(self) -> str:
        return f"Chain6x3Landscape(steps={self.steps}, beta={self.beta})"


LANDSCAPES: Dict[str, Type[FitnessFunction]] = {
    Ref6x3Landscape.name: Ref6x3Landscape,
    Additive6x3Landscape.name: Additive6x3Landscape,
    Chain6x3Landscape.name: Chain6x3Landscape,
}


def get_landscape(name: str, steps: int = 1, beta: float = DEFAULT_CHAIN_BETA) -> FitnessFunction:
    if name not in LANDSCAPES:
        raise ValueError(f"Unknown fitness function: {name}. Available: {sorted(LANDSCAPES)}")
    cls = LANDSCAPES[name]
    if cls.multi_step:
        return cls(steps=steps, beta=beta)
    if steps != 1:
        raise ValueError(f"{name} is single-step, got steps={steps}")
    return cls()


@lru_cache(maxsize=32)
def _cached_landscape(name: str, steps: int, beta: float) -> FitnessFunction:
    return get_landscape(name, steps, beta)


def get_fitness(config: SimConfig) -> FitnessFunction:
    """Landscape selected by a run config; instances are shared so oracle results are computed once."""
    return _cached_landscape(config.fitness_name, config.steps_per_action, float(config.chain_beta))


def _ref6x3_batch(actions: np.ndarray) -> np.ndarray:
    """Per-step reference scores, shape (n, steps)."""
    moving = (actions != 0).sum(axis=2).astype(float)
    arms = (actions[:, :, LEFT_ARM] != 0) & (actions[:, :, LEFT_ARM] == actions[:, :, RIGHT_ARM])
    legs = (actions[:, :, LEFT_LEG] != 0) & (actions[:, :, LEFT_LEG] == actions[:, :, RIGHT_LEG])
    return moving + SYMMETRY_BONUS * arms + SYMMETRY_BONUS * legs


def all_vectors(length: int, alphabet: int) -> np.ndarray:
    """Every vector over range(alphabet) of the given length, lexicographic, shape (alphabet**length, length)."""
    return np.indices((alphabet,) * length, dtype=np.int8).reshape(length, -1).T


def global_optimum_enumerate(
    f: Union[FitnessFunction, Callable[[ActionVector], float]],
    parts: int,
    alphabet: int = PART_VALUES,
) -> Tuple[float, int]:
    """
    Exact global maximum and the number of actions attaining it.

    Args:
        f: A landscape (enumerated over its steps * parts positions; pass
           parts = steps * K) or a plain function of one part vector
        parts: Number of positions to enumerate
        alphabet: Values per position

    Returns:
        Tuple of (max value, count of optima)

    Raises:
        CapacityError: alphabet ** parts exceeds 10^7
    """
    size = alphabet**parts
    if size > MAX_ENUMERATION:
        raise CapacityError(f"Search space too large for enumeration: {alphabet}^{parts} = {size:,}")

    vectors = all_vectors(parts, alphabet)
    if isinstance(f, FitnessFunction):
        if parts % f.steps:
            raise ValueError(f"{parts} positions do not split into {f.steps} steps")
        values = f.evaluate_batch(vectors.reshape(size, f.steps, parts // f.steps))
    else:
        values = np.array([f(tuple(int(v) for v in row)) for row in vectors], dtype=float)

    best = float(values.max())
    count = int(np.isclose(values, best, rtol=0.0, atol=1e-9).sum())
    return best, count


def chain_optimum_dp(steps: int, beta: float = DEFAULT_CHAIN_BETA) -> float:
    """
    Exact maximum of eval_chain by dynamic programming over steps.

    State is the previous step vector (729 states); each transition adds the
    next step's reference score and beta times the alternation count.
    """
    if steps < 1:
        raise ValueError(f"steps must be >= 1, got {steps}")
    vectors = all_vectors(len(BODY_PARTS), PART_VALUES)
    step_score = _ref6x3_batch(vectors[:, None, :])[:, 0]
    if steps == 1:
        return float(step_score.max())

    prev, curr = vectors[:, None, :], vectors[None, :, :]
    transition = beta * ((prev != 0) & (curr != 0) & (prev != curr)).sum(axis=2)

    best = step_score
    for _ in range(steps - 1):
        best = (best[:, None] + transition).max(axis=0) + step_score
    return float(best.max())
