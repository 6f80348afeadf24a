"""Configurations (selected q-tuples), solver budgets, and canonical scoring."""

import math
from dataclasses import dataclass, field, replace
from itertools import combinations

import numpy as np

from .._validation import check_objective


@dataclass(frozen=True)
class SolverBudget:
    """Search limits and annealing schedule.

    ``initial_temp`` is relative to the diameter of the space, so the
    schedule is invariant under rescaling of the metric.
    """

    max_nodes: int = 2_000_000
    restarts: int = 4
    anneal_steps: int = 20_000
    initial_temp: float = 0.05
    cooling_rate: float = 0.9995
    seed: int = 0

    def __post_init__(self):
        for name in ("max_nodes", "restarts", "anneal_steps"):
            if int(getattr(self, name)) < 1:
                raise ValueError(f"{name} must be positive")
        if not self.initial_temp > 0:
            raise ValueError("initial_temp must be positive")
        if not 0 < self.cooling_rate <= 1:
            raise ValueError("cooling_rate must lie in (0, 1]")
        if self.seed < 0:
            raise ValueError("seed must be non-negative")

    def to_dict(self):
        return {"max_nodes": self.max_nodes, "restarts": self.restarts,
                "anneal_steps": self.anneal_steps, "initial_temp": self.initial_temp,
                "cooling_rate": self.cooling_rate, "seed": self.seed}


@dataclass(frozen=True)
class Configuration:
    """A q-tuple of points with its objective value.

    ``indices`` is sorted; repeats appear only when the tuple was solved
    with ``repeats=True``. Continuous configurations carry model ``points``
    and an empty ``indices``.
    """

    indices: tuple
    objective: str
    score: float
    method: str = "exact"
    optimal: bool = False
    points: tuple = field(default=None, compare=False)

    @property
    def q(self):
        return len(self.points) if self.points is not None else len(self.indices)

    def with_method(self, method, optimal=None):
        return replace(self, method=method,
                       optimal=self.optimal if optimal is None else optimal)

    def to_dict(self):
        return {"indices": [int(i) for i in self.indices], "objective": self.objective,
                "score": self.score}


def score(dist, indices, objective):
    """Objective value of a tuple: mean pairwise distance or minimum pairwise distance.

    The mean uses ``math.fsum`` so the value does not depend on summation
    order; every solver reports scores through this function.
    """
    check_objective(objective)
    idx = sorted(int(i) for i in indices)
    pairs = [dist[a, b] for a, b in combinations(idx, 2)]
    if objective == "average":
        return math.fsum(pairs) / math.comb(len(idx), 2)
    return float(min(pairs))


def make_configuration(dist, indices, objective, method, optimal=False):
    idx = tuple(sorted(int(i) for i in indices))
    return Configuration(idx, objective, score(dist, idx, objective), method, optimal)


def better(cand_score, cand_idx, best_score, best_idx):
    """Strictly higher score, ties broken by the lexicographically smaller index tuple."""
    if best_idx is None or cand_score > best_score:
        return True
    return cand_score == best_score and tuple(cand_idx) < tuple(best_idx)


def as_matrix(space):
    """Distance matrix of a FiniteMetricSpace or an array-like."""
    return np.asarray(getattr(space, "dist", space), dtype=float)
