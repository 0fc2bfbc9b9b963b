"""Brute-force references: exhaustive Pareto fronts and a queue simulator.

These are deliberately independent of the optimizers and of the
closed-form queueing formula so they can serve as correctness oracles.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .errors import Saturated, SearchSpaceTooLarge
from .fsdp import ProblemInstance
from .moea.common import Solution, make_solution, pareto_dominates


@dataclass(frozen=True)
class ExactFront:
    solutions: tuple[Solution, ...]
    search_space_size: int

    def objective_set(self) -> set[tuple[float, float]]:
        return {s.objectives.as_tuple() for s in self.solutions}


def exact_pareto(prob: ProblemInstance, cap: int = 10**6) -> ExactFront:
    """Exact Pareto front of all feasible assignments by enumeration."""
    size = prob.n_resources ** prob.n_services
    if size > cap:
        raise SearchSpaceTooLarge(f"{size} assignments exceed cap {cap}")
    front: list[Solution] = []
    for assignment in itertools.product(range(prob.n_resources), repeat=prob.n_services):
        sol = make_solution(assignment, prob)
        if not sol.feasible:
            continue
        if any(pareto_dominates(f.objectives, sol.objectives) for f in front):
            continue
        front = [f for f in front if not pareto_dominates(sol.objectives, f.objectives)]
        front.append(sol)
    return ExactFront(solutions=tuple(front), search_space_size=size)


def md1_simulate(arrival_rate: float, service_time: float, jobs: int = 10**6, seed: int = 0) -> float:
    """Mean sojourn time of an M/D/1 queue by discrete-event simulation.

    Exponential interarrivals, deterministic service, FIFO; the first
    10% of jobs are discarded as warm-up.
    """
    if arrival_rate * service_time >= 1.0:
        raise Saturated(f"utilization {arrival_rate * service_time} >= 1")
    if jobs < 10**5:
        raise ValueError("need at least 1e5 jobs for a stable estimate")
    rng = np.random.default_rng(seed)
    inter = rng.exponential(1.0 / arrival_rate, size=jobs)
    # Lindley recursion w_i = max(0, w_{i-1} + D - t_i), vectorized via
    # running-minimum of the prefix sums of (D - t_i).
    steps = service_time - inter
    prefix = np.concatenate([[0.0], np.cumsum(steps)])
    waits = prefix[1:] - np.minimum.accumulate(prefix[:-1])
    waits = np.maximum(waits, 0.0)
    warm = jobs // 10
    return float(waits[warm:].mean() + service_time)
