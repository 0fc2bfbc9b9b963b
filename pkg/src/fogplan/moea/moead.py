"""MOEA/D with Tchebycheff decomposition on a simplex-lattice of weights.

One subproblem per weight vector; mating and replacement happen inside
fixed-size neighborhoods of closest weight vectors.  Feasibility rules
take precedence over the scalarized value during replacement.  An
external archive of non-dominated feasible solutions is returned.
"""

from __future__ import annotations

import numpy as np

from ..errors import BadLattice
from ..fsdp import ProblemInstance
from .common import (
    AlgoParams,
    ParetoArchive,
    Solution,
    generation_stats,
    initial_population,
    make_solution,
    reset_mutation,
    uniform_crossover,
)


def simplex_lattice_weights(resolution: int) -> np.ndarray:
    """Two-objective simplex-lattice weight vectors (i/H, 1 - i/H)."""
    if resolution < 1:
        raise BadLattice(f"lattice resolution {resolution} < 1")
    steps = np.arange(resolution + 1) / resolution
    return np.column_stack([steps, 1.0 - steps])


def tchebycheff(objectives: tuple[float, float], weights: np.ndarray, ideal: np.ndarray) -> float:
    """Scalarized distance to the ideal point (lower is better)."""
    return float(np.max(weights * np.abs(ideal - np.asarray(objectives))))


def _better(child: Solution, incumbent: Solution, weights, ideal) -> bool:
    if child.feasible != incumbent.feasible:
        return child.feasible
    if not child.feasible:
        return child.total_violation < incumbent.total_violation
    return tchebycheff(child.objectives.as_tuple(), weights, ideal) < tchebycheff(
        incumbent.objectives.as_tuple(), weights, ideal
    )


def moead_run(prob: ProblemInstance, params: AlgoParams, trace_hook=None) -> ParetoArchive:
    params.check_budget()
    resolution = params.weight_resolution
    if resolution is None:
        resolution = params.population_size - 1
    weights = simplex_lattice_weights(resolution)
    if len(weights) < params.population_size:
        raise BadLattice(
            f"lattice of resolution {resolution} yields {len(weights)} weights "
            f"< population {params.population_size}"
        )
    n_sub = len(weights)

    rng = np.random.default_rng(params.seed)
    t_size = min(params.neighborhood_size, n_sub)
    dist = np.linalg.norm(weights[:, None, :] - weights[None, :, :], axis=2)
    neighborhoods = np.argsort(dist, axis=1, kind="stable")[:, :t_size]

    archive = ParetoArchive(capacity=params.archive_capacity)
    evaluations = 0
    ideal = np.array([-np.inf, -np.inf])

    def evaluate(genome) -> Solution:
        nonlocal evaluations, ideal
        sol = make_solution(genome, prob)
        evaluations += 1
        archive.add(sol)
        if sol.feasible:
            ideal = np.maximum(ideal, np.array(sol.objectives.as_tuple()))
        return sol

    population = [evaluate(g) for g in initial_population(prob, n_sub, rng)]
    if not np.isfinite(ideal).all():
        ideal = np.array(
            [
                max(s.objectives.fog_utilization for s in population),
                max(s.objectives.availability for s in population),
            ]
        )
    if trace_hook:
        trace_hook(generation_stats(archive, population, evaluations))

    mut_rate = params.mutation_prob
    if mut_rate is None:
        mut_rate = 1.0 / max(1, prob.n_services)

    while evaluations < params.max_evaluations:
        for i in range(n_sub):
            if evaluations >= params.max_evaluations:
                break
            mates = neighborhoods[i][rng.permutation(t_size)[:2]]
            if len(mates) < 2:
                mates = np.array([i, i])
            g1 = np.array(population[mates[0]].genotype, dtype=np.int64)
            g2 = np.array(population[mates[1]].genotype, dtype=np.int64)
            child, _ = uniform_crossover(g1, g2, rng)
            child = reset_mutation(child, mut_rate, prob.n_resources, rng)
            sol = evaluate(child)
            for j in neighborhoods[i]:
                if _better(sol, population[j], weights[j], ideal):
                    population[j] = sol
        if trace_hook:
            trace_hook(generation_stats(archive, population, evaluations))

    return archive
