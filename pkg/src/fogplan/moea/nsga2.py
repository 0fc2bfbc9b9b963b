"""NSGA-II over resource-assignment genotypes.

Binary tournament with the constrained crowded comparison, uniform
crossover and per-gene reset mutation.  An external archive collects
every non-dominated feasible solution seen during the run.
"""

from __future__ import annotations

import numpy as np

from ..fsdp import ProblemInstance
from .common import (
    AlgoParams,
    ParetoArchive,
    Solution,
    constrained_dominates,
    crowding_distance,
    fast_nondominated_sort,
    generation_stats,
    initial_population,
    make_solution,
    reset_mutation,
    uniform_crossover,
)


def nsga2_run(prob: ProblemInstance, params: AlgoParams, trace_hook=None) -> ParetoArchive:
    params.check_budget()
    rng = np.random.default_rng(params.seed)
    pop_size = params.population_size
    mut_rate = params.mutation_prob
    if mut_rate is None:
        mut_rate = 1.0 / max(1, prob.n_services)

    archive = ParetoArchive(capacity=max(params.archive_capacity, pop_size))
    evaluations = 0

    def evaluate_batch(genomes):
        nonlocal evaluations
        out = []
        for g in genomes:
            out.append(make_solution(g, prob))
            evaluations += 1
        for s in out:
            archive.add(s)
        return out

    population = evaluate_batch(initial_population(prob, pop_size, rng))
    rank, dist = _rank_and_distance(population)
    if trace_hook:
        trace_hook(generation_stats(archive, population, evaluations))

    while evaluations < params.max_evaluations:
        budget = params.max_evaluations - evaluations
        offspring_genomes = []
        while len(offspring_genomes) < min(pop_size, budget):
            p1 = _tournament(population, rank, dist, rng)
            p2 = _tournament(population, rank, dist, rng)
            g1 = np.array(p1.genotype, dtype=np.int64)
            g2 = np.array(p2.genotype, dtype=np.int64)
            if rng.random() < params.crossover_prob:
                g1, g2 = uniform_crossover(g1, g2, rng)
            for child in (g1, g2):
                if len(offspring_genomes) < min(pop_size, budget):
                    offspring_genomes.append(
                        reset_mutation(child, mut_rate, prob.n_resources, rng)
                    )
        offspring = evaluate_batch(offspring_genomes)
        population = _environmental_selection(population + offspring, pop_size)
        rank, dist = _rank_and_distance(population)
        if trace_hook:
            trace_hook(generation_stats(archive, population, evaluations))

    return archive


def _rank_and_distance(population):
    rank, dist = {}, {}
    for level, front in enumerate(fast_nondominated_sort(population)):
        distances = crowding_distance(front)
        for sol, d in zip(front, distances):
            rank[id(sol)] = level
            dist[id(sol)] = d
    return rank, dist


def _tournament(population, rank, dist, rng) -> Solution:
    i, j = rng.integers(0, len(population), size=2)
    a, b = population[i], population[j]
    if rank[id(a)] != rank[id(b)]:
        return a if rank[id(a)] < rank[id(b)] else b
    if dist[id(a)] != dist[id(b)]:
        return a if dist[id(a)] > dist[id(b)] else b
    return a


def _environmental_selection(combined, pop_size):
    survivors = []
    for front in fast_nondominated_sort(combined):
        if len(survivors) + len(front) <= pop_size:
            survivors.extend(front)
        else:
            distances = crowding_distance(front)
            order = sorted(
                range(len(front)), key=lambda i: (-distances[i], front[i].genotype)
            )
            need = pop_size - len(survivors)
            survivors.extend(front[i] for i in order[:need])
            break
    return survivors
