"""Multiobjective PSO with a grid-based external archive.

Particles move in continuous space [0, R)^N and decode to resource ids
by flooring; global guides are drawn from the archive by roulette over
objective-space hypercubes, favoring sparsely populated cells.
"""

from __future__ import annotations

import numpy as np

from ..fsdp import ProblemInstance
from .common import (
    AlgoParams,
    ParetoArchive,
    Solution,
    constrained_dominates,
    generation_stats,
    initial_population,
    make_solution,
)

DECODE_EPS = 1e-9


def _decode(position: np.ndarray) -> np.ndarray:
    return np.floor(position).astype(np.int64)


def _grid_select(members: list[Solution], divisions: int, rng: np.random.Generator) -> Solution:
    """Pick a guide by roulette over hypercube cells, sparse cells favored."""
    if len(members) == 1:
        return members[0]
    objs = np.array([[m.objectives.fog_utilization, m.objectives.availability] for m in members])
    lo = objs.min(axis=0)
    hi = objs.max(axis=0)
    span = np.where(hi > lo, hi - lo, 1.0)
    cells = np.minimum(((objs - lo) / span * divisions).astype(int), divisions - 1)
    keys = [tuple(c) for c in cells]
    counts = {}
    for k in keys:
        counts[k] = counts.get(k, 0) + 1
    unique = sorted(counts)
    weights = np.array([1.0 / counts[k] for k in unique])
    pick = unique[rng.choice(len(unique), p=weights / weights.sum())]
    candidates = [i for i, k in enumerate(keys) if k == pick]
    return members[candidates[rng.integers(0, len(candidates))]]


def mopso_run(prob: ProblemInstance, params: AlgoParams, trace_hook=None) -> ParetoArchive:
    params.check_budget()
    rng = np.random.default_rng(params.seed)
    n = prob.n_services
    n_res = prob.n_resources
    swarm = params.population_size
    upper = n_res - DECODE_EPS

    archive = ParetoArchive(capacity=params.archive_capacity)
    evaluations = 0

    positions = np.array(
        [g + rng.random(n) for g in initial_population(prob, swarm, rng)], dtype=float
    )
    np.clip(positions, 0.0, upper, out=positions)
    velocities = np.zeros_like(positions)

    def evaluate(pos) -> Solution:
        nonlocal evaluations
        sol = make_solution(_decode(pos), prob)
        evaluations += 1
        archive.add(sol)
        return sol

    pbest_pos = positions.copy()
    pbest = [evaluate(positions[i]) for i in range(swarm)]
    current = list(pbest)
    if trace_hook:
        trace_hook(generation_stats(archive, current, evaluations))

    while evaluations < params.max_evaluations:
        for i in range(swarm):
            if evaluations >= params.max_evaluations:
                break
            guide = _grid_select(archive.members, params.grid_divisions, rng) if archive.members else pbest[i]
            guide_pos = np.array(guide.genotype, dtype=float) + 0.5
            r1 = rng.random(n)
            r2 = rng.random(n)
            velocities[i] = (
                params.inertia * velocities[i]
                + params.cognitive * r1 * (pbest_pos[i] - positions[i])
                + params.social * r2 * (guide_pos - positions[i])
            )
            positions[i] = np.clip(positions[i] + velocities[i], 0.0, upper)
            if rng.random() < params.mutation_rate:
                gene = rng.integers(0, n)
                positions[i, gene] = rng.random() * n_res
                positions[i, gene] = min(positions[i, gene], upper)
            sol = evaluate(positions[i])
            current[i] = sol
            if constrained_dominates(sol, pbest[i]):
                pbest[i], pbest_pos[i] = sol, positions[i].copy()
            elif not constrained_dominates(pbest[i], sol) and rng.random() < 0.5:
                pbest[i], pbest_pos[i] = sol, positions[i].copy()
        if trace_hook:
            trace_hook(generation_stats(archive, current, evaluations))

    return archive
