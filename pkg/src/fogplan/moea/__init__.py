"""Multiobjective machinery and the three placement optimizers."""

from .common import (
    AlgoParams,
    GenerationStats,
    ParetoArchive,
    Solution,
    constrained_dominates,
    crowding_distance,
    fast_nondominated_sort,
    generation_stats,
    hypervolume_2d,
    make_solution,
    pareto_dominates,
    select_compromise,
)
from .moead import moead_run, simplex_lattice_weights, tchebycheff
from .mopso import mopso_run
from .nsga2 import nsga2_run

ALGORITHMS = {
    "nsga2": nsga2_run,
    "mopso": mopso_run,
    "moead": moead_run,
}

__all__ = [
    "ALGORITHMS",
    "AlgoParams",
    "GenerationStats",
    "ParetoArchive",
    "Solution",
    "constrained_dominates",
    "crowding_distance",
    "fast_nondominated_sort",
    "generation_stats",
    "hypervolume_2d",
    "make_solution",
    "moead_run",
    "mopso_run",
    "nsga2_run",
    "pareto_dominates",
    "select_compromise",
    "simplex_lattice_weights",
    "tchebycheff",
]
