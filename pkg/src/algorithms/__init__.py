"""
算法模块
加权PageRank启发式与多目标进化算法（NSGA-II、SPEA2）
"""
from .pagerank import RankGraph, Ranking, build_graph, pagerank, rank_sites, site_demand
from .heuristics import pr_vol, pr_dist, pr_cost, pr_mo, pr_weighted, weight_grid, HEURISTICS
from .operators import (
    EAParams, Individual, PlanEvaluator, RandomStreams,
    init_population, crossover_2px, mutate_reset, sample_genes,
)
from .sorting import non_dominated_sort, crowding_distance, strength_fitness, truncate_archive
from .evolution import EvolutionarySolver, GenerationRecord
from .nsga2 import NSGA2Solver, nsga2
from .spea2 import SPEA2Solver, spea2

__all__ = [
    'RankGraph',
    'Ranking',
    'build_graph',
    'pagerank',
    'rank_sites',
    'site_demand',
    'pr_vol',
    'pr_dist',
    'pr_cost',
    'pr_mo',
    'pr_weighted',
    'weight_grid',
    'HEURISTICS',
    'EAParams',
    'Individual',
    'PlanEvaluator',
    'RandomStreams',
    'init_population',
    'crossover_2px',
    'mutate_reset',
    'sample_genes',
    'non_dominated_sort',
    'crowding_distance',
    'strength_fitness',
    'truncate_archive',
    'EvolutionarySolver',
    'GenerationRecord',
    'NSGA2Solver',
    'nsga2',
    'SPEA2Solver',
    'spea2',
]
