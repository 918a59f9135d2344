"""
SPEA2
强度适应度 + 近邻密度估计，非支配个体组成精英档案，超出规模时按近邻距离截断
"""
import logging
from typing import List, Optional

import numpy as np

from .evolution import EvolutionarySolver
from .operators import EAParams, Individual, init_population, objective_matrix
from .sorting import normalize_objectives, strength_fitness, truncate_archive
from ..metrics.pareto import Front
from ..models.entities import Plan
from ..models.instance import Instance

logger = logging.getLogger(__name__)


def _better(a: Individual, b: Individual) -> bool:
    return a.fitness < b.fitness


class SPEA2Solver(EvolutionarySolver):
    """SPEA2 求解器"""

    name = "spea2"

    def update_archive(self, union: List[Individual]) -> List[Individual]:
        """
        计算并集的适应度，取 raw = 0 的个体为新档案，超过 elite_size 时截断

        截断在以并集最小/最大值归一化的目标空间中进行
        """
        matrix = objective_matrix(union)
        scores = strength_fitness(matrix)
        for ind, value in zip(union, scores.fitness):
            ind.fitness = float(value)
        members = np.flatnonzero(scores.raw == 0)
        if members.shape[0] > self.params.elite_size:
            normalized = normalize_objectives(matrix)[members]
            keep = truncate_archive(normalized, self.params.elite_size)
            members = members[keep]
        return [union[i] for i in members]

    def _evolve(self) -> List[Plan]:
        population = init_population(self.instance, self.params, self.streams.init, self.evaluator)
        archive: List[Individual] = []

        for generation in range(self.params.generations):
            union = population + archive
            archive = self.update_archive(union)
            self.record(generation, union, len(archive))
            parents = [self.tournament(union, _better) for _ in range(self.params.pop_size)]
            population = self.evaluator.evaluate_plans(self.variation(parents))
            if generation and generation % 100 == 0:
                logger.debug(f"SPEA2 第 {generation} 代 - 档案规模: {len(archive)}")

        archive = self.update_archive(population + archive)
        return [ind.plan for ind in archive]


def spea2(instance: Instance, params: Optional[EAParams] = None, workers: int = 1) -> Front:
    """
    运行 SPEA2

    Args:
        instance: 问题实例
        params: 算法参数
        workers: 精确解码时的评估线程数

    Returns:
        最终档案中的非支配方案
    """
    return SPEA2Solver(instance, params, workers=workers).solve()
