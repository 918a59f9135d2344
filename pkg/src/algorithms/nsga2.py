"""
NSGA-II
(μ+λ) 模型，λ = μ：父代与子代合并后按非支配等级填充，最后一个放不下的前沿按拥挤距离截断
"""
import logging
from typing import List, Optional

from .evolution import EvolutionarySolver
from .operators import EAParams, Individual, init_population
from .sorting import crowding_distance, non_dominated_sort
from ..metrics.pareto import Front
from ..models.entities import Plan
from ..models.instance import Instance

logger = logging.getLogger(__name__)


def _better(a: Individual, b: Individual) -> bool:
    """等级更低，或等级相同且拥挤距离更大"""
    return a.rank < b.rank or (a.rank == b.rank and a.crowding > b.crowding)


class NSGA2Solver(EvolutionarySolver):
    """NSGA-II 求解器"""

    name = "nsga2"

    def rank_population(self, population: List[Individual]) -> List[List[int]]:
        """为每个个体写入等级与拥挤距离，返回前沿划分"""
        fronts = non_dominated_sort(population)
        for rank, front in enumerate(fronts):
            members = [population[i] for i in front]
            for ind, dist in zip(members, crowding_distance(members)):
                ind.rank = rank
                ind.crowding = float(dist)
        return fronts

    def survivors(self, merged: List[Individual], fronts: List[List[int]]) -> List[Individual]:
        """按等级填充新种群，放不下的前沿按拥挤距离降序截断（距离相同保持原顺序）"""
        size = self.params.pop_size
        selected: List[Individual] = []
        for front in fronts:
            members = [merged[i] for i in front]
            if len(selected) + len(members) <= size:
                selected.extend(members)
                continue
            members = sorted(members, key=lambda ind: -ind.crowding)
            selected.extend(members[:size - len(selected)])
            break
        return selected

    def _evolve(self) -> List[Plan]:
        population = init_population(self.instance, self.params, self.streams.init, self.evaluator)
        fronts = self.rank_population(population)
        self.record(0, population, len(fronts[0]))
        merged, merged_fronts = population, fronts

        for generation in range(1, self.params.generations + 1):
            parents = [self.tournament(population, _better) for _ in range(self.params.pop_size)]
            offspring = self.evaluator.evaluate_plans(self.variation(parents))
            merged = population + offspring
            merged_fronts = self.rank_population(merged)
            population = self.survivors(merged, merged_fronts)
            self.record(generation, merged, len(merged_fronts[0]))
            if generation % 100 == 0:
                logger.debug(f"NSGA-II 第 {generation} 代 - 非支配解: {len(merged_fronts[0])}")

        return [merged[i].plan for i in merged_fronts[0]]


def nsga2(instance: Instance, params: Optional[EAParams] = None, workers: int = 1) -> Front:
    """
    运行 NSGA-II

    Args:
        instance: 问题实例
        params: 算法参数
        workers: 精确解码时的评估线程数

    Returns:
        最终合并种群的非支配前沿（含基因型）
    """
    return NSGA2Solver(instance, params, workers=workers).solve()
