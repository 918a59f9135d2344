"""
进化算法框架
NSGA-II 与 SPEA2 共用的流程：随机数流、评估器、锦标赛选择、交叉变异、代际记录与计时日志
"""
import logging
import time
from dataclasses import dataclass
from typing import Callable, List, Optional, Sequence, Tuple

import numpy as np

from .operators import (
    EAParams, Individual, PlanEvaluator, RandomStreams, crossover_2px, mutate_reset,
    objective_matrix,
)
from ..metrics.pareto import Front
from ..models.entities import Plan
from ..models.instance import Instance
from ..processors.constraints import BinStock

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class GenerationRecord:
    """一代的监控信息：代数、非支配解个数、每个目标的最小值"""
    generation: int
    nd_count: int
    minima: Tuple[float, float, float]


class EvolutionarySolver:
    """进化算法基类，子类实现 _evolve() 并返回最终候选方案"""

    name = "moea"

    def __init__(self, instance: Instance, params: Optional[EAParams] = None,
                 evaluator: Optional[PlanEvaluator] = None, workers: int = 1):
        self.instance = instance
        self.params = params or EAParams()
        self.streams = RandomStreams(self.params.seed)
        self.evaluator = evaluator or PlanEvaluator(instance, self.params.decoder, workers)
        self.stock = BinStock(instance)
        self.history: List[GenerationRecord] = []

    # ----------------------------------------------------------------- 选择与变异

    def tournament(self, population: Sequence[Individual],
                   better: Callable[[Individual, Individual], bool]) -> Individual:
        """锦标赛选择：有放回抽取 tournament_size 个个体，先抽到者在平局时获胜"""
        picks = self.streams.selection.integers(0, len(population), size=self.params.tournament_size)
        winner = population[int(picks[0])]
        for idx in picks[1:]:
            challenger = population[int(idx)]
            if better(challenger, winner):
                winner = challenger
        return winner

    def variation(self, parents: Sequence[Individual]) -> List[Plan]:
        """
        按顺序两两配对做两点交叉与重置变异，子代数与种群规模一致

        交叉后超出桶库存上限的子代先修复，变异只在剩余库存允许的配置中抽取
        """
        allowed = self.instance.allowed_configs
        stock = self.stock if self.stock.active else None
        rng_c, rng_m = self.streams.crossover, self.streams.mutation
        offspring: List[Plan] = []
        for k in range(0, len(parents), 2):
            a = parents[k].plan
            b = parents[(k + 1) % len(parents)].plan
            if rng_c.random() < self.params.p_crossover:
                a, b = crossover_2px(a, b, rng_c)
                if stock is not None:
                    a = Plan(stock.repair(a.genes, rng_c))
                    b = Plan(stock.repair(b.genes, rng_c))
            offspring.append(mutate_reset(a, self.params.p_mutation, rng_m, allowed, stock))
            offspring.append(mutate_reset(b, self.params.p_mutation, rng_m, allowed, stock))
        return offspring[:self.params.pop_size]

    def record(self, generation: int, population: Sequence[Individual], nd_count: int) -> None:
        minima = tuple(float(v) for v in objective_matrix(population).min(axis=0))
        self.history.append(GenerationRecord(generation, nd_count, minima))

    # ----------------------------------------------------------------- 运行

    def _evolve(self) -> List[Plan]:
        raise NotImplementedError

    def solve(self) -> Front:
        """
        运行算法

        Returns:
            以标准解码结果重新评估并过滤后的非支配前沿
        """
        start_time = time.time()
        n, m = self.instance.n_generators, self.instance.n_sites
        try:
            plans = self._evolve()
            front = self.evaluator.final_front(plans, label=self.name)
            elapsed = time.time() - start_time
            logger.info(
                f"求解完成 - 算法: {self.name} | 规模: N={n}, M={m} | "
                f"代数: {self.params.generations} | 评估次数: {self.evaluator.n_evaluations} | "
                f"前沿规模: {len(front)} | 耗时: {elapsed:.3f}秒 | 状态: 成功"
            )
            return front
        except Exception as e:
            elapsed = time.time() - start_time
            logger.error(
                f"求解失败 - 算法: {self.name} | 规模: N={n}, M={m} | "
                f"耗时: {elapsed:.3f}秒 | 状态: 失败 | 错误: {e}"
            )
            raise
