"""
基于PageRank排序的构造式启发式
按 PageRank 排序逐个站点确定配置；每个候选配置都在"已确定站点 + 当前候选"的部分方案上用贪心解码评估

- pr_vol: 收集量最大，其次成本最低
- pr_dist: 只考虑容量大于0的配置，步行距离最小，其次收集量最大
- pr_cost: 覆盖本站点剩余需求的配置中成本最低，其次收集量最大
- pr_mo: 66 组权重的线性加权，返回非支配前沿
"""
import logging
from typing import Callable, List, Optional, Tuple

import numpy as np

from .operators import PlanEvaluator
from .pagerank import Ranking, rank_sites
from ..config.constants import CONSTRAINT_TOL, MO_WEIGHT_STEPS, TIE_DECIMALS
from ..metrics.pareto import Front
from ..models.entities import Plan
from ..models.instance import Instance
from ..processors.constraints import BinStock
from ..processors.decoder import greedy_kernel

logger = logging.getLogger(__name__)

# (候选配置, 批量收集量, 批量距离, 批量成本) -> 选中的候选下标
Chooser = Callable[[np.ndarray, np.ndarray, np.ndarray, np.ndarray], int]


def _argbest(*keys) -> int:
    """按优先级依次比较各键（均为越小越好），返回最优下标"""
    return int(np.lexsort(tuple(reversed(keys)))[0])


def _r(values: np.ndarray) -> np.ndarray:
    return np.round(values, TIE_DECIMALS)


def weight_grid(steps: int = MO_WEIGHT_STEPS) -> List[Tuple[float, float, float]]:
    """权重网格 α+β+γ=1，每个分量取 {0, 1/steps, ..., 1}"""
    grid = []
    for a in range(steps + 1):
        for b in range(steps + 1 - a):
            grid.append((a / steps, b / steps, (steps - a - b) / steps))
    return grid


class _Sweep:
    """按排序逐站点确定配置的扫描过程"""

    def __init__(self, instance: Instance, ranking: Ranking):
        self.instance = instance
        self.ranking = ranking
        self.kernel = greedy_kernel(instance)
        self.costs = np.asarray(instance.config_costs, dtype=float)
        self.capacities = np.asarray(instance.config_capacities, dtype=float)
        self.stock = BinStock(instance)
        self.genes = np.zeros(instance.n_sites, dtype=np.int64)
        self.volume = 0.0
        self.target = instance.total_waste - CONSTRAINT_TOL * max(1.0, instance.total_waste)

    def all_collected(self) -> bool:
        return self.volume >= self.target

    def evaluate(self, site: int, candidates: np.ndarray):
        batch = np.tile(self.genes, (candidates.shape[0], 1))
        batch[:, site] = candidates
        result = self.kernel.run(batch)
        return result.volume, result.distance, self.costs[batch].sum(axis=1)

    def run(self, candidates_for: Callable[[int, int], np.ndarray], choose: Chooser,
            early_stop: bool) -> Plan:
        if early_stop and self.all_collected():
            return Plan(self.genes)
        for position, site in enumerate(self.ranking.order):
            site = int(site)
            candidates = self.stock.fitting(self.genes, site, candidates_for(site, position))
            if candidates.shape[0] == 0:
                continue
            volume, distance, cost = self.evaluate(site, candidates)
            k = choose(candidates, volume, distance, cost)
            self.genes[site] = candidates[k]
            self.volume = float(volume[k])
            if early_stop and self.all_collected():
                break
        return Plan(self.genes)


def _ranking(instance: Instance, ranking: Optional[Ranking]) -> Ranking:
    return ranking if ranking is not None else rank_sites(instance)


def pr_vol(instance: Instance, ranking: Optional[Ranking] = None) -> Plan:
    """
    PageRank-Vol：每个站点选择使收集量最大的配置，收集量相同时取成本最低者，再按目录顺序

    全部垃圾都被收集后提前停止，剩余站点不安装
    """
    sweep = _Sweep(instance, _ranking(instance, ranking))

    def choose(cands, volume, distance, cost):
        return _argbest(-_r(volume), _r(cost), cands)

    return sweep.run(lambda site, _: instance.allowed_configs[site], choose, early_stop=True)


def pr_dist(instance: Instance, ranking: Optional[Ranking] = None) -> Plan:
    """
    PageRank-Dist：只考虑容量大于0的配置，选择使步行距离最小的配置，
    其次收集量最大、成本最低、目录顺序；所有站点都会安装。没有垃圾的实例返回空方案
    """
    if instance.total_waste <= 0:
        return Plan.zeros(instance.n_sites)
    sweep = _Sweep(instance, _ranking(instance, ranking))
    capacities = sweep.capacities

    def candidates(site, _):
        allowed = instance.allowed_configs[site]
        return allowed[capacities[allowed] > 0]

    def choose(cands, volume, distance, cost):
        return _argbest(_r(distance), -_r(volume), _r(cost), cands)

    return sweep.run(candidates, choose, early_stop=False)


def _residual_demand(instance: Instance, sweep: _Sweep, site: int, position: int) -> float:
    """
    本站点的剩余需求：步行距离上限以内、且在尚未扫描的站点（含本站点）中以本站点为最近站点的产生点，
    在当前部分方案下未被收集的垃圾量
    """
    served = sweep.kernel.run(sweep.genes[np.newaxis, :], record_served=True).served[0]
    unswept = np.zeros(instance.n_sites, dtype=bool)
    unswept[sweep.ranking.order[position:]] = True
    waste = np.asarray(instance.waste)
    demand = []
    for p, order in enumerate(instance.reach_order):
        if waste[p] <= 0 or order.size == 0:
            continue
        open_sites = order[unswept[order]]
        if open_sites.size and int(open_sites[0]) == site:
            demand.append(max(0.0, waste[p] - served[p]))
    return float(np.sum(demand)) if demand else 0.0


def pr_cost(instance: Instance, ranking: Optional[Ranking] = None) -> Plan:
    """
    PageRank-Cost：选择容量能覆盖本站点剩余需求的最便宜配置（需求超过最大容量时按最大容量截断），
    其次收集量最大、目录顺序；全部垃圾都被收集后提前停止
    """
    sweep = _Sweep(instance, _ranking(instance, ranking))
    capacities = sweep.capacities
    tol = CONSTRAINT_TOL

    def candidates(site, position):
        allowed = sweep.stock.fitting(sweep.genes, site, instance.allowed_configs[site])
        demand = _residual_demand(instance, sweep, site, position)
        demand = min(demand, float(capacities[allowed].max()))
        return allowed[capacities[allowed] >= demand - tol * max(1.0, demand)]

    def choose(cands, volume, distance, cost):
        return _argbest(_r(cost), -_r(volume), cands)

    return sweep.run(candidates, choose, early_stop=True)


def pr_weighted(instance: Instance, weights: Tuple[float, float, float],
                ranking: Optional[Ranking] = None) -> Plan:
    """
    按 α·cost/maxcost + β·dist/maxdist − γ·vol/maxvol 选择配置的单次扫描

    maxcost = M × 最贵配置成本，maxdist = N × 最大步行距离，maxvol = 总垃圾量。
    距离权重为0时在全部垃圾被收集后提前停止，否则与 pr_dist 一样扫描全部站点
    """
    alpha, beta, gamma = weights
    max_cost = instance.n_sites * instance.max_config_cost or 1.0
    max_dist = instance.n_generators * instance.max_walk or 1.0
    max_vol = instance.total_waste or 1.0
    sweep = _Sweep(instance, _ranking(instance, ranking))

    def choose(cands, volume, distance, cost):
        score = alpha * cost / max_cost + beta * distance / max_dist - gamma * volume / max_vol
        return _argbest(_r(score), _r(cost), cands)

    return sweep.run(lambda site, _: instance.allowed_configs[site], choose, early_stop=beta <= 0.0)


def pr_mo(instance: Instance, ranking: Optional[Ranking] = None,
          evaluator: Optional[PlanEvaluator] = None) -> Front:
    """
    MO-PageRank：对 66 组权重各执行一次加权扫描，返回所得方案的非支配集合

    每个前沿点的标签记录其权重
    """
    ranking = _ranking(instance, ranking)
    evaluator = evaluator or PlanEvaluator(instance, 'greedy')
    points = []
    for weights in weight_grid():
        plan = pr_weighted(instance, weights, ranking)
        label = "alpha={:.1f},beta={:.1f},gamma={:.1f}".format(*weights)
        points.append(evaluator.canonical(plan, label))
    front = Front(points)
    logger.info(f"MO-PageRank 完成 - 权重组数: {len(points)} | 非支配方案数: {len(front)}")
    return front


HEURISTICS = {
    'pr-vol': pr_vol,
    'pr-dist': pr_dist,
    'pr-cost': pr_cost,
}
