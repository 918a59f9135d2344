"""
进化算法基础组件
参数、个体、随机数流、方案评估器，以及初始化、两点交叉、重置变异算子
"""
import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from ..config.constants import (
    DEFAULT_ELITE_SIZE, DEFAULT_GENERATIONS, DEFAULT_P_CROSSOVER, DEFAULT_P_MUTATION,
    DEFAULT_POP_SIZE, DEFAULT_TOURNAMENT_SIZE, SUPPORTED_DECODERS,
)
from ..metrics.pareto import Front, FrontPoint
from ..models.entities import Objectives, Plan
from ..models.instance import Instance
from ..models.objectives import evaluate
from ..processors.constraints import BinStock
from ..processors.decoder import get_decoder, greedy_kernel
from ..utils.exceptions import InvalidParameterError, PlanError

logger = logging.getLogger(__name__)

_CACHE_LIMIT = 200_000


@dataclass(frozen=True)
class EAParams:
    """进化算法参数"""
    pop_size: int = DEFAULT_POP_SIZE
    generations: int = DEFAULT_GENERATIONS
    p_crossover: float = DEFAULT_P_CROSSOVER
    p_mutation: float = DEFAULT_P_MUTATION
    elite_size: int = DEFAULT_ELITE_SIZE
    tournament_size: int = DEFAULT_TOURNAMENT_SIZE
    seed: Optional[int] = None
    decoder: str = 'greedy'

    def __post_init__(self):
        if self.pop_size < 2:
            raise InvalidParameterError(f"种群规模至少为2: {self.pop_size}")
        if self.generations < 0:
            raise InvalidParameterError(f"迭代代数不能为负: {self.generations}")
        for name in ('p_crossover', 'p_mutation'):
            value = getattr(self, name)
            if not 0.0 <= value <= 1.0:
                raise InvalidParameterError(f"{name} 必须在 [0, 1] 内: {value}")
        if self.elite_size < 1:
            raise InvalidParameterError(f"精英档案规模至少为1: {self.elite_size}")
        if self.tournament_size < 1:
            raise InvalidParameterError(f"锦标赛规模至少为1: {self.tournament_size}")
        if self.decoder not in SUPPORTED_DECODERS:
            raise InvalidParameterError(f"不支持的解码器: {self.decoder}")

    def to_dict(self) -> Dict:
        return asdict(self)


class RandomStreams:
    """
    按算子划分的随机数流

    由 SeedSequence(seed) 派生四个独立的 PCG64 流：初始化、选择、交叉、变异
    """

    def __init__(self, seed: Optional[int]):
        children = np.random.SeedSequence(seed).spawn(4)
        self.init, self.selection, self.crossover, self.mutation = (
            np.random.Generator(np.random.PCG64(child)) for child in children
        )


@dataclass(eq=False)
class Individual:
    """种群个体：方案、目标值（最小化形式可由 objectives 获得）、等级、拥挤距离、SPEA2适应度"""
    plan: Plan
    objectives: Objectives
    rank: int = 0
    crowding: float = 0.0
    fitness: float = 0.0

    @property
    def vector(self) -> Tuple[float, float, float]:
        return self.objectives.minimization


def objective_matrix(population: Sequence[Individual]) -> np.ndarray:
    if not population:
        return np.zeros((0, 3), dtype=float)
    return np.array([ind.vector for ind in population], dtype=float)


class PlanEvaluator:
    """
    方案评估器

    贪心解码时对整批基因矩阵调用批量计算核心，并按基因缓存结果；
    精确解码时逐个方案求解（可多线程）
    """

    def __init__(self, instance: Instance, decoder: str = 'greedy', workers: int = 1):
        self.instance = instance
        self.decoder = decoder
        self.decode = get_decoder(decoder)
        self.workers = max(1, int(workers))
        self.n_evaluations = 0
        self._cache: Dict[bytes, Tuple[float, float]] = {}

    def _exact_one(self, genes: np.ndarray) -> Tuple[float, float]:
        plan = Plan(genes)
        objectives = evaluate(self.instance, plan, self.decode(self.instance, plan), debug=False)
        return objectives.volume_collected, objectives.distance

    def _solve(self, genes: np.ndarray) -> np.ndarray:
        if self.decoder == 'greedy':
            result = greedy_kernel(self.instance).run(genes)
            return np.column_stack([result.volume, result.distance])
        if self.workers > 1 and genes.shape[0] > 1:
            with ThreadPoolExecutor(max_workers=self.workers) as pool:
                values = list(pool.map(self._exact_one, genes))
        else:
            values = [self._exact_one(row) for row in genes]
        return np.array(values, dtype=float).reshape(-1, 2)

    def evaluate_genes(self, genes: np.ndarray) -> List[Objectives]:
        """
        评估 B×M 基因矩阵

        Returns:
            每行的 Objectives
        """
        genes = np.atleast_2d(np.asarray(genes, dtype=np.int64))
        if genes.shape[1] != self.instance.n_sites:
            raise PlanError(f"基因长度 {genes.shape[1]} 与站点数 {self.instance.n_sites} 不一致")
        if genes.size and (genes.min() < 0 or genes.max() >= self.instance.n_configs):
            raise PlanError("基因矩阵中存在越界的配置编号")
        keys = [row.astype(np.int32).tobytes() for row in genes]
        pending = {}
        for key, row in zip(keys, genes):
            if key not in self._cache and key not in pending:
                pending[key] = row
        if pending:
            solved = self._solve(np.array(list(pending.values()), dtype=np.int64))
            if len(self._cache) + len(pending) > _CACHE_LIMIT:
                self._cache.clear()
            for key, (volume, distance) in zip(pending.keys(), solved):
                self._cache[key] = (float(volume), float(distance))
            self.n_evaluations += len(pending)

        costs = np.asarray(self.instance.config_costs)[genes].sum(axis=1)
        total = self.instance.total_waste
        return [Objectives(self._cache[key][0], self._cache[key][1], float(cost), total)
                for key, cost in zip(keys, costs)]

    def evaluate_plans(self, plans: Sequence[Plan]) -> List[Individual]:
        if not plans:
            return []
        genes = np.array([plan.genes for plan in plans], dtype=np.int64)
        return [Individual(plan, obj) for plan, obj in zip(plans, self.evaluate_genes(genes))]

    def canonical(self, plan: Plan, label: Optional[str] = None) -> FrontPoint:
        """经解码器与 evaluate 重新计算的前沿点（报告用的标准目标值）"""
        assignment = self.decode(self.instance, plan)
        return FrontPoint(evaluate(self.instance, plan, assignment), plan, label)

    def final_front(self, plans: Iterable[Plan], label: Optional[str] = None) -> Front:
        """对方案去重、重新计算标准目标值并过滤为非支配前沿"""
        unique: Dict[bytes, Plan] = {}
        for plan in plans:
            unique.setdefault(plan.key, plan)
        return Front(self.canonical(plan, label) for plan in unique.values())


def sample_genes(instance: Instance, rng: np.random.Generator, n: int) -> np.ndarray:
    """
    均匀抽样 n 个基因向量：每个基因在该站点面积可行的配置中均匀选取

    设置了桶数量上限时，逐行按随机站点顺序抽取，每个站点只在剩余库存允许的配置中选
    """
    genes = np.zeros((n, instance.n_sites), dtype=np.int64)
    if not instance.has_bin_limits:
        for i, allowed in enumerate(instance.allowed_configs):
            genes[:, i] = allowed[rng.integers(0, allowed.shape[0], size=n)]
        return genes

    stock = BinStock(instance)
    for row in genes:
        for i in rng.permutation(instance.n_sites):
            choices = stock.fitting(row, int(i), instance.allowed_configs[i])
            row[i] = choices[rng.integers(0, choices.shape[0])]
    return genes


def init_population(instance: Instance, params: EAParams, rng: np.random.Generator,
                    evaluator: Optional[PlanEvaluator] = None) -> List[Individual]:
    """
    均匀随机初始化种群：每个基因在该站点可安装的配置中均匀选取

    Args:
        instance: 问题实例
        params: 算法参数
        rng: 初始化随机数流
        evaluator: 评估器，默认按 params.decoder 新建

    Returns:
        已评估的个体列表
    """
    if instance.n_configs < 1:
        raise PlanError("配置目录为空，无法初始化种群")
    evaluator = evaluator or PlanEvaluator(instance, params.decoder)
    genes = sample_genes(instance, rng, params.pop_size)
    return evaluator.evaluate_plans([Plan(row) for row in genes])


def crossover_2px(parent_a: Plan, parent_b: Plan, rng: np.random.Generator,
                  cuts: Optional[Tuple[int, int]] = None) -> Tuple[Plan, Plan]:
    """
    两点交叉：在 [0, M] 中均匀抽取两个切点，交换切点之间的片段

    Args:
        parent_a: 父代A
        parent_b: 父代B
        rng: 交叉随机数流
        cuts: 指定切点（测试用），为None时随机抽取

    Returns:
        两个子代
    """
    if len(parent_a) != len(parent_b):
        raise PlanError(f"父代长度不一致: {len(parent_a)} vs {len(parent_b)}")
    m = len(parent_a)
    if cuts is None:
        lo, hi = np.sort(rng.integers(0, m + 1, size=2))
    else:
        lo, hi = sorted(cuts)
    a = parent_a.genes.copy()
    b = parent_b.genes.copy()
    a[lo:hi], b[lo:hi] = parent_b.genes[lo:hi], parent_a.genes[lo:hi]
    return Plan(a), Plan(b)


def mutate_reset(plan: Plan, p_mutation: float, rng: np.random.Generator,
                 allowed: Sequence[np.ndarray], stock: Optional[BinStock] = None) -> Plan:
    """
    重置变异：每个基因以概率 p_mutation 在该站点可安装的配置中重新均匀抽取

    Args:
        plan: 方案
        p_mutation: 每个基因的变异概率
        rng: 变异随机数流
        allowed: 每个站点可安装的配置编号
        stock: 桶库存约束，给出时只在剩余库存允许的配置中抽取

    Returns:
        新方案
    """
    mask = rng.random(len(plan)) < p_mutation
    if not mask.any():
        return plan
    genes = plan.genes.copy()
    for i in np.flatnonzero(mask):
        choices = allowed[i] if stock is None else stock.fitting(genes, int(i), allowed[i])
        genes[i] = choices[rng.integers(0, choices.shape[0])]
    return Plan(genes)
