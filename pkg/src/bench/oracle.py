"""
穷举前沿
枚举所有基因型（每个站点在面积可行的配置中取值），得到给定解码器下的真实帕累托前沿
"""
import logging
import math
import time
from typing import List, Optional

import numpy as np

from ..algorithms.operators import PlanEvaluator
from ..config.constants import EXHAUSTIVE_BATCH, EXHAUSTIVE_EXACT_LIMIT, EXHAUSTIVE_LIMIT
from ..metrics.pareto import Front
from ..models.entities import Plan
from ..models.instance import Instance
from ..processors.constraints import BinStock
from ..processors.decoder import greedy_kernel
from ..utils.exceptions import OracleSizeError

logger = logging.getLogger(__name__)

_FILTER_BLOCK = 2048


def genotype_count(instance: Instance) -> int:
    return math.prod(int(a.shape[0]) for a in instance.allowed_configs)


def genotype_block(instance: Instance, start: int, stop: int) -> np.ndarray:
    """按混合进制解码第 [start, stop) 个基因型（与 itertools.product 顺序一致，最后一个站点变化最快）"""
    index = np.arange(start, stop, dtype=np.int64)
    genes = np.zeros((stop - start, instance.n_sites), dtype=np.int64)
    for i in reversed(range(instance.n_sites)):
        allowed = instance.allowed_configs[i]
        genes[:, i] = allowed[index % allowed.shape[0]]
        index //= allowed.shape[0]
    return genes


class _Archive:
    """增量非支配档案（目标向量相同只保留先出现者）"""

    def __init__(self, n_sites: int):
        self.values = np.zeros((0, 3), dtype=float)
        self.genes = np.zeros((0, n_sites), dtype=np.int64)

    def add(self, values: np.ndarray, genes: np.ndarray) -> None:
        if self.values.shape[0]:
            covered = (self.values[np.newaxis, :, :] <= values[:, np.newaxis, :]).all(axis=2).any(axis=1)
            values, genes = values[~covered], genes[~covered]
        if values.shape[0] == 0:
            return

        # 块内过滤：被支配或与更早的点相同的剔除
        le = (values[np.newaxis, :, :] <= values[:, np.newaxis, :]).all(axis=2)
        lt = (values[np.newaxis, :, :] < values[:, np.newaxis, :]).any(axis=2)
        dominated = (le & lt).any(axis=1)
        equal = le & ~lt
        earlier_equal = np.tril(equal, k=-1).any(axis=1)
        keep = ~(dominated | earlier_equal)
        values, genes = values[keep], genes[keep]

        if self.values.shape[0]:
            beaten = ((values[np.newaxis, :, :] <= self.values[:, np.newaxis, :]).all(axis=2)
                      & (values[np.newaxis, :, :] < self.values[:, np.newaxis, :]).any(axis=2)).any(axis=1)
            self.values, self.genes = self.values[~beaten], self.genes[~beaten]
        self.values = np.vstack([self.values, values])
        self.genes = np.vstack([self.genes, genes])


def exhaustive_front(instance: Instance, decoder: str = 'greedy',
                     batch_size: int = EXHAUSTIVE_BATCH,
                     evaluator: Optional[PlanEvaluator] = None) -> Front:
    """
    穷举所有基因型（跳过超出桶数量上限的基因型），返回非支配前沿

    Args:
        instance: 问题实例
        decoder: 解码器名称
        batch_size: 每批评估的基因型数量
        evaluator: 评估器（精确解码时使用），默认按 decoder 新建

    Returns:
        以标准解码结果重新评估的真实前沿

    Raises:
        OracleSizeError: 基因型数量超过上限
    """
    total = genotype_count(instance)
    limit = EXHAUSTIVE_LIMIT if decoder == 'greedy' else EXHAUSTIVE_EXACT_LIMIT
    if total > limit:
        raise OracleSizeError(f"基因型数量 {total} 超过穷举上限 {limit}（解码器: {decoder}）")
    if total > limit // 2:
        logger.warning(f"穷举规模 {total} 接近上限 {limit}")

    start_time = time.time()
    evaluator = evaluator or PlanEvaluator(instance, decoder)
    costs = np.asarray(instance.config_costs, dtype=float)
    total_waste = instance.total_waste
    archive = _Archive(instance.n_sites)
    stock = BinStock(instance)

    for start in range(0, total, batch_size):
        genes = genotype_block(instance, start, min(total, start + batch_size))
        genes = genes[stock.feasible_rows(genes)]
        if genes.shape[0] == 0:
            continue
        if decoder == 'greedy':
            result = greedy_kernel(instance).run(genes)
            volume, distance = result.volume, result.distance
        else:
            objectives = evaluator.evaluate_genes(genes)
            volume = np.array([o.volume_collected for o in objectives])
            distance = np.array([o.distance for o in objectives])
        values = np.column_stack([total_waste - volume, distance, costs[genes].sum(axis=1)])
        for block in range(0, values.shape[0], _FILTER_BLOCK):
            archive.add(values[block:block + _FILTER_BLOCK], genes[block:block + _FILTER_BLOCK])

    plans: List[Plan] = [Plan(row) for row in archive.genes]
    front = evaluator.final_front(plans, label='exhaustive')
    logger.info(
        f"穷举完成 - 实例: {instance.name} | 基因型数: {total} | 解码器: {decoder} | "
        f"前沿规模: {len(front)} | 耗时: {time.time() - start_time:.3f}秒"
    )
    return front
