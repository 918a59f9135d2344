"""
方案解码器
将方案（每个站点的配置）解码为产生点到站点的分数分配

- 贪心解码：按产生点id升序，每个产生点把垃圾依次倒入 步行距离上限以内按 (距离, 站点id) 排序的站点，
  站点装满后拆分到下一个站点，剩余部分记为未收集
- 精确解码：两阶段线性规划，先最大化收集量，再在最大收集量下最小化步行距离（测试用的基准）
"""
import logging
from dataclasses import dataclass
from functools import lru_cache
from typing import List, NamedTuple, Optional, Tuple

import numpy as np
from scipy import sparse
from scipy.optimize import linprog

from ..config.constants import EXACT_DECODER_LIMIT, SUPPORTED_DECODERS
from ..models.entities import Plan
from ..models.instance import Instance
from ..utils.exceptions import AlgorithmNotSupportedError, DecoderSizeError, GAPSolverException

logger = logging.getLogger(__name__)

_CLEAN_EPS = 1e-12


@dataclass(frozen=True, eq=False)
class Assignment:
    """
    分数分配矩阵（COO稀疏格式）

    rows/cols 为产生点、站点下标，fractions 为对应的分配比例，使用关系由比例大于0导出
    """
    n_generators: int
    n_sites: int
    rows: np.ndarray
    cols: np.ndarray
    fractions: np.ndarray

    def __post_init__(self):
        for name, dtype in (('rows', np.int64), ('cols', np.int64), ('fractions', float)):
            arr = np.array(getattr(self, name), dtype=dtype).reshape(-1)
            arr.setflags(write=False)
            object.__setattr__(self, name, arr)
        if not (self.rows.shape == self.cols.shape == self.fractions.shape):
            raise ValueError("rows/cols/fractions 长度必须一致")

    @classmethod
    def empty(cls, n_generators: int, n_sites: int) -> "Assignment":
        return cls(n_generators, n_sites, np.zeros(0, dtype=np.int64),
                   np.zeros(0, dtype=np.int64), np.zeros(0, dtype=float))

    @classmethod
    def from_dense(cls, matrix) -> "Assignment":
        """由稠密的 N×M 分数矩阵构造（保留所有非零元素）"""
        matrix = np.asarray(matrix, dtype=float)
        if matrix.ndim != 2:
            raise ValueError(f"分配矩阵必须为二维，实际维度: {matrix.ndim}")
        rows, cols = np.nonzero(matrix)
        return cls(matrix.shape[0], matrix.shape[1], rows.astype(np.int64),
                   cols.astype(np.int64), matrix[rows, cols].copy())

    @property
    def nnz(self) -> int:
        return int(self.fractions.shape[0])

    def to_dense(self) -> np.ndarray:
        dense = np.zeros((self.n_generators, self.n_sites), dtype=float)
        np.add.at(dense, (self.rows, self.cols), self.fractions)
        return dense

    @property
    def indicator(self) -> np.ndarray:
        """产生点是否使用站点（比例大于0）"""
        return self.to_dense() > 0

    def site_load(self, waste: np.ndarray) -> np.ndarray:
        """每个站点分配到的垃圾量"""
        load = np.zeros(self.n_sites, dtype=float)
        np.add.at(load, self.cols, self.fractions * waste[self.rows])
        return load


class KernelResult(NamedTuple):
    volume: np.ndarray                 # (B,) 收集量
    distance: np.ndarray               # (B,) 步行距离
    served: Optional[np.ndarray]       # (B, N) 每个产生点被收集的量


class GreedyKernel:
    """
    贪心解码的批量计算核心

    一次处理 B 个方案（B×M 的基因矩阵），对每个产生点在所有方案上同时执行倒入操作。
    与 decode_greedy 使用同一套算术，B=1 时结果完全一致。
    """

    def __init__(self, instance: Instance):
        self.instance = instance
        self.capacities = np.asarray(instance.config_capacities, dtype=float)
        # (产生点下标, 可达站点顺序, 对应距离, 垃圾量)，跳过垃圾量为0或无可达站点的产生点
        self._steps: List[Tuple[int, np.ndarray, np.ndarray, float]] = []
        for p in instance.generator_order:
            p = int(p)
            order = instance.reach_order[p]
            w = float(instance.waste[p])
            if w <= 0 or order.size == 0:
                continue
            self._steps.append((p, order, np.ascontiguousarray(instance.distance[p, order]), w))

    def run(self, genes: np.ndarray, record_served: bool = False) -> KernelResult:
        """
        批量解码并计算收集量与距离

        Args:
            genes: B×M 的配置编号矩阵（或长度为 M 的一维向量）
            record_served: 是否记录每个产生点被收集的量

        Returns:
            KernelResult
        """
        genes = np.atleast_2d(np.asarray(genes, dtype=np.int64))
        n_plans = genes.shape[0]
        remaining = self.capacities[genes]
        volume = np.zeros(n_plans, dtype=float)
        distance = np.zeros(n_plans, dtype=float)
        served = np.zeros((n_plans, self.instance.n_generators), dtype=float) if record_served else None

        for p, order, dists, w in self._steps:
            allocated = self._pour(remaining, order, w)
            volume += allocated.sum(axis=1)
            distance += (allocated / w) @ dists
            if served is not None:
                served[:, p] = allocated.sum(axis=1)
        return KernelResult(volume, distance, served)

    @staticmethod
    def _pour(remaining: np.ndarray, order: np.ndarray, w: float) -> np.ndarray:
        r = remaining[:, order]
        before = np.zeros_like(r)
        if r.shape[1] > 1:
            before[:, 1:] = np.cumsum(r[:, :-1], axis=1)
        allocated = np.clip(w - before, 0.0, r)
        remaining[:, order] = r - allocated
        return allocated

    def decode(self, plan: Plan) -> Assignment:
        """单个方案的贪心解码，返回分配矩阵"""
        remaining = self.capacities[plan.genes][np.newaxis, :]
        rows, cols, fractions = [], [], []
        for p, order, _, w in self._steps:
            allocated = self._pour(remaining, order, w)[0]
            mask = allocated > 0
            if not mask.any():
                continue
            rows.append(np.full(int(mask.sum()), p, dtype=np.int64))
            cols.append(order[mask].astype(np.int64))
            fractions.append(allocated[mask] / w)
        n, m = self.instance.n_generators, self.instance.n_sites
        if not rows:
            return Assignment.empty(n, m)
        return Assignment(n, m, np.concatenate(rows), np.concatenate(cols), np.concatenate(fractions))


@lru_cache(maxsize=8)
def greedy_kernel(instance: Instance) -> GreedyKernel:
    """按实例缓存的批量计算核心"""
    return GreedyKernel(instance)


def decode_greedy(instance: Instance, plan: Plan) -> Assignment:
    """
    贪心解码

    Args:
        instance: 问题实例
        plan: 方案

    Returns:
        满足全部分配约束的结果
    """
    instance.validate_plan(plan)
    return greedy_kernel(instance).decode(plan)


def _repair(fractions: np.ndarray, rows: np.ndarray, cols: np.ndarray,
            waste: np.ndarray, capacity: np.ndarray, n: int, m: int) -> np.ndarray:
    """消除线性规划求解器容差带来的微小越界"""
    fractions = np.clip(fractions, 0.0, 1.0)
    fractions[fractions < _CLEAN_EPS] = 0.0

    row_sum = np.zeros(n, dtype=float)
    np.add.at(row_sum, rows, fractions)
    over = row_sum > 1.0
    if over.any():
        scale = np.ones(n, dtype=float)
        scale[over] = 1.0 / row_sum[over]
        fractions = fractions * scale[rows]

    load = np.zeros(m, dtype=float)
    np.add.at(load, cols, fractions * waste[rows])
    over = load > capacity
    if over.any():
        scale = np.ones(m, dtype=float)
        scale[over] = capacity[over] / load[over]
        fractions = fractions * scale[cols]
    return fractions


def decode_exact(instance: Instance, plan: Plan) -> Assignment:
    """
    精确解码：字典序地先最大化收集量，再最小化步行距离

    只在距离不超过步行上限、站点容量为正、垃圾量为正的弧上建变量，使用 HiGHS 求解两阶段线性规划

    Args:
        instance: 问题实例
        plan: 方案

    Returns:
        最优分配

    Raises:
        DecoderSizeError: N·M 超过 EXACT_DECODER_LIMIT
    """
    instance.validate_plan(plan)
    n, m = instance.n_generators, instance.n_sites
    if n * m > EXACT_DECODER_LIMIT:
        raise DecoderSizeError(f"精确解码规模 N·M = {n * m} 超过上限 {EXACT_DECODER_LIMIT}")

    waste = np.asarray(instance.waste, dtype=float)
    capacity = np.asarray(instance.config_capacities, dtype=float)[plan.genes]
    reachable = (instance.distance <= instance.max_walk) & (capacity[np.newaxis, :] > 0) \
        & (waste[:, np.newaxis] > 0)
    rows, cols = np.nonzero(reachable)
    if rows.size == 0:
        return Assignment.empty(n, m)

    n_arcs = rows.size
    arc_ids = np.arange(n_arcs)
    weights = waste[rows]
    # 产生点比例之和不超过1；站点收到的量不超过容量
    a_gen = sparse.csr_matrix((np.ones(n_arcs), (rows, arc_ids)), shape=(n, n_arcs))
    a_site = sparse.csr_matrix((weights, (cols, arc_ids)), shape=(m, n_arcs))
    a_ub = sparse.vstack([a_gen, a_site]).tocsr()
    b_ub = np.concatenate([np.ones(n), capacity])
    bounds = (0.0, 1.0)

    stage1 = linprog(-weights, A_ub=a_ub, b_ub=b_ub, bounds=bounds, method='highs')
    if not stage1.success:
        raise GAPSolverException(f"精确解码第一阶段求解失败: {stage1.message}")
    best_volume = -stage1.fun

    floor = best_volume - 1e-9 * max(1.0, best_volume)
    a_ub2 = sparse.vstack([a_ub, sparse.csr_matrix(-weights.reshape(1, -1))]).tocsr()
    b_ub2 = np.concatenate([b_ub, [-floor]])
    stage2 = linprog(instance.distance[rows, cols], A_ub=a_ub2, b_ub=b_ub2,
                     bounds=bounds, method='highs')
    if stage2.success:
        fractions = stage2.x
    else:
        logger.warning(f"精确解码第二阶段求解失败，使用第一阶段结果: {stage2.message}")
        fractions = stage1.x

    fractions = _repair(np.asarray(fractions, dtype=float), rows, cols, waste, capacity, n, m)
    keep = fractions > 0
    return Assignment(n, m, rows[keep].astype(np.int64), cols[keep].astype(np.int64),
                      fractions[keep].copy())


_DECODERS = {
    'greedy': decode_greedy,
    'exact': decode_exact,
}


def get_decoder(name: str):
    """
    按名称获取解码函数

    Raises:
        AlgorithmNotSupportedError: 不支持的解码器名称
    """
    if name not in _DECODERS:
        raise AlgorithmNotSupportedError(f"不支持的解码器: {name}，可选: {SUPPORTED_DECODERS}")
    return _DECODERS[name]


def decode(instance: Instance, plan: Plan, decoder: str = 'greedy') -> Assignment:
    return get_decoder(decoder)(instance, plan)
