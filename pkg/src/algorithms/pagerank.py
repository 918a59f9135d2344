"""
加权PageRank
以候选站点为顶点构造全连接加权图，迭代计算加权 PageRank 得分并给出站点排序
"""
import logging
from dataclasses import dataclass
from typing import Optional

import numpy as np

from ..config.constants import (
    DEFAULT_DAMPING, DEFAULT_PR_MAX_ITER, DEFAULT_PR_TOL, MIN_SITE_DISTANCE, TIE_DECIMALS,
)
from ..models.instance import Instance
from ..utils.exceptions import InvalidParameterError

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class RankGraph:
    """
    站点图

    site_ids: 顶点对应的站点id
    demand: 每个站点归属的垃圾量（产生点归属到步行距离上限以内最近的站点）
    weights: 边权 = (两端需求之和) / max(站点间距, 0.1)，对角线为0
    """
    site_ids: np.ndarray
    demand: np.ndarray
    weights: np.ndarray

    @property
    def n_vertices(self) -> int:
        return int(self.site_ids.shape[0])


@dataclass(frozen=True, eq=False)
class Ranking:
    """PageRank结果：每个站点的得分、按得分降序的站点下标、是否收敛"""
    scores: np.ndarray
    order: np.ndarray
    converged: bool = True
    iterations: int = 0

    def order_ids(self, graph_or_instance) -> list:
        site_ids = getattr(graph_or_instance, 'site_ids', None)
        if site_ids is None:
            site_ids = [s.id for s in graph_or_instance.sites]
        return [int(site_ids[i]) for i in self.order]


def site_demand(instance: Instance) -> np.ndarray:
    """每个站点归属的垃圾量：产生点全部计入 步行距离上限以内最近的站点（距离相同取id最小者）"""
    demand = np.zeros(instance.n_sites, dtype=float)
    nearest = instance.nearest_site
    reachable = nearest >= 0
    np.add.at(demand, nearest[reachable], np.asarray(instance.waste)[reachable])
    return demand


def build_graph(instance: Instance) -> RankGraph:
    """
    构造站点全连接加权图

    Args:
        instance: 问题实例

    Returns:
        RankGraph
    """
    demand = site_demand(instance)
    distance = np.maximum(np.asarray(instance.site_distance, dtype=float), MIN_SITE_DISTANCE)
    weights = (demand[:, np.newaxis] + demand[np.newaxis, :]) / distance
    np.fill_diagonal(weights, 0.0)
    site_ids = np.array([s.id for s in instance.sites], dtype=np.int64)
    return RankGraph(site_ids, demand, weights)


def transition_matrix(graph: RankGraph) -> np.ndarray:
    """T[i, j] = w_ij / Σ_k w_jk，出边权重和为0的列置0"""
    out_sum = graph.weights.sum(axis=1)
    safe = np.where(out_sum > 0, out_sum, 1.0)
    transition = graph.weights / safe[np.newaxis, :]
    transition[:, out_sum <= 0] = 0.0
    return transition


def pagerank(graph: RankGraph, damping: float = DEFAULT_DAMPING, tol: float = DEFAULT_PR_TOL,
             max_iter: int = DEFAULT_PR_MAX_ITER) -> Ranking:
    """
    加权PageRank幂迭代

    PR(v_i) = (1 − d) + d·Σ_j w_ij·PR(v_j) / Σ_k w_jk，从 PR = d 开始迭代，
    L1 变化量小于 tol 或达到 max_iter 时停止

    Args:
        graph: 站点图
        damping: 阻尼系数 d
        tol: 收敛阈值（L1）
        max_iter: 最大迭代次数

    Returns:
        Ranking；未收敛时 converged 为False，返回最后一次迭代结果
    """
    if graph.n_vertices < 1:
        raise InvalidParameterError("图至少需要一个顶点")
    if not 0.0 <= damping <= 1.0:
        raise InvalidParameterError(f"阻尼系数必须在 [0, 1] 内: {damping}")

    transition = transition_matrix(graph)
    scores = np.full(graph.n_vertices, damping, dtype=float)
    converged = False
    iterations = 0
    for iterations in range(1, max_iter + 1):
        updated = (1.0 - damping) + damping * (transition @ scores)
        residual = float(np.abs(updated - scores).sum())
        scores = updated
        if residual < tol:
            converged = True
            break

    if not converged:
        logger.warning(f"PageRank 在 {max_iter} 次迭代内未收敛（阈值 {tol}），返回最后一次迭代结果")

    order = np.lexsort((graph.site_ids, -np.round(scores, TIE_DECIMALS)))
    return Ranking(scores, order, converged, iterations)


def rank_sites(instance: Instance, damping: float = DEFAULT_DAMPING, tol: float = DEFAULT_PR_TOL,
               max_iter: int = DEFAULT_PR_MAX_ITER, graph: Optional[RankGraph] = None) -> Ranking:
    """构图并计算站点排序"""
    graph = graph or build_graph(instance)
    return pagerank(graph, damping, tol, max_iter)
