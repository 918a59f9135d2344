"""
非支配排序与选择相关的计算
NSGA-II 的快速非支配排序、拥挤距离，SPEA2 的强度适应度与档案截断
"""
import math
from typing import List, NamedTuple, Sequence, Union

import numpy as np
from scipy.spatial.distance import cdist

from .operators import Individual, objective_matrix


def _as_matrix(population: Union[np.ndarray, Sequence[Individual]]) -> np.ndarray:
    if isinstance(population, np.ndarray):
        return population.astype(float, copy=False).reshape(population.shape[0], -1)
    return objective_matrix(population)


def domination_matrix(matrix: np.ndarray) -> np.ndarray:
    """D[a, b] 为真表示 a 支配 b（最小化）"""
    le = (matrix[:, np.newaxis, :] <= matrix[np.newaxis, :, :]).all(axis=2)
    lt = (matrix[:, np.newaxis, :] < matrix[np.newaxis, :, :]).any(axis=2)
    return le & lt


def non_dominated_sort(population) -> List[List[int]]:
    """
    按支配等级划分前沿

    Args:
        population: 个体列表或 K×m 目标矩阵

    Returns:
        前沿列表，每个前沿为升序的下标列表，第0个为非支配前沿
    """
    matrix = _as_matrix(population)
    n = matrix.shape[0]
    if n == 0:
        return []
    dom = domination_matrix(matrix)
    counts = dom.sum(axis=0)
    remaining = np.ones(n, dtype=bool)
    fronts = []
    while remaining.any():
        current = np.flatnonzero(remaining & (counts == 0))
        fronts.append(current.tolist())
        remaining[current] = False
        counts = counts - dom[current].sum(axis=0)
    return fronts


def crowding_distance(front) -> np.ndarray:
    """
    拥挤距离

    每个目标上的边界个体为无穷大，内部个体累加归一化的相邻间隔；某目标取值范围为0时该目标贡献0

    Args:
        front: 同一前沿的个体列表或 K×m 目标矩阵

    Returns:
        长度为 K 的距离数组
    """
    matrix = _as_matrix(front)
    n, m = matrix.shape
    distance = np.zeros(n, dtype=float)
    if n <= 2:
        distance[:] = np.inf
        return distance
    for h in range(m):
        order = np.argsort(matrix[:, h], kind='stable')
        values = matrix[order, h]
        distance[order[0]] = np.inf
        distance[order[-1]] = np.inf
        span = values[-1] - values[0]
        if span <= 0:
            continue
        distance[order[1:-1]] += (values[2:] - values[:-2]) / span
    return distance


class StrengthFitness(NamedTuple):
    strength: np.ndarray
    raw: np.ndarray
    density: np.ndarray
    fitness: np.ndarray


def normalize_objectives(matrix: np.ndarray) -> np.ndarray:
    """按矩阵自身的最小/最大值归一化"""
    lower = matrix.min(axis=0)
    span = matrix.max(axis=0) - lower
    span[span <= 0] = 1.0
    return (matrix - lower) / span


def strength_fitness(population) -> StrengthFitness:
    """
    SPEA2 适应度

    strength = 支配的个体数；raw = 所有支配者的 strength 之和；
    density = 1 / (σ_k + 2)，σ_k 为归一化目标空间中第 k 近邻距离，k = ⌊√K⌋

    Args:
        population: 种群与档案的并集（个体列表或目标矩阵）

    Returns:
        StrengthFitness
    """
    matrix = _as_matrix(population)
    n = matrix.shape[0]
    if n == 0:
        empty = np.zeros(0, dtype=float)
        return StrengthFitness(empty, empty, empty, empty)
    dom = domination_matrix(matrix)
    strength = dom.sum(axis=1).astype(float)
    raw = strength @ dom

    k = min(int(math.isqrt(n)), n - 1)
    if k < 1:
        sigma = np.zeros(n, dtype=float)
    else:
        distances = np.sort(cdist(normalize_objectives(matrix), normalize_objectives(matrix)), axis=1)
        sigma = distances[:, k]
    density = 1.0 / (sigma + 2.0)
    return StrengthFitness(strength, raw, density, raw + density)


def truncate_archive(matrix: np.ndarray, size: int) -> List[int]:
    """
    档案截断：反复删除"到其他成员的距离向量（升序）"字典序最小的成员，直到不超过 size；
    距离向量完全相同时删除下标较大者。边界解因此得以保留。

    Args:
        matrix: 档案成员的目标矩阵（应已归一化）
        size: 目标规模

    Returns:
        保留成员的下标（升序）
    """
    matrix = np.asarray(matrix, dtype=float)
    alive = list(range(matrix.shape[0]))
    if len(alive) <= size:
        return alive
    full = cdist(matrix, matrix)
    while len(alive) > size:
        sub = full[np.ix_(alive, alive)]
        np.fill_diagonal(sub, np.inf)
        rows = np.sort(sub, axis=1)[:, :-1]
        order = np.lexsort(tuple(rows[:, c] for c in reversed(range(rows.shape[1]))))
        smallest = rows[order[0]]
        tied = [idx for idx in range(len(alive)) if np.array_equal(rows[idx], smallest)]
        alive.pop(max(tied))
    return alive
