"""
帕累托前沿工具
前沿点、前沿集合、支配判断、非支配过滤与参考前沿构造
"""
from dataclasses import dataclass
from typing import Iterable, List, Optional, Sequence, Tuple

import numpy as np

from ..models.entities import Objectives, Plan

_BLOCK = 1024


@dataclass(frozen=True, eq=False)
class FrontPoint:
    """前沿上的一个点：目标值、可选的方案（基因型）与来源标签"""
    objectives: Objectives
    plan: Optional[Plan] = None
    label: Optional[str] = None

    @property
    def vector(self) -> Tuple[float, float, float]:
        return self.objectives.minimization

    def sort_key(self):
        o = self.objectives
        genes = tuple(self.plan.to_list()) if self.plan is not None else ()
        return (o.cost, o.distance, o.uncollected, genes)


def dominates(a: Sequence[float], b: Sequence[float]) -> bool:
    """最小化意义下 a 是否支配 b"""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    return bool(np.all(a <= b) and np.any(a < b))


def non_dominated_mask(matrix: np.ndarray) -> np.ndarray:
    """
    返回每一行是否不被其他行支配（分块计算，避免 n² 内存）

    Args:
        matrix: K×m 的目标矩阵（最小化形式）

    Returns:
        长度为 K 的布尔数组
    """
    matrix = np.asarray(matrix, dtype=float)
    n = matrix.shape[0]
    mask = np.ones(n, dtype=bool)
    for start in range(0, n, _BLOCK):
        block = matrix[start:start + _BLOCK]
        le = (matrix[np.newaxis, :, :] <= block[:, np.newaxis, :]).all(axis=2)
        lt = (matrix[np.newaxis, :, :] < block[:, np.newaxis, :]).any(axis=2)
        mask[start:start + _BLOCK] = ~(le & lt).any(axis=1)
    return mask


class Front:
    """
    非支配前沿

    构造时过滤被支配点、按目标向量去重（保留先出现者），并按 (成本, 距离, 未收集量, 基因) 排序
    """

    def __init__(self, points: Iterable[FrontPoint] = (), filter_dominated: bool = True):
        points = list(points)
        if filter_dominated and points:
            points = _filter(points)
        self.points: List[FrontPoint] = sorted(points, key=FrontPoint.sort_key)

    def __len__(self) -> int:
        return len(self.points)

    def __iter__(self):
        return iter(self.points)

    def __getitem__(self, index) -> FrontPoint:
        return self.points[index]

    @property
    def nd_count(self) -> int:
        return len(self.points)

    def matrix(self) -> np.ndarray:
        """K×3 目标矩阵（未收集量, 距离, 成本）"""
        if not self.points:
            return np.zeros((0, 3), dtype=float)
        return np.array([p.vector for p in self.points], dtype=float)

    def bounds(self) -> Tuple[np.ndarray, np.ndarray]:
        """每个目标的最小值与最大值"""
        matrix = self.matrix()
        if matrix.shape[0] == 0:
            raise ValueError("空前沿没有归一化边界")
        return matrix.min(axis=0), matrix.max(axis=0)

    def plans(self) -> List[Optional[Plan]]:
        return [p.plan for p in self.points]

    def to_records(self) -> List[dict]:
        records = []
        for p in self.points:
            o = p.objectives
            item = {'cost': o.cost, 'distance': o.distance, 'volume': o.volume_collected}
            if p.plan is not None:
                item['genes'] = p.plan.to_list()
            if p.label is not None:
                item['label'] = p.label
            records.append(item)
        return records


def _filter(points: List[FrontPoint]) -> List[FrontPoint]:
    matrix = np.array([p.vector for p in points], dtype=float)
    keep = non_dominated_mask(matrix)
    seen = set()
    result = []
    for point, vector, ok in zip(points, matrix, keep):
        key = tuple(vector.tolist())
        if not ok or key in seen:
            continue
        seen.add(key)
        result.append(point)
    return result


def reference_front(fronts: Iterable[Front]) -> Front:
    """所有前沿并集的非支配集合"""
    pooled: List[FrontPoint] = []
    for front in fronts:
        pooled.extend(front.points)
    return Front(pooled)
