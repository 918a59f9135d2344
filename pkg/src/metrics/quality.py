"""
前沿质量指标
相对超体积（RHV）、分布指标 spread、最佳折中解、相对启发式方案的改进报告

归一化边界一律取自参考前沿，使不同算法的指标可以直接比较
"""
import logging
import math
from typing import Dict, Optional, Tuple

import numpy as np
from scipy.spatial.distance import cdist

from .hypervolume import hypervolume
from .pareto import Front, FrontPoint
from ..config.constants import IMPROVEMENT_VOLUME_TOLERANCE, REFERENCE_POINT_MARGIN, TIE_DECIMALS
from ..models.entities import Objectives

logger = logging.getLogger(__name__)


def normalize(matrix: np.ndarray, lower: np.ndarray, upper: np.ndarray) -> np.ndarray:
    """按 [lower, upper] 线性归一化；某维范围为0时该维只做平移"""
    span = np.where(upper - lower > 0, upper - lower, 1.0)
    return (np.asarray(matrix, dtype=float) - lower) / span


def _normalized(front: Front, reference: Front) -> Tuple[np.ndarray, np.ndarray]:
    lower, upper = reference.bounds()
    return normalize(front.matrix(), lower, upper), normalize(reference.matrix(), lower, upper)


def rhv(front: Front, reference: Front) -> Optional[float]:
    """
    相对超体积 HV(front) / HV(reference)

    两者都按参考前沿的边界归一化，参考点为 (1.01, 1.01, 1.01)

    Returns:
        比值；参考前沿超体积为0时返回None
    """
    if len(reference) == 0:
        return None
    if len(front) == 0:
        return 0.0
    ref_point = np.full(3, REFERENCE_POINT_MARGIN)
    front_norm, ref_norm = _normalized(front, reference)
    ref_hv = hypervolume(ref_norm, ref_point)
    if ref_hv <= 0:
        return None
    return hypervolume(front_norm, ref_point) / ref_hv


def _extreme_points(ref_norm: np.ndarray) -> np.ndarray:
    """每个目标上取最小值的参考前沿点（同值时取字典序最小者）"""
    extremes = []
    for h in range(ref_norm.shape[1]):
        keys = [ref_norm[:, k] for k in reversed(range(ref_norm.shape[1])) if k != h]
        order = np.lexsort(tuple(keys) + (ref_norm[:, h],))
        extremes.append(ref_norm[order[0]])
    return np.array(extremes)


def spread(front: Front, reference: Front) -> Optional[float]:
    """
    分布指标（越小越好）

    (Σ_h d_h^e + Σ_i |d̄ − d_i|²) / (Σ_h d_h^e + ND·d̄)，
    d_h^e 为前沿到参考前沿第 h 个极端点的距离，d_i 为前沿内最近邻距离

    Returns:
        指标值；前沿点数不超过1时返回None
    """
    nd = len(front)
    if nd <= 1 or len(reference) == 0:
        return None
    front_norm, ref_norm = _normalized(front, reference)

    extremes = _extreme_points(ref_norm)
    extreme_gaps = cdist(extremes, front_norm).min(axis=1)

    pairwise = cdist(front_norm, front_norm)
    np.fill_diagonal(pairwise, np.inf)
    nearest = pairwise.min(axis=1)
    mean_nearest = math.fsum(nearest) / nd

    sum_extremes = math.fsum(extreme_gaps)
    numerator = sum_extremes + math.fsum((mean_nearest - nearest) ** 2)
    denominator = sum_extremes + nd * mean_nearest
    if denominator == 0:
        return 0.0
    return numerator / denominator


def best_compromise(front: Front, reference: Front) -> Optional[FrontPoint]:
    """
    最接近理想向量的前沿成员

    理想向量为参考前沿每个目标的最小值，在归一化空间计算欧氏距离；
    距离相同时取成本更低者，再取距离目标更低者

    Returns:
        前沿中的一个点；空前沿返回None
    """
    if len(front) == 0:
        return None
    if len(reference) == 0:
        reference = front
    front_norm, ref_norm = _normalized(front, reference)
    ideal = ref_norm.min(axis=0)
    gaps = np.sqrt(((front_norm - ideal) ** 2).sum(axis=1))
    best = min(
        range(len(front)),
        key=lambda k: (round(float(gaps[k]), TIE_DECIMALS),
                       front[k].objectives.cost, front[k].objectives.distance),
    )
    return front[best]


def _percent(numerator: float, denominator: float) -> Optional[float]:
    if denominator == 0:
        return None
    return 100.0 * numerator / denominator


def _summarize(values) -> Optional[Dict[str, float]]:
    values = [v for v in values if v is not None]
    if not values:
        return None
    return {'average': math.fsum(values) / len(values), 'best': max(values)}


def improvement_report(moea_front: Front, heuristic: Objectives,
                       volume_tolerance: float = IMPROVEMENT_VOLUME_TOLERANCE) -> Optional[Dict]:
    """
    多目标前沿相对某个启发式方案的改进

    只统计在距离和成本上都不差、且至少一项严格更好，并且收集量与启发式相差不超过10%的成员。
    改进百分比：距离、成本为 (h − m)/h，收集量为带符号的 (m − h)/h。

    Args:
        moea_front: 多目标算法得到的前沿
        heuristic: 启发式方案的目标值
        volume_tolerance: 收集量允许的相对差异

    Returns:
        {'n_members', 'volume', 'distance', 'cost'}，各目标为 {'average', 'best'}；
        没有符合条件的成员时返回None
    """
    h = heuristic
    members = []
    for point in moea_front:
        m = point.objectives
        no_worse = m.distance <= h.distance and m.cost <= h.cost
        strictly = m.distance < h.distance or m.cost < h.cost
        close = abs(m.volume_collected - h.volume_collected) <= volume_tolerance * h.volume_collected
        if no_worse and strictly and close:
            members.append(m)
    if not members:
        return None

    return {
        'n_members': len(members),
        'volume': _summarize(_percent(m.volume_collected - h.volume_collected, h.volume_collected)
                             for m in members),
        'distance': _summarize(_percent(h.distance - m.distance, h.distance) for m in members),
        'cost': _summarize(_percent(h.cost - m.cost, h.cost) for m in members),
    }
