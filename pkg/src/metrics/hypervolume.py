"""
超体积计算
三维精确计算：沿第三个目标切片，每一片上做二维扫描
"""
import logging
import math
from typing import Sequence

import numpy as np

logger = logging.getLogger(__name__)


def _hv2d(points: np.ndarray, ref: Sequence[float]) -> float:
    """二维超体积（最小化），points 已全部严格优于 ref"""
    if points.shape[0] == 0:
        return 0.0
    order = np.lexsort((points[:, 1], points[:, 0]))
    strips = []
    current_y = ref[1]
    for x, y in points[order]:
        if y < current_y:
            strips.append((ref[0] - x) * (current_y - y))
            current_y = y
    return math.fsum(strips)


def _hv3d(points: np.ndarray, ref: Sequence[float]) -> float:
    order = np.argsort(points[:, 2], kind='stable')
    points = points[order]
    levels = np.unique(points[:, 2])
    slices = []
    for k, z in enumerate(levels):
        upper = levels[k + 1] if k + 1 < len(levels) else ref[2]
        active = points[points[:, 2] <= z]
        slices.append(_hv2d(active[:, :2], ref[:2]) * (upper - z))
    return math.fsum(slices)


def hypervolume(points, ref_point: Sequence[float]) -> float:
    """
    计算最小化意义下的超体积

    Args:
        points: K×3（或 K×2）目标矩阵
        ref_point: 参考点

    Returns:
        超体积；空前沿为0，不严格优于参考点的点不计入（记录警告）
    """
    ref = np.asarray(ref_point, dtype=float)
    points = np.asarray(points, dtype=float)
    if points.size == 0:
        return 0.0
    points = points.reshape(-1, ref.shape[0])
    if ref.shape[0] not in (2, 3):
        raise ValueError(f"仅支持二维或三维超体积，实际维度: {ref.shape[0]}")

    inside = np.all(points < ref, axis=1)
    if not inside.all():
        logger.warning(f"{int((~inside).sum())} 个点未严格优于参考点，已剔除")
        points = points[inside]
    if points.shape[0] == 0:
        return 0.0

    if ref.shape[0] == 2:
        return _hv2d(points, ref)
    return _hv3d(points, ref)
