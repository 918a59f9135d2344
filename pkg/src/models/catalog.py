"""
桶配置目录
默认的可行配置表（12种），以及在未提供目录时按可用面积枚举全部组合
"""
import itertools
import math
from typing import List, Optional, Sequence

from .entities import BinType, Configuration
from ..config.constants import DEFAULT_BIN_TYPES, DEFAULT_CONFIG_COUNTS

_SPACE_EPS = 1e-9


def default_bin_types() -> List[BinType]:
    """默认的三种桶类型 j1/j2/j3"""
    return [BinType(bin_id, cost, capacity, footprint)
            for bin_id, cost, capacity, footprint in DEFAULT_BIN_TYPES]


def default_catalog(bin_types: Optional[Sequence[BinType]] = None) -> List[Configuration]:
    """
    默认的12种可行配置（站点面积 5 m²）

    该目录是人工筛选的子集，并非按面积枚举得到，直接按原表顺序返回

    Args:
        bin_types: 桶类型，默认为 j1/j2/j3

    Returns:
        配置列表，编号 0..11
    """
    bin_types = list(bin_types) if bin_types is not None else default_bin_types()
    return [Configuration.from_counts(config_id, counts, bin_types)
            for config_id, counts in enumerate(DEFAULT_CONFIG_COUNTS)]


def enumerate_configs(bin_types: Sequence[BinType], space: float) -> List[Configuration]:
    """
    枚举所有占用面积不超过 space 的桶组合

    结果按 (占用面积, 成本, 数量向量) 升序排列，编号 0 为空配置。
    给定 max_available 时，每种桶的数量不超过该值。

    Args:
        bin_types: 桶类型列表
        space: 可用面积（m²）

    Returns:
        配置列表
    """
    if space < 0:
        raise ValueError(f"可用面积不能为负: {space}")

    ranges = []
    for bin_type in bin_types:
        upper = int(math.floor(space / bin_type.footprint + _SPACE_EPS))
        if bin_type.max_available is not None:
            upper = min(upper, bin_type.max_available)
        ranges.append(range(upper + 1))

    candidates = []
    for counts in itertools.product(*ranges):
        used = sum(c * b.footprint for c, b in zip(counts, bin_types))
        if used <= space + _SPACE_EPS:
            candidates.append(Configuration.from_counts(0, counts, bin_types))

    candidates.sort(key=lambda c: (c.space_used, c.cost, c.counts))
    return [Configuration(config_id, c.counts, c.space_used, c.cost, c.capacity)
            for config_id, c in enumerate(candidates)]
