"""
领域类型定义
垃圾桶类型、垃圾产生点、候选站点、桶配置、方案（基因型）与目标值
"""
from dataclasses import dataclass, asdict
from typing import Dict, Iterable, Iterator, Optional, Sequence, Tuple

import numpy as np


@dataclass(frozen=True)
class BinType:
    """垃圾桶类型：单价、容量（m³）、占地面积（m²）、最大可用数量"""
    id: str
    unit_cost: float
    capacity: float
    footprint: float
    max_available: Optional[int] = None

    def __post_init__(self):
        if self.unit_cost < 0:
            raise ValueError(f"桶类型 {self.id} 单价不能为负: {self.unit_cost}")
        if self.capacity <= 0:
            raise ValueError(f"桶类型 {self.id} 容量必须为正: {self.capacity}")
        if self.footprint <= 0:
            raise ValueError(f"桶类型 {self.id} 占地面积必须为正: {self.footprint}")
        if self.max_available is not None and self.max_available <= 0:
            raise ValueError(f"桶类型 {self.id} 最大可用数量必须为正: {self.max_available}")


@dataclass(frozen=True)
class Generator:
    """垃圾产生点（已聚类的住户组），waste 为每周期产生量（m³）"""
    id: int
    x: float
    y: float
    waste: float

    def __post_init__(self):
        if self.waste < 0:
            raise ValueError(f"产生点 {self.id} 垃圾量不能为负: {self.waste}")


@dataclass(frozen=True)
class Site:
    """候选垃圾收集点（GAP），space 为可用面积（m²）"""
    id: int
    x: float
    y: float
    space: float

    def __post_init__(self):
        if self.space < 0:
            raise ValueError(f"站点 {self.id} 可用面积不能为负: {self.space}")


@dataclass(frozen=True)
class Configuration:
    """一个站点可安装的桶组合（每种桶的数量）及其派生的面积、成本、容量"""
    id: int
    counts: Tuple[int, ...]
    space_used: float
    cost: float
    capacity: float

    @classmethod
    def from_counts(cls, config_id: int, counts: Sequence[int],
                    bin_types: Sequence[BinType]) -> "Configuration":
        """
        根据各类型桶数量构造配置

        Args:
            config_id: 配置编号
            counts: 每种桶的数量，顺序与 bin_types 一致
            bin_types: 桶类型列表

        Returns:
            Configuration 实例
        """
        counts = tuple(int(c) for c in counts)
        if len(counts) != len(bin_types):
            raise ValueError(
                f"配置 {config_id} 的桶数量长度 {len(counts)} 与桶类型数量 {len(bin_types)} 不一致"
            )
        if any(c < 0 for c in counts):
            raise ValueError(f"配置 {config_id} 的桶数量不能为负: {counts}")
        space_used = float(sum(c * b.footprint for c, b in zip(counts, bin_types)))
        cost = float(sum(c * b.unit_cost for c, b in zip(counts, bin_types)))
        capacity = float(sum(c * b.capacity for c, b in zip(counts, bin_types)))
        return cls(config_id, counts, space_used, cost, capacity)

    @property
    def is_empty(self) -> bool:
        return not any(self.counts)


class Plan:
    """
    方案（基因型）：长度为 M 的配置编号向量，第 i 位为站点 i 选择的配置

    内部使用只读的 int64 数组，可哈希，可作为字典键
    """

    __slots__ = ('_genes',)

    def __init__(self, genes: Iterable[int]):
        arr = np.array(list(genes) if not isinstance(genes, np.ndarray) else genes,
                       dtype=np.int64).reshape(-1)
        arr.setflags(write=False)
        self._genes = arr

    @classmethod
    def zeros(cls, n_sites: int) -> "Plan":
        return cls(np.zeros(n_sites, dtype=np.int64))

    @property
    def genes(self) -> np.ndarray:
        return self._genes

    @property
    def key(self) -> bytes:
        return self._genes.tobytes()

    def with_gene(self, index: int, config_id: int) -> "Plan":
        genes = self._genes.copy()
        genes[index] = config_id
        return Plan(genes)

    def to_list(self):
        return [int(g) for g in self._genes]

    def __len__(self) -> int:
        return int(self._genes.shape[0])

    def __iter__(self) -> Iterator[int]:
        return iter(self.to_list())

    def __getitem__(self, index):
        return int(self._genes[index])

    def __eq__(self, other) -> bool:
        if not isinstance(other, Plan):
            return NotImplemented
        return np.array_equal(self._genes, other._genes)

    def __hash__(self) -> int:
        return hash(self.key)

    def __repr__(self) -> str:
        return f"Plan({self.to_list()})"


@dataclass(frozen=True)
class Objectives:
    """
    三个目标值

    volume_collected: 收集垃圾量（最大化）
    distance: 按比例加权的步行距离（最小化）
    cost: 安装成本（最小化）
    total_waste: 实例的总垃圾量，用于换算未收集量
    """
    volume_collected: float
    distance: float
    cost: float
    total_waste: float = 0.0

    @property
    def uncollected(self) -> float:
        return self.total_waste - self.volume_collected

    @property
    def minimization(self) -> Tuple[float, float, float]:
        """内部最小化形式 (未收集量, 距离, 成本)"""
        return (self.uncollected, self.distance, self.cost)

    def to_dict(self) -> Dict[str, float]:
        data = asdict(self)
        data['uncollected'] = self.uncollected
        return data
