"""
问题实例
实例文件的结构校验（pydantic）、加载、保存以及派生数据的缓存
"""
import json
import logging
from dataclasses import dataclass
from functools import cached_property
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, Tuple, Union

import numpy as np
from pydantic import BaseModel, Field, ValidationError
from scipy.spatial.distance import cdist

from .catalog import enumerate_configs
from .entities import BinType, Configuration, Generator, Plan, Site
from ..config.constants import DEFAULT_MAX_WALK
from ..utils.exceptions import InstanceLoadError, PlanError

logger = logging.getLogger(__name__)

_SPACE_EPS = 1e-9


# ---------------------------------------------------------------------------
# 实例文件结构
# ---------------------------------------------------------------------------

class GeneratorRecord(BaseModel):
    """实例文件中的产生点"""
    id: int
    x: float
    y: float
    waste: float = Field(..., ge=0, description="每周期垃圾量（m³）")


class SiteRecord(BaseModel):
    """实例文件中的候选站点"""
    id: int
    x: float
    y: float
    space: float = Field(..., ge=0, description="可用面积（m²）")


class BinTypeRecord(BaseModel):
    """实例文件中的桶类型"""
    id: str
    cost: float = Field(..., ge=0)
    capacity: float = Field(..., gt=0)
    footprint: float = Field(..., gt=0)
    max_available: Optional[int] = Field(None, gt=0)


class ConfigRecord(BaseModel):
    """实例文件中的配置：counts 为按桶类型顺序的列表，或以桶类型id为键的字典"""
    id: int = Field(..., ge=0)
    counts: Union[List[int], Dict[str, int]]


class InstanceFile(BaseModel):
    """实例文件（JSON）"""
    generators: List[GeneratorRecord] = Field(default_factory=list)
    sites: List[SiteRecord] = Field(..., min_length=1)
    bin_types: List[BinTypeRecord] = Field(..., min_length=1)
    configs: Optional[List[ConfigRecord]] = None
    distance_matrix: Optional[Union[List[List[float]], List[float]]] = None
    site_distance_matrix: Optional[Union[List[List[float]], List[float]]] = None
    max_walk: float = Field(DEFAULT_MAX_WALK, gt=0)
    current_plan: Optional[List[int]] = None
    name: str = ""


# ---------------------------------------------------------------------------
# 实例
# ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class Instance:
    """
    GAP选址问题实例（加载后不可变，可在多线程中并发读取）

    distance 为 N×M 的产生点-站点距离矩阵，site_distance 为 M×M 的站点间距离
    """
    generators: Tuple[Generator, ...]
    sites: Tuple[Site, ...]
    bin_types: Tuple[BinType, ...]
    catalog: Tuple[Configuration, ...]
    distance: np.ndarray
    site_distance: np.ndarray
    max_walk: float = DEFAULT_MAX_WALK
    explicit_distance: bool = False
    explicit_site_distance: bool = False
    current_plan: Optional[Plan] = None
    name: str = ""

    def __post_init__(self):
        n, m = len(self.generators), len(self.sites)
        if m < 1:
            raise ValueError("实例至少需要一个候选站点")
        if self.max_walk <= 0:
            raise ValueError(f"最大步行距离必须为正: {self.max_walk}")
        if self.distance.shape != (n, m):
            raise ValueError(f"距离矩阵维度应为 {(n, m)}，实际为 {self.distance.shape}")
        if self.site_distance.shape != (m, m):
            raise ValueError(f"站点距离矩阵维度应为 {(m, m)}，实际为 {self.site_distance.shape}")
        if np.any(self.distance < 0) or np.any(self.site_distance < 0):
            raise ValueError("距离不能为负")
        if not np.allclose(self.site_distance, self.site_distance.T):
            raise ValueError("站点距离矩阵必须对称")
        self._check_catalog()
        self.distance.setflags(write=False)
        self.site_distance.setflags(write=False)
        if self.current_plan is not None:
            self.validate_plan(self.current_plan)

    def _check_catalog(self):
        if not self.catalog:
            raise ValueError("配置目录不能为空")
        for index, config in enumerate(self.catalog):
            if config.id != index:
                raise ValueError(f"配置编号必须为 0..Z-1 连续编号，位置 {index} 处为 {config.id}")
            if len(config.counts) != len(self.bin_types):
                raise ValueError(f"配置 {config.id} 的桶数量长度与桶类型数量不一致")
        if not self.catalog[0].is_empty:
            raise ValueError("配置 0 必须为空配置（不安装任何桶）")
        max_space = max(site.space for site in self.sites)
        for config in self.catalog:
            if config.space_used > max_space + _SPACE_EPS:
                raise ValueError(
                    f"配置 {config.id} 占用面积 {config.space_used} 超过所有站点的可用面积 {max_space}"
                )

    # ----------------------------------------------------------------- 构造

    @classmethod
    def build(cls, generators: Sequence[Generator], sites: Sequence[Site],
              bin_types: Sequence[BinType], catalog: Optional[Sequence[Configuration]] = None,
              distance: Optional[np.ndarray] = None, site_distance: Optional[np.ndarray] = None,
              max_walk: float = DEFAULT_MAX_WALK, current_plan: Optional[Sequence[int]] = None,
              name: str = "") -> "Instance":
        """
        构造实例；未提供距离矩阵时按平面坐标计算欧氏距离，未提供目录时按最大面积枚举

        Args:
            generators: 产生点列表
            sites: 候选站点列表
            bin_types: 桶类型列表
            catalog: 配置目录（可选）
            distance: N×M 距离矩阵（可选）
            site_distance: M×M 站点距离矩阵（可选）
            max_walk: 最大步行距离 D
            current_plan: 现有布置方案（可选）
            name: 实例名称

        Returns:
            Instance 实例
        """
        generators = tuple(generators)
        sites = tuple(sites)
        bin_types = tuple(bin_types)
        gen_xy = np.array([[g.x, g.y] for g in generators], dtype=float).reshape(-1, 2)
        site_xy = np.array([[s.x, s.y] for s in sites], dtype=float).reshape(-1, 2)

        explicit = distance is not None
        if explicit:
            distance = np.array(distance, dtype=float).reshape(len(generators), len(sites))
        else:
            distance = cdist(gen_xy, site_xy) if len(generators) else np.zeros((0, len(sites)))

        explicit_site = site_distance is not None
        if explicit_site:
            site_distance = np.array(site_distance, dtype=float).reshape(len(sites), len(sites))
        else:
            site_distance = cdist(site_xy, site_xy)

        if catalog is None:
            catalog = enumerate_configs(bin_types, max(s.space for s in sites) if sites else 0.0)

        plan = Plan(current_plan) if current_plan is not None else None
        return cls(generators, sites, bin_types, tuple(catalog), distance, site_distance,
                   float(max_walk), explicit, explicit_site, plan, name)

    # ----------------------------------------------------------------- 规模

    @property
    def n_generators(self) -> int:
        return len(self.generators)

    @property
    def n_sites(self) -> int:
        return len(self.sites)

    @property
    def n_configs(self) -> int:
        return len(self.catalog)

    # ----------------------------------------------------------------- 派生数据

    @cached_property
    def waste(self) -> np.ndarray:
        """各产生点垃圾量"""
        arr = np.array([g.waste for g in self.generators], dtype=float)
        arr.setflags(write=False)
        return arr

    @cached_property
    def total_waste(self) -> float:
        return float(np.sum(self.waste))

    @cached_property
    def config_costs(self) -> np.ndarray:
        arr = np.array([c.cost for c in self.catalog], dtype=float)
        arr.setflags(write=False)
        return arr

    @cached_property
    def config_capacities(self) -> np.ndarray:
        arr = np.array([c.capacity for c in self.catalog], dtype=float)
        arr.setflags(write=False)
        return arr

    @cached_property
    def config_space(self) -> np.ndarray:
        arr = np.array([c.space_used for c in self.catalog], dtype=float)
        arr.setflags(write=False)
        return arr

    @cached_property
    def config_counts(self) -> np.ndarray:
        """Z×J 矩阵：每个配置中各类型桶的数量"""
        arr = np.array([c.counts for c in self.catalog], dtype=np.int64).reshape(
            self.n_configs, len(self.bin_types))
        arr.setflags(write=False)
        return arr

    @cached_property
    def bin_limits(self) -> np.ndarray:
        """各类型桶的总数上限 max_available，未限制的类型为 inf"""
        arr = np.array([np.inf if b.max_available is None else float(b.max_available)
                        for b in self.bin_types], dtype=float)
        arr.setflags(write=False)
        return arr

    @property
    def has_bin_limits(self) -> bool:
        return bool(np.isfinite(self.bin_limits).any())

    @cached_property
    def max_config_cost(self) -> float:
        return float(np.max(self.config_costs))

    @cached_property
    def allowed_configs(self) -> Tuple[np.ndarray, ...]:
        """每个站点可安装的配置编号（满足站点面积约束），总包含配置 0"""
        allowed = []
        for site in self.sites:
            ids = np.flatnonzero(self.config_space <= site.space + _SPACE_EPS)
            ids.setflags(write=False)
            allowed.append(ids)
        return tuple(allowed)

    @cached_property
    def generator_order(self) -> np.ndarray:
        """按产生点id升序的处理顺序"""
        ids = np.array([g.id for g in self.generators], dtype=np.int64)
        return np.argsort(ids, kind='stable')

    @cached_property
    def reach_order(self) -> Tuple[np.ndarray, ...]:
        """每个产生点在 步行距离上限以内可达的站点下标，按 (距离, 站点id) 升序"""
        site_ids = np.array([s.id for s in self.sites], dtype=np.int64)
        orders = []
        for p in range(self.n_generators):
            row = self.distance[p]
            order = np.lexsort((site_ids, row))
            order = order[row[order] <= self.max_walk]
            order.setflags(write=False)
            orders.append(order)
        return tuple(orders)

    @cached_property
    def nearest_site(self) -> np.ndarray:
        """每个产生点在 步行距离上限以内最近的站点下标（距离相同取id最小者），不可达为 -1"""
        return np.array([order[0] if order.size else -1 for order in self.reach_order],
                        dtype=np.int64)

    def validate_plan(self, plan: Plan) -> None:
        """
        检查方案维度与基因取值范围

        Raises:
            PlanError: 长度与站点数不一致或配置编号越界
        """
        if len(plan) != self.n_sites:
            raise PlanError(f"方案长度 {len(plan)} 与站点数 {self.n_sites} 不一致")
        genes = plan.genes
        if genes.size and (genes.min() < 0 or genes.max() >= self.n_configs):
            raise PlanError(f"方案中存在越界的配置编号，合法范围为 [0, {self.n_configs - 1}]")

    def summary(self) -> Dict[str, Any]:
        """实例规模摘要"""
        return {
            'name': self.name,
            'n_generators': self.n_generators,
            'n_sites': self.n_sites,
            'n_bin_types': len(self.bin_types),
            'n_configs': self.n_configs,
            'total_waste': self.total_waste,
            'max_walk': self.max_walk,
        }


# ---------------------------------------------------------------------------
# 读写
# ---------------------------------------------------------------------------

def _format_validation_error(error: ValidationError) -> str:
    parts = []
    for item in error.errors():
        loc = ".".join(str(x) for x in item.get('loc', ()))
        parts.append(f"{loc}: {item.get('msg')}")
    return "; ".join(parts)


def _config_counts(record: ConfigRecord, bin_types: Sequence[BinType], index: int) -> List[int]:
    if isinstance(record.counts, dict):
        known = {b.id for b in bin_types}
        unknown = set(record.counts) - known
        if unknown:
            raise InstanceLoadError(f"configs.{index}.counts: 未知的桶类型 {sorted(unknown)}")
        return [int(record.counts.get(b.id, 0)) for b in bin_types]
    if len(record.counts) != len(bin_types):
        raise InstanceLoadError(
            f"configs.{index}.counts: 长度 {len(record.counts)} 与桶类型数量 {len(bin_types)} 不一致"
        )
    return list(record.counts)


def instance_from_dict(data: Dict[str, Any], source: str = "<dict>") -> Instance:
    """
    从实例文件内容（字典）构造并校验实例

    Args:
        data: 实例文件解析后的字典
        source: 数据来源描述，用于错误信息

    Returns:
        校验通过的 Instance

    Raises:
        InstanceLoadError: 结构或不变量校验失败，消息中包含字段路径
    """
    try:
        record = InstanceFile.model_validate(data)
    except ValidationError as e:
        raise InstanceLoadError(f"{source}: {_format_validation_error(e)}") from e

    try:
        bin_types = [BinType(b.id, b.cost, b.capacity, b.footprint, b.max_available)
                     for b in record.bin_types]
        generators = [Generator(g.id, g.x, g.y, g.waste) for g in record.generators]
        sites = [Site(s.id, s.x, s.y, s.space) for s in record.sites]
    except ValueError as e:
        raise InstanceLoadError(f"{source}: {e}") from e

    catalog = None
    if record.configs is not None:
        ordered = sorted(enumerate(record.configs), key=lambda item: item[1].id)
        max_space = max(s.space for s in sites)
        catalog = []
        for position, (index, config_record) in enumerate(ordered):
            if config_record.id != position:
                raise InstanceLoadError(f"{source}: configs.{index}.id: 配置编号必须为 0..Z-1 连续编号")
            counts = _config_counts(config_record, bin_types, index)
            try:
                config = Configuration.from_counts(config_record.id, counts, bin_types)
            except ValueError as e:
                raise InstanceLoadError(f"{source}: configs.{index}.counts: {e}") from e
            if config.space_used > max_space + _SPACE_EPS:
                raise InstanceLoadError(
                    f"{source}: configs.{index}.counts: 占用面积 {config.space_used} 超过站点可用面积 {max_space}"
                )
            catalog.append(config)

    n, m = len(generators), len(sites)
    distance = None
    if record.distance_matrix is not None:
        distance = np.array(record.distance_matrix, dtype=float)
        if distance.size != n * m:
            raise InstanceLoadError(f"{source}: distance_matrix: 应包含 {n}×{m} 个元素，实际为 {distance.size}")
    site_distance = None
    if record.site_distance_matrix is not None:
        site_distance = np.array(record.site_distance_matrix, dtype=float)
        if site_distance.size != m * m:
            raise InstanceLoadError(f"{source}: site_distance_matrix: 应包含 {m}×{m} 个元素")

    try:
        return Instance.build(generators, sites, bin_types, catalog, distance, site_distance,
                              record.max_walk, record.current_plan, record.name)
    except (ValueError, PlanError) as e:
        raise InstanceLoadError(f"{source}: {e}") from e


def load_instance(path: Union[str, Path]) -> Instance:
    """
    加载实例文件（JSON）

    Args:
        path: 实例文件路径

    Returns:
        校验通过的 Instance

    Raises:
        InstanceLoadError: 文件不存在、JSON解析失败或校验失败
    """
    path = Path(path)
    if not path.exists():
        raise InstanceLoadError(f"实例文件不存在: {path}")
    try:
        with open(path, 'r', encoding='utf-8') as f:
            data = json.load(f)
    except json.JSONDecodeError as e:
        raise InstanceLoadError(f"{path}: JSON解析失败: {e}") from e

    instance = instance_from_dict(data, source=str(path))
    if not instance.name:
        instance = Instance(instance.generators, instance.sites, instance.bin_types,
                            instance.catalog, instance.distance.copy(), instance.site_distance.copy(),
                            instance.max_walk, instance.explicit_distance,
                            instance.explicit_site_distance, instance.current_plan, path.stem)
    logger.info(
        f"实例加载成功 - 文件: {path.name} | 产生点: {instance.n_generators} | "
        f"站点: {instance.n_sites} | 配置数: {instance.n_configs}"
    )
    return instance


def instance_to_dict(instance: Instance) -> Dict[str, Any]:
    """将实例转换为实例文件结构（显式距离矩阵原样写出）"""
    data: Dict[str, Any] = {
        'name': instance.name,
        'generators': [{'id': g.id, 'x': g.x, 'y': g.y, 'waste': g.waste}
                       for g in instance.generators],
        'sites': [{'id': s.id, 'x': s.x, 'y': s.y, 'space': s.space} for s in instance.sites],
        'bin_types': [],
        'configs': [{'id': c.id, 'counts': list(c.counts)} for c in instance.catalog],
        'max_walk': instance.max_walk,
    }
    for b in instance.bin_types:
        item = {'id': b.id, 'cost': b.unit_cost, 'capacity': b.capacity, 'footprint': b.footprint}
        if b.max_available is not None:
            item['max_available'] = b.max_available
        data['bin_types'].append(item)
    if instance.explicit_distance:
        data['distance_matrix'] = instance.distance.tolist()
    if instance.explicit_site_distance:
        data['site_distance_matrix'] = instance.site_distance.tolist()
    if instance.current_plan is not None:
        data['current_plan'] = instance.current_plan.to_list()
    return data


def save_instance(instance: Instance, path: Union[str, Path]) -> str:
    """
    保存实例到JSON文件

    Args:
        instance: 实例
        path: 输出路径

    Returns:
        输出文件路径
    """
    output_file = Path(path)
    output_file.parent.mkdir(parents=True, exist_ok=True)
    with open(output_file, 'w', encoding='utf-8') as f:
        json.dump(instance_to_dict(instance), f, ensure_ascii=False, indent=2)
    return str(output_file)
