"""
合成场景
按场景参数随机生成实例（位置均匀分布、桶配置使用默认目录、D = 300 m），以及内置场景列表
"""
import json
import logging
from dataclasses import asdict, dataclass, replace
from pathlib import Path
from typing import Dict, Optional, Tuple, Union

import numpy as np

from ..config.constants import DEFAULT_MAX_WALK, DEFAULT_SITE_SPACE, DEMAND_FACTORS
from ..models.catalog import default_bin_types, default_catalog
from ..models.entities import Generator, Site
from ..models.instance import Instance
from ..utils.exceptions import InstanceLoadError, InvalidParameterError

logger = logging.getLogger(__name__)

DEFAULT_SCENARIO_FILE = Path(__file__).parent.parent.parent / 'data' / 'scenarios.json'


@dataclass(frozen=True)
class ScenarioSpec:
    """
    场景参数

    waste_rate 为每个产生点的平均垃圾量（m³），jitter 为相对扰动幅度，
    实际垃圾量 = waste_rate × (1 + U(−jitter, jitter)) × demand_factor
    """
    name: str = "synthetic"
    n_generators: int = 90
    n_sites: int = 30
    area: Tuple[float, float] = (1000.0, 1000.0)
    waste_rate: float = 1.0
    jitter: float = 0.2
    demand_factor: float = 1.0
    seed: int = 0
    site_space: float = DEFAULT_SITE_SPACE
    max_walk: float = DEFAULT_MAX_WALK

    def __post_init__(self):
        if self.n_generators < 0:
            raise InvalidParameterError(f"产生点数量不能为负: {self.n_generators}")
        if self.n_sites < 1:
            raise InvalidParameterError(f"站点数量至少为1: {self.n_sites}")
        if len(self.area) != 2 or min(self.area) <= 0:
            raise InvalidParameterError(f"区域尺寸必须为两个正数: {self.area}")
        if self.waste_rate < 0:
            raise InvalidParameterError(f"垃圾产生率不能为负: {self.waste_rate}")
        if not 0.0 <= self.jitter < 1.0:
            raise InvalidParameterError(f"扰动幅度必须在 [0, 1) 内: {self.jitter}")
        if self.demand_factor not in DEMAND_FACTORS:
            raise InvalidParameterError(f"需求系数必须为 {DEMAND_FACTORS} 之一: {self.demand_factor}")
        if self.max_walk <= 0:
            raise InvalidParameterError(f"最大步行距离必须为正: {self.max_walk}")

    def with_factor(self, demand_factor: float) -> "ScenarioSpec":
        return replace(self, demand_factor=demand_factor)

    def to_dict(self) -> Dict:
        data = asdict(self)
        data['area'] = list(self.area)
        return data


def generate_instance(spec: ScenarioSpec) -> Instance:
    """
    按场景参数生成实例

    Args:
        spec: 场景参数

    Returns:
        Instance（欧氏距离，默认的12种配置目录）
    """
    rng = np.random.default_rng(spec.seed)
    size = np.asarray(spec.area, dtype=float)
    gen_xy = rng.uniform(0.0, 1.0, size=(spec.n_generators, 2)) * size
    site_xy = rng.uniform(0.0, 1.0, size=(spec.n_sites, 2)) * size
    base = spec.waste_rate * (1.0 + rng.uniform(-spec.jitter, spec.jitter, size=spec.n_generators))
    waste = base * spec.demand_factor

    generators = [Generator(p, float(x), float(y), float(w))
                  for p, ((x, y), w) in enumerate(zip(gen_xy, waste))]
    sites = [Site(i, float(x), float(y), spec.site_space) for i, (x, y) in enumerate(site_xy)]
    bin_types = default_bin_types()
    instance = Instance.build(generators, sites, bin_types, default_catalog(bin_types),
                              max_walk=spec.max_walk, name=spec.name)

    uncovered = int((instance.nearest_site < 0).sum())
    if uncovered:
        logger.info(f"场景 {spec.name}: {uncovered} 个产生点在 步行距离上限以内没有候选站点")
    return instance


def load_scenarios(path: Optional[Union[str, Path]] = None) -> Dict[str, ScenarioSpec]:
    """
    读取内置场景列表

    Returns:
        场景名称到 ScenarioSpec 的映射
    """
    path = Path(path) if path else DEFAULT_SCENARIO_FILE
    if not path.exists():
        raise InstanceLoadError(f"场景文件不存在: {path}")
    try:
        with open(path, 'r', encoding='utf-8') as f:
            data = json.load(f)
    except json.JSONDecodeError as e:
        raise InstanceLoadError(f"{path}: JSON解析失败: {e}") from e

    scenarios = {}
    for index, item in enumerate(data.get('scenarios', [])):
        try:
            item = dict(item)
            if 'area' in item:
                item['area'] = tuple(item['area'])
            spec = ScenarioSpec(**item)
        except (TypeError, InvalidParameterError) as e:
            raise InstanceLoadError(f"{path}: scenarios.{index}: {e}") from e
        scenarios[spec.name] = spec
    return scenarios


def get_scenario(name: str, demand_factor: float = 1.0,
                 path: Optional[Union[str, Path]] = None) -> ScenarioSpec:
    """按名称获取内置场景，并设置需求系数"""
    scenarios = load_scenarios(path)
    if name not in scenarios:
        raise InvalidParameterError(f"未知场景: {name}，可选: {sorted(scenarios)}")
    return scenarios[name].with_factor(demand_factor)
