"""
配置管理模块
处理求解器默认参数配置
"""
import json
import logging
from pathlib import Path
from typing import Dict, Any

from .constants import (
    DEFAULT_POP_SIZE, DEFAULT_GENERATIONS, DEFAULT_P_CROSSOVER, DEFAULT_P_MUTATION,
    DEFAULT_ELITE_SIZE, DEFAULT_TOURNAMENT_SIZE, DEFAULT_DAMPING, DEFAULT_PR_TOL,
    DEFAULT_PR_MAX_ITER,
)
from ..utils.exceptions import ConfigLoadError

logger = logging.getLogger(__name__)

# 内置默认值，配置文件中的同名项会覆盖它们
BUILTIN_DEFAULTS: Dict[str, Dict[str, Any]] = {
    'ea': {
        'pop_size': DEFAULT_POP_SIZE,
        'generations': DEFAULT_GENERATIONS,
        'p_crossover': DEFAULT_P_CROSSOVER,
        'p_mutation': DEFAULT_P_MUTATION,
        'elite_size': DEFAULT_ELITE_SIZE,
        'tournament_size': DEFAULT_TOURNAMENT_SIZE,
    },
    'pagerank': {
        'damping': DEFAULT_DAMPING,
        'tol': DEFAULT_PR_TOL,
        'max_iter': DEFAULT_PR_MAX_ITER,
    },
    'decoder': {'name': 'greedy'},
    'bench': {'n_runs': 30, 'base_seed': 1},
}


class ConfigManager:
    """配置管理器"""

    def __init__(self, config_path: str = None):
        """
        初始化配置管理器

        Args:
            config_path: 求解器配置文件路径，如果为None则使用项目根目录下的 solver_config.json
        """
        default_config_path = Path(__file__).parent.parent.parent / 'solver_config.json'
        self.config_path = Path(config_path) if config_path else default_config_path
        self.config: Dict[str, Any] = {}
        self.load_solver_config()

    def load_solver_config(self) -> Dict[str, Any]:
        """
        加载求解器配置文件，并与内置默认值合并

        Returns:
            合并后的配置字典

        Raises:
            ConfigLoadError: 配置文件存在但无法解析
        """
        merged = {key: (dict(value) if isinstance(value, dict) else value)
                  for key, value in BUILTIN_DEFAULTS.items()}

        if not self.config_path.exists():
            # 配置文件不存在时使用内置默认值
            logger.info(f"未找到配置文件 {self.config_path}，使用内置默认参数")
            self.config = merged
            return self.config

        try:
            with open(self.config_path, 'r', encoding='utf-8') as f:
                file_config = json.load(f)
        except (OSError, json.JSONDecodeError) as e:
            raise ConfigLoadError(f"配置文件加载失败 {self.config_path}: {e}") from e

        for key, value in file_config.items():
            if isinstance(value, dict) and isinstance(merged.get(key), dict):
                merged[key].update(value)
            else:
                merged[key] = value

        self.config = merged
        return self.config

    def ea_defaults(self) -> Dict[str, Any]:
        """进化算法默认参数"""
        return dict(self.config['ea'])

    def pagerank_defaults(self) -> Dict[str, Any]:
        """PageRank默认参数"""
        return dict(self.config['pagerank'])

    def default_decoder(self) -> str:
        """默认解码器名称"""
        return self.config['decoder'].get('name', 'greedy')

    def bench_defaults(self) -> Dict[str, Any]:
        """批量实验默认参数"""
        return dict(self.config['bench'])
