"""
API 依赖项
用于依赖注入
"""
from src.config import ConfigManager
from src.solver_manager import SolverManager

# 这些将在 app.py 中初始化
_solver_manager: SolverManager = None
_config_manager: ConfigManager = None


def init_dependencies(solver_manager: SolverManager, config_manager: ConfigManager):
    """初始化依赖项"""
    global _solver_manager, _config_manager

    _solver_manager = solver_manager
    _config_manager = config_manager


def get_solver_manager() -> SolverManager:
    """获取求解器管理器"""
    return _solver_manager


def get_config_manager() -> ConfigManager:
    """获取配置管理器"""
    return _config_manager
