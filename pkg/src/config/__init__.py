"""
配置模块
包含配置管理、环境加载、常量定义等
"""
from .config_manager import ConfigManager
from .env_loader import load_env_file, setup_logging, get_worker_count, is_debug
from .constants import *

__all__ = [
    'ConfigManager',
    'load_env_file',
    'setup_logging',
    'get_worker_count',
    'is_debug',
]
