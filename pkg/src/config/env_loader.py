"""
环境配置加载模块
加载 .env 文件、读取环境变量并初始化日志系统
"""
import logging
import os
from datetime import datetime
from pathlib import Path
from typing import Optional

from dotenv import load_dotenv

from .constants import LOG_FORMAT, LOG_DATE_FORMAT, APP_LOGGER_NAME

logger = logging.getLogger(__name__)

_TRUTHY = {'1', 'true', 'yes', 'on'}


def load_env_file(project_root: Optional[Path] = None) -> Optional[Path]:
    """
    加载环境变量文件（优先加载 .env，如果不存在则尝试 dev.env）

    Args:
        project_root: 项目根目录，默认为 src 的上级目录

    Returns:
        实际加载的文件路径，未找到时返回None
    """
    root = project_root or Path(__file__).parent.parent.parent
    env_file = root / '.env'
    if not env_file.exists():
        env_file = root / 'dev.env'
    if env_file.exists():
        load_dotenv(env_file)
        return env_file
    return None


def setup_logging(log_dir: Optional[str] = None, level: Optional[str] = None,
                  log_prefix: str = "solver") -> logging.Logger:
    """
    配置日志系统：按日期写入日志文件，同时输出到控制台

    Args:
        log_dir: 日志目录，默认读取 GAP_LOG_DIR，再默认为 logs
        level: 日志级别，默认读取 GAP_LOG_LEVEL，再默认为 INFO
        log_prefix: 日志文件名前缀

    Returns:
        应用主日志记录器
    """
    log_path = Path(log_dir or os.getenv('GAP_LOG_DIR', 'logs'))
    log_path.mkdir(parents=True, exist_ok=True)
    log_file = log_path / f"{log_prefix}_{datetime.now().strftime('%Y%m%d')}.log"

    level_name = (level or os.getenv('GAP_LOG_LEVEL', 'INFO')).upper()

    logging.basicConfig(
        level=getattr(logging, level_name, logging.INFO),
        format=LOG_FORMAT,
        datefmt=LOG_DATE_FORMAT,
        handlers=[
            logging.FileHandler(log_file, encoding='utf-8'),
            logging.StreamHandler()  # 同时输出到控制台
        ]
    )
    return logging.getLogger(APP_LOGGER_NAME)


def get_worker_count(default: Optional[int] = None) -> int:
    """
    获取工作线程数上限（GAP_THREADS）

    Args:
        default: 未设置环境变量时的默认值，为None时使用CPU核数

    Returns:
        线程数（至少为1）
    """
    raw = os.getenv('GAP_THREADS')
    if raw:
        try:
            return max(1, int(raw))
        except ValueError:
            logger.warning(f"GAP_THREADS 不是有效整数: {raw}，使用默认值")
    if default is not None:
        return max(1, default)
    return max(1, os.cpu_count() or 1)


def is_debug() -> bool:
    """是否开启调试模式（GAP_DEBUG）"""
    return os.getenv('GAP_DEBUG', '').strip().lower() in _TRUTHY
