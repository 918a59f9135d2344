"""
常量定义模块
集中管理项目中使用的常量
"""
from typing import Dict, List, Tuple

# 算法相关常量
SUPPORTED_ALGORITHMS: Dict[str, str] = {
    'nsga2': 'moea',
    'spea2': 'moea',
    'pr-vol': 'pagerank',
    'pr-dist': 'pagerank',
    'pr-cost': 'pagerank',
    'pr-mo': 'pagerank',
}

SUPPORTED_DECODERS: List[str] = ['greedy', 'exact']

# 问题模型常量
DEFAULT_MAX_WALK: float = 300.0          # 最大步行距离，单位：米
DEFAULT_SITE_SPACE: float = 5.0          # 站点可用面积，单位：平方米
DEMAND_FACTORS: Tuple[float, ...] = (0.8, 1.0, 1.2)

# 默认的三种垃圾桶类型: (id, 单价, 容量m³, 占地m²)
DEFAULT_BIN_TYPES: List[Tuple[str, float, float, float]] = [
    ('j1', 1000.0, 1.0, 1.0),
    ('j2', 2000.0, 2.0, 2.0),
    ('j3', 3000.0, 3.0, 3.0),
]

# 默认可行配置表（站点面积 5 m²），按配置编号给出 (j1, j2, j3) 数量
DEFAULT_CONFIG_COUNTS: List[Tuple[int, int, int]] = [
    (0, 0, 0),
    (1, 0, 0),
    (2, 0, 0),
    (3, 0, 0),
    (4, 0, 0),
    (5, 0, 0),
    (1, 1, 0),
    (1, 2, 0),
    (1, 0, 1),
    (0, 1, 0),
    (0, 1, 1),
    (0, 0, 1),
]

# 进化算法默认参数
DEFAULT_POP_SIZE: int = 100
DEFAULT_GENERATIONS: int = 1000
DEFAULT_P_CROSSOVER: float = 0.9
DEFAULT_P_MUTATION: float = 0.01
DEFAULT_ELITE_SIZE: int = 20
DEFAULT_TOURNAMENT_SIZE: int = 2

# PageRank默认参数
DEFAULT_DAMPING: float = 0.85
DEFAULT_PR_TOL: float = 1e-9
DEFAULT_PR_MAX_ITER: int = 1000
MIN_SITE_DISTANCE: float = 0.1           # 同位置站点的距离下限（米）
MO_WEIGHT_STEPS: int = 10                # 权重网格 {0.0, 0.1, ..., 1.0}

# 规模保护
EXACT_DECODER_LIMIT: int = 10_000        # N·M 上限
EXHAUSTIVE_LIMIT: int = 10_000_000       # 基因型总数上限（贪心解码）
EXHAUSTIVE_EXACT_LIMIT: int = 20_000     # 基因型总数上限（精确解码）
EXHAUSTIVE_BATCH: int = 50_000

# 指标相关常量
REFERENCE_POINT_MARGIN: float = 1.01
IMPROVEMENT_VOLUME_TOLERANCE: float = 0.10

# 数值比较
TIE_DECIMALS: int = 9
CONSTRAINT_TOL: float = 1e-9

# 前沿CSV表头
FRONT_CSV_COLUMNS: List[str] = ['cost', 'distance', 'volume', 'genes']

# 日志
APP_LOGGER_NAME: str = "GAP_SOLVER"
LOG_FORMAT: str = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"
LOG_DATE_FORMAT: str = "%Y-%m-%d %H:%M:%S"
