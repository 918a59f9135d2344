"""
API 请求和响应的 Pydantic 模型定义
"""
from typing import Any, Dict, List, Optional

from pydantic import BaseModel, Field

from src.config.constants import SUPPORTED_DECODERS


class HealthResponse(BaseModel):
    """健康检查响应"""
    status: str
    message: str
    timestamp: str


class AlgorithmsResponse(BaseModel):
    """算法列表响应"""
    status: str
    algorithms: List[str]
    count: int


class EAParamsModel(BaseModel):
    """进化算法参数（均可选，缺省时使用 solver_config.json 中的默认值）"""
    pop_size: Optional[int] = Field(None, ge=2, description="种群规模 #p")
    generations: Optional[int] = Field(None, ge=0, description="迭代代数 #g")
    p_crossover: Optional[float] = Field(None, ge=0, le=1, description="交叉概率 p_C")
    p_mutation: Optional[float] = Field(None, ge=0, le=1, description="每个基因的变异概率 p_M")
    elite_size: Optional[int] = Field(None, ge=1, description="SPEA2 精英档案规模")
    seed: Optional[int] = Field(None, description="随机种子")
    damping: Optional[float] = Field(None, ge=0, le=1, description="PageRank 阻尼系数")
    pr_tol: Optional[float] = Field(None, gt=0, description="PageRank 收敛阈值")


class FrontPointModel(BaseModel):
    """前沿上的一个点"""
    cost: float
    distance: float
    volume: float
    genes: Optional[List[int]] = None
    label: Optional[str] = None


class SolveRequest(BaseModel):
    """求解请求"""
    instance: Dict[str, Any] = Field(..., description="实例文件内容（与实例JSON文件结构一致）")
    algorithm: str = Field("nsga2", description="算法名称")
    params: Optional[EAParamsModel] = Field(None, description="算法参数（可选）")
    decoder: Optional[str] = Field(None, description=f"解码器: {SUPPORTED_DECODERS}")


class SolveResponse(BaseModel):
    """求解响应"""
    status: str
    algorithm: str
    front: List[FrontPointModel]
    nd_count: int
    elapsed: float


class CheckRequest(BaseModel):
    """方案检查请求"""
    instance: Dict[str, Any] = Field(..., description="实例文件内容")
    genes: List[int] = Field(..., description="每个站点的配置编号")
    decoder: Optional[str] = Field(None, description="解码器")


class CheckResponse(BaseModel):
    """方案检查响应"""
    status: str
    violations: List[str]
    objectives: Optional[Dict[str, float]] = None
    mean_walk: Optional[float] = None


class MetricsRequest(BaseModel):
    """前沿指标请求"""
    fronts: List[List[FrontPointModel]] = Field(..., min_length=1, description="待评价的前沿列表")
    total_waste: Optional[float] = Field(None, ge=0, description="实例总垃圾量（可选，默认取最大收集量）")


class FrontMetrics(BaseModel):
    """单个前沿的指标"""
    rhv: Optional[float] = None
    spread: Optional[float] = None
    nd_count: int
    best_compromise: Optional[FrontPointModel] = None


class MetricsResponse(BaseModel):
    """前沿指标响应"""
    status: str
    reference_nd_count: int
    fronts: List[FrontMetrics]
