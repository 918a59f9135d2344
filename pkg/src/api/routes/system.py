"""
系统相关路由
包括健康检查、算法列表等
"""
from datetime import datetime

from fastapi import APIRouter, Depends, HTTPException

from src.api.dependencies import get_solver_manager
from src.api.schemas import AlgorithmsResponse, HealthResponse

router = APIRouter()


@router.get("/api/health", response_model=HealthResponse, tags=["系统"])
async def health_check():
    """健康检查接口"""
    return {
        "status": "ok",
        "message": "GAP选址求解服务运行正常",
        "timestamp": datetime.now().isoformat()
    }


@router.get("/api/algorithms", response_model=AlgorithmsResponse, tags=["算法"])
async def list_algorithms(solver_manager=Depends(get_solver_manager)):
    """获取支持的算法列表"""
    try:
        algorithms = solver_manager.list_algorithms()
        return {
            "status": "success",
            "algorithms": algorithms,
            "count": len(algorithms)
        }
    except Exception as e:
        raise HTTPException(status_code=500, detail=f"获取算法列表失败: {str(e)}")
