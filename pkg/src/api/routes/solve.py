"""
求解相关路由
包括求解、方案检查、前沿指标
"""
import logging
import time

from fastapi import APIRouter, Depends, HTTPException

from src.algorithms.operators import EAParams
from src.api.dependencies import get_config_manager, get_solver_manager
from src.api.schemas import (
    CheckRequest, CheckResponse, MetricsRequest, MetricsResponse, SolveRequest, SolveResponse,
)
from src.config.constants import APP_LOGGER_NAME
from src.metrics.pareto import reference_front
from src.metrics.quality import best_compromise, rhv, spread
from src.models.entities import Plan
from src.models.instance import instance_from_dict
from src.models.objectives import evaluate, mean_walk
from src.processors.constraints import check_constraints
from src.processors.converters import front_from_records
from src.processors.decoder import Assignment, decode
from src.utils.exceptions import GAPSolverException, PlanError

router = APIRouter()
logger = logging.getLogger(APP_LOGGER_NAME)


def _point_model(point):
    o = point.objectives
    return {
        "cost": o.cost,
        "distance": o.distance,
        "volume": o.volume_collected,
        "genes": point.plan.to_list() if point.plan is not None else None,
        "label": point.label,
    }


@router.post("/api/solve", response_model=SolveResponse, tags=["求解"])
def solve(request: SolveRequest, solver_manager=Depends(get_solver_manager),
          config_manager=Depends(get_config_manager)):
    """
    求解接口

    请求格式：
    {
        "instance": {...实例文件内容...},
        "algorithm": "nsga2",
        "params": {"pop_size": 50, "generations": 100, "seed": 1},
        "decoder": "greedy"
    }
    """
    start_time = time.time()
    try:
        instance = instance_from_dict(request.instance, source="request.instance")
        ea = config_manager.ea_defaults()
        pr = config_manager.pagerank_defaults()
        given = request.params.model_dump(exclude_none=True) if request.params else {}
        params = EAParams(
            pop_size=given.get('pop_size', ea['pop_size']),
            generations=given.get('generations', ea['generations']),
            p_crossover=given.get('p_crossover', ea['p_crossover']),
            p_mutation=given.get('p_mutation', ea['p_mutation']),
            elite_size=given.get('elite_size', ea['elite_size']),
            tournament_size=ea['tournament_size'],
            seed=given.get('seed'),
            decoder=request.decoder or config_manager.default_decoder(),
        )
        result = solver_manager.solve(
            request.algorithm, instance, params,
            damping=given.get('damping', pr['damping']),
            pr_tol=given.get('pr_tol', pr['tol']),
            pr_max_iter=pr['max_iter'],
        )
    except GAPSolverException as e:
        logger.warning(f"求解请求失败 - 算法: {request.algorithm} | 错误: {e}")
        raise HTTPException(status_code=400, detail=str(e))
    except Exception as e:
        logger.error(f"求解异常 - 算法: {request.algorithm} | 错误: {e}")
        raise HTTPException(status_code=500, detail=f"求解失败: {str(e)}")

    elapsed = time.time() - start_time
    logger.info(
        f"API求解完成 - 算法: {request.algorithm} | 前沿规模: {len(result.front)} | 耗时: {elapsed:.3f}秒"
    )
    return {
        "status": "success",
        "algorithm": request.algorithm,
        "front": [_point_model(p) for p in result.front],
        "nd_count": len(result.front),
        "elapsed": elapsed,
    }


@router.post("/api/check", response_model=CheckResponse, tags=["求解"])
def check(request: CheckRequest, config_manager=Depends(get_config_manager)):
    """方案检查接口：解码方案并返回约束违反、目标值与平均步行距离"""
    try:
        instance = instance_from_dict(request.instance, source="request.instance")
        plan = Plan(request.genes)
        if len(plan) != instance.n_sites:
            raise PlanError(f"方案长度 {len(plan)} 与站点数 {instance.n_sites} 不一致")
        genes = plan.genes
        if genes.size and (genes.min() < 0 or genes.max() >= instance.n_configs):
            # 越界基因无法解码，只报告 site_space
            empty = Assignment.empty(instance.n_generators, instance.n_sites)
            violations = check_constraints(instance, plan, empty)
            return {"status": "violated", "violations": [str(v) for v in violations]}

        assignment = decode(instance, plan, request.decoder or config_manager.default_decoder())
        violations = check_constraints(instance, plan, assignment)
        objectives = evaluate(instance, plan, assignment, debug=False)
    except GAPSolverException as e:
        raise HTTPException(status_code=400, detail=str(e))
    except Exception as e:
        raise HTTPException(status_code=500, detail=f"方案检查失败: {str(e)}")

    return {
        "status": "success" if not violations else "violated",
        "violations": [str(v) for v in violations],
        "objectives": objectives.to_dict(),
        "mean_walk": mean_walk(instance, assignment),
    }


@router.post("/api/metrics", response_model=MetricsResponse, tags=["指标"])
def metrics(request: MetricsRequest):
    """前沿指标接口：以输入前沿的并集为参考前沿计算 RHV、spread 与最佳折中解"""
    try:
        total = request.total_waste
        if total is None:
            total = max((p.volume for front in request.fronts for p in front), default=0.0)
        fronts = [
            reference_front([front_from_records([p.model_dump() for p in front], total)])
            for front in request.fronts
        ]
        reference = reference_front(fronts)
        results = []
        for front in fronts:
            compromise = best_compromise(front, reference)
            results.append({
                "rhv": rhv(front, reference),
                "spread": spread(front, reference),
                "nd_count": len(front),
                "best_compromise": _point_model(compromise) if compromise else None,
            })
    except GAPSolverException as e:
        raise HTTPException(status_code=400, detail=str(e))
    except Exception as e:
        raise HTTPException(status_code=500, detail=f"指标计算失败: {str(e)}")

    return {"status": "success", "reference_nd_count": len(reference), "fronts": results}
