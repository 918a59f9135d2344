"""
目标函数计算
收集量、步行距离、安装成本以及平均步行距离报告指标
"""
import logging
import math
from typing import TYPE_CHECKING, Optional

import numpy as np

from .entities import Objectives, Plan
from .instance import Instance
from ..config.env_loader import is_debug
from ..utils.exceptions import ConstraintViolationError, PlanError

if TYPE_CHECKING:
    from ..processors.decoder import Assignment

logger = logging.getLogger(__name__)


def _check_dimensions(instance: Instance, plan: Plan, assignment: "Assignment") -> None:
    instance.validate_plan(plan)
    if assignment.n_generators != instance.n_generators or assignment.n_sites != instance.n_sites:
        raise PlanError(
            f"分配矩阵维度 {(assignment.n_generators, assignment.n_sites)} 与实例 "
            f"{(instance.n_generators, instance.n_sites)} 不一致"
        )


def evaluate(instance: Instance, plan: Plan, assignment: "Assignment",
             debug: Optional[bool] = None) -> Objectives:
    """
    计算方案的三个目标值

    距离为 距离×分配比例 之和（按比例加权而非按体积加权）

    Args:
        instance: 问题实例
        plan: 方案
        assignment: 该方案的分配结果
        debug: 是否先校验全部约束，默认读取 GAP_DEBUG

    Returns:
        Objectives

    Raises:
        PlanError: 方案或分配与实例维度不一致
        ConstraintViolationError: 调试模式下分配违反约束
    """
    _check_dimensions(instance, plan, assignment)

    if debug is None:
        debug = is_debug()
    if debug:
        # 延迟导入，processors 依赖本模块
        from ..processors.constraints import check_constraints
        violations = check_constraints(instance, plan, assignment)
        if violations:
            raise ConstraintViolationError(violations)

    rows, cols, fractions = assignment.rows, assignment.cols, assignment.fractions
    volume = math.fsum(fractions * instance.waste[rows])
    distance = math.fsum(instance.distance[rows, cols] * fractions)
    cost = math.fsum(instance.config_costs[plan.genes])
    return Objectives(volume, distance, cost, instance.total_waste)


def mean_walk(instance: Instance, assignment: "Assignment") -> Optional[float]:
    """
    按收集体积加权的平均步行距离（仅用于报告）

    Returns:
        平均距离（米），没有任何正分配时返回None
    """
    rows, cols, fractions = assignment.rows, assignment.cols, assignment.fractions
    served = fractions * instance.waste[rows]
    total = math.fsum(served)
    if total <= 0:
        return None
    return math.fsum(instance.distance[rows, cols] * served) / total
