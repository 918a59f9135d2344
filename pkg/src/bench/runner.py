"""
批量实验
多个种子独立运行各算法，输出每次运行的前沿CSV，
并相对汇总参考前沿统计 RHV、spread、非支配解个数，以及多目标算法相对各启发式方案的改进
"""
import logging
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import replace
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, Tuple, Union

import numpy as np

from ..algorithms.operators import EAParams, PlanEvaluator
from ..config.constants import SUPPORTED_ALGORITHMS
from ..config.env_loader import get_worker_count
from ..metrics.pareto import Front, reference_front
from ..metrics.quality import best_compromise, improvement_report, rhv, spread
from ..models.instance import Instance
from ..models.objectives import mean_walk
from ..processors.converters import write_front_csv, write_json
from ..solver_manager import SolverManager
from ..utils.exceptions import AlgorithmNotSupportedError

logger = logging.getLogger(__name__)


def summarize(values: Sequence[Optional[float]]) -> Optional[Dict[str, float]]:
    """{min, median, max, iqr}，忽略缺失值；全部缺失时返回None"""
    data = np.array([v for v in values if v is not None], dtype=float)
    if data.size == 0:
        return None
    q25, q75 = np.percentile(data, [25, 75])
    return {
        'min': float(data.min()),
        'median': float(np.median(data)),
        'max': float(data.max()),
        'iqr': float(q75 - q25),
    }


def _point_dict(point) -> Optional[Dict[str, Any]]:
    if point is None:
        return None
    o = point.objectives
    data = {'cost': o.cost, 'distance': o.distance, 'volume': o.volume_collected}
    if point.plan is not None:
        data['genes'] = point.plan.to_list()
    if point.label is not None:
        data['label'] = point.label
    return data


def run_batch(instance: Instance, algorithms: Sequence[str], n_runs: int = 30, base_seed: int = 1,
              params: Optional[EAParams] = None, out_dir: Optional[Union[str, Path]] = None,
              workers: Optional[int] = None, manager: Optional[SolverManager] = None,
              **pagerank_kwargs) -> Dict[str, Any]:
    """
    批量运行

    Args:
        instance: 问题实例
        algorithms: 算法名称列表
        n_runs: 每个进化算法的独立运行次数（种子为 base_seed + k）；启发式只运行一次
        base_seed: 基础种子
        params: 进化算法参数模板（seed 字段被覆盖）
        out_dir: 输出目录，给定时写出每次运行的前沿CSV与 report.json
        workers: 并发线程数，默认读取 GAP_THREADS
        manager: 求解器管理器
        **pagerank_kwargs: damping / pr_tol / pr_max_iter

    Returns:
        报告字典；耗时信息在单独的 timing 键中
    """
    for name in algorithms:
        if name not in SUPPORTED_ALGORITHMS:
            raise AlgorithmNotSupportedError(f"不支持的算法: {name}")
    params = params or EAParams()
    manager = manager or SolverManager()
    workers = workers or get_worker_count()
    out_path = Path(out_dir) if out_dir else None

    jobs: List[Tuple[str, int, Optional[int]]] = []
    for name in algorithms:
        if SUPPORTED_ALGORITHMS[name] == 'moea':
            jobs.extend((name, k, base_seed + k) for k in range(n_runs))
        else:
            jobs.append((name, 0, None))

    def run_job(job):
        name, k, seed = job
        job_params = replace(params, seed=seed) if seed is not None else params
        return manager.solve(name, instance, job_params, **pagerank_kwargs)

    start_time = time.time()
    logger.info(f"批量实验开始 - 实例: {instance.name} | 算法: {list(algorithms)} | "
                f"运行次数: {n_runs} | 线程数: {workers}")
    with ThreadPoolExecutor(max_workers=workers) as pool:
        results = list(pool.map(run_job, jobs))

    runs: Dict[str, List[Front]] = {name: [] for name in algorithms}
    timing: Dict[str, List[float]] = {name: [] for name in algorithms}
    files: Dict[str, List[str]] = {name: [] for name in algorithms}
    for (name, k, seed), result in zip(jobs, results):
        runs[name].append(result.front)
        timing[name].append(result.elapsed)
        if out_path is not None:
            filename = f"{name}_run{k:02d}.csv" if seed is not None else f"{name}.csv"
            write_front_csv(result.front, out_path / filename)
            files[name].append(filename)

    reference = reference_front(front for fronts in runs.values() for front in fronts)

    report: Dict[str, Any] = {
        'instance': instance.summary(),
        'n_runs': n_runs,
        'base_seed': base_seed,
        'params': params.to_dict(),
        'reference_nd_count': len(reference),
        'algorithms': {},
        'improvements': {},
    }
    pooled: Dict[str, Front] = {}
    for name in algorithms:
        fronts = runs[name]
        pooled[name] = reference_front(fronts)
        report['algorithms'][name] = {
            'runs': len(fronts),
            'files': files[name],
            'rhv': summarize([rhv(f, reference) for f in fronts]),
            'spread': summarize([spread(f, reference) for f in fronts]),
            'nd_count': summarize([float(len(f)) for f in fronts]),
            'best_compromise': _point_dict(best_compromise(pooled[name], reference)),
        }

    # 启发式的比较点：单点启发式取其唯一方案，MO-PageRank 取最佳折中解
    baselines = {}
    for name in algorithms:
        if SUPPORTED_ALGORITHMS[name] != 'pagerank' or len(pooled[name]) == 0:
            continue
        point = pooled[name][0] if name != 'pr-mo' else best_compromise(pooled[name], reference)
        baselines[name] = point
    if instance.current_plan is not None:
        evaluator = PlanEvaluator(instance, params.decoder)
        current = evaluator.canonical(instance.current_plan, 'current')
        baselines['current'] = current
        assignment = evaluator.decode(instance, instance.current_plan)
        report['current_plan'] = {**_point_dict(current), 'mean_walk': mean_walk(instance, assignment)}

    for name in algorithms:
        if SUPPORTED_ALGORITHMS[name] != 'moea':
            continue
        report['improvements'][name] = {
            base: improvement_report(pooled[name], point.objectives)
            for base, point in baselines.items()
        }

    elapsed = time.time() - start_time
    report['timing'] = {'total': elapsed, 'per_run': timing}
    if out_path is not None:
        write_json(report, out_path / 'report.json')
    logger.info(f"批量实验完成 - 实例: {instance.name} | 参考前沿规模: {len(reference)} | "
                f"耗时: {elapsed:.3f}秒")
    return report
