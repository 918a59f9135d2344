"""
求解器管理器
按算法名称分发求解，缓存每个实例的PageRank排序
"""
import logging
import threading
import time
from dataclasses import dataclass, field
from typing import Any, Dict, Optional, Tuple

from .algorithms import (
    EAParams, HEURISTICS, NSGA2Solver, PlanEvaluator, Ranking, SPEA2Solver, pr_mo, rank_sites,
)
from .config.constants import (
    DEFAULT_DAMPING, DEFAULT_PR_MAX_ITER, DEFAULT_PR_TOL, SUPPORTED_ALGORITHMS,
)
from .metrics.pareto import Front
from .models.instance import Instance
from .utils.exceptions import AlgorithmNotSupportedError

logger = logging.getLogger(__name__)


@dataclass
class SolveResult:
    """一次求解的结果与元数据"""
    algorithm: str
    front: Front
    elapsed: float
    params: Dict[str, Any] = field(default_factory=dict)
    history: list = field(default_factory=list)

    def meta(self) -> Dict[str, Any]:
        return {
            'algorithm': self.algorithm,
            'params': self.params,
            'seed': self.params.get('seed'),
            'nd_count': len(self.front),
            'wall_time': self.elapsed,
        }


class SolverManager:
    """求解器管理器，支持PageRank排序缓存"""

    SUPPORTED_ALGORITHMS = SUPPORTED_ALGORITHMS

    def __init__(self, workers: int = 1):
        """
        初始化求解器管理器

        Args:
            workers: 精确解码时的评估线程数
        """
        self.workers = max(1, workers)
        self._rankings: Dict[Tuple[int, float, float, int], Tuple[Instance, Ranking]] = {}
        self._lock = threading.Lock()

    def list_algorithms(self) -> list:
        """获取支持的算法列表"""
        return list(self.SUPPORTED_ALGORITHMS.keys())

    def check_algorithm(self, name: str) -> str:
        if name not in self.SUPPORTED_ALGORITHMS:
            raise AlgorithmNotSupportedError(
                f"不支持的算法: {name}。支持的算法: {self.list_algorithms()}"
            )
        return self.SUPPORTED_ALGORITHMS[name]

    def get_ranking(self, instance: Instance, damping: float = DEFAULT_DAMPING,
                    tol: float = DEFAULT_PR_TOL, max_iter: int = DEFAULT_PR_MAX_ITER) -> Ranking:
        """
        获取站点排序（按实例与参数缓存）

        Returns:
            Ranking
        """
        key = (id(instance), float(damping), float(tol), int(max_iter))
        with self._lock:
            cached = self._rankings.get(key)
            # 缓存中保留实例引用，避免 id 被复用
            if cached is not None and cached[0] is instance:
                return cached[1]
        ranking = rank_sites(instance, damping, tol, max_iter)
        with self._lock:
            self._rankings[key] = (instance, ranking)
        return ranking

    def clear_cache(self):
        with self._lock:
            self._rankings.clear()

    def solve(self, name: str, instance: Instance, params: Optional[EAParams] = None,
              decoder: Optional[str] = None, damping: float = DEFAULT_DAMPING,
              pr_tol: float = DEFAULT_PR_TOL, pr_max_iter: int = DEFAULT_PR_MAX_ITER) -> SolveResult:
        """
        运行指定算法

        Args:
            name: 算法名称（nsga2 / spea2 / pr-vol / pr-dist / pr-cost / pr-mo）
            instance: 问题实例
            params: 进化算法参数
            decoder: 解码器名称，默认取 params.decoder
            damping: PageRank阻尼系数
            pr_tol: PageRank收敛阈值
            pr_max_iter: PageRank最大迭代次数

        Returns:
            SolveResult
        """
        family = self.check_algorithm(name)
        params = params or EAParams()
        decoder = decoder or params.decoder
        start_time = time.time()

        if family == 'moea':
            if decoder != params.decoder:
                params = EAParams(**{**params.to_dict(), 'decoder': decoder})
            solver_cls = NSGA2Solver if name == 'nsga2' else SPEA2Solver
            solver = solver_cls(instance, params, workers=self.workers)
            front = solver.solve()
            return SolveResult(name, front, time.time() - start_time, params.to_dict(), solver.history)

        ranking = self.get_ranking(instance, damping, pr_tol, pr_max_iter)
        evaluator = PlanEvaluator(instance, decoder)
        if name == 'pr-mo':
            front = pr_mo(instance, ranking, evaluator)
        else:
            plan = HEURISTICS[name](instance, ranking)
            front = Front([evaluator.canonical(plan, name)])
        elapsed = time.time() - start_time
        logger.info(
            f"求解完成 - 算法: {name} | 规模: N={instance.n_generators}, M={instance.n_sites} | "
            f"前沿规模: {len(front)} | PageRank迭代: {ranking.iterations} | 耗时: {elapsed:.3f}秒 | 状态: 成功"
        )
        pr_params = {'damping': damping, 'tol': pr_tol, 'max_iter': pr_max_iter, 'decoder': decoder,
                     'converged': ranking.converged, 'iterations': ranking.iterations}
        return SolveResult(name, front, elapsed, pr_params)
