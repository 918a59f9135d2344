"""
指标模块
帕累托前沿工具与质量指标
"""
from .pareto import FrontPoint, Front, dominates, non_dominated_mask, reference_front
from .hypervolume import hypervolume
from .quality import normalize, rhv, spread, best_compromise, improvement_report

__all__ = [
    'FrontPoint',
    'Front',
    'dominates',
    'non_dominated_mask',
    'reference_front',
    'hypervolume',
    'normalize',
    'rhv',
    'spread',
    'best_compromise',
    'improvement_report',
]
