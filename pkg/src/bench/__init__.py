"""
实验模块
合成场景生成、穷举前沿与批量实验
"""
from .scenario import ScenarioSpec, generate_instance, load_scenarios, get_scenario
from .oracle import exhaustive_front, genotype_count, genotype_block
from .runner import run_batch, summarize

__all__ = [
    'ScenarioSpec',
    'generate_instance',
    'load_scenarios',
    'get_scenario',
    'exhaustive_front',
    'genotype_count',
    'genotype_block',
    'run_batch',
    'summarize',
]
