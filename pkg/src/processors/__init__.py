"""
处理方法模块
方案解码、约束检查、前沿文件格式转换
"""
from .decoder import (
    Assignment, GreedyKernel, KernelResult, greedy_kernel,
    decode_greedy, decode_exact, decode, get_decoder,
)
from .constraints import ConstraintViolation, check_constraints
from .converters import (
    parse_genes, format_genes, write_front_csv, read_front_csv,
    front_to_dataframe, front_from_records, write_json,
)

__all__ = [
    'Assignment',
    'GreedyKernel',
    'KernelResult',
    'greedy_kernel',
    'decode_greedy',
    'decode_exact',
    'decode',
    'get_decoder',
    'ConstraintViolation',
    'check_constraints',
    'parse_genes',
    'format_genes',
    'write_front_csv',
    'read_front_csv',
    'front_to_dataframe',
    'front_from_records',
    'write_json',
]
