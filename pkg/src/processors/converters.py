"""
格式转换工具函数
前沿与CSV/JSON之间的转换，以及基因字符串解析
"""
import json
from pathlib import Path
from typing import Any, Dict, List, Optional, Union

import pandas as pd

from ..config.constants import FRONT_CSV_COLUMNS
from ..metrics.pareto import Front, FrontPoint
from ..models.entities import Objectives, Plan
from ..utils.exceptions import FrontFormatError


def parse_genes(text: str) -> Plan:
    """
    解析空格（或逗号）分隔的基因字符串

    Args:
        text: 例如 "0 3 11 2"

    Returns:
        Plan
    """
    tokens = str(text).replace(',', ' ').split()
    try:
        return Plan(int(t) for t in tokens)
    except ValueError as e:
        raise FrontFormatError(f"无法解析基因字符串: {text!r}") from e


def format_genes(plan: Optional[Plan]) -> str:
    return " ".join(str(g) for g in plan.to_list()) if plan is not None else ""


def front_to_dataframe(front: Front) -> pd.DataFrame:
    """前沿转为 DataFrame，列为 cost,distance,volume,genes"""
    rows = []
    for point in front:
        o = point.objectives
        rows.append({
            'cost': o.cost,
            'distance': o.distance,
            'volume': o.volume_collected,
            'genes': format_genes(point.plan),
        })
    return pd.DataFrame(rows, columns=FRONT_CSV_COLUMNS)


def write_front_csv(front: Front, path: Union[str, Path]) -> str:
    """
    写出前沿CSV；浮点数使用最短往返表示，重复运行得到逐字节相同的文件

    Returns:
        输出文件路径
    """
    df = front_to_dataframe(front)
    for column in ('cost', 'distance', 'volume'):
        df[column] = df[column].map(lambda v: repr(float(v)))
    output_file = Path(path)
    output_file.parent.mkdir(parents=True, exist_ok=True)
    df.to_csv(output_file, index=False, lineterminator='\n')
    return str(output_file)


def read_front_csv(path: Union[str, Path], total_waste: Optional[float] = None,
                   label: Optional[str] = None) -> Front:
    """
    读取前沿CSV

    Args:
        path: 文件路径
        total_waste: 实例总垃圾量，用于换算未收集量；为None时取文件中的最大收集量
        label: 前沿点的来源标签

    Returns:
        Front（读取时不做非支配过滤）

    Raises:
        FrontFormatError: 缺少必需列或数值无法解析
    """
    path = Path(path)
    try:
        df = pd.read_csv(path, dtype={'genes': str}, keep_default_na=False)
    except (OSError, pd.errors.ParserError, pd.errors.EmptyDataError) as e:
        raise FrontFormatError(f"{path}: 读取失败: {e}") from e

    missing = [c for c in ('cost', 'distance', 'volume') if c not in df.columns]
    if missing:
        raise FrontFormatError(f"{path}: 缺少列 {missing}")
    try:
        values = df[['cost', 'distance', 'volume']].astype(float)
    except ValueError as e:
        raise FrontFormatError(f"{path}: 目标值无法解析: {e}") from e

    if total_waste is None:
        total_waste = float(values['volume'].max()) if len(values) else 0.0

    has_genes = 'genes' in df.columns
    points = []
    for k in range(len(df)):
        genes = df['genes'].iloc[k] if has_genes else ""
        plan = parse_genes(genes) if genes.strip() else None
        objectives = Objectives(float(values['volume'].iloc[k]), float(values['distance'].iloc[k]),
                                float(values['cost'].iloc[k]), total_waste)
        points.append(FrontPoint(objectives, plan, label))
    return Front(points, filter_dominated=False)


def front_from_records(records: List[Dict[str, Any]], total_waste: Optional[float] = None,
                       label: Optional[str] = None) -> Front:
    """由 {cost, distance, volume, genes?} 字典列表构造前沿（不做过滤）"""
    if total_waste is None:
        total_waste = max((float(r['volume']) for r in records), default=0.0)
    points = []
    for r in records:
        genes = r.get('genes')
        if isinstance(genes, str):
            plan = parse_genes(genes) if genes.strip() else None
        else:
            plan = Plan(genes) if genes is not None else None
        points.append(FrontPoint(
            Objectives(float(r['volume']), float(r['distance']), float(r['cost']), total_waste),
            plan, label))
    return Front(points, filter_dominated=False)


def write_json(data: Dict[str, Any], path: Union[str, Path]) -> str:
    """写出JSON报告（UTF-8，缩进2）"""
    output_file = Path(path)
    output_file.parent.mkdir(parents=True, exist_ok=True)
    with open(output_file, 'w', encoding='utf-8') as f:
        json.dump(data, f, ensure_ascii=False, indent=2, default=_json_default)
        f.write('\n')
    return str(output_file)


def _json_default(value):
    if hasattr(value, 'item'):
        return value.item()
    if hasattr(value, 'tolist'):
        return value.tolist()
    raise TypeError(f"无法序列化类型: {type(value).__name__}")
