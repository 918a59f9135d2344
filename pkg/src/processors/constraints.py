"""
约束检查
校验方案与分配是否满足选址模型的全部约束，以及可选的桶数量上限 max_available

约束名称：
- site_space: 站点配置占用面积不超过可用面积（含方案长度、配置编号范围）
- bin_stock: 各类桶总数不超过 max_available
- generator_total: 每个产生点的分数之和不超过1
- site_capacity: 站点分配垃圾量不超过安装容量
- max_walk: 只分配到距离不超过 D 的站点
- fraction_bounds: 分数在 [0, 1] 内、下标合法
"""
from dataclasses import dataclass, field
from typing import List, Tuple

import numpy as np

from ..config.constants import CONSTRAINT_TOL
from ..models.entities import Plan
from ..models.instance import Instance
from .decoder import Assignment


@dataclass(frozen=True)
class ConstraintViolation:
    """一条约束违反记录：约束名称、违反位置（下标）、说明"""
    constraint: str
    indices: Tuple[int, ...] = field(default_factory=tuple)
    message: str = ""

    def __str__(self) -> str:
        where = f" @ {list(self.indices)}" if self.indices else ""
        return f"[{self.constraint}]{where} {self.message}"


class BinStock:
    """
    桶库存（max_available）约束的计算工具

    供初始化、变异、交叉修复、启发式扫描和穷举使用；未设置上限的实例上所有方法都不起作用
    """

    def __init__(self, instance: Instance):
        self.counts = instance.config_counts
        self.limits = instance.bin_limits
        self.active = instance.has_bin_limits
        self.allowed = instance.allowed_configs

    def usage(self, genes: np.ndarray) -> np.ndarray:
        """方案中各类型桶的总数"""
        return self.counts[np.asarray(genes, dtype=np.int64)].sum(axis=0)

    def feasible_rows(self, genes: np.ndarray) -> np.ndarray:
        """B×M 基因矩阵中满足库存上限的行"""
        genes = np.atleast_2d(np.asarray(genes, dtype=np.int64))
        if not self.active:
            return np.ones(genes.shape[0], dtype=bool)
        return (self.counts[genes].sum(axis=1) <= self.limits).all(axis=1)

    def fitting(self, genes: np.ndarray, site: int, choices: np.ndarray) -> np.ndarray:
        """在其余站点保持不变时，choices 中不超出剩余库存的配置"""
        if not self.active:
            return choices
        remaining = self.limits - (self.usage(genes) - self.counts[int(genes[site])])
        return choices[(self.counts[choices] <= remaining).all(axis=1)]

    def repair(self, genes: np.ndarray, rng: np.random.Generator) -> np.ndarray:
        """
        修复超出库存的基因向量：随机选取使用了超限桶类型的站点，
        在剩余库存允许的配置中重新均匀抽取，直到满足上限（配置 0 总是可行）

        Args:
            genes: 基因向量
            rng: 随机数流

        Returns:
            修复后的基因向量（无需修复时返回原对象）
        """
        if not self.active:
            return genes
        genes = np.asarray(genes, dtype=np.int64)
        over = self.usage(genes) > self.limits
        if not over.any():
            return genes
        genes = genes.copy()
        while over.any():
            users = np.flatnonzero((self.counts[genes][:, over] > 0).any(axis=1))
            site = int(users[rng.integers(0, users.shape[0])])
            remaining = self.limits - (self.usage(genes) - self.counts[genes[site]])
            allowed = self.allowed[site]
            # 超限类型的用量只减不增且严格减少，保证循环终止；空配置总在候选中
            current = self.counts[genes[site]][over]
            candidate_over = self.counts[allowed][:, over]
            shrink = (candidate_over <= current).all(axis=1) & (candidate_over.sum(axis=1) < current.sum())
            choices = allowed[shrink]
            choices = choices[(self.counts[choices][:, ~over] <= remaining[~over]).all(axis=1)]
            genes[site] = choices[rng.integers(0, choices.shape[0])]
            over = self.usage(genes) > self.limits
        return genes


def _check_plan(instance: Instance, plan: Plan) -> List[ConstraintViolation]:
    violations = []
    if len(plan) != instance.n_sites:
        violations.append(ConstraintViolation(
            'site_space', (), f"方案长度 {len(plan)} 与站点数 {instance.n_sites} 不一致"))
        return violations

    for i, gene in enumerate(plan.genes):
        gene = int(gene)
        if gene < 0 or gene >= instance.n_configs:
            violations.append(ConstraintViolation(
                'site_space', (i,), f"配置编号 {gene} 超出范围 [0, {instance.n_configs - 1}]"))
            continue
        used = instance.config_space[gene]
        space = instance.sites[i].space
        if used > space + CONSTRAINT_TOL:
            violations.append(ConstraintViolation(
                'site_space', (i,), f"配置 {gene} 占用面积 {used:g} 超过站点可用面积 {space:g}"))

    if violations:
        return violations

    counts = np.array([instance.catalog[int(g)].counts for g in plan.genes], dtype=np.int64)
    totals = counts.sum(axis=0) if counts.size else np.zeros(len(instance.bin_types), dtype=np.int64)
    for j, bin_type in enumerate(instance.bin_types):
        if bin_type.max_available is not None and totals[j] > bin_type.max_available:
            violations.append(ConstraintViolation(
                'bin_stock', (j,), f"桶类型 {bin_type.id} 使用 {int(totals[j])} 个，超过上限 {bin_type.max_available}"))
    return violations


def check_constraints(instance: Instance, plan: Plan,
                      assignment: Assignment) -> List[ConstraintViolation]:
    """
    检查约束

    Args:
        instance: 问题实例
        plan: 方案
        assignment: 分配结果

    Returns:
        违反记录列表，全部满足时为空列表
    """
    violations = _check_plan(instance, plan)
    plan_ok = not violations

    n, m = instance.n_generators, instance.n_sites
    if assignment.n_generators != n or assignment.n_sites != m:
        violations.append(ConstraintViolation(
            'fraction_bounds', (), f"分配矩阵维度 {(assignment.n_generators, assignment.n_sites)} 与实例 {(n, m)} 不一致"))
        return violations

    rows, cols, fractions = assignment.rows, assignment.cols, assignment.fractions
    bad = (rows < 0) | (rows >= n) | (cols < 0) | (cols >= m)
    if bad.any():
        for k in np.flatnonzero(bad):
            violations.append(ConstraintViolation(
                'fraction_bounds', (int(rows[k]), int(cols[k])), "分配下标越界"))
        return violations

    # 0 ≤ f ≤ 1
    for k in np.flatnonzero((fractions < -CONSTRAINT_TOL) | (fractions > 1 + CONSTRAINT_TOL)):
        violations.append(ConstraintViolation(
            'fraction_bounds', (int(rows[k]), int(cols[k])), f"分数 {fractions[k]:g} 不在 [0, 1] 内"))

    # 每个产生点的分配比例之和不超过1
    row_sum = np.zeros(n, dtype=float)
    np.add.at(row_sum, rows, fractions)
    for p in np.flatnonzero(row_sum > 1 + CONSTRAINT_TOL):
        violations.append(ConstraintViolation(
            'generator_total', (int(p),), f"产生点分数之和 {row_sum[p]:g} 大于 1"))

    # 有分配的产生点与站点距离不超过步行距离上限
    positive = fractions > 0
    too_far = positive & (instance.distance[rows, cols] > instance.max_walk)
    for k in np.flatnonzero(too_far):
        violations.append(ConstraintViolation(
            'max_walk', (int(rows[k]), int(cols[k])),
            f"距离 {instance.distance[rows[k], cols[k]]:g} 超过阈值 D = {instance.max_walk:g}"))

    # 站点收到的垃圾量不超过安装容量
    if plan_ok:
        capacity = instance.config_capacities[plan.genes]
        load = assignment.site_load(np.asarray(instance.waste))
        limit = capacity + CONSTRAINT_TOL * np.maximum(1.0, capacity)
        for i in np.flatnonzero(load > limit):
            violations.append(ConstraintViolation(
                'site_capacity', (int(i),), f"分配垃圾量 {load[i]:g} 超过安装容量 {capacity[i]:g}"))
    return violations
