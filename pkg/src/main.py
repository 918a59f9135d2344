"""
命令行入口

用法: python -m src.main <子命令> [参数]

子命令:
    gen      生成合成实例
    solve    运行单个算法并输出前沿CSV
    oracle   穷举真实前沿
    metrics  计算前沿的 RHV / spread / 最佳折中解
    batch    多种子批量实验
    check    检查方案的约束与目标值
"""
import argparse
import json
import logging
import sys
import time
from dataclasses import replace
from pathlib import Path
from typing import List, Optional

from .algorithms.operators import EAParams, PlanEvaluator
from .bench.oracle import exhaustive_front
from .bench.runner import run_batch
from .bench.scenario import ScenarioSpec, generate_instance, get_scenario
from .config import ConfigManager, get_worker_count, load_env_file, setup_logging
from .config.constants import DEMAND_FACTORS, SUPPORTED_ALGORITHMS, SUPPORTED_DECODERS
from .metrics.pareto import reference_front
from .metrics.quality import best_compromise, rhv, spread
from .models.entities import Plan
from .models.instance import load_instance, save_instance
from .models.objectives import evaluate, mean_walk
from .processors.constraints import check_constraints
from .processors.decoder import Assignment
from .processors.converters import parse_genes, read_front_csv, write_front_csv, write_json
from .solver_manager import SolverManager
from .utils.exceptions import FrontFormatError, GAPSolverException, PlanError

logger = logging.getLogger(__name__)


# ---------------------------------------------------------------------------
# 参数定义
# ---------------------------------------------------------------------------

def _add_ea_arguments(parser: argparse.ArgumentParser) -> None:
    group = parser.add_argument_group("进化算法参数（默认取 solver_config.json）")
    group.add_argument('--pop', type=int, default=None, help="种群规模 #p")
    group.add_argument('--gens', type=int, default=None, help="迭代代数 #g")
    group.add_argument('--pc', type=float, default=None, help="交叉概率 p_C")
    group.add_argument('--pm', type=float, default=None, help="每个基因的变异概率 p_M")
    group.add_argument('--elite', type=int, default=None, help="SPEA2 精英档案规模")
    group.add_argument('--decoder', choices=SUPPORTED_DECODERS, default=None, help="解码器")
    group.add_argument('--damping', type=float, default=None, help="PageRank 阻尼系数")
    group.add_argument('--pr-tol', type=float, default=None, help="PageRank 收敛阈值")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="gap-solver", description="多目标垃圾收集点选址求解器")
    parser.add_argument('--config', default=None, help="求解器配置文件路径")
    sub = parser.add_subparsers(dest='command', required=True)

    gen = sub.add_parser('gen', help="生成合成实例")
    gen.add_argument('--scenario', default=None, help="内置场景名称（data/scenarios.json）")
    gen.add_argument('--generators', type=int, default=90)
    gen.add_argument('--sites', type=int, default=30)
    gen.add_argument('--area', type=float, nargs=2, default=(1000.0, 1000.0), metavar=('W', 'H'))
    gen.add_argument('--waste-rate', type=float, default=1.0)
    gen.add_argument('--jitter', type=float, default=0.2)
    gen.add_argument('--demand-factor', type=float, default=1.0, choices=DEMAND_FACTORS)
    gen.add_argument('--seed', type=int, default=None)
    gen.add_argument('--out', required=True)

    solve = sub.add_parser('solve', help="运行单个算法")
    solve.add_argument('instance')
    solve.add_argument('--algorithm', required=True, choices=list(SUPPORTED_ALGORITHMS))
    solve.add_argument('--seed', type=int, default=None, help="随机种子，默认使用配置中的 bench.base_seed")
    solve.add_argument('--out', required=True, help="前沿CSV输出路径")
    solve.add_argument('--meta', default=None, help="运行元数据JSON输出路径")
    _add_ea_arguments(solve)

    oracle = sub.add_parser('oracle', help="穷举真实前沿")
    oracle.add_argument('instance')
    oracle.add_argument('--decoder', choices=SUPPORTED_DECODERS, default=None)
    oracle.add_argument('--out', required=True)

    metrics = sub.add_parser('metrics', help="计算前沿质量指标")
    metrics.add_argument('--fronts', nargs='+', required=True)
    metrics.add_argument('--reference', default=None, help="参考前沿CSV，默认为输入前沿的并集")
    metrics.add_argument('--instance', default=None, help="实例文件，用于获得总垃圾量")
    metrics.add_argument('--out', required=True)

    batch = sub.add_parser('batch', help="多种子批量实验")
    batch.add_argument('instance')
    batch.add_argument('--algorithms', nargs='+', required=True, choices=list(SUPPORTED_ALGORITHMS))
    batch.add_argument('--runs', type=int, default=None)
    batch.add_argument('--seed', type=int, default=None, help="基础种子，第 k 次运行使用 seed + k")
    batch.add_argument('--out-dir', required=True)
    _add_ea_arguments(batch)

    check = sub.add_parser('check', help="检查方案")
    check.add_argument('instance')
    source = check.add_mutually_exclusive_group(required=True)
    source.add_argument('--genes', default=None, help='例如 "0 3 11 2"')
    source.add_argument('--plan', default=None, help="前沿CSV文件")
    source.add_argument('--current', action='store_true', help="检查实例中的 current_plan")
    check.add_argument('--row', type=int, default=0, help="--plan 时使用的行号")
    check.add_argument('--decoder', choices=SUPPORTED_DECODERS, default=None)
    return parser


# ---------------------------------------------------------------------------
# 子命令
# ---------------------------------------------------------------------------

def _ea_params(args, config: ConfigManager, seed: Optional[int] = None) -> EAParams:
    ea = config.ea_defaults()
    return EAParams(
        pop_size=args.pop if args.pop is not None else ea['pop_size'],
        generations=args.gens if args.gens is not None else ea['generations'],
        p_crossover=args.pc if args.pc is not None else ea['p_crossover'],
        p_mutation=args.pm if args.pm is not None else ea['p_mutation'],
        elite_size=args.elite if args.elite is not None else ea['elite_size'],
        tournament_size=ea['tournament_size'],
        seed=seed,
        decoder=args.decoder or config.default_decoder(),
    )


def _pagerank_kwargs(args, config: ConfigManager) -> dict:
    pr = config.pagerank_defaults()
    return {
        'damping': args.damping if args.damping is not None else pr['damping'],
        'pr_tol': args.pr_tol if args.pr_tol is not None else pr['tol'],
        'pr_max_iter': pr['max_iter'],
    }


def cmd_gen(args, config: ConfigManager) -> int:
    if args.scenario:
        spec = get_scenario(args.scenario, args.demand_factor)
        if args.seed is not None:
            spec = replace(spec, seed=args.seed)
    else:
        spec = ScenarioSpec(
            name=Path(args.out).stem, n_generators=args.generators, n_sites=args.sites,
            area=tuple(args.area), waste_rate=args.waste_rate, jitter=args.jitter,
            demand_factor=args.demand_factor, seed=args.seed if args.seed is not None else 0,
        )
    instance = generate_instance(spec)
    path = save_instance(instance, args.out)
    print(f"实例已保存到: {path}（产生点 {instance.n_generators}，站点 {instance.n_sites}，"
          f"总垃圾量 {instance.total_waste:.3f} m³）")
    return 0


def cmd_solve(args, config: ConfigManager) -> int:
    instance = load_instance(args.instance)
    seed = args.seed if args.seed is not None else config.bench_defaults()['base_seed']
    params = _ea_params(args, config, seed=seed)
    manager = SolverManager(workers=get_worker_count(1))
    result = manager.solve(args.algorithm, instance, params, **_pagerank_kwargs(args, config))
    write_front_csv(result.front, args.out)
    print(f"前沿已保存到: {args.out}（{len(result.front)} 个非支配方案，耗时 {result.elapsed:.2f} 秒）")

    if args.meta:
        meta = result.meta()
        meta['instance'] = instance.summary()
        compromise = best_compromise(result.front, result.front)
        if compromise is not None:
            evaluator = PlanEvaluator(instance, params.decoder)
            assignment = evaluator.decode(instance, compromise.plan)
            meta['best_compromise'] = {
                **compromise.objectives.to_dict(),
                'genes': compromise.plan.to_list(),
                'mean_walk': mean_walk(instance, assignment),
            }
        meta['history'] = [
            {'generation': r.generation, 'nd_count': r.nd_count, 'minima': list(r.minima)}
            for r in result.history
        ]
        write_json(meta, args.meta)
    return 0


def cmd_oracle(args, config: ConfigManager) -> int:
    instance = load_instance(args.instance)
    decoder = args.decoder or config.default_decoder()
    start_time = time.time()
    front = exhaustive_front(instance, decoder)
    write_front_csv(front, args.out)
    print(f"真实前沿已保存到: {args.out}（{len(front)} 个点，耗时 {time.time() - start_time:.2f} 秒）")
    return 0


def cmd_metrics(args, config: ConfigManager) -> int:
    total = load_instance(args.instance).total_waste if args.instance else None
    if total is None:
        # 未给出实例时所有前沿使用同一个基准：最大收集量
        volumes = []
        for path in args.fronts + ([args.reference] if args.reference else []):
            volumes.extend(p.objectives.volume_collected for p in read_front_csv(path))
        total = max(volumes, default=0.0)

    fronts = [read_front_csv(path, total) for path in args.fronts]
    if args.reference:
        reference = reference_front([read_front_csv(args.reference, total)])
    else:
        reference = reference_front(fronts)

    results = []
    for path, raw in zip(args.fronts, fronts):
        front = reference_front([raw])
        compromise = best_compromise(front, reference)
        results.append({
            'file': str(path),
            'rhv': rhv(front, reference),
            'spread': spread(front, reference),
            'nd_count': len(front),
            'best_compromise': compromise.objectives.to_dict() if compromise else None,
        })
    write_json({'reference_nd_count': len(reference), 'fronts': results}, args.out)
    print(f"指标已保存到: {args.out}")
    return 0


def cmd_batch(args, config: ConfigManager) -> int:
    instance = load_instance(args.instance)
    bench = config.bench_defaults()
    params = _ea_params(args, config)
    report = run_batch(
        instance, args.algorithms,
        n_runs=args.runs if args.runs is not None else bench['n_runs'],
        base_seed=args.seed if args.seed is not None else bench['base_seed'],
        params=params, out_dir=args.out_dir,
        **_pagerank_kwargs(args, config),
    )
    for name, stats in report['algorithms'].items():
        median = stats['rhv']['median'] if stats['rhv'] else None
        print(f"{name}: 运行 {stats['runs']} 次，RHV 中位数 {median}")
    print(f"报告已保存到: {Path(args.out_dir) / 'report.json'}")
    return 0


def _plan_for_check(args, instance) -> Plan:
    if args.genes is not None:
        return parse_genes(args.genes)
    if args.current:
        if instance.current_plan is None:
            raise PlanError("实例中没有 current_plan")
        return instance.current_plan
    front = read_front_csv(args.plan, instance.total_waste)
    if not 0 <= args.row < len(front) or front[args.row].plan is None:
        raise FrontFormatError(f"{args.plan}: 第 {args.row} 行不存在或没有基因")
    return front[args.row].plan


def cmd_check(args, config: ConfigManager) -> int:
    instance = load_instance(args.instance)
    plan = _plan_for_check(args, instance)
    decoder = args.decoder or config.default_decoder()
    evaluator = PlanEvaluator(instance, decoder)

    if len(plan) != instance.n_sites:
        raise PlanError(f"方案长度 {len(plan)} 与站点数 {instance.n_sites} 不一致")
    genes = plan.genes
    if genes.size and (genes.min() < 0 or genes.max() >= instance.n_configs):
        # 越界基因无法解码，只报告 site_space
        violations = check_constraints(
            instance, plan, Assignment.empty(instance.n_generators, instance.n_sites))
        for v in violations:
            print(v)
        return 1

    assignment = evaluator.decode(instance, plan)
    violations = check_constraints(instance, plan, assignment)
    objectives = evaluate(instance, plan, assignment, debug=False)
    print(json.dumps({
        'genes': plan.to_list(),
        'objectives': objectives.to_dict(),
        'mean_walk': mean_walk(instance, assignment),
        'violations': [str(v) for v in violations],
    }, ensure_ascii=False, indent=2))
    return 1 if violations else 0


COMMANDS = {
    'gen': cmd_gen,
    'solve': cmd_solve,
    'oracle': cmd_oracle,
    'metrics': cmd_metrics,
    'batch': cmd_batch,
    'check': cmd_check,
}


def main(argv: Optional[List[str]] = None) -> int:
    load_env_file()
    args = build_parser().parse_args(argv)
    setup_logging()
    try:
        config = ConfigManager(args.config)
        return COMMANDS[args.command](args, config)
    except GAPSolverException as e:
        print(f"错误: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
