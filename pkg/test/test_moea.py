"""
多目标进化算法测试：算子、排序、NSGA-II、SPEA2、求解器管理器
"""
import numpy as np
import pytest

from src.algorithms.nsga2 import NSGA2Solver, nsga2
from src.algorithms.operators import (
    EAParams, PlanEvaluator, RandomStreams, crossover_2px, init_population, mutate_reset,
    sample_genes,
)
from src.algorithms.sorting import (
    crowding_distance, non_dominated_sort, strength_fitness, truncate_archive,
)
from src.algorithms.spea2 import SPEA2Solver, spea2
from src.metrics.pareto import dominates
from src.models.entities import Plan
from src.models.objectives import evaluate
from src.processors.constraints import BinStock, check_constraints
from src.processors.decoder import decode_greedy
from src.solver_manager import SolverManager
from src.utils.exceptions import AlgorithmNotSupportedError, InvalidParameterError, PlanError

SMALL = dict(pop_size=20, generations=15, elite_size=6)


def test_crossover_with_fixed_cuts():
    a, b = crossover_2px(Plan([1, 1, 1, 1]), Plan([2, 2, 2, 2]), np.random.default_rng(0), cuts=(1, 3))
    assert a == Plan([1, 2, 2, 1])
    assert b == Plan([2, 1, 1, 2])


def test_crossover_keeps_genes_per_position():
    rng = np.random.default_rng(4)
    pa, pb = Plan([0, 1, 2, 3, 4, 5]), Plan([6, 7, 8, 9, 10, 11])
    for _ in range(50):
        a, b = crossover_2px(pa, pb, rng)
        for i in range(6):
            assert {a[i], b[i]} == {pa[i], pb[i]}


def test_crossover_length_mismatch():
    with pytest.raises(PlanError):
        crossover_2px(Plan([1, 2]), Plan([1]), np.random.default_rng(0))


def test_mutation_rate():
    rng = np.random.default_rng(123)
    allowed = [np.arange(12)] * 10
    plan = Plan.zeros(10)
    trials = 10_000
    changed = sum(int((mutate_reset(plan, 0.01, rng, allowed).genes != 0).sum()) for _ in range(trials))
    # 重新抽到原配置的概率为 1/12
    p = 0.01 * 11 / 12
    expected = trials * 10 * p
    sigma = np.sqrt(trials * 10 * p * (1 - p))
    assert abs(changed - expected) <= 3 * sigma


def test_mutation_respects_allowed_configs():
    rng = np.random.default_rng(9)
    allowed = [np.array([0, 1, 2, 9])] * 5
    for _ in range(200):
        genes = mutate_reset(Plan.zeros(5), 1.0, rng, allowed).genes
        assert set(genes.tolist()) <= {0, 1, 2, 9}


def test_init_population_uses_allowed_configs(make_instance):
    inst = make_instance([1.0], [[10.0, 10.0]], space=[5.0, 2.0])
    population = init_population(inst, EAParams(pop_size=50, seed=1), np.random.default_rng(1))
    assert len(population) == 50
    assert all(ind.plan[1] in (0, 1, 2, 9) for ind in population)


def test_ea_params_validation():
    with pytest.raises(InvalidParameterError):
        EAParams(pop_size=1)
    with pytest.raises(InvalidParameterError):
        EAParams(p_mutation=1.5)
    with pytest.raises(InvalidParameterError):
        EAParams(decoder='lp')


def test_random_streams_are_reproducible():
    first, second = RandomStreams(42), RandomStreams(42)
    assert first.init.integers(0, 1000, 5).tolist() == second.init.integers(0, 1000, 5).tolist()
    assert first.mutation.random() == second.mutation.random()
    other = RandomStreams(42)
    assert other.init.integers(0, 2**32, 4).tolist() != other.selection.integers(0, 2**32, 4).tolist()


def test_evaluator_matches_evaluate_and_caches(toy_instance):
    evaluator = PlanEvaluator(toy_instance)
    rng = np.random.default_rng(2)
    genes = np.array([toy_instance.allowed_configs[i][rng.integers(0, 12)]
                      for i in range(toy_instance.n_sites)])
    batch = np.vstack([genes, genes])
    objectives = evaluator.evaluate_genes(batch)
    assert evaluator.n_evaluations == 1
    plan = Plan(genes)
    expected = evaluate(toy_instance, plan, decode_greedy(toy_instance, plan), debug=False)
    assert objectives[0].volume_collected == pytest.approx(expected.volume_collected)
    assert objectives[0].distance == pytest.approx(expected.distance)
    assert objectives[1].cost == pytest.approx(expected.cost)
    evaluator.evaluate_genes(genes)
    assert evaluator.n_evaluations == 1


def test_evaluator_rejects_out_of_range(toy_instance):
    with pytest.raises(PlanError):
        PlanEvaluator(toy_instance).evaluate_genes(np.full(toy_instance.n_sites, 12))


def test_non_dominated_sort_levels():
    matrix = np.array([[0, 1, 0], [1, 0, 0], [2, 2, 0], [3, 3, 0], [2, 2, 0]], dtype=float)
    assert non_dominated_sort(matrix) == [[0, 1], [2, 4], [3]]


def test_crowding_distance_collinear():
    distance = crowding_distance(np.array([[0, 0, 0], [1, 1, 1], [2, 2, 2]], dtype=float))
    assert np.isinf(distance[0]) and np.isinf(distance[2])
    assert distance[1] == pytest.approx(3.0)


def test_crowding_distance_flat_objective():
    distance = crowding_distance(np.array([[0, 5, 0], [1, 5, 1], [2, 5, 2], [4, 5, 4]], dtype=float))
    assert distance[1] == pytest.approx(1.0)
    assert distance[2] == pytest.approx(1.5)


def test_strength_fitness_raw_values():
    matrix = np.array([[0, 1], [1, 0], [2, 2], [3, 3]], dtype=float)
    scores = strength_fitness(matrix)
    assert scores.strength.tolist() == [2, 2, 1, 0]
    assert scores.raw.tolist() == [0, 0, 4, 5]
    assert np.all((scores.density > 0) & (scores.density < 0.5))


def test_truncate_archive_drops_crowded_duplicate():
    matrix = np.array([[0, 0], [0.5, 0.5], [0.5, 0.5], [1, 1]])
    assert truncate_archive(matrix, 3) == [0, 1, 3]


def test_truncate_archive_keeps_boundary():
    matrix = np.array([[0.0, 1.0], [0.1, 0.9], [0.5, 0.5], [0.55, 0.45], [1.0, 0.0]])
    kept = truncate_archive(matrix, 3)
    assert 0 in kept and 4 in kept
    assert len(kept) == 3


def _assert_valid_front(front, instance):
    assert len(front) >= 1
    vectors = [p.vector for p in front]
    for a in vectors:
        assert not any(dominates(b, a) for b in vectors)
    for point in front:
        assert len(point.plan) == instance.n_sites
        instance.validate_plan(point.plan)


@pytest.mark.parametrize('algorithm', [nsga2, spea2])
def test_moea_front_is_valid(toy_instance, algorithm):
    front = algorithm(toy_instance, EAParams(seed=3, **SMALL))
    _assert_valid_front(front, toy_instance)


@pytest.mark.parametrize('algorithm', [nsga2, spea2])
def test_moea_is_deterministic(toy_instance, algorithm):
    params = EAParams(seed=11, **SMALL)
    first = algorithm(toy_instance, params).to_records()
    second = algorithm(toy_instance, params).to_records()
    assert first == second


def test_nsga2_keeps_objective_minima(toy_instance):
    solver = NSGA2Solver(toy_instance, EAParams(seed=5, pop_size=20, generations=30))
    solver.solve()
    minima = np.array([record.minima for record in solver.history])
    assert minima.shape == (31, 3)
    assert np.all(np.diff(minima, axis=0) <= 1e-12)


def test_spea2_archive_bounded(toy_instance):
    solver = SPEA2Solver(toy_instance, EAParams(seed=5, pop_size=20, generations=20, elite_size=4))
    front = solver.solve()
    assert len(solver.history) == 20
    assert all(1 <= record.nd_count <= 4 for record in solver.history)
    assert len(front) <= 4


def test_zero_generations_returns_initial_front(toy_instance):
    front = nsga2(toy_instance, EAParams(seed=1, pop_size=10, generations=0))
    _assert_valid_front(front, toy_instance)


def test_moea_with_exact_decoder(make_instance):
    inst = make_instance([1.0, 1.0], [[10.0, 20.0], [10.0, 100.0]])
    front = nsga2(inst, EAParams(seed=2, pop_size=10, generations=5, decoder='exact'))
    _assert_valid_front(front, inst)


def test_solver_manager_dispatch(toy_instance):
    manager = SolverManager()
    assert manager.list_algorithms() == ['nsga2', 'spea2', 'pr-vol', 'pr-dist', 'pr-cost', 'pr-mo']
    result = manager.solve('pr-vol', toy_instance)
    assert len(result.front) == 1 and result.front[0].label == 'pr-vol'
    assert result.meta()['nd_count'] == 1
    result = manager.solve('spea2', toy_instance, EAParams(seed=1, **SMALL))
    assert result.params['seed'] == 1
    assert len(result.history) == SMALL['generations']
    with pytest.raises(AlgorithmNotSupportedError):
        manager.solve('moead', toy_instance)


def test_solver_manager_caches_ranking(toy_instance):
    manager = SolverManager()
    assert manager.get_ranking(toy_instance) is manager.get_ranking(toy_instance)
    assert manager.get_ranking(toy_instance, damping=0.5) is not manager.get_ranking(toy_instance)
    manager.clear_cache()


def test_init_population_same_seed_same_genes(toy_instance):
    params = EAParams(pop_size=30, seed=8)
    first = init_population(toy_instance, params, RandomStreams(8).init)
    second = init_population(toy_instance, params, RandomStreams(8).init)
    assert [ind.plan for ind in first] == [ind.plan for ind in second]
    third = init_population(toy_instance, params, RandomStreams(9).init)
    assert [ind.plan for ind in first] != [ind.plan for ind in third]


def test_init_population_gene_histogram_is_uniform(make_instance):
    inst = make_instance([1.0], [[10.0] * 10])
    population = init_population(inst, EAParams(pop_size=100, seed=3), np.random.default_rng(3))
    genes = np.array([ind.plan.genes for ind in population]).ravel()
    observed = np.bincount(genes, minlength=12)
    expected = genes.size / 12
    chi_square = float(((observed - expected) ** 2 / expected).sum())
    # 自由度 11，显著性 0.001 的临界值
    assert chi_square < 31.26


def _brute_force_levels(matrix):
    points = [tuple(row) for row in matrix]
    level = {}
    for i in sorted(range(len(points)), key=lambda k: points[k]):
        above = [level[j] for j in level if dominates(points[j], points[i])]
        level[i] = 1 + max(above) if above else 0
    fronts = [[] for _ in range(max(level.values()) + 1)]
    for i in sorted(level):
        fronts[level[i]].append(i)
    return fronts


def test_non_dominated_sort_matches_brute_force():
    rng = np.random.default_rng(50)
    for _ in range(1000):
        # 取值离散化以产生大量相等分量与重复点
        matrix = rng.integers(0, 6, size=(50, 3)).astype(float)
        assert non_dominated_sort(matrix) == _brute_force_levels(matrix)


def _assert_feasible(instance, plan):
    assert check_constraints(instance, plan, decode_greedy(instance, plan)) == []


def test_sample_genes_respects_bin_stock(stock_instance):
    stock = BinStock(stock_instance)
    genes = sample_genes(stock_instance, np.random.default_rng(1), 500)
    assert stock.feasible_rows(genes).all()
    # j1 仍然会被用到
    assert (stock_instance.config_counts[genes][:, :, 0].sum(axis=1) == 1).any()


def test_bin_stock_repair(stock_instance):
    stock = BinStock(stock_instance)
    rng = np.random.default_rng(4)
    for genes in ([5, 5, 1, 0], [6, 7, 8, 2], [1, 1, 1, 1]):
        repaired = stock.repair(np.array(genes), rng)
        assert stock.feasible_rows(repaired).all()
        assert all(g in stock_instance.allowed_configs[i] for i, g in enumerate(repaired))
    feasible = np.array([1, 9, 11, 10], dtype=np.int64)
    assert stock.repair(feasible, rng) is feasible


def test_mutation_respects_bin_stock(stock_instance):
    stock = BinStock(stock_instance)
    rng = np.random.default_rng(6)
    plan = Plan([1, 9, 0, 11])
    for _ in range(200):
        plan = mutate_reset(plan, 0.5, rng, stock_instance.allowed_configs, stock)
        assert stock.feasible_rows(plan.genes).all()


@pytest.mark.parametrize('algorithm', [nsga2, spea2])
def test_moea_front_respects_bin_stock(stock_instance, algorithm):
    front = algorithm(stock_instance, EAParams(seed=7, pop_size=20, generations=20, elite_size=6))
    _assert_valid_front(front, stock_instance)
    for point in front:
        _assert_feasible(stock_instance, point.plan)
