"""
PageRank 站点排序与构造式启发式测试
"""
import numpy as np
import pytest

from src.algorithms.heuristics import pr_cost, pr_dist, pr_mo, pr_vol, pr_weighted, weight_grid
from src.algorithms.pagerank import (
    RankGraph, Ranking, build_graph, pagerank, rank_sites, site_demand, transition_matrix,
)
from src.bench.scenario import generate_instance, get_scenario, load_scenarios
from src.metrics.pareto import dominates
from src.models.entities import Plan
from src.models.objectives import evaluate
from src.processors.constraints import check_constraints
from src.processors.decoder import decode_greedy
from src.utils.exceptions import InvalidParameterError


def _graph(weights, demand=None):
    weights = np.asarray(weights, dtype=float)
    n = weights.shape[0]
    demand = np.zeros(n) if demand is None else np.asarray(demand, dtype=float)
    return RankGraph(np.arange(n, dtype=np.int64), demand, weights)


def test_single_vertex_scores_one_minus_damping():
    ranking = pagerank(_graph([[0.0]]))
    assert ranking.converged
    assert ranking.scores[0] == pytest.approx(0.15)
    assert ranking.order.tolist() == [0]


def test_three_vertex_matches_linear_solve():
    graph = _graph([[0.0, 4.0, 1.0], [4.0, 0.0, 2.0], [1.0, 2.0, 0.0]])
    d = 0.85
    ranking = pagerank(graph, damping=d, tol=1e-13, max_iter=5000)
    transition = transition_matrix(graph)
    expected = np.linalg.solve(np.eye(3) - d * transition, np.full(3, 1.0 - d))
    np.testing.assert_allclose(ranking.scores, expected, rtol=1e-9)
    assert ranking.order.tolist() == list(np.argsort(-expected, kind='stable'))


def test_transition_columns_are_stochastic():
    graph = _graph([[0.0, 4.0, 1.0], [4.0, 0.0, 2.0], [1.0, 2.0, 0.0]])
    np.testing.assert_allclose(transition_matrix(graph).sum(axis=0), np.ones(3))


def test_isolated_vertex_column_is_zero():
    transition = transition_matrix(_graph([[0.0, 1.0, 0.0], [1.0, 0.0, 0.0], [0.0, 0.0, 0.0]]))
    assert transition[:, 2].tolist() == [0.0, 0.0, 0.0]


def test_max_iter_reached_returns_unconverged():
    ranking = pagerank(_graph([[0.0]]), max_iter=1)
    assert not ranking.converged
    assert ranking.iterations == 1


def test_invalid_damping():
    with pytest.raises(InvalidParameterError):
        pagerank(_graph([[0.0]]), damping=1.5)


def test_ties_ordered_by_site_id(make_instance):
    inst = make_instance([1.0, 1.0], [[10.0, 50.0], [50.0, 10.0]])
    ranking = rank_sites(inst)
    assert ranking.scores[0] == pytest.approx(ranking.scores[1])
    assert ranking.order_ids(inst) == [0, 1]


def test_graph_from_sample(sample_instance):
    graph = build_graph(sample_instance)
    assert graph.n_vertices == 4
    assert graph.demand.sum() == pytest.approx(sample_instance.total_waste)
    np.testing.assert_allclose(graph.weights, graph.weights.T)
    assert np.all(np.diag(graph.weights) == 0.0)


def test_site_demand_uses_nearest_reachable_site(make_instance):
    inst = make_instance([1.0, 2.0, 4.0], [[20.0, 10.0], [5.0, 5.0], [400.0, 500.0]])
    np.testing.assert_allclose(site_demand(inst), [2.0, 1.0])


def test_heavier_site_ranks_first(make_instance):
    inst = make_instance([1.0, 5.0, 0.5], [[10.0, 200.0, 200.0], [200.0, 10.0, 200.0],
                                          [200.0, 200.0, 10.0]],
                         site_distance=[[0.0, 100.0, 100.0], [100.0, 0.0, 100.0],
                                        [100.0, 100.0, 0.0]])
    assert rank_sites(inst).order_ids(inst)[0] == 1


def test_pr_vol_single_site(make_instance):
    inst = make_instance([2.5], [[10.0]])
    assert pr_vol(inst) == Plan([3])


def test_pr_vol_without_waste_installs_nothing(make_instance):
    inst = make_instance([0.0, 0.0], [[10.0, 20.0], [20.0, 10.0]])
    assert pr_vol(inst) == Plan([0, 0])


def test_pr_cost_picks_cheapest_cover(make_instance):
    inst = make_instance([1.8], [[10.0]])
    assert pr_cost(inst) == Plan([2])


def test_pr_cost_spills_demand_to_next_site(make_instance):
    # 需求 7 超过单站最大容量 5，剩余的 2 由下一个站点覆盖
    inst = make_instance([7.0], [[10.0, 20.0]])
    assert pr_cost(inst) == Plan([5, 2])


def test_pr_dist_installs_every_site(sample_instance):
    plan = pr_dist(sample_instance)
    capacities = sample_instance.config_capacities
    assert all(capacities[g] > 0 for g in plan.genes)


def test_pr_weighted_cost_only_installs_nothing(sample_instance):
    assert pr_weighted(sample_instance, (1.0, 0.0, 0.0)) == Plan([0, 0, 0, 0])


def test_pr_weighted_volume_only_matches_pr_vol(sample_instance):
    assert pr_weighted(sample_instance, (0.0, 0.0, 1.0)) == pr_vol(sample_instance)


def test_weight_grid():
    grid = weight_grid()
    assert len(grid) == 66
    assert len(set(grid)) == 66
    assert all(sum(w) == pytest.approx(1.0) for w in grid)


def test_pr_mo_front_is_non_dominated(sample_instance):
    front = pr_mo(sample_instance)
    assert 1 <= len(front) <= 66
    vectors = [p.vector for p in front]
    for a in vectors:
        assert not any(dominates(b, a) for b in vectors)
    assert all(p.label.startswith('alpha=') for p in front)
    # 纯成本权重得到的空方案总在前沿上
    assert any(p.objectives.cost == 0.0 for p in front)


def test_heuristics_are_deterministic(toy_instance):
    for heuristic in (pr_vol, pr_dist, pr_cost):
        assert heuristic(toy_instance) == heuristic(toy_instance)
    first = [p.vector for p in pr_mo(toy_instance)]
    second = [p.vector for p in pr_mo(toy_instance)]
    assert first == second


def test_random_graph_matches_linear_solve():
    rng = np.random.default_rng(20)
    d = 0.85
    for _ in range(20):
        weights = np.triu(rng.uniform(0.0, 10.0, size=(20, 20)), k=1)
        weights = weights + weights.T
        graph = _graph(weights)
        ranking = pagerank(graph, damping=d, tol=1e-12, max_iter=5000)
        assert ranking.converged
        expected = np.linalg.solve(np.eye(20) - d * transition_matrix(graph), np.full(20, 1.0 - d))
        np.testing.assert_allclose(ranking.scores, expected, rtol=1e-8)


@pytest.mark.parametrize('name', sorted(load_scenarios()))
def test_bundled_scenarios_converge(name):
    ranking = rank_sites(generate_instance(get_scenario(name)))
    assert ranking.converged
    assert ranking.iterations <= 1000


def test_pr_dist_installs_at_nearest_site(make_instance):
    inst = make_instance([1.0], [[10.0, 200.0]])
    plan = pr_dist(inst)
    assert inst.config_capacities[plan[0]] > 0
    objectives = evaluate(inst, plan, decode_greedy(inst, plan), debug=False)
    assert objectives.volume_collected == pytest.approx(1.0)
    assert objectives.distance == pytest.approx(10.0)


def test_pr_dist_without_waste_installs_nothing(make_instance):
    inst = make_instance([0.0], [[10.0, 20.0, 30.0]])
    assert pr_dist(inst) == Plan([0, 0, 0])


def test_pr_weighted_with_distance_weight_scans_all_sites(make_instance):
    inst = make_instance([1.0], [[200.0, 10.0]])
    ranking = Ranking(np.array([2.0, 1.0]), np.array([0, 1]))
    # 第一个站点就收集了全部垃圾；只看收集量时提前停止，带距离权重时继续扫描到更近的站点
    assert pr_weighted(inst, (0.0, 0.0, 1.0), ranking) == Plan([1, 0])
    assert pr_weighted(inst, (0.0, 0.5, 0.5), ranking) == Plan([1, 1])


@pytest.mark.parametrize('heuristic', [pr_vol, pr_dist, pr_cost])
def test_heuristics_respect_bin_stock(stock_instance, heuristic):
    plan = heuristic(stock_instance)
    assert check_constraints(stock_instance, plan, decode_greedy(stock_instance, plan)) == []


def test_pr_mo_respects_bin_stock(stock_instance):
    for point in pr_mo(stock_instance):
        assert check_constraints(stock_instance, point.plan,
                                 decode_greedy(stock_instance, point.plan)) == []
