"""
前沿与质量指标测试：非支配过滤、超体积、RHV、spread、最佳折中解、改进报告、CSV读写
"""
import itertools

import numpy as np
import pytest

from src.metrics.hypervolume import hypervolume
from src.metrics.pareto import Front, FrontPoint, non_dominated_mask, reference_front
from src.metrics.quality import best_compromise, improvement_report, rhv, spread
from src.models.entities import Objectives, Plan
from src.processors.converters import (
    front_from_records, parse_genes, read_front_csv, write_front_csv,
)
from src.utils.exceptions import FrontFormatError


def _hv_inclusion_exclusion(points, ref):
    """逐子集容斥计算超体积，点数较少时作为对照"""
    points = np.asarray(points, dtype=float)
    ref = np.asarray(ref, dtype=float)
    total = 0.0
    for size in range(1, len(points) + 1):
        for subset in itertools.combinations(range(len(points)), size):
            corner = points[list(subset)].max(axis=0)
            total += (-1) ** (size + 1) * np.prod(np.clip(ref - corner, 0.0, None))
    return total


def _point(volume, distance, cost, total=1.0, genes=None, label=None):
    plan = Plan(genes) if genes is not None else None
    return FrontPoint(Objectives(volume, distance, cost, total), plan, label)


# 最小化形式分别为 (0,1,1)、(1,0,1)、(1,1,0)
P1 = _point(1.0, 1.0, 1.0)
P2 = _point(0.0, 0.0, 1.0)
P3 = _point(0.0, 1.0, 0.0)


def test_hypervolume_single_points():
    assert hypervolume([[0.0, 0.0, 0.0]], [1.0, 1.0, 1.0]) == pytest.approx(1.0)
    assert hypervolume([[0.0, 0.0, 0.5]], [1.0, 1.0, 1.0]) == pytest.approx(0.5)
    assert hypervolume([], [1.0, 1.0, 1.0]) == 0.0


def test_hypervolume_two_dimensions():
    assert hypervolume([[0.0, 0.5], [0.5, 0.0]], [1.0, 1.0]) == pytest.approx(0.75)


def test_hypervolume_ignores_points_outside_reference():
    assert hypervolume([[0.0, 0.0, 0.5], [2.0, 0.0, 0.0]], [1.0, 1.0, 1.0]) == pytest.approx(0.5)


def test_hypervolume_three_half_cubes():
    points = [[0.0, 0.5, 0.5], [0.5, 0.0, 0.5], [0.5, 0.5, 0.0]]
    assert hypervolume(points, [1.0, 1.0, 1.0]) == pytest.approx(0.5)


def test_hypervolume_matches_inclusion_exclusion():
    rng = np.random.default_rng(7)
    ref = [1.01, 1.01, 1.01]
    for _ in range(200):
        points = rng.random((int(rng.integers(1, 11)), 3))
        assert hypervolume(points, ref) == pytest.approx(_hv_inclusion_exclusion(points, ref), rel=1e-12)


def test_hypervolume_with_duplicates_and_dominated_points():
    points = [[0.2, 0.2, 0.2], [0.2, 0.2, 0.2], [0.5, 0.5, 0.5]]
    assert hypervolume(points, [1.0, 1.0, 1.0]) == pytest.approx(0.8 ** 3)


def test_front_filters_and_sorts():
    dominated = _point(0.5, 1.0, 1.0)
    duplicate = _point(1.0, 1.0, 1.0, label='copy')
    front = Front([P1, dominated, P2, duplicate, P3])
    assert len(front) == 3
    # 按 (成本, 距离, 未收集量) 排序
    assert [p.vector for p in front] == [(1.0, 1.0, 0.0), (1.0, 0.0, 1.0), (0.0, 1.0, 1.0)]
    assert all(p.label is None for p in front)


def test_non_dominated_mask_matches_brute_force():
    rng = np.random.default_rng(1)
    matrix = np.round(rng.random((1500, 3)), 2)
    le = (matrix[:, None, :] <= matrix[None, :, :]).all(axis=2)
    lt = (matrix[:, None, :] < matrix[None, :, :]).any(axis=2)
    expected = ~(le & lt).any(axis=0)
    np.testing.assert_array_equal(non_dominated_mask(matrix), expected)


def test_reference_front_is_union():
    reference = reference_front([Front([P1]), Front([P2, _point(0.0, 2.0, 2.0)]), Front([P3])])
    assert len(reference) == 3


def test_rhv_bounds():
    reference = Front([P1, P2, P3])
    assert rhv(reference, reference) == pytest.approx(1.0)
    partial = rhv(Front([P1, P2]), reference)
    assert 0.0 < partial < 1.0
    assert rhv(Front([]), reference) == 0.0
    assert rhv(reference, Front([])) is None


def test_rhv_value():
    reference = Front([P1, P2, P3])
    ref = [1.01, 1.01, 1.01]
    full = _hv_inclusion_exclusion([[0, 1, 1], [1, 0, 1], [1, 1, 0]], ref)
    part = _hv_inclusion_exclusion([[0, 1, 1], [1, 0, 1]], ref)
    assert rhv(Front([P1, P2]), reference) == pytest.approx(part / full)


def test_spread_values():
    reference = Front([P1, P2, P3])
    assert spread(reference, reference) == pytest.approx(0.0)
    assert spread(Front([P1, P2]), reference) == pytest.approx(1.0 / 3.0)
    assert spread(Front([P1]), reference) is None


def test_spread_is_permutation_invariant():
    reference = Front([P1, P2, P3, _point(0.5, 0.5, 0.5)])
    shuffled = Front([P3, _point(0.5, 0.5, 0.5), P1])
    ordered = Front([P1, P3, _point(0.5, 0.5, 0.5)])
    assert spread(shuffled, reference) == pytest.approx(spread(ordered, reference))


def test_best_compromise_prefers_lower_cost_on_tie():
    a = _point(10.0, 0.0, 1.0, total=10.0)
    b = _point(10.0, 1.0, 0.0, total=10.0)
    front = Front([a, b])
    assert best_compromise(front, front) is b
    assert best_compromise(Front([]), front) is None


def test_best_compromise_closest_to_ideal():
    middle = _point(0.5, 0.5, 0.5)
    front = Front([P1, P2, P3, middle])
    assert best_compromise(front, front) is middle


def test_improvement_report():
    heuristic = Objectives(10.0, 100.0, 5000.0, 10.0)
    front = Front([
        _point(10.0, 80.0, 4000.0, total=10.0),
        _point(8.0, 50.0, 1000.0, total=10.0),
        _point(10.0, 120.0, 4500.0, total=10.0),
    ])
    report = improvement_report(front, heuristic)
    assert report['n_members'] == 1
    assert report['distance']['average'] == pytest.approx(20.0)
    assert report['cost']['best'] == pytest.approx(20.0)
    assert report['volume']['average'] == pytest.approx(0.0)


def test_improvement_report_without_members():
    heuristic = Objectives(10.0, 100.0, 5000.0, 10.0)
    assert improvement_report(Front([_point(10.0, 150.0, 6000.0, total=10.0)]), heuristic) is None


def test_front_csv_round_trip(tmp_path):
    front = Front([_point(1.0, 0.1 + 0.2, 3000.0, genes=[3, 0, 11]), P2])
    path = write_front_csv(front, tmp_path / 'front.csv')
    text = (tmp_path / 'front.csv').read_text(encoding='utf-8')
    assert text.splitlines()[0] == 'cost,distance,volume,genes'
    again = read_front_csv(path, total_waste=1.0)
    assert [p.vector for p in again] == [p.vector for p in front]
    assert again[0].plan is None
    assert again[1].plan == Plan([3, 0, 11])


def test_read_front_csv_missing_column(tmp_path):
    path = tmp_path / 'bad.csv'
    path.write_text('cost,volume\n1.0,2.0\n', encoding='utf-8')
    with pytest.raises(FrontFormatError):
        read_front_csv(path)


def test_front_from_records_defaults_total_to_max_volume():
    front = front_from_records([{'cost': 1.0, 'distance': 2.0, 'volume': 3.0, 'genes': '1 2'},
                                {'cost': 0.0, 'distance': 0.0, 'volume': 1.0}])
    assert front[0].objectives.total_waste == 3.0
    assert [p.plan for p in front] == [None, Plan([1, 2])]


def test_parse_genes():
    assert parse_genes("0 3, 11 2") == Plan([0, 3, 11, 2])
    with pytest.raises(FrontFormatError):
        parse_genes("1 x")
