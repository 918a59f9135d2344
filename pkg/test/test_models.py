"""
问题模型测试：配置目录、实例加载与校验、目标函数
"""
import json

import numpy as np
import pytest

from src.models.catalog import enumerate_configs, default_bin_types, default_catalog
from src.models.entities import BinType, Configuration, Objectives, Plan
from src.models.instance import instance_from_dict, instance_to_dict, load_instance, save_instance
from src.models.objectives import evaluate, mean_walk
from src.processors.decoder import Assignment
from src.utils.exceptions import ConstraintViolationError, InstanceLoadError, PlanError

from conftest import SAMPLE_FILE


CATALOG_TRIPLES = [
    (0, 0, 0), (1, 1000, 1), (2, 2000, 2), (3, 3000, 3), (4, 4000, 4), (5, 5000, 5),
    (3, 3000, 3), (5, 5000, 5), (4, 4000, 4), (2, 2000, 2), (5, 5000, 5), (3, 3000, 3),
]


def test_default_catalog_triples():
    catalog = default_catalog()
    assert len(catalog) == 12
    assert [(c.space_used, c.cost, c.capacity) for c in catalog] == CATALOG_TRIPLES
    assert catalog[7].counts == (1, 2, 0)
    assert catalog[0].is_empty


def test_default_cost_tracks_capacity():
    for config in default_catalog():
        assert config.cost == 1000 * config.capacity
        assert config.space_used == config.capacity


def test_enumerate_configs_space_five():
    configs = enumerate_configs(default_bin_types(), 5.0)
    assert len(configs) == 16
    assert configs[0].is_empty
    assert [c.id for c in configs] == list(range(16))
    assert all(c.space_used <= 5.0 for c in configs)
    # 人工目录没有收录的组合
    counts = {c.counts for c in configs}
    assert (2, 1, 0) in counts and (0, 2, 0) in counts


def test_enumerate_configs_respects_max_available():
    limited = [BinType(b.id, b.unit_cost, b.capacity, b.footprint, 1) for b in default_bin_types()]
    configs = enumerate_configs(limited, 5.0)
    assert all(max(c.counts) <= 1 for c in configs)


def test_configuration_from_counts():
    config = Configuration.from_counts(9, (0, 1, 0), default_bin_types())
    assert (config.space_used, config.cost, config.capacity) == (2.0, 2000.0, 2.0)
    with pytest.raises(ValueError):
        Configuration.from_counts(1, (1, 0), default_bin_types())


def test_load_sample_instance(sample_instance):
    inst = sample_instance
    assert inst.name == 'sample'
    assert (inst.n_generators, inst.n_sites, inst.n_configs) == (8, 4, 12)
    assert inst.current_plan == Plan([2, 9, 1, 0])
    assert inst.max_walk == 300.0
    assert inst.total_waste == pytest.approx(10.0)
    # 坐标计算的距离矩阵
    assert inst.distance[0, 0] == pytest.approx(np.hypot(60.0, 40.0))


def test_instance_arrays_are_read_only(sample_instance):
    with pytest.raises(ValueError):
        sample_instance.distance[0, 0] = 1.0


def test_invalid_field_reports_path():
    data = json.loads(SAMPLE_FILE.read_text(encoding='utf-8'))
    data['generators'][3]['waste'] = -1.0
    with pytest.raises(InstanceLoadError, match=r"generators\.3\.waste"):
        instance_from_dict(data)


def test_config_exceeding_space_is_rejected():
    data = json.loads(SAMPLE_FILE.read_text(encoding='utf-8'))
    for site in data['sites']:
        site['space'] = 2.0
    with pytest.raises(InstanceLoadError, match="configs"):
        instance_from_dict(data)


def test_catalog_must_start_with_empty_config():
    data = json.loads(SAMPLE_FILE.read_text(encoding='utf-8'))
    data['configs'][0]['counts'] = [1, 0, 0]
    data['configs'][1]['counts'] = [0, 0, 0]
    with pytest.raises(InstanceLoadError):
        instance_from_dict(data)


def test_counts_by_bin_type_name():
    data = json.loads(SAMPLE_FILE.read_text(encoding='utf-8'))
    data['configs'][7]['counts'] = {'j1': 1, 'j2': 2}
    inst = instance_from_dict(data)
    assert inst.catalog[7].counts == (1, 2, 0)


def test_missing_catalog_falls_back_to_enumeration():
    data = json.loads(SAMPLE_FILE.read_text(encoding='utf-8'))
    del data['configs']
    data.pop('current_plan')
    assert instance_from_dict(data).n_configs == 16


def test_current_plan_out_of_range():
    data = json.loads(SAMPLE_FILE.read_text(encoding='utf-8'))
    data['current_plan'] = [0, 0, 0, 12]
    with pytest.raises(InstanceLoadError):
        instance_from_dict(data)


def test_load_missing_file(tmp_path):
    with pytest.raises(InstanceLoadError):
        load_instance(tmp_path / 'nope.json')


def test_save_then_load(tmp_path, sample_instance):
    path = save_instance(sample_instance, tmp_path / 'copy.json')
    again = load_instance(path)
    assert instance_to_dict(again) == instance_to_dict(sample_instance)
    np.testing.assert_allclose(again.distance, sample_instance.distance)


def test_validate_plan(sample_instance):
    with pytest.raises(PlanError):
        sample_instance.validate_plan(Plan([0, 0, 0]))
    with pytest.raises(PlanError):
        sample_instance.validate_plan(Plan([0, 0, 0, 12]))
    sample_instance.validate_plan(Plan([11, 0, 0, 0]))


def test_allowed_configs_follow_site_space(make_instance):
    inst = make_instance([1.0], [[10.0, 10.0]], space=[5.0, 2.0])
    assert inst.allowed_configs[0].tolist() == list(range(12))
    assert inst.allowed_configs[1].tolist() == [0, 1, 2, 9]


def test_nearest_site_ties_to_lowest_id(make_instance):
    inst = make_instance([1.0, 1.0], [[20.0, 20.0], [400.0, 500.0]])
    assert inst.nearest_site.tolist() == [0, -1]


def test_evaluate_single_site(make_instance):
    inst = make_instance([2.0], [[10.0]])
    plan = Plan([9])
    objectives = evaluate(inst, plan, Assignment.from_dense([[1.0]]), debug=False)
    assert (objectives.volume_collected, objectives.distance, objectives.cost) == (2.0, 10.0, 2000.0)
    assert objectives.uncollected == 0.0


def test_evaluate_shared_site_uses_fraction_weighted_distance(make_instance):
    inst = make_instance([1.5, 1.5], [[5.0], [15.0]])
    assignment = Assignment.from_dense([[2 / 3], [2 / 3]])
    objectives = evaluate(inst, Plan([9]), assignment, debug=False)
    assert objectives.volume_collected == pytest.approx(2.0)
    assert objectives.distance == pytest.approx(40 / 3)
    assert objectives.cost == 2000.0
    assert objectives.minimization == pytest.approx((1.0, 40 / 3, 2000.0))
    # 按体积加权的平均步行距离
    assert mean_walk(inst, assignment) == pytest.approx(10.0)


def test_mean_walk_without_collection(make_instance):
    inst = make_instance([1.0], [[10.0]])
    assert mean_walk(inst, Assignment.empty(1, 1)) is None


def test_evaluate_debug_rejects_violation(make_instance):
    inst = make_instance([1.0], [[10.0]])
    with pytest.raises(ConstraintViolationError) as excinfo:
        evaluate(inst, Plan([1]), Assignment.from_dense([[1.2]]), debug=True)
    names = {v.constraint for v in excinfo.value.violations}
    assert 'generator_total' in names


def test_evaluate_debug_from_environment(make_instance, monkeypatch):
    inst = make_instance([1.0], [[10.0]])
    monkeypatch.setenv('GAP_DEBUG', 'true')
    with pytest.raises(ConstraintViolationError):
        evaluate(inst, Plan([0]), Assignment.from_dense([[1.0]]))


def test_evaluate_dimension_mismatch(make_instance):
    inst = make_instance([1.0], [[10.0]])
    with pytest.raises(PlanError):
        evaluate(inst, Plan([1]), Assignment.empty(2, 1), debug=False)


def test_objectives_to_dict():
    data = Objectives(3.0, 12.5, 2000.0, 5.0).to_dict()
    assert data == {'volume_collected': 3.0, 'distance': 12.5, 'cost': 2000.0,
                    'total_waste': 5.0, 'uncollected': 2.0}
