"""
测试公共设施：项目根目录加入 sys.path、构造小实例的工具、slow 标记
"""
import sys
from pathlib import Path

import numpy as np
import pytest

PROJECT_ROOT = Path(__file__).parent.parent
sys.path.insert(0, str(PROJECT_ROOT))

from src.bench.scenario import generate_instance, get_scenario  # noqa: E402
from src.models.catalog import default_bin_types, default_catalog  # noqa: E402
from src.models.entities import BinType, Generator, Site  # noqa: E402
from src.models.instance import Instance, load_instance  # noqa: E402

SAMPLE_FILE = PROJECT_ROOT / 'data' / 'sample.json'


def pytest_addoption(parser):
    parser.addoption('--runslow', action='store_true', default=False, help="运行耗时较长的验收用例")


def pytest_configure(config):
    config.addinivalue_line('markers', 'slow: 耗时较长的验收用例，需要 --runslow')


def pytest_collection_modifyitems(config, items):
    if config.getoption('--runslow'):
        return
    skip_slow = pytest.mark.skip(reason="需要 --runslow")
    for item in items:
        if 'slow' in item.keywords:
            item.add_marker(skip_slow)


def build_instance(waste, distance, space=5.0, catalog=None, bin_types=None, max_walk=300.0,
                   site_distance=None, current_plan=None, name="test"):
    """
    按显式距离矩阵构造实例（坐标均为0，站点间距离默认全为0）

    Args:
        waste: 每个产生点的垃圾量
        distance: N×M 距离矩阵
        space: 站点可用面积（标量或长度为 M 的序列）
    """
    distance = np.asarray(distance, dtype=float).reshape(len(waste), -1)
    m = distance.shape[1]
    spaces = np.broadcast_to(np.asarray(space, dtype=float), (m,))
    generators = [Generator(p, 0.0, 0.0, float(w)) for p, w in enumerate(waste)]
    sites = [Site(i, 0.0, 0.0, float(s)) for i, s in enumerate(spaces)]
    bin_types = bin_types or default_bin_types()
    if catalog is None:
        catalog = default_catalog(bin_types)
    if site_distance is None:
        site_distance = np.zeros((m, m))
    return Instance.build(generators, sites, bin_types, catalog, distance=distance,
                          site_distance=site_distance, max_walk=max_walk,
                          current_plan=current_plan, name=name)


@pytest.fixture
def make_instance():
    return build_instance


@pytest.fixture(scope='session')
def sample_instance():
    return load_instance(SAMPLE_FILE)


@pytest.fixture(scope='session')
def toy_instance():
    return generate_instance(get_scenario('toy-1'))


@pytest.fixture
def log_dir(tmp_path, monkeypatch):
    path = tmp_path / 'logs'
    monkeypatch.setenv('GAP_LOG_DIR', str(path))
    return path


@pytest.fixture
def stock_instance():
    """j1 全局只有一个可用的 6×4 实例"""
    bin_types = [BinType('j1', 1000.0, 1.0, 1.0, max_available=1),
                 BinType('j2', 2000.0, 2.0, 2.0), BinType('j3', 3000.0, 3.0, 3.0)]
    waste = [2.0, 1.5, 3.0, 2.5, 1.0, 2.0]
    distance = [[10.0, 40.0, 90.0, 150.0],
                [30.0, 20.0, 80.0, 120.0],
                [60.0, 15.0, 50.0, 100.0],
                [100.0, 70.0, 25.0, 60.0],
                [140.0, 90.0, 45.0, 20.0],
                [200.0, 150.0, 80.0, 35.0]]
    return build_instance(waste, distance, bin_types=bin_types, name="stock")
