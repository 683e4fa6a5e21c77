"""
Shared pytest fixtures for polymax

Acceptance-scale runs carry the ``slow`` marker and only run with
``--runslow``.
"""

import sys
from pathlib import Path

import pytest

project_root = Path(__file__).parent
sys.path.insert(0, str(project_root))

from src.config.settings import update_config
from src.constructions.generators import gen_figure4_counterexample
from src.geometry.polygon import Polygon


def pytest_addoption(parser):
    parser.addoption("--runslow", action="store_true", default=False, help="run acceptance-scale tests")


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: acceptance-scale run, needs --runslow")


def pytest_collection_modifyitems(config, items):
    if config.getoption("--runslow"):
        return
    skip_slow = pytest.mark.skip(reason="needs --runslow")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip_slow)


@pytest.fixture
def figure4():
    """(heptagon, triangle) counterexample pair"""
    return gen_figure4_counterexample()


@pytest.fixture
def unit_square():
    return Polygon.from_coordinates([(0, 0), (1, 0), (1, 1), (0, 1)])


@pytest.fixture
def disjoint_triangles():
    return (
        Polygon.from_coordinates([(0, 0), (2, 0), (1, 2)]),
        Polygon.from_coordinates([(10, 10), (12, 10), (11, 12)]),
    )


@pytest.fixture
def restore_config():
    """Undo update_config calls made by a test"""
    from src.config import settings

    saved = settings._active
    yield update_config
    settings._active = saved
