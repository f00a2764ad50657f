from __future__ import annotations

from dataclasses import replace
from functools import lru_cache

import pytest

from diagram_maxgroups.config import RunConfig
from diagram_maxgroups.green import DClassData, dclass_data
from diagram_maxgroups.monoids import MonoidHandle, make_handle


def pytest_addoption(parser: pytest.Parser) -> None:
    parser.addoption("--runslow", action="store_true", default=False, help="roda os casos com n = 5")


def pytest_collection_modifyitems(config: pytest.Config, items: list[pytest.Item]) -> None:
    if config.getoption("--runslow"):
        return
    skip = pytest.mark.skip(reason="lento: use --runslow")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip)


@lru_cache(maxsize=None)
def _handle(kind: str, n: int) -> MonoidHandle:
    return make_handle(kind, n)


@lru_cache(maxsize=None)
def _dclass(kind: str, n: int, r: int) -> DClassData:
    return dclass_data(_handle(kind, n), r)


@pytest.fixture(scope="session")
def handle():
    return _handle


@pytest.fixture(scope="session")
def dclass():
    return _dclass


@pytest.fixture
def cfg(tmp_path) -> RunConfig:
    return replace(RunConfig.default(), cache_dir=tmp_path / "cache", use_cache=False)
