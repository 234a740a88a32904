from __future__ import annotations

import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).resolve().parent.parent))

from gf2kerdock import KerdockFamily, cameron_seidel_lssd, reference_kerdock_n4  # noqa: E402
from hadamard_oa import (  # noqa: E402
    beth_wocjan_unbiased_set,
    lssd_from_unbiased_hadamards,
    reference_h4,
    reference_oa16,
)
from lssd_system import LssdGraph, degenerate_lssd  # noqa: E402


def pytest_addoption(parser: pytest.Parser) -> None:
    parser.addoption("--runslow", action="store_true", default=False, help="run slow tests")


def pytest_collection_modifyitems(config: pytest.Config, items: list[pytest.Item]) -> None:
    if config.getoption("--runslow"):
        return
    skip_slow = pytest.mark.skip(reason="needs --runslow")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip_slow)


@pytest.fixture(scope="session")
def kerdock8() -> LssdGraph:
    return cameron_seidel_lssd(reference_kerdock_n4())


@pytest.fixture(scope="session")
def kerdock3() -> LssdGraph:
    return cameron_seidel_lssd(KerdockFamily(4, reference_kerdock_n4().forms[:3]))


@pytest.fixture(scope="session")
def beth_wocjan3() -> LssdGraph:
    return lssd_from_unbiased_hadamards(beth_wocjan_unbiased_set(reference_oa16(), reference_h4()))


@pytest.fixture(scope="session")
def degenerate3() -> LssdGraph:
    return degenerate_lssd(4, 3)
