from __future__ import annotations

from pathlib import Path

import pytest

from polycat.mesh import ext_table
from polycat.quiver import gamma_for
from polycat.tilting import ClusterModel, exchange_graph

DATA = Path(__file__).parent / "data"


@pytest.fixture(scope="session")
def e6():
    return gamma_for(7, 1, 2, 2)


@pytest.fixture(scope="session")
def e6_table(e6):
    return ext_table(e6)


@pytest.fixture(scope="session")
def e6_model(e6, e6_table):
    return ClusterModel(e6, e6_table, workers=1)


@pytest.fixture(scope="session")
def e6_graph(e6_model):
    return exchange_graph(e6_model)
