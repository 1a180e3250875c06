from __future__ import annotations

import os
import sys

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

sys.path.insert(0, os.path.dirname(__file__))

from protrusion_kernel.graph import Graph  # noqa: E402
from protrusion_kernel.kernelizer import load_tables  # noqa: E402

settings.register_profile("default", max_examples=60, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


@st.composite
def graphs(draw, min_n=0, max_n=7):
    n = draw(st.integers(min_n, max_n))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    return Graph(n, chosen)


@pytest.fixture(scope="session")
def table_cache(tmp_path_factory):
    return tmp_path_factory.mktemp("tables")


@pytest.fixture(scope="session")
def fvs_tables(table_cache):
    return load_tables("FVS", 2, 6, table_cache)


@pytest.fixture(scope="session")
def vc_tables(table_cache):
    return load_tables("VC", 2, 6, table_cache)
