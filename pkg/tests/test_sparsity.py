from __future__ import annotations

import itertools
import random
from fractions import Fraction

import networkx as nx
import pytest
from hypothesis import given, settings

from conftest import graphs
from oracles import naive_topological_minor, to_nx
from protrusion_kernel.errors import CapabilityError, InputError
from protrusion_kernel.graph import (
    Graph,
    complete_bipartite,
    complete_graph,
    cycle_graph,
    petersen_graph,
)
from protrusion_kernel.sparsity import (
    SparsityConstants,
    average_degree,
    check_sparsity_bounds,
    contains_topological_minor,
    count_cliques,
    degree_bound_violations,
    excluded_clique_order,
    find_subdivision,
)


def test_average_degree_exact():
    assert average_degree(cycle_graph(5)) == 2
    assert average_degree(Graph(3, [(0, 1)])) == Fraction(2, 3)
    with pytest.raises(InputError):
        average_degree(Graph(0))


def test_clique_count_of_complete_graph():
    for n in range(6):
        assert count_cliques(complete_graph(n)) == 2 ** n - 1


@given(graphs())
def test_clique_count_matches_networkx(g):
    h = to_nx(g.n, g.edges)
    expected = sum(1 for _ in nx.enumerate_all_cliques(h))
    assert count_cliques(g) == expected


def test_sparsity_constants():
    c = SparsityConstants(6)
    assert c.degree_bound() == 360
    assert check_sparsity_bounds(petersen_graph(), c).holds
    assert degree_bound_violations([complete_graph(11), cycle_graph(4), complete_graph(10)], 1) == [0]


def test_excluded_clique_order():
    assert excluded_clique_order(3) == 5
    assert not contains_topological_minor(petersen_graph(), complete_graph(5))
    # max degree d does not rule out K_{d+1}: it is its own subdivision
    for d in (2, 3, 4):
        assert contains_topological_minor(complete_graph(d + 1), complete_graph(d + 1))
        assert not contains_topological_minor(complete_graph(d + 1), complete_graph(d + 2))


def test_known_topological_minors():
    assert not contains_topological_minor(petersen_graph(), complete_graph(5))
    assert contains_topological_minor(petersen_graph(), complete_bipartite(3, 3))
    assert contains_topological_minor(petersen_graph(), complete_graph(4))
    assert contains_topological_minor(cycle_graph(6), cycle_graph(3))
    assert not contains_topological_minor(Graph(4, [(0, 1), (1, 2), (2, 3)]), cycle_graph(3))


def test_witness_is_a_subdivision():
    g = petersen_graph()
    h = complete_bipartite(3, 3)
    w = find_subdivision(g, h)
    br = w["branch"]
    assert len(set(br.values())) == h.n
    inner_seen = set()
    for (a, b), path in w["paths"].items():
        assert {path[0], path[-1]} == {br[a], br[b]}
        for u, v in zip(path, path[1:]):
            assert g.has_edge(u, v)
        inner = set(path[1:-1])
        assert not inner & set(br.values())
        assert not inner & inner_seen
        inner_seen |= inner
    assert len(w["paths"]) == h.m


def test_pattern_cap():
    with pytest.raises(CapabilityError):
        contains_topological_minor(complete_graph(8), complete_graph(7))


def _pattern_pool():
    out = []
    for n in range(1, 5):
        pairs = list(itertools.combinations(range(n), 2))
        for r in range(len(pairs) + 1):
            for es in itertools.combinations(pairs, r):
                out.append(Graph(n, es))
    return out


@settings(max_examples=40)
@given(graphs(max_n=6))
def test_tm_matches_naive_on_small_patterns(g):
    rng = random.Random(g.n * 1000 + g.m)
    for h in rng.sample(_pattern_pool(), 4):
        assert contains_topological_minor(g, h) == naive_topological_minor(g.n, g.edges, h.n, h.edges)
