from __future__ import annotations

import networkx as nx
import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import graphs
from oracles import to_nx
from protrusion_kernel.errors import InputError
from protrusion_kernel.graph import (
    Graph,
    articulation_points,
    attachment,
    boundary,
    components_within,
    connected_components,
    contract_edge,
    cycle_graph,
    degree_wrt,
    disjoint_union,
    induced,
    is_forest,
    neighborhood,
    petersen_graph,
    remove_vertices,
)


def test_rejects_loops_and_out_of_range():
    with pytest.raises(InputError):
        Graph(3, [(1, 1)])
    with pytest.raises(InputError):
        Graph(3, [(0, 3)])
    with pytest.raises(InputError):
        Graph(-1)


def test_duplicate_edges_merge():
    g = Graph(3, [(0, 1), (1, 0), (1, 2)])
    assert g.m == 2
    assert g == Graph(3, [(1, 2), (0, 1)])


def test_boundary_and_neighborhood_on_path():
    g = Graph(5, [(0, 1), (1, 2), (2, 3), (3, 4)])
    assert boundary(g, {0, 1, 2}) == {2}
    assert neighborhood(g, {0, 1, 2}) == {3}
    with pytest.raises(InputError):
        boundary(g, {7})


def test_degree_wrt_counts_vertices_not_edges():
    g = Graph(4, [(0, 2), (0, 3), (1, 3)])
    assert degree_wrt(g, {0, 1}, {2, 3}) == 2
    assert degree_wrt(g, {0}, {2, 3}) == 1
    with pytest.raises(InputError):
        degree_wrt(g, {0, 2}, {2})


def test_contract_edge_mapping():
    g = cycle_graph(4)
    h, mp = contract_edge(g, (1, 2))
    assert h == cycle_graph(3) or h.m == 3
    assert mp[2] == 1 and mp[3] == 2
    with pytest.raises(InputError):
        contract_edge(g, (0, 2))


def test_petersen_shape():
    g = petersen_graph()
    assert g.n == 10 and g.m == 15
    assert all(g.degree(v) == 3 for v in g.vertices())
    assert nx.is_isomorphic(to_nx(10, g.edges), nx.petersen_graph())


@given(graphs())
def test_components_match_networkx(g):
    ours = sorted(connected_components(g))
    theirs = sorted(tuple(sorted(c)) for c in nx.connected_components(to_nx(g.n, g.edges)))
    assert ours == theirs


@given(graphs())
def test_articulation_points_match_networkx(g):
    assert articulation_points(g) == set(nx.articulation_points(to_nx(g.n, g.edges)))


@given(graphs())
def test_is_forest_matches_networkx(g):
    h = to_nx(g.n, g.edges)
    assert is_forest(g) == (g.n == 0 or nx.is_forest(h))


@given(graphs(min_n=1), st.data())
def test_induced_and_remove_agree(g, data):
    s = data.draw(st.sets(st.integers(0, g.n - 1)))
    keep = [v for v in range(g.n) if v not in s]
    h, mp = remove_vertices(g, s)
    assert h == induced(g, keep)
    for u, v in g.edges:
        if u not in s and v not in s:
            assert h.has_edge(mp[u], mp[v])


@given(graphs(min_n=1), st.data())
def test_boundary_is_inside_and_touches_outside(g, data):
    w = data.draw(st.sets(st.integers(0, g.n - 1)))
    bd = boundary(g, w)
    assert bd <= w
    for v in w:
        assert (v in bd) == bool(g.adj[v] - w)
    assert neighborhood(g, w).isdisjoint(w)


@given(graphs(min_n=1), st.data())
def test_attachment_equals_checked_degree(g, data):
    x = data.draw(st.sets(st.integers(0, g.n - 1)))
    rest = [v for v in range(g.n) if v not in x]
    for c in components_within(g, rest):
        assert attachment(g, frozenset(x), c) == degree_wrt(g, x, c)


@given(graphs(max_n=4), graphs(max_n=4))
def test_disjoint_union_sizes(a, b):
    u = disjoint_union(a, b)
    assert (u.n, u.m) == (a.n + b.n, a.m + b.m)
