from __future__ import annotations

from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import graphs
from oracles import brute_fvs, brute_vc
from protrusion_kernel.graph import complete_graph, cycle_graph, grid_graph, petersen_graph
from protrusion_kernel.solvers import (
    greedy_fvs,
    is_fvs,
    is_vc,
    matching_vc,
    min_fvs,
    min_fvs_multigraph,
    min_vc,
)


def test_named_graph_optima():
    assert min_fvs(petersen_graph())[0] == 3
    assert min_vc(petersen_graph())[0] == 6
    assert min_fvs(complete_graph(5))[0] == 3
    assert min_fvs(grid_graph(3, 3))[0] == 2
    assert min_vc(cycle_graph(7))[0] == 4


def test_multigraph_loops_and_parallels():
    assert min_fvs_multigraph(["a"], [("a", "a")]) == (1, ["a"])
    assert min_fvs_multigraph(["a", "b"], [("a", "b"), ("a", "b")])[0] == 1
    assert min_fvs_multigraph(["a", "b"], [("a", "b"), ("a", "b")], undeletable=["a", "b"]) is None
    assert min_fvs_multigraph(["a", "b", "c"], [("a", "b"), ("a", "b"), ("b", "c")], undeletable=["a"]) == (1, ["b"])


@settings(max_examples=80)
@given(graphs(max_n=8))
def test_fvs_matches_brute_force(g):
    val, sol = min_fvs(g)
    assert val == brute_fvs(g.n, g.edges) == len(sol)
    assert is_fvs(g, sol)
    assert sol == sorted(sol)


@settings(max_examples=80)
@given(graphs(max_n=8))
def test_vc_matches_brute_force(g):
    val, sol = min_vc(g)
    assert val == brute_vc(g.n, g.edges) == len(sol)
    assert is_vc(g, sol)


@given(graphs(max_n=9))
def test_heuristics_are_feasible(g):
    assert is_fvs(g, greedy_fvs(g))
    m = matching_vc(g)
    assert is_vc(g, m)
    assert len(m) <= 2 * min_vc(g)[0]


@given(graphs(min_n=1, max_n=8), st.data())
def test_vc_within_subset(g, data):
    s = sorted(data.draw(st.sets(st.integers(0, g.n - 1))))
    val, sol = min_vc(g, within=s)
    assert set(sol) <= set(s)
    inside = [(u, v) for u, v in g.edges if u in s and v in s]
    assert all(u in sol or v in sol for u, v in inside)
