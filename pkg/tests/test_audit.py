from __future__ import annotations

import csv
import io
import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from audit_fixtures import NEGATIVE, long_path, spider
from protrusion_kernel.audit import (
    INFO_CHECKS,
    REQUIRED_CHECKS,
    AuditParams,
    MarkingState,
    audit_report,
    build_scrub,
    check_large_components,
    central_path,
    classify_components,
    cutting_up,
    leftover_trees,
    marked_neighbors,
    path_decomposition_from_central,
    run_marking,
    unmarked_subtrees,
)
from protrusion_kernel.decomposition import path_decomposition, rooted_forest_decomposition, validate
from protrusion_kernel.errors import InputError
from protrusion_kernel.generators import planted
from protrusion_kernel.graph import Graph, complete_bipartite, induced, is_connected_set
from protrusion_kernel.kernelizer import find_modulator


def test_params_fallback_and_segment_bound():
    p = AuditParams(6, 1, {0: 0, 1: 5, 2: 6})
    assert p.varpi(2) == (6, False)
    assert p.varpi(7) == (6, True)
    # (3*2*6 + 2)*6 + 2*(6 + 1)
    assert p.f_hat() == 242
    assert p.f_literal() == (3 * 6 + 1) * 6 + (6 + 1)
    assert AuditParams(6, 1, {}).varpi(3) == (0, True)


def test_classify_components_by_attachment():
    g = complete_bipartite(3, 2)
    cls = classify_components(g, {0, 1, 2}, 3)
    assert cls.large == ((3,), (4,)) and cls.small == ()
    assert classify_components(g, {0, 1, 2}, 4).small == ((3,), (4,))


def test_large_components_input_checks():
    g = complete_bipartite(2, 3)
    with pytest.raises(InputError):
        check_large_components(g, {0, 1}, [[2, 3]], 2)
    with pytest.raises(InputError):
        check_large_components(g, {0, 1}, [[2], [2]], 2)
    with pytest.raises(InputError):
        check_large_components(g, {0, 1}, [[2]], 3)
    with pytest.raises(InputError):
        check_large_components(g, {0, 1}, [[0]], 2)
    with pytest.raises(InputError):
        check_large_components(g, {0, 1}, [[2]], 1)
    assert check_large_components(g, {0, 1}, [[2], [3], [4]], 2).holds


def test_build_scrub_takes_whole_twigs():
    g, x = long_path(10)
    xs = frozenset(x)
    s = build_scrub(g, xs, frozenset(range(10)), frozenset({4, 5}), 2)
    assert s.root == {4, 5}
    # both halves see one modulator vertex pair each, so they stay out
    assert s.twigs == ()
    s = build_scrub(g, xs, frozenset(range(10)), frozenset({4, 5}), 3)
    assert s.vertices == frozenset(range(10))
    assert build_scrub(g, xs, frozenset({0, 1}), frozenset({5}), 2) is None


def _marked_run(seed, n=40, k=8):
    gen = planted("FVS", n, k, seed)
    g = gen.instance.graph
    x = find_modulator(gen.instance, 0)
    cls = classify_components(g, x, 6)
    fd = rooted_forest_decomposition(g, x, 1, components=cls.large)
    return g, x, fd, run_marking(g, x, fd, 6, 6)


@settings(max_examples=15)
@given(st.integers(0, 10 ** 5))
def test_marking_invariants(seed):
    g, x, fd, ms = _marked_run(seed)
    marked = set(ms.marked)
    for a in marked:
        for b in marked:
            c = fd.lca(a, b)
            assert c is None or c in marked
    seen = set()
    for s in ms.scrub_log:
        assert not (s.vertices & seen)
        seen |= s.vertices
        assert is_connected_set(g, s.vertices)
    for sub in unmarked_subtrees(fd, marked):
        assert len(marked_neighbors(fd, sub, marked)) <= 2
    assert ms.visit_order == fd.bfs_order()


@settings(max_examples=15)
@given(st.integers(0, 10 ** 5))
def test_central_path_decompositions_are_valid(seed):
    g, x, fd, ms = _marked_run(seed)
    for tr in leftover_trees(ms, g, x):
        cp = central_path(ms, tr, g, x)
        assert cp.rule in ("two-marked", "one-marked", "no-marked")
        bags = path_decomposition_from_central(ms, tr, cp)
        ids = sorted(tr.vertices)
        loc = {v: i for i, v in enumerate(ids)}
        assert validate(induced(g, ids), path_decomposition([frozenset(loc[v] for v in b) for b in bags]))[0]


def test_no_marked_path_prefers_long_route():
    g, x = long_path(30)
    fd = rooted_forest_decomposition(g, x, 1)
    ms = MarkingState(fd)
    (tr,) = leftover_trees(ms, g, x)
    cp = central_path(ms, tr, g, x)
    assert cp.rule == "no-marked"
    bags = path_decomposition_from_central(ms, tr, cp)
    assert max(len(b) for b in bags) <= 4


def test_cutting_up_segments():
    bags = [frozenset({i, i + 1}) for i in range(40)]
    p = AuditParams(2, 1, {0: 1, 1: 1, 2: 1})
    segs = cutting_up(bags, p)
    assert segs[-1].final and not any(s.final for s in segs[:-1])
    assert [s.start for s in segs[1:]] == [s.end for s in segs[:-1]]
    small = cutting_up(bags[:2], p)
    assert len(small) == 1 and small[0].vertices == frozenset({0, 1, 2})
    assert cutting_up([], p) == []


def test_report_on_planted_instance_holds():
    gen = planted("FVS", 40, 8, 3)
    g = gen.instance.graph
    x = find_modulator(gen.instance, 40)
    rep = audit_report(g, x, AuditParams(6, 1, {0: 0, 1: 5, 2: 6}))
    ids = [c.check_id for c in rep.checks]
    assert set(ids) == set(REQUIRED_CHECKS) | set(INFO_CHECKS)
    assert rep.all_required_hold
    rows = list(csv.DictReader(io.StringIO(rep.csv())))
    assert list(rows[0]) == ["check_id", "measured", "bound", "holds", "notes"]
    body = json.loads(rep.json())
    assert body["meta"]["n"] == 40 and len(body["checks"]) == len(ids)
    assert rep.by_id("scrub-total").notes.startswith("bound")
    with pytest.raises(KeyError):
        rep.by_id("nope")


def test_budget_limited_note():
    g, x = spider()
    rep = audit_report(g, x, AuditParams(2, 1, {0: 0, 1: 3}))
    assert "budget-limited" in rep.by_id("t-small-total").notes


def test_modulator_inside_decomposition_rejected():
    g = Graph(3, [(0, 1), (1, 2)])
    fd = rooted_forest_decomposition(g, [], 1)
    with pytest.raises(InputError):
        run_marking(g, [1], fd, 2, 0)


@pytest.mark.parametrize("check_id", REQUIRED_CHECKS)
def test_negative_fixture_fails(check_id):
    res = NEGATIVE[check_id]()
    assert res.check_id == check_id
    assert not res.holds and res.measured >= res.bound
