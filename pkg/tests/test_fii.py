from __future__ import annotations

import json
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import brute_opt, brute_signature_fvs, brute_signature_vc, glue_edges, truncate_vc
from protrusion_kernel.boundaried import BoundariedGraph, canonical_graph, enumerate_boundaried, glue
from protrusion_kernel.errors import CapabilityError, InputError
from protrusion_kernel.fii import (
    Signature,
    build_table,
    cached_table,
    dump_table,
    equivalent,
    load_table,
    lookup_representative,
    problem,
    saturated,
    signature,
    states,
    table_filename,
    truncate_signature,
)
from protrusion_kernel.graph import Graph
from test_boundaried import boundaried

# class counts and largest representatives, frozen from the brute-force oracle
GOLDEN_TABLES = [
    ("VC", 0, 3, 1, 0),
    ("VC", 1, 3, 3, 3),
    ("VC", 1, 4, 3, 3),
    ("VC", 2, 4, 18, 4),
    ("VC", 2, 5, 19, 5),
    ("FVS", 0, 3, 1, 0),
    ("FVS", 1, 3, 2, 3),
    ("FVS", 1, 4, 2, 3),
    ("FVS", 1, 5, 3, 5),
    ("FVS", 2, 4, 12, 4),
    ("FVS", 2, 5, 23, 5),
]


def _oracle_values(pid, bg):
    c = canonical_graph(bg)
    if pid == "VC":
        sig = truncate_vc(brute_signature_vc(c.n, c.graph.edges, c.t))
        return [sig[tuple(i - 1 for i in s)] for s in states("VC", c.t)]
    sig = brute_signature_fvs(c.n, c.graph.edges, c.t)
    out = []
    for s, p in states("FVS", c.t):
        key = (tuple(i - 1 for i in s), tuple(sorted(tuple(i - 1 for i in b) for b in p)))
        out.append(sig[key])
    return out


def test_problem_registry():
    assert (problem("fvs").c, problem("fvs").t) == (1, 1)
    assert (problem("VC").c, problem("VC").t) == (1, 0)
    with pytest.raises(InputError):
        problem("clique")


def test_state_counts():
    assert len(states("VC", 2)) == 4
    # sum over deleted sets of the Bell number of the rest: 2 + 2 + 1 for t = 2
    assert len(states("FVS", 2)) == 5
    assert len(states("FVS", 1)) == 2


@settings(max_examples=80)
@given(boundaried(max_t=2, max_n=6), st.sampled_from(["VC", "FVS"]))
def test_signature_matches_oracle(bg, pid):
    assert list(signature(pid, canonical_graph(bg)).values) == _oracle_values(pid, bg)


@given(boundaried(max_t=2, max_n=6))
def test_signature_is_invariant_under_relabeling(bg):
    for pid in ("VC", "FVS"):
        assert signature(pid, bg).key() == signature(pid, canonical_graph(bg)).key()


def test_vc_truncation_caps_entries():
    raw = Signature("VC", 1, (5, 1))
    assert truncate_signature(raw).values == (2, 1)
    with pytest.raises(CapabilityError):
        truncate_signature(Signature("FVS", 1, (0, 0)))


def test_equivalent_offsets():
    a = Signature("VC", 1, (3, 2))
    b = Signature("VC", 1, (1, 0))
    assert equivalent(a, b) == 2
    assert equivalent(a, Signature("VC", 1, (1, 1))) is None
    assert equivalent(Signature("VC", 1, (None, 2)), Signature("VC", 1, (1, 2))) is None
    assert equivalent(Signature("FVS", 1, (0, 1), ()), Signature("FVS", 1, (0, 1), ((1, 1),))) is None
    with pytest.raises(InputError):
        equivalent(a, Signature("VC", 2, (0, 0, 0, 0)))


def test_fvs_key_records_boundary_edges():
    with_edge = BoundariedGraph(Graph(2, [(0, 1)]), (0, 1))
    without = BoundariedGraph(Graph(2), (0, 1))
    assert "be=1-2" in signature("FVS", with_edge).key()
    assert signature("FVS", with_edge).key() != signature("FVS", without).key()


@pytest.mark.parametrize("pid,t,n_max,classes,varpi", GOLDEN_TABLES)
def test_table_sizes(pid, t, n_max, classes, varpi):
    tb = build_table(pid, t, n_max)
    assert (len(tb), tb.varpi) == (classes, varpi)
    assert sum(c.members for c in tb.classes) == sum(1 for _ in enumerate_boundaried(t, n_max))


def test_vc_t1_saturates_early():
    assert saturated("VC", 1, 3)
    assert not saturated("FVS", 1, 4)


def test_representative_is_minimal_member():
    tb = build_table("FVS", 2, 5)
    sizes = {}
    for bg in enumerate_boundaried(2, 5):
        k = signature("FVS", bg).key()
        sizes[k] = min(sizes.get(k, 99), bg.n)
    assert {c.key: c.size for c in tb.classes} == sizes


def test_lookup_offset_is_sound_under_gluing():
    rng = random.Random(7)
    for pid in ("VC", "FVS"):
        tb = build_table(pid, 2, 5)
        members = list(enumerate_boundaried(2, 5))
        completions = list(enumerate_boundaried(2, 4, rule="any"))
        for _ in range(60):
            bg = rng.choice(members)
            cls, c = lookup_representative(tb, bg)
            rep = cls.representative
            for z in rng.sample(completions, 5):
                n1, e1 = glue_edges(bg.n, bg.graph.edges, z.n, z.graph.edges, 2)
                n2, e2 = glue_edges(rep.n, rep.graph.edges, z.n, z.graph.edges, 2)
                assert brute_opt(pid, n1, e1) == brute_opt(pid, n2, e2) + c


def test_lookup_rejects_wrong_boundary():
    tb = build_table("VC", 1, 3)
    with pytest.raises(InputError):
        lookup_representative(tb, BoundariedGraph(Graph(2), (0, 1)))


def test_lookup_outside_table_returns_none():
    small = build_table("FVS", 1, 4)
    big = build_table("FVS", 1, 5)
    (late,) = [c for c in big.classes if c.size == 5]
    assert lookup_representative(small, late.representative) is None
    assert lookup_representative(big, late.representative)[1] == 0


def test_glued_class_is_stable():
    tb = build_table("VC", 1, 4)
    for bg in enumerate_boundaried(1, 3):
        z = BoundariedGraph(Graph(2, [(0, 1)]), (0,))
        assert lookup_representative(tb, glue(bg, z)) is not None


def test_table_round_trip(tmp_path):
    tb = build_table("FVS", 2, 4)
    path = tmp_path / table_filename("FVS", 2, 4)
    dump_table(tb, path)
    back = load_table(path)
    assert back.classes == tb.classes and back.varpi == tb.varpi
    header = json.loads(path.read_text().splitlines()[0])
    assert header["format"] == "fii-table" and header["classes"] == 12


def test_load_rejects_version_and_corrupt_codes(tmp_path):
    tb = build_table("VC", 1, 3)
    path = tmp_path / "t.jsonl"
    dump_table(tb, path)
    lines = path.read_text().splitlines()
    head = json.loads(lines[0])
    head["version"] = 99
    bad = tmp_path / "bad.jsonl"
    bad.write_text("\n".join([json.dumps(head)] + lines[1:]) + "\n")
    with pytest.raises(InputError):
        load_table(bad)
    rec = json.loads(lines[1])
    rec["edges"] = []
    rec["n"] = rec["n"] + 1
    bad.write_text("\n".join([lines[0], json.dumps(rec)] + lines[2:]) + "\n")
    with pytest.raises(InputError):
        load_table(bad)


def test_cached_table_hits_second_time(tmp_path):
    _, p1, hit1 = cached_table("VC", 1, 3, tmp_path)
    tb, p2, hit2 = cached_table("VC", 1, 3, tmp_path)
    assert (hit1, hit2) == (False, True) and p1 == p2
    assert len(tb) == 3


def test_cache_dir_from_environment(tmp_path, monkeypatch):
    monkeypatch.setenv("PROTRUSION_KERNEL_CACHE", str(tmp_path))
    _, path, _ = cached_table("VC", 0, 2)
    assert path.parent == tmp_path
