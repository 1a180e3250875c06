"""Acceptance criteria, one test each, every one printing a PASS/FAIL line."""
from __future__ import annotations

import random
import statistics
import subprocess
import sys
import time

import pytest

from audit_fixtures import NEGATIVE
from oracles import brute_opt, glue_edges, naive_topological_minor
from protrusion_kernel.audit import REQUIRED_CHECKS, AuditParams, audit_report
from protrusion_kernel.boundaried import enumerate_boundaried
from protrusion_kernel.fii import build_table, lookup_representative
from protrusion_kernel.generators import GeneratorSpec, generate, planted
from protrusion_kernel.graph import Graph, complete_bipartite, complete_graph, petersen_graph
from protrusion_kernel.kernelizer import exact_solve, find_modulator, kernelize
from protrusion_kernel.sparsity import contains_topological_minor

SOUNDNESS_CAP = 30


@pytest.fixture
def announce(capsys):
    def emit(number, ok, detail):
        with capsys.disabled():
            print(f"\nACCEPTANCE {number}: {'PASS' if ok else 'FAIL'} - {detail}")
    return emit


def test_kernel_soundness(announce, fvs_tables, vc_tables):
    tables = {"FVS": fvs_tables, "VC": vc_tables}
    start = time.time()
    disagree, yes, total = [], 0, 0
    for i in range(240):
        pid = ("FVS", "VC")[i % 2]
        family = ("planted-modulator", "bounded-degree-random")[(i // 2) % 2]
        k = 1 + (i // 4) % 8
        n = 22 + (i * 7) % 9
        d = 4 if family == "planted-modulator" else 3
        inst = generate(GeneratorSpec(family, pid, n, k, d, 2, i)).instance
        ker, _ = kernelize(inst, tables[pid], modulator_cap=SOUNDNESS_CAP)
        before = exact_solve(pid, inst.graph, SOUNDNESS_CAP)[0] <= inst.k
        after = exact_solve(pid, ker.graph, SOUNDNESS_CAP)[0] <= ker.k
        yes += before
        total += 1
        if before != after:
            disagree.append(i)
    took = time.time() - start
    ok = not disagree and total >= 200 and took < 300
    announce(1, ok, f"{total - len(disagree)}/{total} agree ({yes} yes), {took:.1f}s")
    assert not disagree
    assert took < 300


def _glue_triples(pid, t, rng, samples):
    tb = build_table(pid, t, 6)
    members = list(enumerate_boundaried(t, 6))
    completions = list(enumerate_boundaried(t, 6, rule="any"))
    bad = 0
    for _ in range(samples):
        m = rng.choice(members)
        z = rng.choice(completions)
        cls, c = lookup_representative(tb, m)
        rep = cls.representative
        n1, e1 = glue_edges(m.n, m.graph.edges, z.n, z.graph.edges, t)
        n2, e2 = glue_edges(rep.n, rep.graph.edges, z.n, z.graph.edges, t)
        if brute_opt(pid, n1, e1) != brute_opt(pid, n2, e2) + c:
            bad += 1
    return bad


def test_fii_tables(announce):
    start = time.time()
    vc = [(n_max, len(build_table("VC", 1, n_max)), build_table("VC", 1, n_max).varpi) for n_max in (3, 4, 5, 6)]
    vc_ok = all(classes == 3 and varpi == 3 for _, classes, varpi in vc)
    rng = random.Random(2024)
    samples = 1000
    bad = {t: _glue_triples("FVS", t, rng, samples) for t in (1, 2)}
    took = time.time() - start
    ok = vc_ok and not any(bad.values()) and took < 900
    announce(2, ok, f"VC t=1 classes/varpi {[(c, v) for _, c, v in vc]}; FVS glue mismatches "
                    f"t=1 {bad[1]}/{samples}, t=2 {bad[2]}/{samples}; {took:.1f}s")
    assert vc_ok
    assert bad == {1: 0, 2: 0}


def test_topological_minor_tester(announce):
    start = time.time()
    rng = random.Random(11)
    wrong = 0
    positives = 0
    for _ in range(500):
        n = rng.randint(1, 9)
        p = rng.choice([0.2, 0.35, 0.5])
        g = Graph(n, [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p])
        hn = rng.randint(1, 5)
        q = rng.choice([0.4, 0.7, 1.0])
        h = Graph(hn, [(u, v) for u in range(hn) for v in range(u + 1, hn) if rng.random() < q])
        expect = naive_topological_minor(g.n, g.edges, h.n, h.edges)
        positives += expect
        wrong += contains_topological_minor(g, h) != expect
    named = (
        not contains_topological_minor(petersen_graph(), complete_graph(5))
        and contains_topological_minor(complete_bipartite(3, 3), complete_graph(4))
    )
    took = time.time() - start
    ok = wrong == 0 and named and took < 120
    announce(3, ok, f"{500 - wrong}/500 agree with the naive oracle ({positives} positive), "
                    f"Petersen/K5 false and K33/K4 true: {named}; {took:.1f}s")
    assert wrong == 0 and named


def test_audit_bounds(announce, fvs_tables):
    start = time.time()
    params = AuditParams.from_tables(6, 1, fvs_tables)
    failing = []
    marked_runs = 0
    for seed in range(50):
        n = 40 + (seed % 3) * 10
        k = 8 + seed % 3
        ker, _ = kernelize(planted("FVS", n, k, seed).instance, fvs_tables, modulator_cap=40)
        x = find_modulator(ker, 80)
        rep = audit_report(ker.graph, x, params)
        marked_runs += bool(rep.meta["marked"])
        if not rep.all_required_hold:
            failing.append((seed, [c.check_id for c in rep.checks if c.required and not c.holds]))
    caught = {cid: not NEGATIVE[cid]().holds for cid in REQUIRED_CHECKS}
    took = time.time() - start
    ok = not failing and all(caught.values()) and took < 300
    announce(4, ok, f"{50 - len(failing)}/50 seeds hold every required check (marking fired on {marked_runs}); "
                    f"negative fixtures caught {sum(caught.values())}/{len(caught)}; {took:.1f}s")
    assert not failing
    assert all(caught.values()), [c for c, v in caught.items() if not v]


def test_linear_trend(announce, fvs_tables, vc_tables):
    lines = []
    ok = True
    for pid, tables in (("FVS", fvs_tables), ("VC", vc_tables)):
        ratios = []
        medians = []
        for k in (2, 4, 6, 8):
            sizes = []
            for seed in range(10):
                ker, _ = kernelize(planted(pid, 30, k, seed).instance, tables, modulator_cap=30)
                sizes.append(ker.graph.n)
                ratios.append(ker.graph.n / k)
            medians.append(statistics.median(sizes))
        c = max(ratios)
        cv = statistics.pstdev(ratios) / statistics.mean(ratios)
        monotone = all(a <= b for a, b in zip(medians, medians[1:]))
        bounded = all(m <= c * k for m, k in zip(medians, (2, 4, 6, 8)))
        good = monotone and bounded and cv < 0.5
        ok &= good
        lines.append(f"{pid} medians {medians} C={c:.2f} cv={cv:.3f}")
    announce(5, ok, "; ".join(lines))
    assert ok, lines


def _cli(*args, cwd):
    return subprocess.run([sys.executable, "-m", "protrusion_kernel", *args], cwd=cwd,
                          capture_output=True, text=True, check=True)


def test_determinism(announce, tmp_path):
    outputs = []
    for run in ("a", "b"):
        root = tmp_path / run
        root.mkdir()
        cache = str(root / "cache")
        _cli("build-table", "--problem", "FVS", "--cache-dir", cache, cwd=root)
        _cli("gen", "--problem", "FVS", "--n", "40", "--k", "8", "--seed", "5", "--out", "inst.json", cwd=root)
        _cli("kernelize", "--instance", "inst.json", "--cache-dir", cache, "--out-dir", "out",
             "--modulator-cap", "40", cwd=root)
        subprocess.run([sys.executable, "-m", "protrusion_kernel", "audit", "--instance", "out/kernel.json",
                        "--cache-dir", cache, "--out-dir", "out"], cwd=root, capture_output=True, check=False)
        files = ["cache/fvs-t2-n6-v1.jsonl", "out/trace.jsonl", "out/kernel.json", "out/report.csv", "out/report.json"]
        outputs.append({f: (root / f).read_bytes() for f in files})
    same = {f: outputs[0][f] == outputs[1][f] for f in outputs[0]}
    ok = all(same.values())
    announce(6, ok, f"byte-identical across two runs: {sorted(f for f, v in same.items() if v)}")
    assert ok, same
