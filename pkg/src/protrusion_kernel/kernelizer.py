"""The protrusion reduction rule, applied to exhaustion.

Each step finds a vertex set ``W`` with a small boundary and bounded
treewidth, looks up the class of ``G[W]`` in a precomputed table, and swaps
the restricted protrusion for the class representative when that shrinks
the graph. The parameter drops by the signature offset.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, FrozenSet, Iterable, Iterator, List, Mapping, Optional, Tuple

from .boundaried import boundaried_subgraph, replace_protrusion
from .decomposition import (
    EXACT_TW_CAP,
    TreeDecomposition,
    rooted_forest_decomposition,
    treewidth_at_most,
)
from .errors import CapabilityError, InputError, MissingTableError, PreconditionError
from .fii import (
    FiiTable,
    ProblemSpec,
    cached_table,
    default_cache_dir,
    load_table,
    lookup_representative,
    problem,
    table_filename,
)
from .graph import (
    Graph,
    articulation_points,
    boundary,
    check_vertices,
    complete_graph,
    components_within,
    connected_components,
    induced,
    neighborhood,
)
from .solvers import greedy_fvs, is_fvs, is_vc, matching_vc, min_fvs, min_vc
from .sparsity import contains_topological_minor

SOLVE_CAP = 25
MODULATOR_EXACT_CAP = 25
DEFAULT_B_MAX = 2
DEFAULT_WIDTH_BUDGET = 6


@dataclass(frozen=True)
class Instance:
    graph: Graph
    k: int
    problem: ProblemSpec

    def __post_init__(self):
        object.__setattr__(self, "problem", problem(self.problem))


@dataclass(frozen=True)
class Protrusion:
    w: FrozenSet[int]
    boundary: FrozenSet[int]
    certificate: TreeDecomposition  # over host vertex ids

    @property
    def restricted(self) -> FrozenSet[int]:
        return self.w - self.boundary


@dataclass
class ReductionStep:
    index: int
    w_size: int
    boundary_size: int
    class_key: str
    offset: int
    n_before: int
    n_after: int
    k_after: int
    strategy: str

    def as_dict(self) -> Dict:
        return {
            "step": self.index,
            "w": self.w_size,
            "boundary": self.boundary_size,
            "class_key": self.class_key,
            "offset": self.offset,
            "n_before": self.n_before,
            "n_after": self.n_after,
            "k_after": self.k_after,
            "strategy": self.strategy,
        }


@dataclass
class ReductionTrace:
    problem: str
    n_original: int
    k_original: int
    steps: List[ReductionStep] = field(default_factory=list)
    trivial_no: bool = False

    @property
    def total_offset(self) -> int:
        return sum(s.offset for s in self.steps)

    def lines(self) -> List[str]:
        head = {"problem": self.problem, "n": self.n_original, "k": self.k_original}
        out = [json.dumps(head, sort_keys=True)]
        out += [json.dumps(s.as_dict(), sort_keys=True) for s in self.steps]
        if self.trivial_no:
            out.append(json.dumps({"trivial_no": True}, sort_keys=True))
        return out

    def dumps(self) -> str:
        return "\n".join(self.lines()) + "\n"


# exact solutions and modulators

def exact_solve(p, g: Graph, cap: int = SOLVE_CAP) -> Tuple[int, List[int]]:
    """Optimum value with a witness set."""
    p = problem(p)
    if g.n > cap:
        raise CapabilityError(f"exact solver capped at {cap} vertices, graph has {g.n}")
    if p.id == "FVS":
        return min_fvs(g)
    return min_vc(g)


def is_solution(p, g: Graph, x: Iterable[int]) -> bool:
    return is_fvs(g, x) if problem(p).id == "FVS" else is_vc(g, x)


def find_modulator(inst: Instance, exact_cap: int = MODULATOR_EXACT_CAP) -> FrozenSet[int]:
    """A solution set, which is a treewidth modulator for the problem's ``t``.

    Exact below ``exact_cap`` vertices, otherwise greedy.
    """
    g = inst.graph
    if g.n <= exact_cap:
        return frozenset(exact_solve(inst.problem, g, cap=exact_cap)[1])
    if inst.problem.id == "FVS":
        return frozenset(greedy_fvs(g))
    return frozenset(matching_vc(g))


def trivial_no(p) -> Instance:
    """Smallest instance with optimum above ``k = 0``."""
    p = problem(p)
    g = complete_graph(3) if p.id == "FVS" else complete_graph(2)
    return Instance(g, 0, p)


# protrusion search

def _separator_sets(g: Graph, b_max: int) -> Iterator[Tuple[str, FrozenSet[int]]]:
    """Vertex sets cut off by at most ``b_max`` vertices, with the strategy that found them."""
    everything = frozenset(range(g.n))
    for comp in connected_components(g):
        yield "component", frozenset(comp)
    if b_max < 1:
        return
    seps = [frozenset([a]) for a in sorted(articulation_points(g))]
    if b_max >= 2:
        pairs = set()
        for s in range(g.n):
            rest = everything - {s}
            for a in articulation_points(g, rest):
                pairs.add(frozenset((s, a)))
        seps += sorted(pairs, key=sorted)
    for s in seps:
        comps = components_within(g, everything - s)
        if len(comps) < 2:
            continue
        for c in comps:
            cs = frozenset(c)
            yield "separator", cs | (neighborhood(g, cs) & s)
        if len(comps) > 2:
            for c in comps:
                yield "separator", everything - frozenset(c)


def _subtree_sets(g: Graph, x: FrozenSet[int], t: int) -> Iterator[Tuple[str, FrozenSet[int]]]:
    rest = frozenset(range(g.n)) - x
    comps = components_within(g, rest)
    for c in comps:
        cs = frozenset(c)
        yield "modulator-component", cs | (neighborhood(g, cs) & x)
        yield "modulator-component", cs
    try:
        fd = rooted_forest_decomposition(g, x, t, components=comps)
    except PreconditionError:
        return
    for node in range(len(fd.bags)):
        yield "subtree", fd.vertices_of(fd.subtree(node))


def _candidate_sets(
    g: Graph, x: FrozenSet[int], t: int, b_max: int, avoid_modulator: bool = True
) -> List[Tuple[str, FrozenSet[int], FrozenSet[int]]]:
    """Distinct ``(strategy, W, boundary)`` in reduction priority order.

    With ``avoid_modulator`` the restricted part ``W \\ boundary`` must miss ``X``,
    so modulator vertices are never absorbed into a replacement.
    """
    seen: Dict[FrozenSet[int], Tuple[str, FrozenSet[int]]] = {}
    sources = [_subtree_sets(g, x, t), _separator_sets(g, b_max)]
    for src in sources:
        for strategy, w in src:
            if not w or w in seen:
                continue
            bd = boundary(g, w)
            if len(bd) > b_max or len(w) == len(bd):
                continue
            if avoid_modulator and (w - bd) & x:
                continue
            seen[w] = (strategy, bd)
    out = [(s, w, bd) for w, (s, bd) in seen.items()]
    out.sort(key=lambda c: (-(len(c[1]) - len(c[2])), len(c[2]), sorted(c[1])))
    return out


def certify(g: Graph, w: FrozenSet[int], r: int, exact_cap: int = EXACT_TW_CAP) -> Optional[TreeDecomposition]:
    """A decomposition of ``G[W]`` of width ``<= r`` in host ids, or ``None``."""
    ws = sorted(w)
    td = treewidth_at_most(induced(g, ws), r, exact_cap)
    if td is None:
        return None
    return td.relabel(ws)


def find_protrusions(g: Graph, x: Iterable[int], b_max: int = DEFAULT_B_MAX, r: int = DEFAULT_WIDTH_BUDGET,
                     t: int = 1, avoid_modulator: bool = True) -> List[Protrusion]:
    """Certified protrusions with boundary at most ``b_max`` and width at most ``r``.

    Candidates come from components of ``G - X``, subtrees of its forest
    decomposition and small separators of ``G``; largest restricted part first.
    """
    xs = check_vertices(g, x)
    out = []
    for _, w, bd in _candidate_sets(g, xs, t, b_max, avoid_modulator):
        td = certify(g, w, r)
        if td is not None:
            out.append(Protrusion(w, bd, td))
    return out


def apply_reduction(inst: Instance, p: Protrusion, table: FiiTable) -> Optional[Tuple[Instance, Dict]]:
    """Replace ``p`` by its class representative, or ``None`` when that does not shrink."""
    g = inst.graph
    if len(p.boundary) != table.t:
        raise InputError(f"protrusion boundary {len(p.boundary)} does not match table t={table.t}")
    if table.problem != inst.problem.id:
        raise InputError(f"table is for {table.problem}, instance is {inst.problem.id}")
    found = lookup_representative(table, boundaried_subgraph(g, p.w))
    if found is None:
        return None
    cls, offset = found
    rep = cls.representative
    if len(p.restricted) <= rep.n - rep.t:
        return None
    g2, idx = replace_protrusion(g, p.w, rep)
    new = Instance(g2, inst.k - offset, inst.problem)
    return new, {"class_key": cls.key, "offset": offset, "map": idx}


def kernelize(
    inst: Instance,
    tables: Mapping[int, FiiTable],
    b_max: Optional[int] = None,
    r: int = DEFAULT_WIDTH_BUDGET,
    modulator_cap: int = MODULATOR_EXACT_CAP,
    excluded: Optional[Graph] = None,
    max_steps: Optional[int] = None,
    avoid_modulator: bool = True,
) -> Tuple[Instance, ReductionTrace]:
    """Apply the reduction rule until no candidate shrinks the graph.

    ``tables`` maps boundary sizes to tables; boundaries without a table are
    never reduced. With ``excluded`` set, a replacement that would create a
    topological minor of that graph is skipped.
    """
    for t, tb in tables.items():
        if tb.t != t or tb.problem != inst.problem.id:
            raise InputError(f"table under key {t} is {tb.problem} t={tb.t}")
    if b_max is None:
        b_max = max(tables, default=0)
    trace = ReductionTrace(inst.problem.id, inst.graph.n, inst.k)
    cur = inst
    while max_steps is None or len(trace.steps) < max_steps:
        if cur.k < 0:
            trace.trivial_no = True
            return trivial_no(cur.problem), trace
        x = find_modulator(cur, modulator_cap)
        step = None
        for strategy, w, bd in _candidate_sets(cur.graph, x, cur.problem.t, b_max, avoid_modulator):
            table = tables.get(len(bd))
            if table is None:
                continue
            # cheap size filter before any signature work
            if len(w) - len(bd) <= min(c.size for c in table.classes) - table.t:
                continue
            td = certify(cur.graph, w, r)
            if td is None:
                continue
            res = apply_reduction(cur, Protrusion(w, bd, td), table)
            if res is None:
                continue
            new, info = res
            if excluded is not None and contains_topological_minor(new.graph, excluded):
                continue
            step = ReductionStep(
                len(trace.steps), len(w), len(bd), info["class_key"], info["offset"],
                cur.graph.n, new.graph.n, new.k, strategy,
            )
            cur = new
            break
        if step is None:
            break
        trace.steps.append(step)
    if cur.k < 0:
        trace.trivial_no = True
        return trivial_no(cur.problem), trace
    return cur, trace


def load_tables(pid, b_max: int, n_max: int, cache_dir=None, build: bool = True, **caps) -> Dict[int, FiiTable]:
    """Tables for boundary sizes ``0..b_max`` from the cache, building missing ones if allowed."""
    pid = problem(pid).id
    out = {}
    d = Path(cache_dir) if cache_dir is not None else default_cache_dir()
    for t in range(b_max + 1):
        nm = max(n_max, t)
        if build:
            out[t] = cached_table(pid, t, nm, d, **caps)[0]
            continue
        path = d / table_filename(pid, t, nm)
        if not path.exists():
            cmd = f"protrusion-kernel build-table --problem {pid} --t {t} --n-max {nm} --cache-dir {d}"
            raise MissingTableError(f"no {pid} table for t={t}, n_max={nm} in {d}", cmd)
        out[t] = load_table(path)
    return out
