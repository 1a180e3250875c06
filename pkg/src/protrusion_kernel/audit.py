"""Empirical audit of the counting bounds behind the linear kernel.

Given a graph, a modulator ``X`` with ``tw(G - X) <= t`` and the exclusion
order ``r``, this runs the marking algorithm over a forest decomposition of
the large components, builds the leftover trees, their central paths and
path decompositions, cuts them into segments, and compares every measured
quantity with its bound after substituting the constants.

Bags have up to ``t + 1`` vertices, so every bound that multiplies by a bag
size uses ``t + 1``; the literal form with ``t`` is kept in the notes.
"""
from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, FrozenSet, Iterable, List, Mapping, Optional, Sequence, Set, Tuple

from .decomposition import (
    ForestDecomposition,
    path_decomposition,
    rooted_forest_decomposition,
    validate,
)
from .errors import InputError
from .fii import FiiTable
from .graph import (
    Graph,
    attachment,
    check_vertices,
    components_within,
    induced,
    is_connected_set,
)
from .sparsity import BETA, TAU, SparsityConstants, average_degree, count_cliques

REQUIRED_CHECKS = (
    "average-degree",
    "clique-count",
    "large-component-count",
    "small-components-total",
    "unmarked-subtree-marked-neighbors",
    "marked-bags",
    "marked-vertices",
    "scrub-total",
    "hanging-subtree-components",
    "t-small-total",
    "central-path-width",
    "t-large-total",
    "total-vertices",
)
INFO_CHECKS = ("pseudo-scrub", "cutting-up-segment-size", "cutting-up-segment-degree")


# parameters

@dataclass(frozen=True)
class AuditParams:
    r: int
    t: int
    varpi_slots: Mapping[int, int]  # boundary size -> largest representative size
    beta: Fraction = BETA
    tau: Fraction = TAU
    log_base: float = 2.0

    @classmethod
    def from_tables(cls, r: int, t: int, tables: Mapping[int, FiiTable], **kw) -> "AuditParams":
        return cls(r, t, {s: tb.varpi for s, tb in sorted(tables.items())}, **kw)

    def varpi(self, slot: int) -> Tuple[int, bool]:
        """``(value, budget_limited)``; missing slots fall back to the largest built one."""
        if slot in self.varpi_slots:
            return self.varpi_slots[slot], False
        if not self.varpi_slots:
            return 0, True
        top = max(self.varpi_slots)
        return self.varpi_slots[top], True

    @property
    def sparsity(self) -> SparsityConstants:
        return SparsityConstants(self.r, self.beta, self.tau, self.log_base)

    def f_hat(self) -> int:
        """The segment size bound with bag size ``t + 1`` in place of ``t``."""
        w1, _ = self.varpi(self.t + self.r)
        w2, _ = self.varpi(2 * self.t + self.r)
        b = self.t + 1
        return (3 * b * w1 + b) * w2 + b * (w1 + 1)

    def f_literal(self) -> int:
        w1, _ = self.varpi(self.t + self.r)
        w2, _ = self.varpi(2 * self.t + self.r)
        t = self.t
        return (3 * t * w1 + t) * w2 + t * (w1 + 1)


@dataclass(frozen=True)
class CheckResult:
    check_id: str
    measured: int
    bound: int
    holds: bool
    notes: str = ""
    required: bool = True

    def row(self) -> Dict:
        return {
            "check_id": self.check_id,
            "measured": self.measured,
            "bound": self.bound,
            "holds": self.holds,
            "notes": self.notes,
        }


def _check(cid: str, measured: int, bound, notes: Sequence[str] = (), required: bool = True,
           strict: bool = False) -> CheckResult:
    b = math.floor(bound)
    holds = measured < bound if strict else measured <= b
    return CheckResult(cid, int(measured), int(b), bool(holds), "; ".join(n for n in notes if n), required)


def _limited(params: AuditParams, *slots: int) -> str:
    lim = [s for s in slots if params.varpi(s)[1]]
    if not lim:
        return ""
    top = max(params.varpi_slots) if params.varpi_slots else None
    return f"budget-limited: varpi slots {sorted(set(lim))} use slot {top}"


# components

@dataclass(frozen=True)
class ComponentClassification:
    small: Tuple[Tuple[int, ...], ...]
    large: Tuple[Tuple[int, ...], ...]


def classify_components(g: Graph, x: Iterable[int], r: int) -> ComponentClassification:
    xs = check_vertices(g, x)
    small, large = [], []
    for c in components_within(g, set(range(g.n)) - xs):
        (large if attachment(g, xs, c) >= r else small).append(c)
    return ComponentClassification(tuple(small), tuple(large))


def check_large_components(g: Graph, x: Iterable[int], subgraphs: Sequence[Iterable[int]], r: int,
                 beta: Fraction = BETA) -> CheckResult:
    """Disjoint connected subgraphs of ``G - X`` each seeing ``r`` modulator vertices."""
    xs = check_vertices(g, x)
    if r < 2:
        raise InputError(f"need r >= 2, got {r}")
    used: Set[int] = set()
    for i, s in enumerate(subgraphs):
        s = check_vertices(g, s)
        if s & xs:
            raise InputError(f"subgraph {i} meets X")
        if s & used:
            raise InputError(f"subgraph {i} overlaps an earlier one")
        if not s or not is_connected_set(g, s):
            raise InputError(f"subgraph {i} is not connected")
        if attachment(g, xs, s) < r:
            raise InputError(f"subgraph {i} sees fewer than {r} vertices of X")
        used |= s
    bound = Fraction(1, 2) * beta * r * r * len(xs)
    return _check("large-component-count", len(subgraphs), bound, ["bound 1/2 beta r^2 |X|"])


# marking

@dataclass(frozen=True)
class Scrub:
    bag: int
    root: FrozenSet[int]
    twigs: Tuple[FrozenSet[int], ...]

    @property
    def vertices(self) -> FrozenSet[int]:
        out = set(self.root)
        for w in self.twigs:
            out |= w
        return frozenset(out)

    @property
    def size(self) -> int:
        return len(self.vertices)


@dataclass
class MarkingState:
    forest: ForestDecomposition
    marked: Dict[int, str] = field(default_factory=dict)  # node -> step that marked it
    scrub_log: List[Scrub] = field(default_factory=list)
    visit_order: List[int] = field(default_factory=list)

    @property
    def marked_vertices(self) -> FrozenSet[int]:
        return self.forest.vertices_of(self.marked)

    @property
    def scrub_vertices(self) -> FrozenSet[int]:
        out: Set[int] = set()
        for s in self.scrub_log:
            out |= s.vertices
        return frozenset(out)


def build_scrub(g: Graph, xs: FrozenSet[int], allowed: FrozenSet[int], root: FrozenSet[int], r: int,
                bag: int = -1) -> Optional[Scrub]:
    """Scrub rooted at ``root`` inside ``allowed``; twigs are whole components next to the root.

    ``None`` when the root plus its twigs is not connected.
    """
    root = frozenset(root) & allowed
    if not root:
        return None
    twigs = []
    for c in components_within(g, allowed - root):
        cs = frozenset(c)
        touches = any(g.adj[v] & root for v in cs)
        if touches and attachment(g, xs, cs) < r:
            twigs.append(cs)
    s = Scrub(bag, root, tuple(twigs))
    if not is_connected_set(g, s.vertices):
        return None
    return s


def run_marking(g: Graph, x: Iterable[int], fd: ForestDecomposition, r: int, threshold: int) -> MarkingState:
    """Steps 1-4 of the marking procedure; ``threshold`` is the scrub size to beat."""
    xs = check_vertices(g, x)
    if fd.max_bag and fd.vertices_of(range(len(fd.bags))) & xs:
        raise InputError("forest decomposition contains modulator vertices")
    ms = MarkingState(fd)
    universe = fd.vertices_of(range(len(fd.bags)))
    used: Set[int] = set()  # vertices of marked bags and logged scrubs
    # step 2: breadth-first over each tree
    for node in fd.bfs_order():
        ms.visit_order.append(node)
        allowed = frozenset(universe - used)
        s = build_scrub(g, xs, allowed, fd.bags[node], r, node)
        if s is None:
            continue
        if s.size > threshold and attachment(g, xs, s.vertices) >= r:
            ms.marked[node] = "scrub"
            ms.scrub_log.append(s)
            used |= s.vertices
            used |= fd.bags[node]
    # step 3: join bags, deepest first
    order = fd.bfs_order()
    for j in reversed(order):
        kids = fd.children(j)
        if len(kids) < 2 or j in ms.marked:
            continue
        for c in kids:
            sub = fd.subtree(c)
            if any(n in ms.marked for n in sub):
                continue
            inside = fd.vertices_of(sub) - fd.bags[j]
            if any(attachment(g, xs, comp) >= r for comp in components_within(g, inside)):
                ms.marked[j] = "join"
                break
    # step 4: close under least common ancestors
    changed = True
    while changed:
        changed = False
        nodes = sorted(ms.marked)
        for i, a in enumerate(nodes):
            for b in nodes[i + 1:]:
                c = fd.lca(a, b)
                if c is not None and c not in ms.marked:
                    ms.marked[c] = "lca"
                    changed = True
    return ms


def unmarked_subtrees(fd: ForestDecomposition, marked: Iterable[int]) -> List[List[int]]:
    """Maximal node sets of a tree avoiding marked nodes, each connected."""
    marked = set(marked)
    seen: Set[int] = set()
    out = []
    for s in range(len(fd.bags)):
        if s in marked or s in seen:
            continue
        comp = [s]
        seen.add(s)
        i = 0
        while i < len(comp):
            for w in fd.neighbors(comp[i]):
                if w not in marked and w not in seen:
                    seen.add(w)
                    comp.append(w)
            i += 1
        out.append(sorted(comp))
    return out


def marked_neighbors(fd: ForestDecomposition, nodes: Iterable[int], marked: Iterable[int]) -> List[int]:
    nodes = set(nodes)
    marked = set(marked)
    out = set()
    for u in nodes:
        for w in fd.neighbors(u):
            if w not in nodes and w in marked:
                out.add(w)
    return sorted(out)


def check_marking_bounds(ms: MarkingState, g: Graph, x: Iterable[int], params: AuditParams) -> List[CheckResult]:
    xs = check_vertices(g, x)
    fd = ms.forest
    r, t = params.r, params.t
    nx = len(xs)
    worst = 0
    for sub in unmarked_subtrees(fd, ms.marked):
        worst = max(worst, len(marked_neighbors(fd, sub, ms.marked)))
    out = [_check("unmarked-subtree-marked-neighbors", worst, 2, ["max over maximal unmarked subtrees"])]
    out.append(_check("marked-bags", len(ms.marked), 2 * params.beta * r * r * nx, ["bound 2 beta r^2 |X|"]))
    literal = math.floor(2 * params.beta * r * r * nx * t)
    out.append(_check(
        "marked-vertices", len(ms.marked_vertices), 2 * params.beta * r * r * nx * (t + 1),
        [f"bound 2 beta r^2 |X| (t+1); literal with t: {literal}"],
    ))
    w1, _ = params.varpi(t + r)
    total = sum(s.size for s in ms.scrub_log)
    lit = math.floor(params.beta ** 2 * r ** 4 * t * w1 * nx)
    # scrubs are built disjoint; a violation would make the sum overcount
    disjoint = len(ms.scrub_vertices) == total
    out.append(_check(
        "scrub-total", total, params.beta ** 2 * r ** 4 * (t + 1) * w1 * nx,
        [f"bound beta^2 r^4 (t+1) varpi(t+r) |X|; literal with t: {lit}",
         "" if disjoint else "scrubs overlap",
         _limited(params, t + r)],
    ))
    if not disjoint:
        out[-1] = CheckResult(out[-1].check_id, out[-1].measured, out[-1].bound, False, out[-1].notes)
    return out


# leftover trees

@dataclass(frozen=True)
class LeftoverTree:
    nodes: Tuple[int, ...]
    vertices: FrozenSet[int]  # bag vertices minus marked vertices
    d_x: int
    marked_neighbors: Tuple[int, ...]


def leftover_trees(ms: MarkingState, g: Graph, x: Iterable[int]) -> List[LeftoverTree]:
    """The trees of the stripped forest, minus those made only of scrub vertices."""
    xs = check_vertices(g, x)
    mv = ms.marked_vertices
    sv = ms.scrub_vertices
    out = []
    for sub in unmarked_subtrees(ms.forest, ms.marked):
        verts = ms.forest.vertices_of(sub) - mv
        if verts <= sv:
            continue
        out.append(LeftoverTree(tuple(sub), verts, attachment(g, xs, verts),
                                tuple(marked_neighbors(ms.forest, sub, ms.marked))))
    return out


def classify_trees(ms: MarkingState, g: Graph, x: Iterable[int], r: int) -> Tuple[List[LeftoverTree], List[LeftoverTree]]:
    small, large = [], []
    for tr in leftover_trees(ms, g, x):
        (large if tr.d_x >= r else small).append(tr)
    return small, large


def _tree_adj(fd: ForestDecomposition, nodes: Iterable[int]) -> Dict[int, List[int]]:
    ns = set(nodes)
    return {u: sorted(w for w in fd.neighbors(u) if w in ns) for u in sorted(ns)}


def _path_between(adj: Mapping[int, List[int]], a: int, b: int) -> List[int]:
    prev = {a: None}
    queue = [a]
    for u in queue:
        if u == b:
            break
        for w in adj[u]:
            if w not in prev:
                prev[w] = u
                queue.append(w)
    path = [b]
    while path[-1] != a:
        path.append(prev[path[-1]])
    return path[::-1]


@dataclass(frozen=True)
class CentralPath:
    nodes: Tuple[int, ...]
    rule: str  # "two-marked" | "one-marked" | "no-marked"


def central_path(ms: MarkingState, tree: LeftoverTree, g: Graph, x: Iterable[int]) -> CentralPath:
    """Bag path between the marked neighbours, or from one to a best leaf."""
    xs = check_vertices(g, x)
    fd = ms.forest
    adj = _tree_adj(fd, tree.nodes)
    mv = ms.marked_vertices
    ends = []
    for m in tree.marked_neighbors:
        for u in fd.neighbors(m):
            if u in adj:
                ends.append(u)
                break
    if len(ends) >= 2:
        return CentralPath(tuple(_path_between(adj, ends[0], ends[1])), "two-marked")
    if ends:
        start, rule = ends[0], "one-marked"
    else:
        start, rule = min(tree.nodes, key=lambda u: (fd.depth(u), u)), "no-marked"
    leaves = [u for u in adj if len(adj[u]) <= 1 and u != start] or [start]
    best = None
    for leaf in sorted(leaves):
        p = _path_between(adj, start, leaf)
        # most modulator contact, then the longest path so less hangs off it
        score = (attachment(g, xs, fd.vertices_of(p) - mv), len(p))
        if best is None or score > best[0]:
            best = (score, p)
    return CentralPath(tuple(best[1]), rule)


def path_decomposition_from_central(ms: MarkingState, tree: LeftoverTree, cpath: CentralPath) -> List[FrozenSet[int]]:
    """Central-path bags, each absorbing the subtrees hanging off it."""
    fd = ms.forest
    adj = _tree_adj(fd, tree.nodes)
    on = set(cpath.nodes)
    mv = ms.marked_vertices
    bags = []
    for u in cpath.nodes:
        acc = set(fd.bags[u])
        stack = [w for w in adj[u] if w not in on]
        seen = set(stack)
        while stack:
            v = stack.pop()
            acc |= fd.bags[v]
            for w in adj[v]:
                if w not in on and w not in seen:
                    seen.add(w)
                    stack.append(w)
        bags.append(frozenset(acc - mv))
    return bags


def _between(bags: Sequence[FrozenSet[int]], a: int, z: int) -> FrozenSet[int]:
    """Vertices of bags ``a..z`` outside the two end bags."""
    s: Set[int] = set()
    for i in range(a, z + 1):
        s |= bags[i]
    return frozenset(s - bags[a] - bags[z])


@dataclass(frozen=True)
class Segment:
    vertices: FrozenSet[int]
    start: int
    end: int
    final: bool


def cutting_up(bags: Sequence[FrozenSet[int]], params: AuditParams) -> List[Segment]:
    """Walk from the first bag, cutting whenever the part between the cut bags is large."""
    if not bags:
        return []
    whole = frozenset().union(*bags)
    if len(whole) <= params.f_hat():
        return [Segment(whole, 0, len(bags) - 1, True)]
    p = max(len(b) for b in bags) - 1
    w1, _ = params.varpi(params.t + params.r)
    w2, _ = params.varpi(2 * params.t + params.r)
    threshold = (p + 2 * (params.t + 1) * w1) * w2
    out = []
    a = 0
    last = len(bags) - 1
    while a < last:
        cut = None
        for z in range(a + 1, last + 1):
            if len(_between(bags, a, z)) >= max(threshold, 1):
                cut = z
                break
        if cut is None or cut == last:
            out.append(Segment(_between(bags, a, last), a, last, True))
            break
        out.append(Segment(_between(bags, a, cut), a, cut, False))
        a = cut
    return out


def hanging_component_violations(g: Graph, x: Iterable[int], fd: ForestDecomposition) -> int:
    """Bags ``B`` where ``B`` plus the vertices below it has more than ``|B|`` components."""
    xs = check_vertices(g, x)
    bad = 0
    for node in range(len(fd.bags)):
        b = fd.bags[node]
        below = fd.vertices_of(fd.subtree(node))
        if len(components_within(g, below - xs)) > len(b):
            bad += 1
    return bad


def check_tree_bounds(ms: MarkingState, g: Graph, x: Iterable[int], params: AuditParams) -> List[CheckResult]:
    """Bounds on the leftover trees: pseudo-scrubs, small trees, central paths, segments, large trees."""
    xs = check_vertices(g, x)
    r, t = params.r, params.t
    nx = len(xs)
    beta = params.beta
    w1, _ = params.varpi(t + r)
    w2, _ = params.varpi(2 * t + r)
    checks: List[CheckResult] = []
    small_trees, large_trees = classify_trees(ms, g, xs, r)
    sv = ms.scrub_vertices

    # pseudo-scrubs around each marked bag
    worst_pseudo = 0
    for b in sorted(ms.marked):
        acc: Set[int] = set()
        for tr in small_trees + large_trees:
            if b in tr.marked_neighbors and tr.d_x < r:
                acc |= tr.vertices - sv
        worst_pseudo = max(worst_pseudo, len(acc))
    checks.append(_check("pseudo-scrub", worst_pseudo, w1,
                         ["max over marked bags; needs reduction at boundary t+r", _limited(params, t + r)],
                         required=False))

    tsmall = sum(len(tr.vertices - sv) for tr in small_trees)
    checks.append(_check("t-small-total", tsmall, 4 * beta * r * r * w2 * nx,
                         ["bound 4 beta r^2 varpi(2t+r) |X|", _limited(params, 2 * t + r)]))

    # large trees: central paths, path decompositions, cutting up
    width_measured = 0
    seg_max = 0
    seg_degree_bad = 0
    rules: Dict[str, int] = {}
    pd_valid = True
    for tr in large_trees:
        cp = central_path(ms, tr, g, xs)
        rules[cp.rule] = rules.get(cp.rule, 0) + 1
        bags = path_decomposition_from_central(ms, tr, cp)
        sub_ids = sorted(tr.vertices)
        loc = {v: i for i, v in enumerate(sub_ids)}
        ok, _ = validate(induced(g, sub_ids), path_decomposition([frozenset(loc[v] for v in b) for b in bags]))
        pd_valid &= ok
        width_measured = max(width_measured, max(len(b) for b in bags))
        for seg in cutting_up(bags, params):
            seg_max = max(seg_max, len(seg.vertices))
            if seg.final:
                if attachment(g, xs, seg.vertices) < r and len(seg.vertices) > w2:
                    seg_degree_bad += 1
            elif not any(attachment(g, xs, c) >= r for c in components_within(g, seg.vertices)):
                seg_degree_bad += 1
    lit_width = t * (w1 + 1)
    width_check = _check(
        "central-path-width", width_measured, (t + 1) * (w1 + 1),
        [f"max bag size; bound (t+1)(varpi(t+r)+1); literal t(varpi(t+r)+1): {lit_width}",
         f"central path rules {json.dumps(rules, sort_keys=True)}" if rules else "",
         "" if pd_valid else "invalid path decomposition",
         "no-marked tree rooted at its top bag" if rules.get("no-marked") else "",
         _limited(params, t + r)],
    )
    if not pd_valid:
        width_check = CheckResult(width_check.check_id, width_check.measured, width_check.bound, False, width_check.notes)
    checks.append(width_check)
    checks.append(_check("cutting-up-segment-size", seg_max, params.f_hat(),
                         [f"bound f(r,t) with t+1; literal {params.f_literal()}", _limited(params, t + r, 2 * t + r)],
                         required=False))
    checks.append(_check("cutting-up-segment-degree", seg_degree_bad, 0,
                         ["segments without a component seeing r modulator vertices; needs a reduced instance"],
                         required=False))

    tlarge = sum(len(tr.vertices) for tr in large_trees)
    lbound = Fraction(1, 2) * beta * r * r * nx * (params.f_hat() + w2)
    lit_l12 = math.floor(6 * beta * r * r * t * w2 * w2 * nx)
    checks.append(_check("t-large-total", tlarge, lbound,
                         [f"bound 1/2 beta r^2 |X| (f + varpi(2t+r)); literal 6 beta r^2 t varpi(2t+r)^2 |X|: {lit_l12}",
                          _limited(params, t + r, 2 * t + r)]))
    return checks


# report

@dataclass
class AuditReport:
    checks: List[CheckResult]
    meta: Dict

    @property
    def all_required_hold(self) -> bool:
        return all(c.holds for c in self.checks if c.required)

    def by_id(self, cid: str) -> CheckResult:
        for c in self.checks:
            if c.check_id == cid:
                return c
        raise KeyError(cid)

    def csv(self) -> str:
        buf = io.StringIO()
        w = csv.DictWriter(buf, fieldnames=["check_id", "measured", "bound", "holds", "notes"], lineterminator="\n")
        w.writeheader()
        for c in self.checks:
            w.writerow(c.row())
        return buf.getvalue()

    def json(self) -> str:
        body = {"version": 1, "meta": self.meta, "checks": [dict(c.row(), required=c.required) for c in self.checks]}
        return json.dumps(body, sort_keys=True, indent=1) + "\n"


def audit_report(g: Graph, x: Iterable[int], params: AuditParams, exact_cap: int = 14) -> AuditReport:
    """Run the whole pipeline and compare every measured quantity with its bound."""
    xs = check_vertices(g, x)
    r, t = params.r, params.t
    nx = len(xs)
    beta = params.beta
    checks: List[CheckResult] = []

    # sparsity of the host graph
    if g.n:
        avg = average_degree(g)
        checks.append(CheckResult("average-degree", math.floor(avg), math.floor(beta * r * r),
                                 avg < beta * r * r, f"exact average {avg}; strict bound beta r^2"))
    else:
        checks.append(CheckResult("average-degree", 0, math.floor(beta * r * r), True, "empty graph"))
    cf = params.sparsity.clique_factor() if r > 2 else float("inf")
    cbound = cf * g.n
    cliques = count_cliques(g)
    checks.append(CheckResult("clique-count", cliques, math.floor(cbound) if math.isfinite(cbound) else -1,
                              cliques <= cbound, f"bound 2^(tau r log{params.log_base:g} r) n"))

    cls = classify_components(g, xs, r)
    checks.append(check_large_components(g, xs, cls.large, r, beta) if r >= 2 else
                  CheckResult("large-component-count", len(cls.large), 0, False, "r < 2"))

    wr, _ = params.varpi(r)
    small_total = sum(len(c) for c in cls.small)
    cf_finite = cf if math.isfinite(cf) else 0.0
    checks.append(_check(
        "small-components-total", small_total, wr * (cf_finite + float(beta * r * r)) * nx,
        ["bound varpi(r) (2^(tau r log r) + beta r^2) |X|", _limited(params, r)],
    ))

    fd = rooted_forest_decomposition(g, xs, t, components=cls.large, exact_cap=exact_cap)
    w1, _ = params.varpi(t + r)
    w2, _ = params.varpi(2 * t + r)
    ms = run_marking(g, xs, fd, r, w1)
    checks += check_marking_bounds(ms, g, xs, params)

    checks.append(_check("hanging-subtree-components", hanging_component_violations(g, xs, fd), 0,
                         ["bags whose subtree has more components than the bag has vertices"]))

    checks += check_tree_bounds(ms, g, xs, params)
    lbound = Fraction(1, 2) * beta * r * r * nx * (params.f_hat() + w2)

    assembled = (
        nx
        + math.floor(wr * (cf_finite + float(beta * r * r)) * nx)
        + math.floor(2 * beta * r * r * nx * (t + 1))
        + math.floor(beta ** 2 * r ** 4 * (t + 1) * w1 * nx)
        + math.floor(4 * beta * r * r * w2 * nx)
        + math.floor(lbound)
    )
    checks.append(_check("total-vertices", g.n, assembled, ["|X| plus the component, marking, scrub and tree bounds"]))
    small_trees, large_trees = classify_trees(ms, g, xs, r)

    meta = {
        "n": g.n,
        "m": g.m,
        "x": sorted(xs),
        "r": r,
        "t": t,
        "varpi": {str(k): v for k, v in sorted(params.varpi_slots.items())},
        "visit_order": ms.visit_order,
        "marked": {str(k): v for k, v in sorted(ms.marked.items())},
        "scrubs": [sorted(s.vertices) for s in ms.scrub_log],
        "small_components": len(cls.small),
        "large_components": len(cls.large),
        "t_small": len(small_trees),
        "t_large": len(large_trees),
        "marked_vertex_count": len(ms.marked_vertices),
    }
    return AuditReport(checks, meta)
