"""Boundaried graphs: gluing, replacement, canonical codes and enumeration."""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, permutations, product
from math import factorial
from typing import Dict, FrozenSet, Iterable, Iterator, List, Mapping, Optional, Sequence, Tuple

from .errors import CapabilityError, InputError
from .graph import Graph, boundary, check_vertices, induced

ENUM_T_CAP = 2
ENUM_N_CAP = 6
CANON_PERM_CAP = 200_000


@dataclass(frozen=True)
class BoundariedGraph:
    """A graph whose vertex ``labels[i]`` carries boundary label ``i + 1``."""

    graph: Graph
    labels: Tuple[int, ...]

    def __post_init__(self):
        labels = tuple(self.labels)
        object.__setattr__(self, "labels", labels)
        if len(set(labels)) != len(labels):
            raise InputError(f"boundary labels not injective: {labels}")
        for v in labels:
            if not (0 <= v < self.graph.n):
                raise InputError(f"boundary vertex {v} out of range")

    @property
    def t(self) -> int:
        return len(self.labels)

    @property
    def n(self) -> int:
        return self.graph.n

    @property
    def boundary(self) -> FrozenSet[int]:
        return frozenset(self.labels)

    def internal(self) -> List[int]:
        b = self.boundary
        return [v for v in range(self.graph.n) if v not in b]

    def label_of(self) -> Dict[int, int]:
        return {v: i + 1 for i, v in enumerate(self.labels)}

    def boundary_edges(self) -> Tuple[Tuple[int, int], ...]:
        """Edges between boundary vertices, as sorted label pairs."""
        lab = self.label_of()
        out = []
        for u, v in self.graph.edges:
            if u in lab and v in lab:
                a, b = lab[u], lab[v]
                out.append((min(a, b), max(a, b)))
        return tuple(sorted(out))


def boundary_only(t: int, edges: Iterable[Tuple[int, int]] = ()) -> BoundariedGraph:
    """``t`` labeled vertices and nothing else; vertex ``i`` has label ``i + 1``."""
    return BoundariedGraph(Graph(t, edges), tuple(range(t)))


def glue_with_map(g1: BoundariedGraph, g2: BoundariedGraph) -> Tuple[BoundariedGraph, Dict[int, int]]:
    """Glue and also return where each vertex of ``g2`` ended up.

    Vertices of ``g1`` keep their ids; non-boundary vertices of ``g2`` follow
    in increasing order.
    """
    if g1.t != g2.t:
        raise InputError(f"cannot glue {g1.t}-boundaried with {g2.t}-boundaried graph")
    map2: Dict[int, int] = {}
    lab2 = g2.label_of()
    nxt = g1.n
    for v in range(g2.n):
        if v in lab2:
            map2[v] = g1.labels[lab2[v] - 1]
        else:
            map2[v] = nxt
            nxt += 1
    edges = set(g1.graph.edges)
    for u, v in g2.graph.edges:
        a, b = map2[u], map2[v]
        edges.add((min(a, b), max(a, b)))
    return BoundariedGraph(Graph(nxt, edges), g1.labels), map2


def glue(g1: BoundariedGraph, g2: BoundariedGraph) -> BoundariedGraph:
    """Identify equal labels of the two graphs; parallel edges merge.

    The result keeps ``g1``'s labels so it records where the boundary went.
    """
    return glue_with_map(g1, g2)[0]


def boundaried_subgraph(g: Graph, w: Iterable[int], labeling: Optional[Mapping[int, int]] = None) -> BoundariedGraph:
    """``G[W]`` with ``∂(W)`` as boundary.

    Without ``labeling`` the boundary vertices get labels in increasing id order.
    """
    ws = sorted(check_vertices(g, w))
    bd = boundary(g, ws)
    labeling = _check_labeling(bd, labeling)
    idx = {v: i for i, v in enumerate(ws)}
    labels = [0] * len(bd)
    for v, lab in labeling.items():
        labels[lab - 1] = idx[v]
    return BoundariedGraph(induced(g, ws), tuple(labels))


def _check_labeling(bd: FrozenSet[int], labeling) -> Dict[int, int]:
    if labeling is None:
        return {v: i + 1 for i, v in enumerate(sorted(bd))}
    labeling = dict(labeling)
    if set(labeling) != set(bd) or sorted(labeling.values()) != list(range(1, len(bd) + 1)):
        raise InputError(f"labeling {labeling} is not a bijection from {sorted(bd)} onto 1..{len(bd)}")
    return labeling


def replace_protrusion(
    g: Graph,
    w: Iterable[int],
    rep: BoundariedGraph,
    labeling: Optional[Mapping[int, int]] = None,
) -> Tuple[Graph, Dict[int, int]]:
    """``G[V \\ W'] ⊕ rep`` with ``W' = W \\ ∂(W)``.

    Returns the new graph and the ``old -> new`` id map of the vertices kept
    from ``g``; those keep their relative order and come first.
    """
    ws = check_vertices(g, w)
    bd = boundary(g, ws)
    if rep.t != len(bd):
        raise InputError(f"representative has {rep.t} terminals, protrusion boundary has {len(bd)}")
    labeling = _check_labeling(bd, labeling)
    restricted = ws - bd
    keep = [v for v in range(g.n) if v not in restricted]
    idx = {v: i for i, v in enumerate(keep)}
    labels = [0] * len(bd)
    for v, lab in labeling.items():
        labels[lab - 1] = idx[v]
    outside = BoundariedGraph(induced(g, keep), tuple(labels))
    glued = glue(outside, rep)
    return glued.graph, idx


# canonical codes

def _refine(bg: BoundariedGraph) -> List[List[int]]:
    """Ordered cells of internal vertices under colour refinement with fixed labels."""
    g = bg.graph
    lab = bg.label_of()
    color = {v: (lab[v],) if v in lab else (0,) for v in range(g.n)}
    ncls = len(set(color.values()))
    while True:
        sig = {v: (color[v], tuple(sorted(color[w] for w in g.adj[v]))) for v in range(g.n)}
        ranks = {s: i for i, s in enumerate(sorted(set(sig.values())))}
        color = {v: (ranks[sig[v]],) for v in range(g.n)}
        k = len(ranks)
        if k == ncls:
            break
        ncls = k
    cells: Dict[Tuple[int, ...], List[int]] = {}
    for v in range(g.n):
        if v not in lab:
            cells.setdefault(color[v], []).append(v)
    return [cells[c] for c in sorted(cells)]


def _code_for(g: Graph, order: Sequence[int]) -> str:
    bits = []
    n = g.n
    for i in range(n):
        ai = g.adj[order[i]]
        for j in range(i + 1, n):
            bits.append("1" if order[j] in ai else "0")
    return "".join(bits)


def canonical_order(bg: BoundariedGraph) -> Tuple[str, Tuple[int, ...]]:
    """Minimum adjacency code over all orderings fixing the labels, and one ordering achieving it."""
    cells = _refine(bg)
    count = 1
    for c in cells:
        count *= factorial(len(c))
    if count > CANON_PERM_CAP:
        raise CapabilityError(f"canonical form would scan {count} orderings")
    head = list(bg.labels)
    best = None
    best_order = None
    for choice in product(*(permutations(c) for c in cells)):
        order = head + [v for part in choice for v in part]
        code = _code_for(bg.graph, order)
        if best is None or code < best:
            best, best_order = code, order
    return f"{bg.n}:{bg.t}:{best}", tuple(best_order)


def canonical_form(bg: BoundariedGraph) -> str:
    """Deterministic code; equal iff isomorphic by a map fixing every label.

    Format ``"n:t:bits"`` where ``bits`` is the upper adjacency triangle in
    row-major order, boundary vertices first in label order.
    """
    return canonical_order(bg)[0]


def canonical_graph(bg: BoundariedGraph) -> BoundariedGraph:
    return from_code(canonical_form(bg))


def from_code(code: str) -> BoundariedGraph:
    n_s, t_s, bits = code.split(":")
    n, t = int(n_s), int(t_s)
    if len(bits) != n * (n - 1) // 2:
        raise InputError(f"malformed canonical code {code!r}")
    edges = []
    k = 0
    for i in range(n):
        for j in range(i + 1, n):
            if bits[k] == "1":
                edges.append((i, j))
            k += 1
    return BoundariedGraph(Graph(n, edges), tuple(range(t)))


# enumeration

RULES = ("boundary-connected", "any")


def enumerate_boundaried(
    t: int,
    n_max: int,
    rule: str = "boundary-connected",
    t_cap: int = ENUM_T_CAP,
    n_cap: int = ENUM_N_CAP,
) -> Iterator[BoundariedGraph]:
    """Every ``t``-boundaried graph on at most ``n_max`` vertices, once per iso class.

    Under ``"boundary-connected"`` each component must contain a terminal.
    Graphs come out in canonical form, ordered by vertex count then code.
    Generation adds one non-terminal vertex at a time to the previous layer;
    a vertex farthest from the boundary can always be removed without breaking
    the rule, so nothing is missed.
    """
    if rule not in RULES:
        raise InputError(f"unknown connectivity rule {rule!r}")
    if t < 0 or n_max < t:
        raise InputError(f"need 0 <= t <= n_max, got t={t}, n_max={n_max}")
    if t > t_cap or n_max > n_cap:
        raise CapabilityError(f"enumeration capped at t <= {t_cap}, n_max <= {n_cap}")
    pairs = list(combinations(range(t), 2))
    layer = {}
    for mask in range(1 << len(pairs)):
        bg = boundary_only(t, [p for i, p in enumerate(pairs) if mask >> i & 1])
        layer[canonical_form(bg)] = bg
    for code in sorted(layer):
        yield from_code(code)
    for n in range(t + 1, n_max + 1):
        nxt: Dict[str, None] = {}
        for code in sorted(layer):
            base = from_code(code)
            old = n - 1
            for mask in range(1 << old):
                if mask == 0 and rule == "boundary-connected":
                    continue
                edges = list(base.graph.edges) + [(i, old) for i in range(old) if mask >> i & 1]
                bg = BoundariedGraph(Graph(n, edges), base.labels)
                nxt.setdefault(canonical_form(bg), None)
        layer = nxt
        for code in sorted(layer):
            yield from_code(code)
