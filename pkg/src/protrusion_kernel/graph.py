"""Immutable simple undirected graphs over vertex ids ``0..n-1``.

Editing operations never mutate; they return a new graph together with an
``old id -> new id`` mapping when vertex identities shift.
"""
from __future__ import annotations

from collections import deque
from itertools import combinations
from typing import Dict, FrozenSet, Iterable, List, Tuple

from .errors import InputError

Edge = Tuple[int, int]


def _norm_edge(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


class Graph:
    """Simple undirected graph. Duplicate edges are merged, loops rejected."""

    __slots__ = ("n", "edges", "adj", "_hash")

    def __init__(self, n: int, edges: Iterable[Iterable[int]] = ()):
        if n < 0:
            raise InputError(f"negative vertex count {n}")
        es = set()
        for e in edges:
            u, v = e
            if not (0 <= u < n and 0 <= v < n):
                raise InputError(f"edge ({u}, {v}) out of range for n={n}")
            if u == v:
                raise InputError(f"self-loop at vertex {u}")
            es.add(_norm_edge(u, v))
        adj: List[set] = [set() for _ in range(n)]
        for u, v in es:
            adj[u].add(v)
            adj[v].add(u)
        self.n = n
        self.edges: FrozenSet[Edge] = frozenset(es)
        self.adj: Tuple[FrozenSet[int], ...] = tuple(frozenset(a) for a in adj)
        self._hash = None

    @property
    def m(self) -> int:
        return len(self.edges)

    def vertices(self) -> range:
        return range(self.n)

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adj[u]

    def sorted_edges(self) -> List[Edge]:
        return sorted(self.edges)

    def max_degree(self) -> int:
        return max((len(a) for a in self.adj), default=0)

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        return self.n == other.n and self.edges == other.edges

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.n, self.edges))
        return self._hash

    def __repr__(self):
        return f"Graph(n={self.n}, edges={self.sorted_edges()})"


def check_vertices(g: Graph, vs: Iterable[int]) -> FrozenSet[int]:
    s = frozenset(vs)
    for v in s:
        if not (isinstance(v, int) and 0 <= v < g.n):
            raise InputError(f"vertex {v!r} not in graph with n={g.n}")
    return s


def boundary(g: Graph, w: Iterable[int]) -> FrozenSet[int]:
    """Vertices of ``w`` having a neighbor outside ``w``."""
    ws = check_vertices(g, w)
    return frozenset(v for v in ws if not g.adj[v] <= ws)


def neighborhood(g: Graph, w: Iterable[int]) -> FrozenSet[int]:
    """Vertices outside ``w`` adjacent to some vertex of ``w``."""
    ws = check_vertices(g, w)
    out = set()
    for v in ws:
        out.update(g.adj[v])
    return frozenset(out - ws)


def degree_wrt(g: Graph, x: Iterable[int], y: Iterable[int]) -> int:
    """Number of vertices of ``x`` with at least one neighbor in ``y``."""
    xs = check_vertices(g, x)
    ys = check_vertices(g, y)
    if xs & ys:
        raise InputError(f"sets overlap on {sorted(xs & ys)}")
    return sum(1 for u in xs if not g.adj[u].isdisjoint(ys))


def attachment(g: Graph, x: FrozenSet[int], y: Iterable[int]) -> int:
    """Unchecked ``degree_wrt`` for hot loops; ``x`` and ``y`` assumed disjoint."""
    seen = set()
    for v in y:
        seen.update(g.adj[v] & x)
    return len(seen)


def induced(g: Graph, s: Iterable[int]) -> Graph:
    """Subgraph induced by ``s``; vertex ``sorted(s)[i]`` becomes ``i``."""
    order = sorted(check_vertices(g, s))
    idx = {v: i for i, v in enumerate(order)}
    edges = [(idx[u], idx[v]) for u in order for v in g.adj[u] if v in idx and u < v]
    return Graph(len(order), edges)


def index_map(s: Iterable[int]) -> Dict[int, int]:
    """The ``old -> new`` mapping used by :func:`induced`."""
    return {v: i for i, v in enumerate(sorted(s))}


def remove_vertices(g: Graph, s: Iterable[int]) -> Tuple[Graph, Dict[int, int]]:
    drop = check_vertices(g, s)
    keep = [v for v in range(g.n) if v not in drop]
    return induced(g, keep), index_map(keep)


def contract_edge(g: Graph, e: Iterable[int]) -> Tuple[Graph, Dict[int, int]]:
    """Contract edge ``e`` into a single vertex.

    The merged vertex takes the position of the smaller endpoint; every vertex
    after the larger endpoint shifts down by one.
    """
    u, v = _norm_edge(*e)
    if not (0 <= u < g.n and 0 <= v < g.n) or not g.has_edge(u, v):
        raise InputError(f"({u}, {v}) is not an edge")
    mapping = {}
    for w in range(g.n):
        if w == v:
            mapping[w] = u
        else:
            mapping[w] = w if w < v else w - 1
    edges = set()
    for a, b in g.edges:
        a2, b2 = mapping[a], mapping[b]
        if a2 != b2:
            edges.add(_norm_edge(a2, b2))
    return Graph(g.n - 1, edges), mapping


def components_within(g: Graph, allowed: Iterable[int]) -> List[Tuple[int, ...]]:
    """Connected components of ``g[allowed]`` as sorted tuples, ordered by minimum."""
    allowed = set(allowed)
    seen = set()
    comps = []
    for s in sorted(allowed):
        if s in seen:
            continue
        seen.add(s)
        comp = [s]
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for w in g.adj[u]:
                if w in allowed and w not in seen:
                    seen.add(w)
                    comp.append(w)
                    queue.append(w)
        comps.append(tuple(sorted(comp)))
    return comps


def connected_components(g: Graph) -> List[Tuple[int, ...]]:
    return components_within(g, range(g.n))


def is_connected_set(g: Graph, s: Iterable[int]) -> bool:
    s = set(s)
    return len(s) <= 1 or len(components_within(g, s)) == 1


def is_forest(g: Graph) -> bool:
    return g.m == g.n - len(connected_components(g))


def disjoint_union(*graphs: Graph) -> Graph:
    edges = []
    off = 0
    for h in graphs:
        edges.extend((u + off, v + off) for u, v in h.edges)
        off += h.n
    return Graph(off, edges)


def articulation_points(g: Graph, allowed: Iterable[int] = None) -> FrozenSet[int]:
    """Cut vertices of ``g[allowed]`` (iterative Hopcroft-Tarjan)."""
    allowed = set(range(g.n)) if allowed is None else set(allowed)
    disc: Dict[int, int] = {}
    low: Dict[int, int] = {}
    cuts = set()
    timer = 0
    for root in sorted(allowed):
        if root in disc:
            continue
        disc[root] = low[root] = timer
        timer += 1
        root_children = 0
        stack = [(root, -1, iter(sorted(g.adj[root] & allowed)))]
        while stack:
            u, parent, it = stack[-1]
            advanced = False
            for w in it:
                if w == parent:
                    continue
                if w in disc:
                    low[u] = min(low[u], disc[w])
                else:
                    disc[w] = low[w] = timer
                    timer += 1
                    if u == root:
                        root_children += 1
                    stack.append((w, u, iter(sorted(g.adj[w] & allowed))))
                    advanced = True
                    break
            if not advanced:
                stack.pop()
                if stack:
                    p = stack[-1][0]
                    low[p] = min(low[p], low[u])
                    if p != root and low[u] >= disc[p]:
                        cuts.add(p)
        if root_children >= 2:
            cuts.add(root)
    return frozenset(cuts)


# small named graphs used by tests, generators and the trivial NO instance

def complete_graph(n: int) -> Graph:
    return Graph(n, combinations(range(n), 2))


def path_graph(n: int) -> Graph:
    return Graph(n, ((i, i + 1) for i in range(n - 1)))


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise InputError("cycle needs at least 3 vertices")
    return Graph(n, ((i, (i + 1) % n) for i in range(n)))


def star_graph(leaves: int) -> Graph:
    return Graph(leaves + 1, ((0, i) for i in range(1, leaves + 1)))


def complete_bipartite(a: int, b: int) -> Graph:
    return Graph(a + b, ((i, a + j) for i in range(a) for j in range(b)))


def grid_graph(rows: int, cols: int) -> Graph:
    edges = []
    for i in range(rows):
        for j in range(cols):
            v = i * cols + j
            if j + 1 < cols:
                edges.append((v, v + 1))
            if i + 1 < rows:
                edges.append((v, v + cols))
    return Graph(rows * cols, edges)


def petersen_graph() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return Graph(10, outer + spokes + inner)
