"""Exact and approximate solvers for Feedback Vertex Set and Vertex Cover.

The FVS solver works on multigraphs whose loops and parallel edges count as
cycles, and accepts a set of vertices that may not be deleted. Both features
are needed to evaluate boundaried signatures, where boundary blocks are
identified into single undeletable vertices.
"""
from __future__ import annotations

from typing import Dict, Hashable, Iterable, List, Optional, Sequence, Tuple

from .graph import Graph

Adj = Dict[Hashable, Dict[Hashable, int]]


def _build(vertices: Iterable[Hashable], edges: Iterable[Tuple[Hashable, Hashable]]) -> Adj:
    adj: Adj = {v: {} for v in vertices}
    for u, v in edges:
        adj.setdefault(u, {})
        adj.setdefault(v, {})
        if u == v:
            adj[u][u] = adj[u].get(u, 0) + 1
        else:
            adj[u][v] = adj[u].get(v, 0) + 1
            adj[v][u] = adj[v].get(u, 0) + 1
    return adj


def _remove(adj: Adj, v) -> None:
    for w in adj.pop(v):
        if w != v:
            del adj[w][v]


def _add_edge(adj: Adj, u, v) -> None:
    if u == v:
        adj[u][u] = adj[u].get(u, 0) + 1
    else:
        adj[u][v] = adj[u].get(v, 0) + 1
        adj[v][u] = adj[v].get(u, 0) + 1


def _degree(adj: Adj, v) -> int:
    return sum(c * (2 if w == v else 1) for w, c in adj[v].items())


def _has_cycle_within(adj: Adj, allowed) -> bool:
    """Whether the sub-multigraph induced by ``allowed`` contains a cycle."""
    allowed = set(allowed)
    parent = {v: v for v in allowed}

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    done = set()
    for u in allowed:
        done.add(u)
        for w, c in adj[u].items():
            if w not in allowed:
                continue
            if w == u or c >= 2:
                return True
            if w in done:
                continue
            ru, rw = find(u), find(w)
            if ru == rw:
                return True
            parent[ru] = rw
    return False


def _cyclomatic(adj: Adj) -> int:
    n = len(adj)
    m2 = 0
    for v, nb in adj.items():
        for w, c in nb.items():
            m2 += 2 * c if w == v else c
    m = m2 // 2
    # components
    seen = set()
    comps = 0
    for s in adj:
        if s in seen:
            continue
        comps += 1
        seen.add(s)
        stack = [s]
        while stack:
            u = stack.pop()
            for w in adj[u]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
    return m - n + comps


def _reduce(adj: Adj, undel: set, taken: List) -> bool:
    """Apply safe reductions in place. Returns False if infeasible."""
    changed = True
    while changed:
        changed = False
        for v in sorted(adj, key=repr):
            if v not in adj:
                continue
            nb = adj[v]
            if v in nb:
                if v in undel:
                    return False
                _remove(adj, v)
                taken.append(v)
                changed = True
                continue
            deg = sum(nb.values())
            if deg <= 1:
                _remove(adj, v)
                changed = True
                continue
            if deg == 2:
                if len(nb) == 1:
                    (u,) = nb
                    if v in undel and u in undel:
                        return False
                    # the double edge is v's only cycle; u hits a superset of it
                    kill = v if u in undel else u
                    _remove(adj, kill)
                    taken.append(kill)
                    changed = True
                    continue
                u, w = nb
                if v in undel or u not in undel or w not in undel:
                    _remove(adj, v)
                    _add_edge(adj, u, w)
                    changed = True
                    continue
            for u, c in list(nb.items()):
                if c >= 2:
                    if v in undel and u in undel:
                        return False
                    if v in undel or u in undel:
                        kill = u if v in undel else v
                        _remove(adj, kill)
                        taken.append(kill)
                        changed = True
                        break
    return True


def _lower_bound(adj: Adj, undel: set, cyc: int) -> int:
    if cyc <= 0:
        return 0
    degs = sorted((_degree(adj, v) for v in adj if v not in undel), reverse=True)
    acc = 0
    for i, d in enumerate(degs):
        acc += d - 1
        if acc >= cyc:
            return i + 1
    return len(degs) + 1


def _copy(adj: Adj) -> Adj:
    return {v: dict(nb) for v, nb in adj.items()}


def _branch(adj: Adj, undel: set, k: int) -> Optional[List]:
    taken: List = []
    if not _reduce(adj, undel, taken):
        return None
    k -= len(taken)
    if k < 0:
        return None
    undel_here = undel & adj.keys()
    if _has_cycle_within(adj, undel_here):
        return None
    cyc = _cyclomatic(adj)
    if cyc == 0:
        return taken
    if _lower_bound(adj, undel, cyc) > k:
        return None
    cands = [v for v in adj if v not in undel]
    if not cands:
        return None
    # prefer an endpoint of a parallel edge, then maximum degree
    def key(v):
        par = any(c >= 2 for c in adj[v].values())
        return (not par, -_degree(adj, v), repr(v))

    v = min(cands, key=key)
    a = _copy(adj)
    _remove(a, v)
    res = _branch(a, undel, k - 1)
    if res is not None:
        return taken + [v] + res
    res = _branch(_copy(adj), undel | {v}, k)
    if res is not None:
        return taken + res
    return None


def min_fvs_multigraph(
    vertices: Iterable[Hashable],
    edges: Iterable[Tuple[Hashable, Hashable]],
    undeletable: Iterable[Hashable] = (),
) -> Optional[Tuple[int, List]]:
    """Minimum set of deletable vertices leaving a forest, or ``None`` if none exists.

    Loops and parallel edges are cycles. ``edges`` may repeat pairs.
    """
    adj = _build(vertices, edges)
    undel = set(undeletable) & adj.keys()
    # deleting every deletable vertex is the only hope when anything works
    rest = {v: {w: c for w, c in nb.items() if w in undel} for v, nb in adj.items() if v in undel}
    if _has_cycle_within(rest, set(rest)):
        return None
    cyc = _cyclomatic(adj)
    k = _lower_bound(adj, undel, cyc)
    while True:
        res = _branch(_copy(adj), undel, k)
        if res is not None:
            return len(res), sorted(res, key=repr)
        k += 1


def min_fvs(g: Graph) -> Tuple[int, List[int]]:
    res = min_fvs_multigraph(range(g.n), g.edges)
    assert res is not None
    return res[0], sorted(res[1])


def greedy_fvs(g: Graph) -> List[int]:
    """Repeatedly strip degree <= 1 vertices and delete a maximum-degree vertex."""
    adj = _build(range(g.n), g.edges)
    out = []
    while True:
        taken: List = []
        _reduce(adj, set(), taken)
        out.extend(taken)
        if _cyclomatic(adj) == 0:
            break
        v = min(adj, key=lambda u: (-_degree(adj, u), u))
        _remove(adj, v)
        out.append(v)
    return sorted(out)


def _vc_branch(adj: Dict[int, set], k: int) -> Optional[List[int]]:
    adj = {v: set(nb) for v, nb in adj.items()}
    taken: List[int] = []
    changed = True
    while changed:
        changed = False
        for v in sorted(adj):
            if v not in adj:
                continue
            if not adj[v]:
                del adj[v]
                changed = True
            elif len(adj[v]) == 1:
                (u,) = adj[v]
                for w in adj.pop(u):
                    adj[w].discard(u)
                taken.append(u)
                changed = True
    k -= len(taken)
    if k < 0:
        return None
    if not adj:
        return taken
    # a greedy matching lower-bounds the cover
    matched = set()
    lb = 0
    for v in sorted(adj):
        if v in matched:
            continue
        for w in sorted(adj[v]):
            if w not in matched:
                matched.update((v, w))
                lb += 1
                break
    if lb > k:
        return None
    v = min(adj, key=lambda u: (-len(adj[u]), u))
    nb = sorted(adj[v])
    a = {u: set(s) for u, s in adj.items()}
    for w in a.pop(v):
        a[w].discard(v)
    res = _vc_branch(a, k - 1)
    if res is not None:
        return taken + [v] + res
    if len(nb) <= k:
        a = {u: set(s) for u, s in adj.items()}
        for u in nb:
            for w in a.pop(u):
                a[w].discard(u)
        res = _vc_branch(a, k - len(nb))
        if res is not None:
            return taken + nb + res
    return None


def min_vc_adj(adj: Dict[int, set]) -> Tuple[int, List[int]]:
    k = 0
    while True:
        res = _vc_branch(adj, k)
        if res is not None:
            return len(res), sorted(res)
        k += 1


def min_vc(g: Graph, within: Optional[Sequence[int]] = None) -> Tuple[int, List[int]]:
    vs = range(g.n) if within is None else within
    s = set(vs)
    adj = {v: set(g.adj[v]) & s for v in vs}
    return min_vc_adj(adj)


def matching_vc(g: Graph) -> List[int]:
    """Endpoints of a greedy maximal matching (factor-2 approximation)."""
    used = set()
    for u, v in sorted(g.edges):
        if u not in used and v not in used:
            used.update((u, v))
    return sorted(used)


def is_fvs(g: Graph, x: Iterable[int]) -> bool:
    xs = set(x)
    keep = [v for v in range(g.n) if v not in xs]
    parent = {v: v for v in keep}

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for u, v in g.edges:
        if u in xs or v in xs:
            continue
        ru, rv = find(u), find(v)
        if ru == rv:
            return False
        parent[ru] = rv
    return True


def is_vc(g: Graph, x: Iterable[int]) -> bool:
    xs = set(x)
    return all(u in xs or v in xs for u, v in g.edges)
