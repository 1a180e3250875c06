"""Sparsity certificates for graphs excluding a fixed topological minor."""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence

from .errors import CapabilityError, InputError
from .graph import Graph

BETA = Fraction(10)
TAU = Fraction("4.51")
TM_PATTERN_CAP = 6


@dataclass(frozen=True)
class SparsityConstants:
    r: int
    beta: Fraction = BETA
    tau: Fraction = TAU
    log_base: float = 2.0

    def degree_bound(self) -> Fraction:
        return self.beta * self.r * self.r

    def clique_factor(self) -> float:
        """``2 ** (tau * r * log r)``; only meaningful for ``r > 2``."""
        return 2.0 ** (float(self.tau) * self.r * math.log(self.r, self.log_base))


def average_degree(g: Graph) -> Fraction:
    if g.n == 0:
        raise InputError("average degree of the empty graph is undefined")
    return Fraction(2 * g.m, g.n)


def count_cliques(g: Graph) -> int:
    """Number of non-empty vertex subsets inducing a complete graph."""
    total = 0
    # each clique is grown by strictly increasing vertex id, so counted once
    stack = [frozenset(w for w in g.adj[v] if w > v) for v in range(g.n)]
    while stack:
        cand = stack.pop()
        total += 1
        for w in cand:
            stack.append(frozenset(x for x in cand & g.adj[w] if x > w))
    return total


@dataclass(frozen=True)
class SparsityCheck:
    average_degree: Fraction
    degree_bound: Fraction
    degree_holds: bool
    cliques: int
    clique_bound: int
    cliques_hold: bool

    @property
    def holds(self) -> bool:
        return self.degree_holds and self.cliques_hold


def check_sparsity_bounds(g: Graph, c: SparsityConstants) -> SparsityCheck:
    avg = average_degree(g) if g.n else Fraction(0)
    dbound = c.degree_bound()
    cliques = count_cliques(g)
    cbound = math.floor(c.clique_factor() * g.n)
    return SparsityCheck(avg, dbound, avg < dbound, cliques, cbound, cliques <= cbound)


def contains_topological_minor(g: Graph, h: Graph, cap: int = TM_PATTERN_CAP) -> bool:
    """Whether ``g`` contains a subdivision of ``h``.

    Exhaustive search: branch vertices are assigned in degree-descending order
    of ``h``, each edge of ``h`` is then routed as a path through unused
    non-branch vertices, shortest paths first, with backtracking.
    """
    return find_subdivision(g, h, cap) is not None


def find_subdivision(g: Graph, h: Graph, cap: int = TM_PATTERN_CAP) -> Optional[Dict]:
    """Return ``{"branch": {hv: gv}, "paths": {h_edge: [gv, ...]}}`` or ``None``."""
    if h.n > cap:
        raise CapabilityError(f"pattern has {h.n} vertices, cap is {cap}")
    if h.n == 0:
        return {"branch": {}, "paths": {}}
    if h.n > g.n or h.m > g.m:
        return None
    hdeg = sorted(range(h.n), key=lambda v: (-h.degree(v), v))
    gorder = sorted(range(g.n), key=lambda v: (-g.degree(v), v))
    # h edges routed in the order their second endpoint gets assigned
    pos = {v: i for i, v in enumerate(hdeg)}
    hedges = sorted(h.edges, key=lambda e: (max(pos[e[0]], pos[e[1]]), min(pos[e[0]], pos[e[1]])))
    if g.max_degree() < h.max_degree():
        return None

    branch: Dict[int, int] = {}
    used_branch = set()

    def route(i: int, used: set, paths: Dict) -> Optional[Dict]:
        if i == len(hedges):
            return dict(paths)
        a, b = hedges[i]
        s, t = branch[a], branch[b]
        if g.has_edge(s, t):
            # a direct edge costs no interior vertex and no other path can use it
            paths[(a, b)] = [s, t]
            res = route(i + 1, used, paths)
            del paths[(a, b)]
            return res
        blocked = used | used_branch
        if not _connected_avoiding(g, s, t, blocked):
            return None
        for p in _simple_paths(g, s, t, blocked):
            interior = p[1:-1]
            used.update(interior)
            if _remaining_routable(g, hedges, i + 1, branch, used | used_branch):
                paths[(a, b)] = p
                res = route(i + 1, used, paths)
                del paths[(a, b)]
                if res is not None:
                    return res
            used.difference_update(interior)
        return None

    def assign(j: int) -> Optional[Dict]:
        if j == len(hdeg):
            paths = route(0, set(), {})
            if paths is None:
                return None
            return {"branch": dict(branch), "paths": paths}
        hv = hdeg[j]
        need = h.degree(hv)
        for gv in gorder:
            if g.degree(gv) < need:
                break
            if gv in used_branch:
                continue
            # edges to already-assigned branch vertices must stay routable
            ok = True
            for hw in h.adj[hv]:
                if hw in branch and not _connected_avoiding(g, gv, branch[hw], used_branch):
                    ok = False
                    break
            if not ok:
                continue
            branch[hv] = gv
            used_branch.add(gv)
            res = assign(j + 1)
            if res is not None:
                return res
            del branch[hv]
            used_branch.discard(gv)
        return None

    return assign(0)


def _connected_avoiding(g: Graph, s: int, t: int, blocked: set) -> bool:
    if g.has_edge(s, t):
        return True
    seen = {s}
    stack = [s]
    while stack:
        u = stack.pop()
        for w in g.adj[u]:
            if w == t:
                return True
            if w not in seen and w not in blocked:
                seen.add(w)
                stack.append(w)
    return False


def _remaining_routable(g, hedges, start, branch, blocked) -> bool:
    for a, b in hedges[start:]:
        if not _connected_avoiding(g, branch[a], branch[b], blocked):
            return False
    return True


def _simple_paths(g: Graph, s: int, t: int, blocked: set):
    """All simple ``s``-``t`` paths with interior outside ``blocked``, by length."""
    limit = g.n - len(blocked) + 2
    for length in range(2, limit + 1):
        yield from _paths_of_length(g, s, t, blocked, length)


def _paths_of_length(g: Graph, s: int, t: int, blocked: set, length: int):
    # length counts vertices, endpoints included
    path = [s]
    onpath = {s}

    def extend():
        u = path[-1]
        if len(path) == length - 1:
            if t in g.adj[u]:
                yield path + [t]
            return
        for w in sorted(g.adj[u]):
            if w == t or w in onpath or w in blocked:
                continue
            path.append(w)
            onpath.add(w)
            yield from extend()
            path.pop()
            onpath.discard(w)

    yield from extend()


def excluded_clique_order(max_degree: int) -> int:
    """Order of the smallest clique that cannot be a topological minor of a
    graph with the given maximum degree.

    ``K_{d+1}`` has maximum degree ``d`` itself, so the excluded clique is
    ``K_{d+2}``.
    """
    return max_degree + 2


def degree_bound_violations(graphs: Sequence[Graph], r: int) -> List[int]:
    """Indices of graphs with average degree at least ``beta * r^2``."""
    bound = BETA * r * r
    return [i for i, g in enumerate(graphs) if g.n and average_degree(g) >= bound]


__all__ = [
    "BETA",
    "TAU",
    "SparsityConstants",
    "SparsityCheck",
    "average_degree",
    "count_cliques",
    "check_sparsity_bounds",
    "contains_topological_minor",
    "find_subdivision",
    "excluded_clique_order",
]
