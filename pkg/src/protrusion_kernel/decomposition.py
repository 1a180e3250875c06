"""Tree and path decompositions: validation, exact and heuristic width,
rooted forest decompositions of ``G - X``."""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Iterable, List, NamedTuple, Optional, Sequence, Tuple

from .errors import CapabilityError, InputError, PreconditionError
from .graph import Graph, check_vertices, components_within, induced

EXACT_TW_CAP = 14


@dataclass(frozen=True)
class TreeDecomposition:
    bags: Tuple[FrozenSet[int], ...]
    edges: Tuple[Tuple[int, int], ...] = ()
    root: Optional[int] = None

    @property
    def width(self) -> int:
        return max((len(b) for b in self.bags), default=0) - 1

    @property
    def max_bag(self) -> int:
        return max((len(b) for b in self.bags), default=0)

    def neighbors(self) -> List[List[int]]:
        nb = [[] for _ in self.bags]
        for a, b in self.edges:
            nb[a].append(b)
            nb[b].append(a)
        return nb

    def relabel(self, mapping) -> "TreeDecomposition":
        """Rename bag vertices through ``mapping`` (a dict or sequence)."""
        return TreeDecomposition(
            tuple(frozenset(mapping[v] for v in b) for b in self.bags), self.edges, self.root
        )


class Violation(NamedTuple):
    condition: str  # "coverage" | "edge" | "connectivity" | "tree"
    witness: object


def validate(g: Graph, td: TreeDecomposition) -> Tuple[bool, List[Violation]]:
    """Check the three decomposition conditions (plus that the index graph is a tree)."""
    out: List[Violation] = []
    k = len(td.bags)
    if k == 0:
        if g.n:
            out.append(Violation("coverage", 0))
        return not out, out
    # the index structure must be a tree
    if len(td.edges) != k - 1 or len(_index_components(k, td.edges)) != 1:
        out.append(Violation("tree", tuple(td.edges)))
    covered = set()
    for b in td.bags:
        covered |= b
    for v in range(g.n):
        if v not in covered:
            out.append(Violation("coverage", v))
    for u, v in sorted(g.edges):
        if not any(u in b and v in b for b in td.bags):
            out.append(Violation("edge", (u, v)))
    for v in sorted(covered):
        nodes = [i for i, b in enumerate(td.bags) if v in b]
        sub = {i for i in nodes}
        es = [(a, b) for a, b in td.edges if a in sub and b in sub]
        if len(_index_components(len(td.bags), es, sub)) > 1:
            out.append(Violation("connectivity", v))
    return not out, out


def _index_components(k, edges, nodes=None):
    nodes = set(range(k)) if nodes is None else set(nodes)
    nb = {i: [] for i in nodes}
    for a, b in edges:
        nb[a].append(b)
        nb[b].append(a)
    seen = set()
    comps = []
    for s in sorted(nodes):
        if s in seen:
            continue
        seen.add(s)
        comp = [s]
        stack = [s]
        while stack:
            u = stack.pop()
            for w in nb[u]:
                if w not in seen:
                    seen.add(w)
                    comp.append(w)
                    stack.append(w)
        comps.append(comp)
    return comps


def from_elimination_order(g: Graph, order: Sequence[int]) -> TreeDecomposition:
    """Decomposition induced by eliminating vertices in ``order``."""
    if g.n == 0:
        return TreeDecomposition((frozenset(),), ())
    pos = {v: i for i, v in enumerate(order)}
    adj = [set(a) for a in g.adj]
    bags = {}
    parent = {}
    for v in order:
        later = {w for w in adj[v] if pos[w] > pos[v]}
        bags[v] = frozenset(later | {v})
        for a in later:
            adj[a] |= later - {a}
        if later:
            parent[v] = min(later, key=pos.__getitem__)
    node = {v: i for i, v in enumerate(order)}
    bag_list = [bags[v] for v in order]
    edges = [(node[v], node[p]) for v, p in parent.items()]
    roots = [node[v] for v in order if v not in parent]
    for a, b in zip(roots, roots[1:]):
        edges.append((a, b))
    return _compress(bag_list, edges)


def _compress(bags: List[FrozenSet[int]], edges: List[Tuple[int, int]]) -> TreeDecomposition:
    """Merge every bag contained in an adjacent bag into that neighbour."""
    alive = set(range(len(bags)))
    nb = {i: set() for i in alive}
    for a, b in edges:
        nb[a].add(b)
        nb[b].add(a)
    changed = True
    while changed:
        changed = False
        for a in sorted(alive):
            for b in sorted(nb[a]):
                if bags[a] <= bags[b]:
                    for c in nb[a]:
                        if c != b:
                            nb[c].discard(a)
                            nb[c].add(b)
                            nb[b].add(c)
                    nb[b].discard(a)
                    alive.discard(a)
                    del nb[a]
                    changed = True
                    break
            if changed:
                break
    keep = sorted(alive)
    idx = {old: i for i, old in enumerate(keep)}
    new_edges = sorted({(min(idx[a], idx[b]), max(idx[a], idx[b])) for a in keep for b in nb[a]})
    return TreeDecomposition(tuple(bags[i] for i in keep), tuple(new_edges))


def min_fill_order(g: Graph) -> List[int]:
    adj = [set(a) for a in g.adj]
    remaining = set(range(g.n))
    order = []
    while remaining:
        best = None
        for v in sorted(remaining):
            nb = sorted(adj[v])
            fill = 0
            for i, a in enumerate(nb):
                for b in nb[i + 1:]:
                    if b not in adj[a]:
                        fill += 1
            key = (fill, len(nb), v)
            if best is None or key < best[0]:
                best = (key, v)
        v = best[1]
        nb = adj[v]
        for a in nb:
            adj[a] |= nb - {a}
            adj[a].discard(v)
        remaining.discard(v)
        order.append(v)
    return order


def tree_decomposition_heuristic(g: Graph) -> TreeDecomposition:
    """Min-fill elimination; valid but not necessarily optimal."""
    return from_elimination_order(g, min_fill_order(g))


def treewidth_exact(
    g: Graph, cap: Optional[int] = None, max_n: int = EXACT_TW_CAP
) -> Tuple[Optional[int], Optional[TreeDecomposition]]:
    """Optimal width with a certifying decomposition.

    Returns ``(None, None)`` when the treewidth exceeds ``cap``. Dynamic
    programming over eliminated vertex sets, pruned by the min-fill upper
    bound so only sets that can still beat it are stored.
    """
    if g.n > max_n:
        raise CapabilityError(f"exact treewidth capped at {max_n} vertices, got {g.n}")
    heur = tree_decomposition_heuristic(g)
    ub = max(heur.width, 0)
    limit = ub if cap is None else min(ub, cap + 1)
    if g.n == 0:
        return 0, heur
    adjm = [0] * g.n
    for u, v in g.edges:
        adjm[u] |= 1 << v
        adjm[v] |= 1 << u
    full = (1 << g.n) - 1

    def q(s: int, v: int) -> int:
        comp = 1 << v
        todo = adjm[v] & s
        res = adjm[v] & ~s
        while todo:
            low = todo & -todo
            todo ^= low
            comp |= low
            u = low.bit_length() - 1
            res |= adjm[u] & ~s
            todo |= adjm[u] & s & ~comp
        res &= ~(1 << v)
        return bin(res).count("1")

    # layer[s] = (best width of eliminating s first, last vertex eliminated)
    layer: Dict[int, Tuple[int, int]] = {0: (-1, -1)}
    back: List[Dict[int, Tuple[int, int]]] = [layer]
    for _ in range(g.n):
        nxt: Dict[int, Tuple[int, int]] = {}
        for s, (val, _) in layer.items():
            rest = full & ~s
            while rest:
                low = rest & -rest
                rest ^= low
                v = low.bit_length() - 1
                w = max(val, q(s, v))
                if w >= limit:
                    continue
                t = s | low
                cur = nxt.get(t)
                if cur is None or w < cur[0]:
                    nxt[t] = (w, v)
        layer = nxt
        back.append(layer)
        if not layer:
            break
    if full not in layer:
        if cap is not None and ub > cap:
            return None, None
        return ub, heur
    order = []
    s = full
    for lvl in range(g.n, 0, -1):
        v = back[lvl][s][1]
        order.append(v)
        s &= ~(1 << v)
    order.reverse()
    td = from_elimination_order(g, order)
    return td.width, td


def treewidth_at_most(g: Graph, bound: int, exact_cap: int = EXACT_TW_CAP) -> Optional[TreeDecomposition]:
    """A decomposition of width ``<= bound`` or ``None`` if none was found.

    ``None`` is conclusive only when ``g.n <= exact_cap``.
    """
    td = tree_decomposition_heuristic(g)
    if td.width <= bound:
        return td
    if g.n <= exact_cap:
        w, td = treewidth_exact(g, cap=bound, max_n=exact_cap)
        if w is not None:
            return td
    return None


@dataclass(frozen=True)
class ForestDecomposition:
    """Disjoint union of rooted tree decompositions, one per component.

    Node ids are global across trees; bag vertices are ids of the host graph.
    """

    bags: Tuple[FrozenSet[int], ...]
    parent: Tuple[int, ...]
    roots: Tuple[int, ...]
    tree_of: Tuple[int, ...]
    components: Tuple[Tuple[int, ...], ...]
    _children: Tuple[Tuple[int, ...], ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        ch = [[] for _ in self.bags]
        for v, p in enumerate(self.parent):
            if p >= 0:
                ch[p].append(v)
        object.__setattr__(self, "_children", tuple(tuple(sorted(c)) for c in ch))

    def children(self, node: int) -> Tuple[int, ...]:
        return self._children[node]

    def neighbors(self, node: int) -> List[int]:
        p = self.parent[node]
        return ([p] if p >= 0 else []) + list(self._children[node])

    def nodes_of(self, tree: int) -> List[int]:
        return [i for i, t in enumerate(self.tree_of) if t == tree]

    def bfs_order(self, tree: Optional[int] = None) -> List[int]:
        roots = self.roots if tree is None else (self.roots[tree],)
        out = []
        for r in roots:
            queue = deque([r])
            while queue:
                u = queue.popleft()
                out.append(u)
                queue.extend(self._children[u])
        return out

    def subtree(self, node: int) -> List[int]:
        """Nodes of the subtree rooted at ``node``."""
        out = [node]
        i = 0
        while i < len(out):
            out.extend(self._children[out[i]])
            i += 1
        return out

    def vertices_of(self, nodes: Iterable[int]) -> FrozenSet[int]:
        s = set()
        for i in nodes:
            s |= self.bags[i]
        return frozenset(s)

    def depth(self, node: int) -> int:
        d = 0
        while self.parent[node] >= 0:
            node = self.parent[node]
            d += 1
        return d

    def lca(self, a: int, b: int) -> Optional[int]:
        if self.tree_of[a] != self.tree_of[b]:
            return None
        da, db = self.depth(a), self.depth(b)
        while da > db:
            a = self.parent[a]
            da -= 1
        while db > da:
            b = self.parent[b]
            db -= 1
        while a != b:
            a, b = self.parent[a], self.parent[b]
        return a

    def tree_decomposition(self, tree: int) -> Tuple[TreeDecomposition, List[int]]:
        """The tree as a standalone decomposition plus its local-to-global node list."""
        nodes = self.nodes_of(tree)
        loc = {v: i for i, v in enumerate(nodes)}
        edges = tuple(sorted((loc[self.parent[v]], loc[v]) for v in nodes if self.parent[v] >= 0))
        return TreeDecomposition(tuple(self.bags[v] for v in nodes), edges, loc[self.roots[tree]]), nodes

    @property
    def max_bag(self) -> int:
        return max((len(b) for b in self.bags), default=0)


def choose_root(td: TreeDecomposition) -> int:
    """Smallest node of degree at least two when the tree has three or more nodes."""
    if len(td.bags) >= 3:
        nb = td.neighbors()
        for i in range(len(td.bags)):
            if len(nb[i]) >= 2:
                return i
    return 0


def rooted_forest_decomposition(
    g: Graph,
    x: Iterable[int],
    t: int,
    components: Optional[Sequence[Sequence[int]]] = None,
    exact_cap: int = EXACT_TW_CAP,
) -> ForestDecomposition:
    """One rooted decomposition with bags of size ``<= t + 1`` per component of ``G - X``."""
    xs = check_vertices(g, x)
    if components is None:
        components = components_within(g, set(range(g.n)) - xs)
    bags: List[FrozenSet[int]] = []
    parent: List[int] = []
    roots: List[int] = []
    tree_of: List[int] = []
    comps: List[Tuple[int, ...]] = []
    for ti, comp in enumerate(components):
        comp = tuple(sorted(comp))
        if xs.intersection(comp):
            raise InputError(f"component {comp} meets the modulator")
        sub = induced(g, comp)
        td = treewidth_at_most(sub, t, exact_cap)
        if td is None:
            raise PreconditionError(f"component {comp} has width above {t}")
        td = td.relabel(comp)
        root = choose_root(td)
        nb = td.neighbors()
        off = len(bags)
        local_parent = {root: -1}
        order = [root]
        for u in order:
            for w in sorted(nb[u]):
                if w not in local_parent:
                    local_parent[w] = u
                    order.append(w)
        for i, b in enumerate(td.bags):
            bags.append(b)
            p = local_parent[i]
            parent.append(-1 if p < 0 else p + off)
            tree_of.append(ti)
        roots.append(root + off)
        comps.append(comp)
    return ForestDecomposition(tuple(bags), tuple(parent), tuple(roots), tuple(tree_of), tuple(comps))


def induced_by_subtree(g: Graph, fd: ForestDecomposition, nodes: Iterable[int]) -> Graph:
    """Graph induced by the vertices in the bags of a connected node set."""
    nodes = set(nodes)
    if not nodes:
        return Graph(0)
    trees = {fd.tree_of[i] for i in nodes}
    connected = len(trees) == 1 and sum(1 for i in nodes if fd.parent[i] not in nodes) == 1
    if not connected:
        raise InputError(f"node set {sorted(nodes)} is not a connected subtree")
    return induced(g, fd.vertices_of(nodes))


def path_decomposition_width(bags: Sequence[FrozenSet[int]]) -> int:
    return max((len(b) for b in bags), default=0) - 1


def path_decomposition(bags: Sequence[FrozenSet[int]]) -> TreeDecomposition:
    return TreeDecomposition(tuple(bags), tuple((i, i + 1) for i in range(len(bags) - 1)), 0 if bags else None)
