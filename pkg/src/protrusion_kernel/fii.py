"""Finite-integer-index tables for Feedback Vertex Set and Vertex Cover.

A boundaried graph's *signature* lists, for every way the rest of the world
can interact with its terminals, the cheapest local completion. Two graphs
whose signatures differ by a constant ``c`` behave identically under every
gluing up to a shift of the optimum by ``c``, which is what the protrusion
replacement needs.

FVS states are pairs ``(S, P)``: ``S`` the deleted terminals and ``P`` a
partition of the remaining terminals into blocks that the other side already
connects. VC states are the sets ``S`` of terminals in the cover.
"""
from __future__ import annotations

import json
import os
from dataclasses import dataclass, field
from itertools import combinations
from pathlib import Path
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

from .boundaried import (
    ENUM_N_CAP,
    ENUM_T_CAP,
    BoundariedGraph,
    canonical_form,
    enumerate_boundaried,
    from_code,
)
from .errors import CapabilityError, InputError
from .graph import Graph
from .solvers import min_fvs_multigraph, min_vc_adj

CODE_VERSION = 1
TABLE_FORMAT = "fii-table"
INF = None  # an infinite signature entry


@dataclass(frozen=True)
class ProblemSpec:
    id: str
    c: int  # modulator size is at most c * k
    t: int  # treewidth of G - X is at most t


PROBLEMS = {"FVS": ProblemSpec("FVS", 1, 1), "VC": ProblemSpec("VC", 1, 0)}


def problem(pid) -> ProblemSpec:
    if isinstance(pid, ProblemSpec):
        return pid
    try:
        return PROBLEMS[pid.upper()]
    except KeyError:
        raise InputError(f"unknown problem {pid!r}; expected one of {sorted(PROBLEMS)}") from None


# states

def _subsets(t: int) -> List[Tuple[int, ...]]:
    labels = range(1, t + 1)
    return [c for k in range(t + 1) for c in combinations(labels, k)]


def _partitions(items: Sequence[int]) -> List[Tuple[Tuple[int, ...], ...]]:
    if not items:
        return [()]
    first, rest = items[0], items[1:]
    out = []
    for p in _partitions(rest):
        out.append(((first,),) + p)
        for i in range(len(p)):
            out.append(p[:i] + ((first,) + p[i],) + p[i + 1:])
    return sorted(tuple(sorted(p)) for p in out)


def states(pid: str, t: int):
    """Canonical state list; signature values are aligned with it."""
    if pid == "VC":
        return _subsets(t)
    out = []
    for s in _subsets(t):
        rest = [i for i in range(1, t + 1) if i not in s]
        for p in _partitions(rest):
            out.append((s, p))
    return out


def _fmt(v) -> str:
    return "inf" if v is None else str(v)


@dataclass(frozen=True)
class Signature:
    problem: str
    t: int
    values: Tuple[Optional[int], ...]
    boundary_edges: Tuple[Tuple[int, int], ...] = ()

    def normalized(self) -> Tuple["Signature", int]:
        finite = [v for v in self.values if v is not None]
        base = min(finite) if finite else 0
        vals = tuple(None if v is None else v - base for v in self.values)
        return Signature(self.problem, self.t, vals, self.boundary_edges), base

    def key(self) -> str:
        """Class key of the normalized signature."""
        sig, _ = self.normalized()
        parts = [sig.problem, f"t={sig.t}"]
        if sig.problem == "FVS":
            parts.append("be=" + ";".join(f"{a}-{b}" for a, b in sig.boundary_edges))
        parts.append(",".join(_fmt(v) for v in sig.values))
        return "|".join(parts)

    def as_dict(self) -> Dict[str, Optional[int]]:
        return {_state_str(s): v for s, v in zip(states(self.problem, self.t), self.values)}


def _state_str(s) -> str:
    if isinstance(s, tuple) and len(s) == 2 and isinstance(s[1], tuple) and (not s[1] or isinstance(s[1][0], tuple)):
        S, P = s
        return "S={" + ",".join(map(str, S)) + "} P=" + "|".join("{" + ",".join(map(str, b)) + "}" for b in P)
    return "S={" + ",".join(map(str, s)) + "}"


def signature_vc(bg: BoundariedGraph) -> Signature:
    """``value(S)``: smallest cover meeting the terminals exactly in ``S``."""
    g = bg.graph
    lab = bg.label_of()
    internal = bg.internal()
    vals = []
    for s in states("VC", bg.t):
        inside = {bg.labels[i - 1] for i in s}
        outside = bg.boundary - inside
        if any(g.adj[v] & outside for v in outside):
            vals.append(INF)
            continue
        forced = set()
        for v in outside:
            forced |= g.adj[v]
        forced -= bg.boundary
        rest = [v for v in internal if v not in forced]
        rs = set(rest)
        size, _ = min_vc_adj({v: set(g.adj[v]) & rs for v in rest})
        vals.append(len(inside) + len(forced) + size)
    del lab
    return Signature("VC", bg.t, tuple(vals))


def signature_fvs(bg: BoundariedGraph) -> Signature:
    """``value(S, P)``: fewest non-terminal deletions after which removing
    ``S`` and identifying every block of ``P`` leaves a forest.

    Identification turns an edge inside a block into a loop and two edges
    from one vertex into a block into parallel edges; both count as cycles.
    """
    g = bg.graph
    internal = bg.internal()
    vals = []
    for s, p in states("FVS", bg.t):
        deleted = {bg.labels[i - 1] for i in s}
        where = {}
        for bi, block in enumerate(p):
            for lab in block:
                where[bg.labels[lab - 1]] = ("b", bi)
        edges = []
        for u, v in g.edges:
            if u in deleted or v in deleted:
                continue
            edges.append((where.get(u, u), where.get(v, v)))
        blocks = [("b", i) for i in range(len(p))]
        res = min_fvs_multigraph(list(internal) + blocks, edges, undeletable=blocks)
        vals.append(INF if res is None else res[0])
    return Signature("FVS", bg.t, tuple(vals), bg.boundary_edges())


def signature(pid: str, bg: BoundariedGraph, truncate: bool = True) -> Signature:
    if pid == "VC":
        s = signature_vc(bg)
        return truncate_signature(s) if truncate else s
    if pid == "FVS":
        return signature_fvs(bg)
    raise InputError(f"unknown problem {pid!r}")


def truncate_signature(s: Signature) -> Signature:
    """Cap each VC entry: ``value(S) <= value(S') + |S' \\ S|`` for all ``S' ⊇ S``.

    Any terminal can be added to a cover at cost one, so a larger entry is
    never the one that realises an optimum after gluing.
    """
    if s.problem != "VC":
        raise CapabilityError(f"no truncation rule for {s.problem} signatures")
    st = states("VC", s.t)
    val = dict(zip(st, s.values))
    out = []
    for a in st:
        best = val[a]
        sa = set(a)
        for b in st:
            if sa <= set(b) and val[b] is not None:
                cand = val[b] + len(b) - len(a)
                if best is None or cand < best:
                    best = cand
        out.append(best)
    return Signature(s.problem, s.t, tuple(out), s.boundary_edges)


def equivalent(s1: Signature, s2: Signature) -> Optional[int]:
    """Offset ``c = s1 - s2`` if the signatures differ by a constant, else ``None``."""
    if s1.problem != s2.problem or s1.t != s2.t:
        raise InputError("signatures of different problems or boundary sizes")
    if s1.boundary_edges != s2.boundary_edges:
        return None
    c = None
    for a, b in zip(s1.values, s2.values):
        if (a is None) != (b is None):
            return None
        if a is None:
            continue
        if c is None:
            c = a - b
        elif a - b != c:
            return None
    return 0 if c is None else c


# tables

@dataclass(frozen=True)
class FiiClass:
    key: str
    code: str  # canonical code of the representative
    normalizer: int
    members: int

    @property
    def representative(self) -> BoundariedGraph:
        return from_code(self.code)

    @property
    def size(self) -> int:
        return int(self.code.split(":", 1)[0])


@dataclass(frozen=True)
class FiiTable:
    problem: str
    t: int
    n_max: int
    classes: Tuple[FiiClass, ...]
    _index: Dict[str, FiiClass] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "_index", {c.key: c for c in self.classes})

    @property
    def varpi(self) -> int:
        """Largest representative size."""
        return max((c.size for c in self.classes), default=0)

    def get(self, key: str) -> Optional[FiiClass]:
        return self._index.get(key)

    def __len__(self):
        return len(self.classes)


def _rep_rank(code: str) -> Tuple[int, int, str]:
    n = int(code.split(":", 1)[0])
    return (n, code.rsplit(":", 1)[1].count("1"), code)


def classify_members(pid: str, t: int, n_max: int, **caps) -> Iterator[Tuple[BoundariedGraph, str, Signature, int]]:
    """Every enumerated graph with its canonical code, signature and normalizer."""
    for bg in enumerate_boundaried(t, n_max, **caps):
        sig = signature(pid, bg)
        _, base = sig.normalized()
        yield bg, canonical_form(bg), sig, base


def build_table(pid, t: int, n_max: int, t_cap: int = ENUM_T_CAP, n_cap: int = ENUM_N_CAP) -> FiiTable:
    """Bucket every boundaried graph with at most ``n_max`` vertices by signature class.

    The representative of a class has fewest vertices, then fewest edges,
    then the least canonical code.
    """
    pid = problem(pid).id
    best: Dict[str, Tuple[Tuple[int, int, str], int]] = {}
    count: Dict[str, int] = {}
    for bg, code, sig, base in classify_members(pid, t, n_max, t_cap=t_cap, n_cap=n_cap):
        key = sig.key()
        count[key] = count.get(key, 0) + 1
        rank = _rep_rank(code)
        if key not in best or rank < best[key][0]:
            best[key] = (rank, base)
    classes = tuple(
        FiiClass(key, best[key][0][2], best[key][1], count[key]) for key in sorted(best)
    )
    return FiiTable(pid, t, n_max, classes)


def lookup_representative(table: FiiTable, bg: BoundariedGraph) -> Optional[Tuple[FiiClass, int]]:
    """The class of ``bg`` and the offset ``c`` with ``opt(bg ⊕ Z) = opt(rep ⊕ Z) + c``.

    ``None`` when the class has no member within the table's vertex cap.
    """
    if bg.t != table.t:
        raise InputError(f"table is for t={table.t}, graph has t={bg.t}")
    sig = signature(table.problem, bg)
    _, base = sig.normalized()
    cls = table.get(sig.key())
    if cls is None:
        return None
    return cls, base - cls.normalizer


def saturated(pid, t: int, n_max: int, **caps) -> bool:
    """Whether one more vertex of enumeration adds no new class."""
    return len(build_table(pid, t, n_max, **caps)) == len(build_table(pid, t, n_max + 1, **caps))


# persistence

def table_lines(table: FiiTable) -> List[str]:
    header = {
        "format": TABLE_FORMAT,
        "version": CODE_VERSION,
        "problem": table.problem,
        "t": table.t,
        "n_max": table.n_max,
        "classes": len(table.classes),
        "varpi": table.varpi,
    }
    lines = [json.dumps(header, sort_keys=True)]
    for c in sorted(table.classes, key=lambda c: c.key):
        rep = from_code(c.code)
        rec = {
            "key": c.key,
            "code": c.code,
            "n": rep.n,
            "edges": [list(e) for e in rep.graph.sorted_edges()],
            "labels": list(rep.labels),
            "normalizer": c.normalizer,
            "members": c.members,
        }
        lines.append(json.dumps(rec, sort_keys=True))
    return lines


def dump_table(table: FiiTable, path) -> None:
    Path(path).write_text("\n".join(table_lines(table)) + "\n", encoding="utf-8")


def load_table(path) -> FiiTable:
    lines = Path(path).read_text(encoding="utf-8").splitlines()
    if not lines:
        raise InputError(f"{path}: empty table file")
    header = json.loads(lines[0])
    if header.get("format") != TABLE_FORMAT or header.get("version") != CODE_VERSION:
        raise InputError(
            f"{path}: table format {header.get('format')!r} v{header.get('version')} "
            f"does not match {TABLE_FORMAT!r} v{CODE_VERSION}"
        )
    classes = []
    for line in lines[1:]:
        if not line.strip():
            continue
        rec = json.loads(line)
        rep = BoundariedGraph(Graph(rec["n"], rec["edges"]), tuple(rec["labels"]))
        if canonical_form(rep) != rec["code"]:
            raise InputError(f"{path}: representative does not match its code {rec['code']}")
        classes.append(FiiClass(rec["key"], rec["code"], rec["normalizer"], rec["members"]))
    return FiiTable(header["problem"], header["t"], header["n_max"], tuple(classes))


def table_filename(pid: str, t: int, n_max: int) -> str:
    return f"{pid.lower()}-t{t}-n{n_max}-v{CODE_VERSION}.jsonl"


def default_cache_dir() -> Path:
    return Path(os.environ.get("PROTRUSION_KERNEL_CACHE", Path.home() / ".cache" / "protrusion_kernel"))


def cached_table(pid, t: int, n_max: int, cache_dir=None, **caps) -> Tuple[FiiTable, Path, bool]:
    """Load the table from the cache or build and store it. Returns ``(table, path, hit)``."""
    pid = problem(pid).id
    d = Path(cache_dir) if cache_dir is not None else default_cache_dir()
    path = d / table_filename(pid, t, n_max)
    if path.exists():
        return load_table(path), path, True
    table = build_table(pid, t, n_max, **caps)
    d.mkdir(parents=True, exist_ok=True)
    tmp = path.with_suffix(".tmp")
    dump_table(table, tmp)
    tmp.replace(path)
    return table, path, False
