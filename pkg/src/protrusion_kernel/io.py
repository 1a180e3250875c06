"""Graph and instance files.

Edge list: one ``u v`` pair per line, 0-indexed, ``#`` starts a comment, and
an optional ``# n <count>`` line fixes the vertex count (isolated vertices).
DIMACS-like: ``p edge n m`` header and ``e u v`` lines, 1-indexed; ``c`` lines
are comments.
"""
from __future__ import annotations

import json
import warnings
from pathlib import Path
from typing import List, Optional, Tuple

from .errors import InputError, ParseError
from .graph import Graph
from .kernelizer import Instance

INSTANCE_VERSION = 1


class DuplicateEdgeWarning(UserWarning):
    pass


def _edges_to_graph(n: int, edges: List[Tuple[int, int, int]]) -> Graph:
    seen = set()
    out = []
    for u, v, line in edges:
        e = (min(u, v), max(u, v))
        if e in seen:
            warnings.warn(f"line {line}: duplicate edge {u} {v} ignored", DuplicateEdgeWarning, stacklevel=3)
            continue
        seen.add(e)
        out.append(e)
    return Graph(n, out)


def _pair(parts, line) -> Tuple[int, int]:
    try:
        u, v = int(parts[0]), int(parts[1])
    except ValueError:
        raise ParseError(f"expected two integers, got {' '.join(parts)!r}", line) from None
    if u == v:
        raise ParseError(f"self-loop on vertex {u}", line)
    return u, v


def parse_edge_list(text: str) -> Graph:
    n: Optional[int] = None
    edges = []
    top = -1
    for i, raw in enumerate(text.splitlines(), 1):
        head, _, comment = raw.partition("#")
        if not head.strip():
            words = comment.split()
            if len(words) == 2 and words[0] == "n":
                try:
                    n = int(words[1])
                except ValueError:
                    raise ParseError(f"bad vertex count {words[1]!r}", i) from None
            continue
        parts = head.split()
        if len(parts) != 2:
            raise ParseError(f"expected 'u v', got {head.strip()!r}", i)
        u, v = _pair(parts, i)
        if u < 0 or v < 0:
            raise ParseError("negative vertex id", i)
        if n is not None and max(u, v) >= n:
            raise ParseError(f"vertex {max(u, v)} out of range for n={n}", i)
        top = max(top, u, v)
        edges.append((u, v, i))
    return _edges_to_graph(n if n is not None else top + 1, edges)


def parse_dimacs(text: str) -> Graph:
    n: Optional[int] = None
    edges = []
    for i, raw in enumerate(text.splitlines(), 1):
        parts = raw.split()
        if not parts or parts[0] == "c":
            continue
        if parts[0] == "p":
            if n is not None:
                raise ParseError("second problem line", i)
            if len(parts) != 4:
                raise ParseError("expected 'p edge n m'", i)
            try:
                n = int(parts[2])
                int(parts[3])
            except ValueError:
                raise ParseError("non-integer size in problem line", i) from None
            continue
        if parts[0] == "e":
            if n is None:
                raise ParseError("edge before problem line", i)
            if len(parts) != 3:
                raise ParseError("expected 'e u v'", i)
            u, v = _pair(parts[1:], i)
            if not (1 <= u <= n and 1 <= v <= n):
                raise ParseError(f"vertex out of range 1..{n}", i)
            edges.append((u - 1, v - 1, i))
            continue
        raise ParseError(f"unknown line type {parts[0]!r}", i)
    if n is None:
        raise ParseError("missing problem line")
    return _edges_to_graph(n, edges)


def write_edge_list(g: Graph) -> str:
    lines = [f"# n {g.n}"] + [f"{u} {v}" for u, v in g.sorted_edges()]
    return "\n".join(lines) + "\n"


def write_dimacs(g: Graph) -> str:
    lines = [f"p edge {g.n} {g.m}"] + [f"e {u + 1} {v + 1}" for u, v in g.sorted_edges()]
    return "\n".join(lines) + "\n"


def guess_format(path, text: str) -> str:
    suffix = Path(path).suffix.lower()
    if suffix in (".dimacs", ".col", ".gr"):
        return "dimacs"
    if suffix in (".txt", ".edges", ".el"):
        return "edges"
    for line in text.splitlines():
        s = line.strip()
        if s and not s.startswith("#"):
            return "dimacs" if s.split()[0] in ("p", "c", "e") else "edges"
    return "edges"


def read_graph(path, fmt: str = "auto") -> Graph:
    text = Path(path).read_text(encoding="utf-8")
    if fmt == "auto":
        fmt = guess_format(path, text)
    if fmt == "dimacs":
        return parse_dimacs(text)
    if fmt == "edges":
        return parse_edge_list(text)
    raise InputError(f"unknown graph format {fmt!r}")


def write_graph(g: Graph, path, fmt: str = "edges") -> None:
    text = write_dimacs(g) if fmt == "dimacs" else write_edge_list(g)
    Path(path).write_text(text, encoding="utf-8")


def instance_dict(inst: Instance, planted=None) -> dict:
    return {
        "version": INSTANCE_VERSION,
        "problem": inst.problem.id,
        "k": inst.k,
        "n": inst.graph.n,
        "edges": [list(e) for e in inst.graph.sorted_edges()],
        "planted": sorted(planted) if planted is not None else None,
    }


def dump_instance(inst: Instance, path, planted=None) -> None:
    Path(path).write_text(json.dumps(instance_dict(inst, planted), sort_keys=True) + "\n", encoding="utf-8")


def load_instance(path) -> Tuple[Instance, Optional[List[int]]]:
    try:
        d = json.loads(Path(path).read_text(encoding="utf-8"))
    except json.JSONDecodeError as e:
        raise ParseError(f"{path}: {e.msg}", e.lineno) from None
    if d.get("version") != INSTANCE_VERSION:
        raise InputError(f"{path}: instance version {d.get('version')!r}, expected {INSTANCE_VERSION}")
    for key in ("problem", "k", "n", "edges"):
        if key not in d:
            raise InputError(f"{path}: missing field {key!r}")
    g = Graph(d["n"], d["edges"])
    return Instance(g, int(d["k"]), d["problem"]), d.get("planted")
