"""Seeded instance generators.

planted-modulator: a forest (edgeless for VC) plus ``k`` extra vertices wired
into it, so the extra vertices form a solution of size ``k``.
bounded-degree-random: random edges under a degree cap.
pendant-rich: a small cyclic core carrying many pendant trees and cycles.
"""
from __future__ import annotations

import random
from dataclasses import asdict, dataclass
from typing import List, Tuple

from .errors import InputError
from .graph import Graph
from .kernelizer import Instance

FAMILIES = ("planted-modulator", "bounded-degree-random", "pendant-rich")


@dataclass(frozen=True)
class GeneratorSpec:
    family: str = "planted-modulator"
    problem: str = "FVS"
    n: int = 20
    k: int = 3
    d: int = 4  # maximum degree
    attach: int = 2  # max modulator neighbours of a single non-modulator vertex
    seed: int = 0

    def as_dict(self):
        return asdict(self)


@dataclass(frozen=True)
class Generated:
    instance: Instance
    planted: Tuple[int, ...]
    spec: GeneratorSpec


class _Builder:
    def __init__(self, n: int, d: int):
        self.n = n
        self.d = d
        self.deg = [0] * n
        self.edges = set()

    def can(self, u: int, v: int) -> bool:
        return u != v and (min(u, v), max(u, v)) not in self.edges and self.deg[u] < self.d and self.deg[v] < self.d

    def add(self, u: int, v: int) -> None:
        self.edges.add((min(u, v), max(u, v)))
        self.deg[u] += 1
        self.deg[v] += 1

    def graph(self) -> Graph:
        return Graph(self.n, sorted(self.edges))


def _check(spec: GeneratorSpec) -> None:
    if spec.family not in FAMILIES:
        raise InputError(f"unknown family {spec.family!r}; expected one of {FAMILIES}")
    if spec.problem not in ("FVS", "VC"):
        raise InputError(f"unknown problem {spec.problem!r}")
    if spec.n < 0 or spec.k < 0 or spec.d < 0 or spec.attach < 0:
        raise InputError("n, k, d and attach must be non-negative")
    if spec.k > spec.n:
        raise InputError(f"k={spec.k} exceeds n={spec.n}")


def _random_forest(rng: random.Random, b: _Builder, verts: List[int], new_tree: float) -> None:
    """Grow trees by attaching each vertex to an earlier one with spare degree."""
    placed: List[int] = []
    for v in verts:
        open_ = [u for u in placed if b.deg[u] < b.d - 1]
        if open_ and rng.random() >= new_tree:
            b.add(v, rng.choice(open_))
        placed.append(v)


def _planted(rng: random.Random, spec: GeneratorSpec) -> Generated:
    n, k, d = spec.n, spec.k, spec.d
    need = 2 if spec.problem == "FVS" else 1
    if k and (d < need or spec.attach < 1):
        raise InputError(f"degree cap d={d} and attach={spec.attach} cannot wire a modulator vertex")
    if k and n - k < need:
        raise InputError(f"n - k = {n - k} leaves too few vertices to attach to")
    b = _Builder(n, d)
    mod = list(range(n - k, n))
    rest = list(range(n - k))
    if spec.problem == "FVS":
        _random_forest(rng, b, rest, new_tree=0.1)
    seen_mod = [0] * n
    for x in mod:
        want = rng.randint(need, d)
        cands = [v for v in rest if b.deg[v] < d and seen_mod[v] < spec.attach]
        rng.shuffle(cands)
        got = 0
        for v in cands:
            if got == want:
                break
            if b.can(x, v):
                b.add(x, v)
                seen_mod[v] += 1
                got += 1
        if got < need:
            raise InputError(f"could not attach modulator vertex {x} under d={d}, attach={spec.attach}")
    # a few edges inside the modulator keep it from being trivially independent
    for u in mod:
        for v in mod:
            if u < v and rng.random() < 0.2 and b.can(u, v):
                b.add(u, v)
    return Generated(Instance(b.graph(), k, spec.problem), tuple(mod), spec)


def _bounded_degree(rng: random.Random, spec: GeneratorSpec) -> Generated:
    n, d = spec.n, spec.d
    b = _Builder(n, d)
    target = n * d // 3
    tries = 0
    while len(b.edges) < target and tries < 20 * target + 20:
        tries += 1
        if n < 2:
            break
        u, v = rng.sample(range(n), 2)
        if b.can(u, v):
            b.add(u, v)
    return Generated(Instance(b.graph(), spec.k, spec.problem), (), spec)


def _pendant_rich(rng: random.Random, spec: GeneratorSpec) -> Generated:
    n, d = spec.n, spec.d
    if d < 3:
        raise InputError(f"pendant-rich graphs need d >= 3, got {d}")
    core = max(3, min(n, spec.k + 3))
    if core > n:
        raise InputError(f"n={n} too small for a core of {core}")
    b = _Builder(n, d)
    for i in range(core):
        b.add(i, (i + 1) % core)
    for _ in range(spec.k):
        u, v = rng.sample(range(core), 2)
        if b.can(u, v):
            b.add(u, v)
    v = core
    while v < n:
        hosts = [u for u in range(v) if b.deg[u] < d]
        if not hosts:
            break
        host = rng.choice(hosts)
        kind = rng.random()
        if kind < 0.3 and v + 1 < n and b.deg[host] <= d - 2:
            # pendant triangle on host
            b.add(host, v)
            b.add(host, v + 1)
            b.add(v, v + 1)
            v += 2
        else:
            b.add(host, v)
            v += 1
    return Generated(Instance(b.graph(), spec.k, spec.problem), (), spec)


def generate(spec: GeneratorSpec) -> Generated:
    """Deterministic per ``spec.seed``."""
    _check(spec)
    rng = random.Random(f"{spec.family}:{spec.problem}:{spec.seed}")
    if spec.family == "planted-modulator":
        return _planted(rng, spec)
    if spec.family == "bounded-degree-random":
        return _bounded_degree(rng, spec)
    return _pendant_rich(rng, spec)


def planted(problem: str, n: int, k: int, seed: int, d: int = 4, attach: int = 2) -> Generated:
    return generate(GeneratorSpec("planted-modulator", problem, n, k, d, attach, seed))


__all__ = ["FAMILIES", "GeneratorSpec", "Generated", "generate", "planted"]
