"""Built-in named source graphs for reproducible generator runs.

Specs: ``k3``/``k4``/``k5`` (complete), ``prism`` (triangular prism),
``petersen``, ``cycle:n``, ``random-regular:n:d`` (seeded via --seed) or
``random-regular:n:d:seed`` (embedded seed wins).
"""

from __future__ import annotations

import random
from itertools import combinations

from ..reductions import SourceGraph

__all__ = ["named_source_graph"]


def _complete(n: int) -> SourceGraph:
    return SourceGraph(n, list(combinations(range(n), 2)))


def _cycle(n: int) -> SourceGraph:
    if n < 3:
        raise ValueError("cycle needs at least 3 vertices")
    return SourceGraph(n, [(i, (i + 1) % n) for i in range(n)])


def _prism() -> SourceGraph:
    return SourceGraph(6, [
        (0, 1), (1, 2), (0, 2),
        (3, 4), (4, 5), (3, 5),
        (0, 3), (1, 4), (2, 5),
    ])


def _petersen() -> SourceGraph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    spokes = [(i, 5 + i) for i in range(5)]
    return SourceGraph(10, outer + inner + spokes)


def _random_regular(n: int, d: int, seed: int) -> SourceGraph:
    """Pairing-model sampler with rejection; deterministic given the seed."""
    if d < 0 or d >= n or (n * d) % 2:
        raise ValueError(f"no {d}-regular graph on {n} vertices")
    rng = random.Random(seed)
    for _ in range(10000):
        stubs = [v for v in range(n) for _ in range(d)]
        rng.shuffle(stubs)
        edges: set[tuple[int, int]] = set()
        ok = True
        for i in range(0, len(stubs), 2):
            u, v = stubs[i], stubs[i + 1]
            if u == v:
                ok = False
                break
            e = (u, v) if u < v else (v, u)
            if e in edges:
                ok = False
                break
            edges.add(e)
        if ok:
            return SourceGraph(n, sorted(edges))
    raise ValueError(f"failed to sample a {d}-regular graph on {n} vertices")


def named_source_graph(spec: str, seed: int = 0) -> SourceGraph:
    parts = spec.split(":")
    name = parts[0]
    if name in ("k3", "k4", "k5") and len(parts) == 1:
        return _complete(int(name[1]))
    if name == "prism" and len(parts) == 1:
        return _prism()
    if name == "petersen" and len(parts) == 1:
        return _petersen()
    if name == "cycle" and len(parts) == 2:
        return _cycle(int(parts[1]))
    if name == "random-regular" and len(parts) in (3, 4):
        n, d = int(parts[1]), int(parts[2])
        if len(parts) == 4:
            seed = int(parts[3])
        return _random_regular(n, d, seed)
    raise ValueError(f"unknown source graph spec {spec!r}")
