"""Named graph builders and the standard verification corpus."""
from __future__ import annotations

import random
from typing import NamedTuple

from .graphs import GrapeGraph, essential_vertices


def interval() -> GrapeGraph:
    return GrapeGraph.build([(0, 1)])


def circle() -> GrapeGraph:
    return GrapeGraph.build([], {0: 1})


def bouquet(ell: int) -> GrapeGraph:
    if ell < 2:
        raise ValueError("bouquet needs at least two loops")
    return GrapeGraph.build([], {0: ell})


def star(m: int) -> GrapeGraph:
    return GrapeGraph.build([(0, t + 1) for t in range(m)])


def elementary(ell: int, m: int) -> GrapeGraph:
    """One vertex with ell loops and m leaf edges."""
    if m == 0:
        if ell == 1:
            return circle()
        return bouquet(ell)
    return GrapeGraph.build([(0, t + 1) for t in range(m)], {0: ell} if ell else {})


def dumbbell() -> GrapeGraph:
    return GrapeGraph.build([(0, 1)], {0: 1, 1: 1})


def big_grape() -> GrapeGraph:
    """A 14-vertex specimen with eleven essential vertices of varied shapes."""
    edges = [
        (1, 0), (0, 13), (0, 2), (0, 3),
        (3, 4), (4, 5), (4, 6), (3, 7),
        (7, 12), (7, 11), (7, 8), (8, 10), (8, 9),
    ]
    loops = {1: 1, 2: 1, 7: 1, 9: 1, 11: 1, 12: 1, 13: 3}
    return GrapeGraph.build(edges, loops)


_PIECES = [(1, 1), (0, 3), (1, 2), (2, 1)]


def random_three_essential(seed: int) -> GrapeGraph:
    """Small graph with exactly three essential vertices, deterministic in seed."""
    rng = random.Random(seed)
    while True:
        parts = [rng.choice(_PIECES) for _ in range(3)]
        mid = rng.randrange(3)
        if parts[mid][1] < 2:
            continue
        order = [p for t, p in enumerate(parts) if t != mid]
        a, b = order
        c = parts[mid]
        edges = [(0, 1), (1, 2)]
        loops = {0: a[0], 1: c[0], 2: b[0]}
        nxt = 3
        for v, (ell, m) in ((0, a), (1, c), (2, b)):
            used = 1 if v != 1 else 2
            for _ in range(m - used):
                edges.append((v, nxt))
                nxt += 1
        if rng.random() < 0.5:
            # subdivide one stem edge for a non-essential interior vertex
            t = rng.randrange(len(edges))
            u, w = edges[t]
            edges[t] = (u, nxt)
            edges.append((nxt, w))
            nxt += 1
        g = GrapeGraph.build(edges, {v: c for v, c in loops.items() if c})
        if len(essential_vertices(g)) != 3:
            continue
        # keep the prepared complex small: the verification grid goes to k = 5
        if g.n + sum(g.loops) <= 7:
            return g


class CorpusEntry(NamedTuple):
    name: str
    graph: GrapeGraph
    kmax_oracle: int   # grid bound for the oracle-vs-formula check
    kmax_basis: int    # grid bound for the basis certificate; -1 = not defined
                       # (whole-graph configurations need a stem edge and an
                       #  essential vertex)


def build_corpus() -> list[CorpusEntry]:
    """The standard corpus: every elementary shape with total degree 3..7,
    the degenerate shapes, the dumbbell, three random three-essential-vertex
    graphs, and the 14-vertex specimen (at a reduced grid)."""
    entries: list[CorpusEntry] = []
    for total in range(3, 8):
        for ell in range(total // 2 + 1):
            m = total - 2 * ell
            basis_k = (4 if total <= 6 else 3) if m >= 1 else -1
            entries.append(
                CorpusEntry(f"elementary_{ell}_{m}", elementary(ell, m), 5, basis_k)
            )
    entries.append(CorpusEntry("interval", interval(), 5, -1))
    entries.append(CorpusEntry("circle", circle(), 5, -1))
    for ell in (2, 3, 4):
        entries.append(CorpusEntry(f"bouquet_{ell}", bouquet(ell), 5, -1))
    entries.append(CorpusEntry("dumbbell", dumbbell(), 5, 4))
    for t in range(3):
        g = random_three_essential(20250809 + t)
        entries.append(CorpusEntry(f"random3_{t}", g, 5, 2))
    entries.append(CorpusEntry("grape14", big_grape(), 2, 2))
    return entries
