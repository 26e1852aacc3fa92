"""Marked-half-edge configurations indexing homology bases.

An elementary shape (ell, m) has local edge slots 1..ell+m: slot 1 is the
pivot (a non-loop when m >= 1), slots 2..m the other non-loops, and the
last ell slots the loops.  A configuration marks one half edge and carries
a weight vector over the slots; the standard ("binary") ones index the
binomial-basis coefficients, the weighted ones count points directly.

Bouquets (m = 0) follow their own conventions: type-2 marks may sit on any
loop but require the cyclically previous slot to be empty, and the
one-loop bouquet has a single size-0 standard configuration.
"""
from __future__ import annotations

from functools import lru_cache
from itertools import combinations, product
from typing import Iterator, NamedTuple

from .binpoly import binom
from .errors import CapExceeded, InvalidShape, SingletonStem, SizeExceeded, TrivialGraph
from .graphs import (
    CanonicalLabeling,
    GrapeGraph,
    Slot,
    canonical_labeling,
    essential_vertices,
    stem_degree,
)


class HalfEdgeRef(NamedTuple):
    slot: int   # 1-based local edge slot
    which: int  # 1 = half edge at the essential vertex, 2 = second half edge


class ElemSHE(NamedTuple):
    h: HalfEdgeRef
    b: tuple[int, ...]

    @property
    def size(self) -> int:
        return sum(self.b)


class ElemHE(NamedTuple):
    h: HalfEdgeRef
    a: tuple[int, ...]

    @property
    def size(self) -> int:
        return sum(self.a)


def _check_shape(ell: int, m: int) -> None:
    if m >= 1 and 2 * ell + m >= 3 and ell >= 0:
        return
    if m == 0 and ell >= 1:
        return
    raise InvalidShape(f"(ell={ell}, m={m}) is not an elementary shape here")


def _loop_slots(ell: int, m: int) -> range:
    return range(m + 1, ell + m + 1)


def _binary_vectors(length: int, total: int, fixed: dict[int, int]) -> Iterator[tuple[int, ...]]:
    """0/1 vectors with given fixed entries and sum, lexicographic."""
    free = [p for p in range(length) if p not in fixed]
    base = sum(fixed.values())
    need = total - base
    if need < 0 or need > len(free):
        return
    for ones in combinations(free, need):
        vec = [0] * length
        for p, val in fixed.items():
            vec[p] = val
        for p in ones:
            vec[p] = 1
        yield tuple(vec)


def _weight_vectors(length: int, total: int, minimums: dict[int, int],
                    zeros: set[int]) -> Iterator[tuple[int, ...]]:
    """Nonnegative vectors with entry minimums, forced zeros, and given sum."""

    def rec(pos: int, remaining: int, acc: list[int]) -> Iterator[tuple[int, ...]]:
        if pos == length:
            if remaining == 0:
                yield tuple(acc)
            return
        if pos in zeros:
            lo = hi = 0
        else:
            lo = minimums.get(pos, 0)
            hi = remaining
        for val in range(lo, hi + 1):
            acc.append(val)
            yield from rec(pos + 1, remaining - val, acc)
            acc.pop()

    yield from rec(0, total, [])


def enum_she_elem(ell: int, m: int, j: int, which: int | None = None) -> list[ElemSHE]:
    """All standard configurations of size j, sorted by (slot, type, vector)."""
    _check_shape(ell, m)
    want = (1, 2) if which is None else (which,)
    L = ell + m
    out: list[ElemSHE] = []
    if m == 0 and ell == 1:
        if 2 in want and j == 0:
            out.append(ElemSHE(HalfEdgeRef(1, 2), (0,)))
        return out
    for r in range(1, L + 1):
        if 1 in want and 1 < r < L:
            for b in _binary_vectors(L, j, {0: 0, r - 1: 1}):
                if any(b[s] for s in range(r, L)):
                    out.append(ElemSHE(HalfEdgeRef(r, 1), b))
        type2_ok = r in _loop_slots(ell, m) if m >= 1 else True
        if 2 in want and type2_ok:
            if m == 0:
                prev = r - 1 if r > 1 else L  # cyclic predecessor
                fixed = {r - 1: 1, prev - 1: 0}
            else:
                fixed = {0: 0, r - 1: 1}
            for b in _binary_vectors(L, j, fixed):
                out.append(ElemSHE(HalfEdgeRef(r, 2), b))
    out.sort(key=lambda s: (s.h.slot, s.h.which, s.b))
    return out


def enum_he_elem(ell: int, m: int, k: int, which: int | None = None) -> list[ElemHE]:
    """All weighted configurations of size k, sorted by (slot, type, vector)."""
    _check_shape(ell, m)
    want = (1, 2) if which is None else (which,)
    L = ell + m
    out: list[ElemHE] = []
    if m == 0 and ell == 1:
        if 2 in want:
            out.append(ElemHE(HalfEdgeRef(1, 2), (k,)))
        return out
    for r in range(1, L + 1):
        if 1 in want and 1 < r < L:
            for a in _weight_vectors(L, k, {r - 1: 1}, set()):
                if any(a[s] for s in range(r, L)):
                    out.append(ElemHE(HalfEdgeRef(r, 1), a))
        type2_ok = r in _loop_slots(ell, m) if m >= 1 else True
        if 2 in want and type2_ok:
            for a in _weight_vectors(L, k, {r - 1: 1}, set()):
                out.append(ElemHE(HalfEdgeRef(r, 2), a))
    out.sort(key=lambda s: (s.h.slot, s.h.which, s.a))
    return out


def expand_she(ell: int, m: int, she: ElemSHE, k: int) -> list[ElemHE]:
    """The C(k,j) weighted configurations refining a standard one.

    The extra k - j points are distributed over the support slots plus one
    slack slot: the pivot, except for bouquet type-2 marks where the slack
    is the cyclically previous loop.
    """
    _check_shape(ell, m)
    j = she.size
    if j > k:
        raise SizeExceeded(f"standard size {j} exceeds weight {k}")
    L = ell + m
    support = [p for p in range(L) if she.b[p]]
    if m == 0 and ell >= 2 and she.h.which == 2:
        r = she.h.slot
        slack = (r - 2) % L  # 0-based cyclic predecessor
    else:
        slack = 0
    targets = sorted(set(support) | {slack})
    out = []
    for extra in _weight_vectors(len(targets), k - j, {}, set()):
        a = list(she.b)
        for pos, add in zip(targets, extra):
            a[pos] += add
        out.append(ElemHE(she.h, tuple(a)))
    return out


@lru_cache(maxsize=None)
def she_count(ell: int, m: int, j: int) -> int:
    """Cardinality of the standard configurations, by actual enumeration."""
    return len(enum_she_elem(ell, m, j))


# -- whole-graph configurations ---------------------------------------------------


class GrapeSHE(NamedTuple):
    vertices: tuple[int, ...]        # chosen essential vertices, ascending
    parts: tuple[ElemSHE, ...]       # aligned with vertices

    @property
    def size(self) -> int:
        return sum(p.size for p in self.parts)


class GrapeHE(NamedTuple):
    she: GrapeSHE
    c: tuple[int, ...]               # positive weights over dotted edges, global order
    k: int


def _require_grape(g: GrapeGraph) -> tuple[int, ...]:
    if g.n == 1:
        raise SingletonStem("whole-graph configurations need a stem edge")
    ess = essential_vertices(g)
    if not ess:
        raise TrivialGraph("no essential vertex")
    return ess


def _positive_compositions(total: int, parts: int) -> Iterator[tuple[int, ...]]:
    if parts == 0:
        if total == 0:
            yield ()
        return
    for first in range(1, total - parts + 2):
        for rest in _positive_compositions(total - first, parts - 1):
            yield (first,) + rest


def enum_she_grape(g: GrapeGraph, i: int, j: int) -> list[GrapeSHE]:
    ess = _require_grape(g)
    out: list[GrapeSHE] = []
    if i == 0:
        if j == 0:
            out.append(GrapeSHE((), ()))
        return out
    data = {v: (g.loops[v], stem_degree(g, v)) for v in ess}
    for w in combinations(ess, i):
        for parts in _positive_compositions(j, i):
            pools = [enum_she_elem(*data[v], jv) for v, jv in zip(w, parts)]
            for combo in product(*pools):
                out.append(GrapeSHE(w, combo))
    return out


def count_she_grape(g: GrapeGraph, i: int, j: int) -> int:
    """Number of whole-graph standard configurations, via a graded product
    of the per-vertex enumeration counts."""
    ess = _require_grape(g)
    if i < 0 or j < 0:
        return 0
    # table[ii][jj]: configurations using ii of the processed vertices, size jj
    table = [[0] * (j + 1) for _ in range(i + 1)]
    table[0][0] = 1
    for v in ess:
        ell, m = g.loops[v], stem_degree(g, v)
        counts = [she_count(ell, m, jv) for jv in range(1, j + 1)]
        for ii in range(i - 1, -1, -1):
            for jj in range(j + 1):
                src = table[ii][jj]
                if not src:
                    continue
                for jv, cnt in enumerate(counts, start=1):
                    if jj + jv <= j and cnt:
                        table[ii + 1][jj + jv] += src * cnt
    return table[i][j]


def dotted_edge_keys(labeling: CanonicalLabeling, she: GrapeSHE) -> list[tuple[int, int]]:
    """Global sort keys of the edges carrying a dot or mark, ascending."""
    keys = []
    for v, part in zip(she.vertices, she.parts):
        slots = labeling.slots[v]
        for pos, bit in enumerate(part.b):
            if bit:
                keys.append(labeling.edge_key(slots[pos]))
    return sorted(keys)


def count_he_grape(g: GrapeGraph, i: int, k: int) -> int:
    ess = _require_grape(g)
    jmax = sum(g.loops[v] + stem_degree(g, v) - 1 for v in ess)
    return sum(count_she_grape(g, i, j) * binom(k, j) for j in range(min(k, jmax) + 1))


def enum_he_grape(g: GrapeGraph, i: int, k: int, cap: int | None = 100_000) -> list[GrapeHE]:
    """All weighted whole-graph configurations: a standard one plus a positive
    vector over its dotted edges with total at most k."""
    total = count_he_grape(g, i, k)
    if cap is not None and total > cap:
        raise CapExceeded(f"{total} configurations exceed the cap {cap}")
    out: list[GrapeHE] = []
    for j in range(k + 1):
        for she in enum_she_grape(g, i, j):
            for csum in range(j, k + 1):
                for c in _positive_compositions(csum, j):
                    out.append(GrapeHE(she, c, k))
    return out


# -- renderings --------------------------------------------------------------------


def render_elem_she(s: ElemSHE) -> str:
    return f"h{s.h.which}(e{s.h.slot}) b={''.join(map(str, s.b))}"


def render_elem_he(s: ElemHE) -> str:
    return f"h{s.h.which}(e{s.h.slot}) a=({','.join(map(str, s.a))})"


def render_grape_she(s: GrapeSHE) -> str:
    w = ",".join(map(str, s.vertices))
    jmap = " ".join(f"{v}:{p.size}" for v, p in zip(s.vertices, s.parts))
    body = " ".join(f"{v}:{render_elem_she(p)}" for v, p in zip(s.vertices, s.parts))
    return f"W={{{w}}} j={{{jmap}}} {body}".strip()


def render_grape_he(x: GrapeHE) -> str:
    c = ",".join(map(str, x.c))
    return f"{render_grape_she(x.she)} c=({c})"
