"""Bunches of grapes: a tree stem with a loop count per vertex.

Vertex ids are dense nonnegative integers in input order; every
"smallest" tie-break below uses that order.  Loops are stored as counts,
never as edge objects; their identities are synthesized during labeling.
"""
from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Mapping, NamedTuple

from .errors import (
    EdgeNotFound,
    LoopCut,
    NoEssentialVertex,
    ParseError,
    SingletonStem,
    TrivialGraph,
    ValidationError,
)


class VertexLocalData(NamedTuple):
    ell: int  # loop count
    m: int    # stem degree


class Classification(Enum):
    INTERVAL = "Interval"
    CIRCLE = "Circle"
    BOUQUET = "Bouquet"
    GENERAL = "General"


@dataclass(frozen=True)
class GrapeGraph:
    """A stem tree plus a loop count per vertex."""

    stem_vertices: tuple[int, ...]
    stem_edges: tuple[tuple[int, int], ...]
    loops: tuple[int, ...]
    root: tuple[int, int] | None = None

    def __post_init__(self):
        n = len(self.stem_vertices)
        if n == 0:
            raise ValidationError("graph needs at least one vertex")
        if self.stem_vertices != tuple(range(n)):
            raise ValidationError("vertex ids must be dense 0..n-1")
        if len(self.loops) != n:
            raise ValidationError("loop table must cover every vertex")
        if any(c < 0 for c in self.loops):
            raise ValidationError("loop counts must be nonnegative")
        if len(self.stem_edges) != n - 1:
            raise ValidationError("stem must be a tree: |edges| = |vertices| - 1")
        parent = list(range(n))

        def find(x: int) -> int:
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for u, v in self.stem_edges:
            if not (0 <= u < n and 0 <= v < n):
                raise ValidationError(f"edge ({u},{v}) out of range")
            if u == v:
                raise ValidationError("stem edges must join distinct vertices")
            ru, rv = find(u), find(v)
            if ru == rv:
                raise ValidationError("stem contains a cycle")
            parent[ru] = rv
        if len({find(x) for x in range(n)}) != 1:
            raise ValidationError("stem is disconnected")
        if len(self.stem_edges) + sum(self.loops) == 0:
            raise ValidationError("graphs without edges are not allowed")
        if self.root is not None:
            rv, ru = self.root
            if not self._has_stem_edge(rv, ru):
                raise ValidationError(f"root edge ({rv},{ru}) is not a stem edge")
            if degree(self, rv) < 3:
                raise ValidationError("root vertex must be essential")

    def _has_stem_edge(self, u: int, v: int) -> bool:
        return (u, v) in self.stem_edges or (v, u) in self.stem_edges

    @property
    def n(self) -> int:
        return len(self.stem_vertices)

    @staticmethod
    def build(
        stem_edges: Iterable[tuple[int, int]] = (),
        loops: Mapping[int, int] | None = None,
        root: tuple[int, int] | None = None,
    ) -> "GrapeGraph":
        """Normalize arbitrary integer labels to dense ids in input order."""
        loops = dict(loops or {})
        order: dict[int, int] = {}

        def visit(x: int) -> int:
            if x not in order:
                order[x] = len(order)
            return order[x]

        edges = tuple((visit(u), visit(v)) for u, v in stem_edges)
        for v in loops:
            visit(v)
        if root is not None:
            root = (visit(root[0]), visit(root[1]))
        n = len(order)
        table = [0] * n
        for v, c in loops.items():
            table[order[v]] = int(c)
        return GrapeGraph(tuple(range(n)), edges, tuple(table), root)


# -- parsing -------------------------------------------------------------------


def parse_grape(text: str) -> GrapeGraph:
    """Parse the line-oriented ``.grape`` format."""
    edges: list[tuple[int, int]] = []
    loops: dict[int, int] = {}
    root: tuple[int, int] | None = None
    order: dict[int, int] = {}

    def visit(x: int) -> int:
        if x not in order:
            order[x] = len(order)
        return order[x]

    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        try:
            if parts[0] == "edge" and len(parts) == 3:
                u, v = int(parts[1]), int(parts[2])
                if u < 0 or v < 0:
                    raise ValueError("negative vertex id")
                if u == v:
                    raise ParseError(f"line {lineno}: edge endpoints must differ")
                edges.append((visit(u), visit(v)))
            elif parts[0] == "loops" and len(parts) == 3:
                v, c = int(parts[1]), int(parts[2])
                if v < 0:
                    raise ValueError("negative vertex id")
                if c < 1:
                    raise ParseError(f"line {lineno}: loop count must be >= 1")
                vid = visit(v)
                if vid in loops:
                    raise ParseError(f"line {lineno}: duplicate loops line for vertex {v}")
                loops[vid] = c
            elif parts[0] == "root" and len(parts) == 3:
                if root is not None:
                    raise ParseError(f"line {lineno}: duplicate root line")
                root = (visit(int(parts[1])), visit(int(parts[2])))
            else:
                raise ParseError(f"line {lineno}: unrecognized line {line!r}")
        except ValueError as exc:
            raise ParseError(f"line {lineno}: {exc}") from exc

    n = len(order)
    if n == 0:
        raise ParseError("document declares no vertices")
    table = [0] * n
    for vid, c in loops.items():
        table[vid] = c
    return GrapeGraph(tuple(range(n)), tuple(edges), tuple(table), root)


def parse_grape_json(text: str) -> GrapeGraph:
    """JSON equivalent: stem_edges, loops (vertex -> count), optional root."""
    try:
        data = json.loads(text)
        edges = [(int(u), int(v)) for u, v in data.get("stem_edges", [])]
        loops = {int(v): int(c) for v, c in data.get("loops", {}).items()}
        root = tuple(int(x) for x in data["root"]) if data.get("root") else None
    except (json.JSONDecodeError, KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"bad graph JSON: {exc}") from exc
    if any(c < 1 for c in loops.values()):
        raise ParseError("loop counts must be >= 1")
    return GrapeGraph.build(edges, loops, root)  # type: ignore[arg-type]


def load_grape(path: str) -> GrapeGraph:
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    if path.endswith(".json"):
        return parse_grape_json(text)
    return parse_grape(text)


# -- basic invariants ----------------------------------------------------------


def stem_degree(g: GrapeGraph, v: int) -> int:
    return sum(1 for u, w in g.stem_edges if v in (u, w))


def degree(g: GrapeGraph, v: int) -> int:
    return stem_degree(g, v) + 2 * g.loops[v]


def essential_vertices(g: GrapeGraph) -> tuple[int, ...]:
    return tuple(v for v in g.stem_vertices if degree(g, v) >= 3)


def classify(g: GrapeGraph) -> Classification:
    ess = essential_vertices(g)
    if g.n == 1:
        ell = g.loops[0]
        if ell == 1:
            return Classification.CIRCLE
        return Classification.BOUQUET  # ell >= 2, since zero edges are invalid
    if not ess:
        return Classification.INTERVAL
    return Classification.GENERAL


def local_data(g: GrapeGraph) -> Counter:
    """Multiset {(ell(v), m(v)) : v essential} with m the stem degree."""
    return Counter(VertexLocalData(g.loops[v], stem_degree(g, v)) for v in essential_vertices(g))


def decompose_along_stem(g: GrapeGraph) -> dict[int, VertexLocalData]:
    """Local graph near each essential vertex, up to homeomorphism."""
    if g.n == 1:
        raise SingletonStem("stem has no edge; bouquet handled separately")
    ess = essential_vertices(g)
    if not ess:
        raise TrivialGraph("no essential vertex")
    return {v: VertexLocalData(g.loops[v], stem_degree(g, v)) for v in ess}


def one_bridge_decompose(g: GrapeGraph, e: tuple[int, int]) -> tuple[GrapeGraph, GrapeGraph]:
    """Cut a stem edge; each half keeps a dangling copy of it as a leaf edge."""
    u, v = e
    if u == v:
        raise LoopCut("loops cannot be cut")
    if not g._has_stem_edge(u, v):
        raise EdgeNotFound(f"({u},{v}) is not a stem edge")
    adj: dict[int, list[int]] = {w: [] for w in g.stem_vertices}
    for a, b in g.stem_edges:
        if {a, b} == {u, v}:
            continue
        adj[a].append(b)
        adj[b].append(a)

    def side(start: int) -> list[int]:
        seen = {start}
        stack = [start]
        while stack:
            x = stack.pop()
            for y in adj[x]:
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
        return sorted(seen)

    def piece(vertices: list[int], anchor: int) -> GrapeGraph:
        relabel = {w: i for i, w in enumerate(vertices)}
        dangle = len(vertices)
        edges = [
            (relabel[a], relabel[b])
            for a, b in g.stem_edges
            if a in relabel and b in relabel and {a, b} != {u, v}
        ]
        edges.append((relabel[anchor], dangle))
        loops = tuple(g.loops[w] for w in vertices) + (0,)
        return GrapeGraph(tuple(range(dangle + 1)), tuple(edges), loops)

    return piece(side(u), u), piece(side(v), v)


# -- the Ramos invariant ---------------------------------------------------------


def components_after_removal(g: GrapeGraph, removed: frozenset[int] | set[int]) -> int:
    """|pi_0| of the punctured topological graph after deleting the vertices.

    A removed vertex splits each incident loop into one open arc and each
    incident stem edge into a dangling arc glued to the surviving side.
    """
    survivors = [v for v in g.stem_vertices if v not in removed]
    parent = {v: v for v in survivors}

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    extra = 0
    for u, v in g.stem_edges:
        if u in removed and v in removed:
            extra += 1  # free open arc
        elif u not in removed and v not in removed:
            parent[find(u)] = find(v)
    extra += sum(g.loops[v] for v in removed)
    return len({find(v) for v in survivors}) + extra


def ramos_delta(g: GrapeGraph, i: int) -> int | None:
    """Max components over removals of i essential vertices; None above range."""
    from itertools import combinations

    if i < 0:
        raise ValueError("i must be nonnegative")
    ess = essential_vertices(g)
    if i > len(ess):
        return None
    return max(components_after_removal(g, set(w)) for w in combinations(ess, i))


# -- canonical labeling ---------------------------------------------------------


class Slot(NamedTuple):
    kind: str    # "stem" or "loop"
    vertex: int  # essential vertex owning the slot
    other: int   # stem: neighbor id; loop: loop index at the vertex


@dataclass(frozen=True, eq=False)
class CanonicalLabeling:
    root: tuple[int, int]
    parent: dict[int, int | None]
    depth: dict[int, int]
    slots: dict[int, tuple[Slot, ...]]

    def pivot(self, v: int) -> Slot:
        return self.slots[v][0]

    def edge_key(self, slot: Slot) -> tuple[int, int]:
        """Global sort key of the physical edge behind a slot.

        A stem edge is keyed by its endpoint farther from the root; loops sort
        after their vertex's stem edge, in input order.
        """
        if slot.kind == "loop":
            return (slot.vertex, 1 + slot.other)
        a, b = slot.vertex, slot.other
        child = a if self.depth[a] > self.depth[b] else b
        return (child, 0)

    def half_edge_count(self, v: int) -> int:
        return sum(2 if s.kind == "loop" else 1 for s in self.slots[v])


def default_root(g: GrapeGraph) -> tuple[int, int]:
    ess = essential_vertices(g)
    if not ess:
        raise NoEssentialVertex("graph has no essential vertex")
    v0 = ess[0]
    neighbors = sorted(u for a, b in g.stem_edges for u in (a, b) if v0 in (a, b) and u != v0)
    if not neighbors:
        raise SingletonStem("stem has no edge")
    return (v0, neighbors[0])


def canonical_labeling(g: GrapeGraph, root: tuple[int, int] | None = None) -> CanonicalLabeling:
    """Deterministic per-vertex edge-slot order: pivot, stems by neighbor id, loops."""
    if g.n == 1:
        raise SingletonStem("stem has no edge")
    ess = essential_vertices(g)
    if not ess:
        raise NoEssentialVertex("graph has no essential vertex")
    if root is None:
        root = g.root if g.root is not None else default_root(g)
    rv, ru = root
    if rv not in ess:
        raise ValidationError("root vertex must be essential")
    if not g._has_stem_edge(rv, ru):
        raise ValidationError(f"root edge ({rv},{ru}) is not a stem edge")

    adj: dict[int, list[int]] = {w: [] for w in g.stem_vertices}
    for a, b in g.stem_edges:
        adj[a].append(b)
        adj[b].append(a)
    parent: dict[int, int | None] = {rv: None}
    depth = {rv: 0}
    stack = [rv]
    while stack:
        x = stack.pop()
        for y in sorted(adj[x]):
            if y not in parent:
                parent[y] = x
                depth[y] = depth[x] + 1
                stack.append(y)

    slots: dict[int, tuple[Slot, ...]] = {}
    for v in ess:
        toward_root = ru if v == rv else parent[v]
        order = [Slot("stem", v, toward_root)]
        order += [Slot("stem", v, u) for u in sorted(adj[v]) if u != toward_root]
        order += [Slot("loop", v, t) for t in range(g.loops[v])]
        slots[v] = tuple(order)
    return CanonicalLabeling(root=(rv, ru), parent=parent, depth=depth, slots=slots)
