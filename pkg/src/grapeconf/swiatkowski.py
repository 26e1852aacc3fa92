"""Independent chain-complex oracle for configuration-space homology.

The complex is a tensor product over vertices of a loop-free subdivision of
the input graph.  Each vertex contributes generators: empty, occupied, or
one of its half edges; each edge carries a nonnegative exponent.  The
differential sends a half edge h at v to e(h) * empty_v - occupied_v,
extended with Koszul signs over the vertex order.

Bidegrees: empty (0,0), occupied (0,1), half edge (1,1), and each edge
exponent adds (0,1), which is forced by the differential preserving the
point count while dropping the homological degree by one.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator

from .binpoly import binom
from .configs import GrapeHE, enum_he_grape
from .errors import InvalidConfig, ResourceLimit
from .exactla import QQ, FieldSpec, SparseMatrix, nullspace, rank
from .graphs import CanonicalLabeling, GrapeGraph, Slot, canonical_labeling

DEFAULT_SLICE_CAP = 500_000

BasisElement = tuple[tuple[int, ...], tuple[int, ...]]  # (vertex states, edge exponents)
ChainData = dict[BasisElement, int]

EMPTY, OCCUPIED = 0, 1  # state codes; half edge t at v is 2 + t


@dataclass(frozen=True, eq=False)
class PreparedGraph:
    """Loop-free subdivision with fixed vertex, edge, and half-edge orders.

    Vertices: original stem vertices first, then one midpoint per loop in
    (vertex, loop index) order.  Edges: stem edges in input order, then per
    loop the two subdivided halves (vertex side first).
    """

    base: GrapeGraph
    nvert: int
    edges: tuple[tuple[int, int], ...]
    half_at: tuple[tuple[tuple[int, int], ...], ...]   # per vertex: (edge, side)
    stem_index: dict[frozenset[int], int]
    loop_edges: dict[tuple[int, int], tuple[int, int, int]]  # (v, t) -> (e1, e2, mid)

    def half_code(self, v: int, half: tuple[int, int]) -> int:
        return 2 + self.half_at[v].index(half)

    def stem_edge_id(self, u: int, w: int) -> int:
        return self.stem_index[frozenset((u, w))]


def prepare(g: GrapeGraph) -> PreparedGraph:
    """Subdivide every loop once; Betti numbers are homeomorphism invariants."""
    n = g.n
    edges: list[tuple[int, int]] = list(g.stem_edges)
    stem_index = {frozenset(e): i for i, e in enumerate(g.stem_edges)}
    loop_edges: dict[tuple[int, int], tuple[int, int, int]] = {}
    mid = n
    for v in range(n):
        for t in range(g.loops[v]):
            e1 = len(edges)
            edges.append((v, mid))
            edges.append((mid, v))
            loop_edges[(v, t)] = (e1, e1 + 1, mid)
            mid += 1
    half_at: list[list[tuple[int, int]]] = [[] for _ in range(mid)]
    for eid, (a, b) in enumerate(edges):
        half_at[a].append((eid, 0))
        half_at[b].append((eid, 1))
    return PreparedGraph(
        base=g,
        nvert=mid,
        edges=tuple(edges),
        half_at=tuple(tuple(sorted(h)) for h in half_at),
        stem_index=stem_index,
        loop_edges=loop_edges,
    )


def _compositions(total: int, parts: int) -> Iterator[tuple[int, ...]]:
    if parts == 0:
        if total == 0:
            yield ()
        return
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


class Complex:
    """Cached slices, boundaries, and ranks of the complex of one graph."""

    def __init__(self, g: GrapeGraph, slice_cap: int = DEFAULT_SLICE_CAP):
        self.graph = g
        self.pg = prepare(g)
        self.slice_cap = slice_cap
        self._state_table: list[list[int]] | None = None
        self._rank_cache: dict[tuple[int, int, str], int] = {}

    # -- dimensions ------------------------------------------------------------

    def _states_by_bidegree(self) -> list[list[int]]:
        """count[i][t] of vertex-state words with i half edges, t points."""
        if self._state_table is not None:
            return self._state_table
        table = [[1]]
        for v in range(self.pg.nvert):
            deg = len(self.pg.half_at[v])
            nxt = [[0] * (len(table[0]) + 1) for _ in range(len(table) + 1)]
            for i, row in enumerate(table):
                for t, cnt in enumerate(row):
                    if not cnt:
                        continue
                    nxt[i][t] += cnt            # empty
                    nxt[i][t + 1] += cnt        # occupied
                    nxt[i + 1][t + 1] += cnt * deg  # one of the half edges
            table = nxt
        self._state_table = table
        return table

    def dim(self, i: int, k: int) -> int:
        if i < 0 or k < 0:
            return 0
        table = self._states_by_bidegree()
        if i >= len(table):
            return 0
        ne = len(self.pg.edges)
        total = 0
        for t, cnt in enumerate(table[i]):
            if cnt and t <= k:
                total += cnt * binom(k - t + ne - 1, ne - 1)
        return total

    def _check_cap(self, i: int, k: int) -> None:
        d = self.dim(i, k)
        if d > self.slice_cap:
            raise ResourceLimit(
                f"slice ({i},{k}) has dimension {d} > cap {self.slice_cap}"
            )

    # -- bases and boundaries ----------------------------------------------------

    def basis(self, i: int, k: int) -> list[BasisElement]:
        """All basis elements of the bidegree, in lexicographic order."""
        self._check_cap(i, k)
        pg = self.pg
        n, ne = pg.nvert, len(pg.edges)
        out: list[BasisElement] = []
        states = [0] * n

        def rec(pos: int, i_left: int, k_left: int) -> None:
            if i_left > n - pos or i_left > k_left:
                return
            if pos == n:
                for exps in _compositions(k_left, ne):
                    out.append((tuple(states), exps))
                return
            states[pos] = EMPTY
            rec(pos + 1, i_left, k_left)
            if k_left:
                states[pos] = OCCUPIED
                rec(pos + 1, i_left, k_left - 1)
                if i_left:
                    for t in range(len(pg.half_at[pos])):
                        states[pos] = 2 + t
                        rec(pos + 1, i_left - 1, k_left - 1)
            states[pos] = EMPTY

        rec(0, i, k)
        return out

    def index(self, i: int, k: int) -> dict[BasisElement, int]:
        return {x: n for n, x in enumerate(self.basis(i, k))}

    def boundary_terms(self, x: BasisElement) -> list[tuple[int, BasisElement]]:
        """The differential of a single basis element."""
        states, exps = x
        pg = self.pg
        out = []
        sign = 1
        for v, code in enumerate(states):
            if code < 2:
                continue
            eid, _side = pg.half_at[v][code - 2]
            to_empty = list(states)
            to_empty[v] = EMPTY
            bumped = list(exps)
            bumped[eid] += 1
            out.append((sign, (tuple(to_empty), tuple(bumped))))
            to_occ = list(states)
            to_occ[v] = OCCUPIED
            out.append((-sign, (tuple(to_occ), exps)))
            sign = -sign
        return out

    def boundary_matrix(self, i: int, k: int) -> SparseMatrix:
        """The map from bidegree (i,k) to (i-1,k); entries are +-1."""
        if i < 1:
            return SparseMatrix(0, self.dim(i, k), ())
        self._check_cap(i - 1, k)
        row_index = self.index(i - 1, k)
        entries = []
        for col, x in enumerate(self.basis(i, k)):
            for coeff, img in self.boundary_terms(x):
                entries.append((row_index[img], col, coeff))
        return SparseMatrix(len(row_index), self.dim(i, k), tuple(entries))

    # -- ranks and Betti numbers ---------------------------------------------------

    def rank(self, i: int, k: int, field: FieldSpec = QQ) -> int:
        if i < 1 or self.dim(i, k) == 0 or self.dim(i - 1, k) == 0:
            return 0
        key = (i, k, repr(field))
        if key not in self._rank_cache:
            self._rank_cache[key] = rank(self.boundary_matrix(i, k), field)
        return self._rank_cache[key]

    def betti(self, i: int, k: int, field: FieldSpec = QQ) -> int:
        return self.dim(i, k) - self.rank(i, k, field) - self.rank(i + 1, k, field)


@lru_cache(maxsize=32)
def complex_for(g: GrapeGraph, slice_cap: int = DEFAULT_SLICE_CAP) -> Complex:
    return Complex(g, slice_cap)


def slice_basis(g: GrapeGraph, i: int, k: int) -> list[BasisElement]:
    return complex_for(g).basis(i, k)


def boundary_matrix(g: GrapeGraph, i: int, k: int) -> SparseMatrix:
    return complex_for(g).boundary_matrix(i, k)


def betti(g: GrapeGraph, i: int, k: int, field: FieldSpec = QQ,
          slice_cap: int = DEFAULT_SLICE_CAP) -> int:
    """dim C_{i,k} - rank d_{i,k} - rank d_{i+1,k} on the prepared graph."""
    return complex_for(g, slice_cap).betti(i, k, field)


# -- chains ------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class Chain:
    """Homogeneous integer chain in one bidegree."""

    i: int
    k: int
    data: ChainData

    def is_zero(self) -> bool:
        return not self.data

    def boundary(self, cx: Complex) -> ChainData:
        out: ChainData = {}
        for x, coeff in self.data.items():
            for sgn, img in cx.boundary_terms(x):
                val = out.get(img, 0) + sgn * coeff
                if val:
                    out[img] = val
                else:
                    out.pop(img, None)
        return out

    def vector(self, index: dict[BasisElement, int]) -> dict[int, int]:
        return {index[x]: coeff for x, coeff in self.data.items()}


def _slot_edge_and_half(pg: PreparedGraph, slot: Slot) -> tuple[int, tuple[int, int]]:
    """Prepared edge carrying the slot's dots, and its half edge at the vertex.

    For a loop the dots and the type-1 half edge live on the first subdivided
    half; any choice represents the same homology class.
    """
    if slot.kind == "stem":
        eid = pg.stem_edge_id(slot.vertex, slot.other)
        a, _b = pg.edges[eid]
        return eid, (eid, 0 if a == slot.vertex else 1)
    e1, _e2, _mid = pg.loop_edges[(slot.vertex, slot.other)]
    return e1, (e1, 0)


def _loop_factor(pg: PreparedGraph, v: int, t: int) -> list[tuple[int, int, int, int | None]]:
    """Alternating cycle around a subdivided loop: (coeff, vertex, halfcode, extra edge)."""
    e1, e2, mid = pg.loop_edges[(v, t)]
    return [
        (1, v, pg.half_code(v, (e1, 0)), None),
        (-1, v, pg.half_code(v, (e2, 1)), None),
        (-1, mid, pg.half_code(mid, (e1, 1)), None),
        (1, mid, pg.half_code(mid, (e2, 0)), None),
    ]


def _star_factor(pg: PreparedGraph, v: int, triple: list[tuple[int, tuple[int, int]]]
                 ) -> list[tuple[int, int, int, int | None]]:
    """(e_b - e_c) h_a + (e_c - e_a) h_b + (e_a - e_b) h_c at one vertex."""
    (ea, ha), (eb, hb), (ec, hc) = triple
    ca, cb, cc = (pg.half_code(v, h) for h in (ha, hb, hc))
    return [
        (1, v, ca, eb), (-1, v, ca, ec),
        (1, v, cb, ec), (-1, v, cb, ea),
        (1, v, cc, ea), (-1, v, cc, eb),
    ]


def _expand_factors(factors: list[list[tuple[int, int, int, int | None]]],
                    nvert: int, base_exps: list[int]) -> ChainData:
    """Tensor the one-vertex factors together with Koszul reordering signs."""
    out: ChainData = {}

    def rec(pos: int, coeff: int, zs: list[int], codes: list[int], extras: list[int]) -> None:
        if pos == len(factors):
            inversions = sum(
                1 for a in range(len(zs)) for b in range(a + 1, len(zs)) if zs[a] > zs[b]
            )
            total = coeff * (-1) ** (inversions % 2)
            states = [EMPTY] * nvert
            for z, code in zip(zs, codes):
                states[z] = code
            exps = list(base_exps)
            for eid in extras:
                exps[eid] += 1
            key = (tuple(states), tuple(exps))
            val = out.get(key, 0) + total
            if val:
                out[key] = val
            else:
                out.pop(key, None)
            return
        for c, z, code, extra in factors[pos]:
            rec(pos + 1, coeff * c, zs + [z], codes + [code],
                extras + ([extra] if extra is not None else []))

    rec(0, 1, [], [], [])
    return out


def he_to_chain(g: GrapeGraph, x: GrapeHE,
                labeling: CanonicalLabeling | None = None) -> Chain:
    """Realize a weighted configuration as an explicit cycle.

    Type-2 parts become the alternating loop cycle; type-1 parts become the
    three-term star cycle on the pivot, the marked edge, and the first dotted
    edge after it (one point there is consumed by the cycle).  All remaining
    weight turns into edge exponents, with the surplus k - |c| on the root
    edge.  The boundary of the result is checked to vanish.
    """
    from .configs import dotted_edge_keys

    if labeling is None:
        labeling = canonical_labeling(g)
    pg = prepare(g)
    she = x.she
    keys = dotted_edge_keys(labeling, she)
    if len(keys) != len(x.c):
        raise InvalidConfig("weight vector length must match the dotted edges")
    if any(c < 1 for c in x.c):
        raise InvalidConfig("weights must be positive")
    csum = sum(x.c)
    if csum > x.k:
        raise InvalidConfig("total weight exceeds the point count")

    key_to_slot: dict[tuple[int, int], Slot] = {}
    for v, part in zip(she.vertices, she.parts):
        slots = labeling.slots[v]
        for pos, bit in enumerate(part.b):
            if bit:
                key_to_slot[labeling.edge_key(slots[pos])] = slots[pos]
    mass = dict(zip(keys, x.c))

    consumed: dict[tuple[int, int], int] = {}
    factors: list[list[tuple[int, int, int, int | None]]] = []
    for v, part in zip(she.vertices, she.parts):
        slots = labeling.slots[v]
        r = part.h.slot
        r_key = labeling.edge_key(slots[r - 1])
        consumed[r_key] = consumed.get(r_key, 0) + 1
        if part.h.which == 2:
            slot = slots[r - 1]
            if slot.kind != "loop":
                raise InvalidConfig("type-2 mark must sit on a loop")
            factors.append(_loop_factor(pg, v, slot.other))
        else:
            support = [pos for pos, bit in enumerate(part.b) if bit]
            later = [pos for pos in support if pos >= r]
            if not later:
                raise InvalidConfig("type-1 mark needs a dotted edge after it")
            s_pos = later[0]
            s_key = labeling.edge_key(slots[s_pos])
            consumed[s_key] = consumed.get(s_key, 0) + 1
            triple = [
                _slot_edge_and_half(pg, slots[0]),
                _slot_edge_and_half(pg, slots[r - 1]),
                _slot_edge_and_half(pg, slots[s_pos]),
            ]
            factors.append(_star_factor(pg, v, triple))

    exps = [0] * len(pg.edges)
    for key, c in mass.items():
        eid, _half = _slot_edge_and_half(pg, key_to_slot[key])
        exps[eid] += c - consumed.get(key, 0)
    root_slot = Slot("stem", labeling.root[0], labeling.root[1])
    root_eid, _ = _slot_edge_and_half(pg, root_slot)
    exps[root_eid] += x.k - csum

    data = _expand_factors(factors, pg.nvert, exps)
    chain = Chain(len(she.vertices), x.k, data)
    cx = complex_for(g)
    if chain.boundary(cx):
        raise AssertionError("constructed chain is not a cycle")
    return chain


# -- certificates -----------------------------------------------------------------


def in_boundary_image(g: GrapeGraph, chain: Chain, field: FieldSpec = QQ) -> bool:
    """Whether the cycle is a boundary, by a rank comparison."""
    cx = complex_for(g)
    index = cx.index(chain.i, chain.k)
    z = SparseMatrix.from_columns(len(index), [chain.vector(index)])
    b = cx.boundary_matrix(chain.i + 1, chain.k)
    return rank(z.hstack(b), field) == cx.rank(chain.i + 1, chain.k, field)


def basis_rank_check(g: GrapeGraph, i: int, k: int, field: FieldSpec = QQ,
                     cap: int | None = 100_000) -> tuple[int, int, bool]:
    """Certificate that the configuration cycles form a homology basis.

    Returns (configuration count, rank of their span in homology, equal),
    where equal means both numbers also agree with the Betti number.
    """
    labeling = canonical_labeling(g) if g.n > 1 else None
    cx = complex_for(g)
    index = cx.index(i, k)
    columns = []
    for x in enum_he_grape(g, i, k, cap):
        chain = he_to_chain(g, x, labeling)
        columns.append(chain.vector(index))
    count = len(columns)
    z = SparseMatrix.from_columns(len(index), columns)
    b = cx.boundary_matrix(i + 1, k)
    rank_in_homology = rank(z.hstack(b), field) - cx.rank(i + 1, k, field)
    equal = count == rank_in_homology == cx.betti(i, k, field)
    return count, rank_in_homology, equal


def stabilization_rank(g: GrapeGraph, eid: int, i: int, k: int,
                       field: FieldSpec = QQ) -> tuple[int, int]:
    """Rank of multiplication by a prepared edge from H_{i,k} to H_{i,k+1},
    together with the Betti number it must equal (the map is injective)."""
    cx = complex_for(g)
    if i == 0:
        kernel = [{n: 1} for n in range(cx.dim(0, k))]
        basis_k = cx.basis(0, k)
    else:
        kernel = nullspace(cx.boundary_matrix(i, k), field)
        basis_k = cx.basis(i, k)
    target = cx.index(i, k + 1)
    columns = []
    for vec in kernel:
        col = {}
        for n, val in vec.items():
            states, exps = basis_k[n]
            bumped = list(exps)
            bumped[eid] += 1
            col[target[(states, tuple(bumped))]] = val
        columns.append(col)
    z = SparseMatrix.from_columns(len(target), columns)
    b = cx.boundary_matrix(i + 1, k + 1)
    image_rank = rank(z.hstack(b), field) - cx.rank(i + 1, k + 1, field)
    return image_rank, cx.betti(i, k, field)


# -- oracle regression fixtures ------------------------------------------------------


def _plain_star(pg: PreparedGraph, v: int, slots: tuple[Slot, ...],
                a: int, b: int, c: int, exps: list[int]) -> Chain:
    triple = [_slot_edge_and_half(pg, slots[t - 1]) for t in (a, b, c)]
    data = _expand_factors([_star_factor(pg, v, triple)], pg.nvert, exps)
    k = 2 + sum(exps)
    return Chain(1, k, data)


def _chain_sum(parts: list[tuple[int, Chain]]) -> Chain:
    i, k = parts[0][1].i, parts[0][1].k
    data: ChainData = {}
    for scale, chain in parts:
        if (chain.i, chain.k) != (i, k):
            raise ValueError("inhomogeneous sum")
        for key, val in chain.data.items():
            nv = data.get(key, 0) + scale * val
            if nv:
                data[key] = nv
            else:
                data.pop(key, None)
    return Chain(i, k, data)


def relation_fixtures() -> list[tuple[str, GrapeGraph, Chain]]:
    """Chain-level encodings of the classical star/loop relations.

    Each returned cycle must lie in the boundary image.  With the
    alternating-sum star representative the two star relations cancel
    identically at chain level; the quotient relation on the loop-plus-leaf
    graph is a nonzero boundary (the sign pairing between the two loop
    orientations is fixed by this complex's conventions).
    """
    out = []
    star4 = GrapeGraph.build([(0, 1), (0, 2), (0, 3), (0, 4)])
    lab4 = canonical_labeling(star4)
    pg4 = prepare(star4)
    slots4 = lab4.slots[0]
    ne4 = len(pg4.edges)

    def star4_chain(a, b, c, dotted=None):
        exps = [0] * ne4
        if dotted is not None:
            eid, _ = _slot_edge_and_half(pg4, slots4[dotted - 1])
            exps[eid] += 1
        return _plain_star(pg4, 0, slots4, a, b, c, exps)

    x1 = _chain_sum([
        (1, star4_chain(1, 2, 3)),
        (-1, star4_chain(1, 2, 4)),
        (1, star4_chain(1, 3, 4)),
        (-1, star4_chain(2, 3, 4)),
    ])
    out.append(("X1", star4, x1))
    x2 = _chain_sum([
        (1, star4_chain(1, 2, 3, dotted=4)),
        (-1, star4_chain(1, 2, 4, dotted=3)),
        (1, star4_chain(1, 3, 4, dotted=2)),
        (-1, star4_chain(2, 3, 4, dotted=1)),
    ])
    out.append(("X2", star4, x2))

    quince = GrapeGraph.build([(0, 1)], {0: 1})
    pgq = prepare(quince)
    leaf_eid = pgq.stem_edge_id(0, 1)
    e1, e2, _mid = pgq.loop_edges[(0, 0)]

    def loop_chain(dotted_eid):
        exps = [0] * len(pgq.edges)
        exps[dotted_eid] += 1
        data = _expand_factors([_loop_factor(pgq, 0, 0)], pgq.nvert, exps)
        return Chain(1, 2, data)

    # star over the leaf half edge and the two halves of the loop at the vertex
    triple = [(leaf_eid, (leaf_eid, 0)), (e1, (e1, 0)), (e2, (e2, 1))]
    star_data = _expand_factors(
        [_star_factor(pgq, 0, triple)], pgq.nvert, [0] * len(pgq.edges)
    )
    q = _chain_sum([
        (1, Chain(1, 2, star_data)),
        (1, loop_chain(leaf_eid)),
        (-1, loop_chain(e1)),
    ])
    out.append(("Q", quince, q))
    return out
