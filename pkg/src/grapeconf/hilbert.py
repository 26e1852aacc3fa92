"""Hilbert polynomials of configuration spaces of bunches of grapes.

The sequence P^0, P^1, ... gives dim H_i(B_k Gamma) exactly for every
nontrivial connected grape graph (the residual table records the finitely
many deviations for the degenerate circle case).  Everything here is exact
integer arithmetic in the binomial basis.
"""
from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from types import MappingProxyType
from typing import Mapping

from . import binpoly
from .binpoly import ONE, ZERO, BinPoly, binom, conv, evaluate, shift_plus
from .errors import (
    DegreeUndefined,
    InconsistentDegrees,
    InvalidShape,
    NonIntegerRoot,
    NonzeroResidual,
    RoundTripMismatch,
    SingletonStem,
    TrivialGraph,
)
from .graphs import (
    Classification,
    GrapeGraph,
    VertexLocalData,
    classify,
    components_after_removal,
    degree,
    essential_vertices,
    one_bridge_decompose,
    ramos_delta,
    stem_degree,
)

Residual = Mapping[tuple[int, int], int]
_EMPTY_RESIDUAL: Residual = MappingProxyType({})


@dataclass(frozen=True, eq=False)
class HilbertTable:
    """Hilbert polynomials indexed by homological degree, plus corrections."""

    polys: tuple[BinPoly, ...]
    essential: int
    classification: str
    residual: Residual = _EMPTY_RESIDUAL

    def poly(self, i: int) -> BinPoly:
        return self.polys[i] if 0 <= i < len(self.polys) else ZERO

    def value(self, i: int, k: int) -> int:
        """dim H_i(B_k Gamma) = eval(P^i, k) + residual correction."""
        return evaluate(self.poly(i), k) + self.residual.get((i, k), 0)


def b_coeff(ell: int, m: int, j: int) -> int:
    """Coefficient of C(k,j) in the first Hilbert polynomial of an
    essential star-with-loops piece: (2l+m-2)C(l+m-2,j-1) - C(l+m-2,j)."""
    if m < 1 or 2 * ell + m < 3 or ell < 0:
        raise InvalidShape(f"(ell={ell}, m={m}) needs m >= 1 and 2*ell + m >= 3")
    if j < 0:
        raise ValueError("j must be nonnegative")
    return _p1_coeff(ell, m, j)


def _p1_coeff(ell: int, m: int, j: int) -> int:
    # Shared with the bouquet case m = 0, ell >= 2 where the same closed
    # form gives the type-1 + type-2 configuration counts.
    if j == 0:
        return 0
    d = ell + m - 2
    return (2 * ell + m - 2) * binom(d, j - 1) - binom(d, j)


def elementary_p1(ell: int, m: int) -> tuple[BinPoly, Residual]:
    """First Hilbert polynomial of the one-essential-vertex shape (ell, m).

    For ell + m = 1 the space is an interval or circle: the polynomial is the
    constant ell, with the circle's single correction at (i,k) = (1,0).
    """
    if ell < 0 or m < 0 or ell + m < 1:
        raise InvalidShape(f"(ell={ell}, m={m}) needs ell + m >= 1")
    if ell + m == 1:
        residual: Residual = {(1, 0): -ell} if ell else {}
        return BinPoly.const(ell), residual
    if m == 0 and ell < 2:
        raise InvalidShape("m = 0 requires ell >= 2 here")
    d = ell + m - 1
    return BinPoly({j: _p1_coeff(ell, m, j) for j in range(1, d + 1)}), {}


@lru_cache(maxsize=None)
def hilbert_table(g: GrapeGraph) -> HilbertTable:
    """Full polynomial table for a grape graph.

    For the general case P^i is the coefficient of x^i in the graded
    product over essential vertices of (1 + x * P^1_v), with polynomial
    factors multiplied by the binomial-basis convolution; this equals the
    sum over i-subsets of essential vertices of the convolved local
    polynomials, in quadratic rather than exponential time.
    """
    kind = classify(g)
    if kind is Classification.INTERVAL:
        return HilbertTable((ONE,), 0, kind.value)
    if kind is Classification.CIRCLE:
        return HilbertTable((ONE, ONE), 0, kind.value, MappingProxyType({(1, 0): -1}))
    if kind is Classification.BOUQUET:
        p1, _ = elementary_p1(g.loops[0], 0)
        return HilbertTable((ONE, p1), 1, kind.value)
    ess = essential_vertices(g)
    grades: list[BinPoly] = [ONE]
    for v in ess:
        p1, _ = elementary_p1(g.loops[v], stem_degree(g, v))
        nxt = [grades[0]]
        for i in range(1, len(grades) + 1):
            term = conv(grades[i - 1], p1)
            nxt.append(grades[i] + term if i < len(grades) else term)
        grades = nxt
    return HilbertTable(tuple(grades), len(ess), kind.value)


def coefficient(g: GrapeGraph, i: int, j: int) -> int:
    """Coefficient of C(k,j) in P^i, by the explicit subset/composition sum."""
    if g.n == 1:
        raise SingletonStem("coefficient formula needs a stem edge")
    ess = essential_vertices(g)
    if not ess:
        raise TrivialGraph("no essential vertex")
    if i == 0:
        return 1 if j == 0 else 0
    data = {v: (g.loops[v], stem_degree(g, v)) for v in ess}
    total = 0
    for w in combinations(ess, i):
        for parts in _compositions(j, i):
            prod = 1
            for v, jv in zip(w, parts):
                ell, m = data[v]
                prod *= _p1_coeff(ell, m, jv)
                if prod == 0:
                    break
            total += prod
    return total


def _compositions(total: int, parts: int):
    """Nonnegative integer vectors of the given length summing to total."""
    if parts == 0:
        if total == 0:
            yield ()
        return
    for first in range(total + 1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def leading_term(g: GrapeGraph, i: int) -> tuple[int, Fraction, int]:
    """(degree, leading coefficient, b-leading coefficient) of P^i.

    Computed independently from the component-count invariant: degree is
    max |pi_0(Gamma - W)| - 1 over i-subsets W of essential vertices, and the
    b-leading coefficient sums prod(deg(v) - 2) over the maximizing subsets.
    The result is checked against the polynomial table before returning.
    """
    ess = essential_vertices(g)
    delta = ramos_delta(g, i)
    if delta is None or delta <= 0:
        raise DegreeUndefined(f"Delta undefined or nonpositive for i={i}")
    deg_p = delta - 1
    blead = 0
    for w in combinations(ess, i):
        if components_after_removal(g, set(w)) == delta:
            prod = 1
            for v in w:
                prod *= degree(g, v) - 2
            blead += prod
    c = Fraction(blead, math.factorial(deg_p))
    table = hilbert_table(g)
    p = table.poly(i)
    if p.degree != deg_p or p.blead != blead:
        raise AssertionError(
            f"leading term mismatch at i={i}: table gives "
            f"(deg={p.degree}, b={p.blead}), invariant gives (deg={deg_p}, b={blead})"
        )
    return deg_p, c, blead


def poincare_truncation(g: GrapeGraph, i_max: int, k_max: int) -> list[list[int]]:
    """Rectangular table of dim H_i(B_k Gamma) for i <= i_max, k <= k_max."""
    table = hilbert_table(g)
    return [[table.value(i, k) for k in range(k_max + 1)] for i in range(i_max + 1)]


# -- series arithmetic ----------------------------------------------------------


def _require_exact(t: HilbertTable) -> None:
    if t.residual:
        raise NonzeroResidual("table carries residual corrections")


def _combine(t1: HilbertTable, t2: HilbertTable, shifted: bool, label: str) -> HilbertTable:
    _require_exact(t1)
    _require_exact(t2)
    out: list[BinPoly] = []
    for i in range(len(t1.polys) + len(t2.polys) - 1):
        acc = ZERO
        for i1 in range(i + 1):
            term = conv(t1.poly(i1), t2.poly(i - i1))
            acc = acc + (shift_plus(term) if shifted else term)
        out.append(acc)
    while len(out) > 1 and out[-1].is_zero():
        out.pop()
    return HilbertTable(tuple(out), t1.essential + t2.essential, label)


def disjoint_union_table(t1: HilbertTable, t2: HilbertTable) -> HilbertTable:
    """Table of a disjoint union: P^i = sum shift_plus(P^{i1} * P^{i2})."""
    return _combine(t1, t2, shifted=True, label="disjoint-union")


def one_bridge_table(t1: HilbertTable, t2: HilbertTable) -> HilbertTable:
    """Table after gluing along a dangling edge: P^i = sum P^{i1} * P^{i2}."""
    return _combine(t1, t2, shifted=False, label="one-bridge")


@lru_cache(maxsize=None)
def _union_table_for_cut(g: GrapeGraph, e: tuple[int, int]) -> HilbertTable:
    g1, g2 = one_bridge_decompose(g, e)
    return disjoint_union_table(hilbert_table(g1), hilbert_table(g2))


def betti_recurrence_check(g: GrapeGraph, e: tuple[int, int], i: int, k: int) -> bool:
    """dim H_i(B_k G) = dim H_i(B_k (G1 u G2)) - dim H_i(B_{k-1}(G1 u G2))."""
    union = _union_table_for_cut(g, e)
    lhs = hilbert_table(g).value(i, k)
    rhs = union.value(i, k) - (union.value(i, k - 1) if k >= 1 else 0)
    return lhs == rhs


# -- the inverse problem ----------------------------------------------------------


def _integer_roots_monic(coeffs: list[int]) -> list[int]:
    """All roots (with multiplicity) of a monic integer polynomial, which must
    be positive integers; raises NonIntegerRoot otherwise.

    coeffs are [1, c_{n-1}, ..., c_0] descending.  Roots are found by trial
    division over divisors of the constant term with repeated deflation.
    """
    n = len(coeffs) - 1
    roots: list[int] = []
    cur = list(coeffs)
    while len(cur) > 1:
        const = cur[-1]
        if const == 0:
            raise NonIntegerRoot("zero root: not a valid local datum")
        found = None
        for cand in sorted(_divisors(abs(const))):
            rem = 0
            for c in cur:
                rem = rem * cand + c
            if rem == 0:
                found = cand
                break
        if found is None:
            raise NonIntegerRoot("leading coefficients have no positive integer root")
        roots.append(found)
        nxt = [cur[0]]
        for c in cur[1:-1]:
            nxt.append(c + found * nxt[-1])
        cur = nxt
    if len(roots) != n:
        raise NonIntegerRoot("could not deflate to the expected root count")
    return roots


def _divisors(n: int) -> list[int]:
    out = []
    d = 1
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            if d != n // d:
                out.append(n // d)
        d += 1
    return out


def _bouquet_match(polys: list[BinPoly]) -> Counter | None:
    tail = [p for p in polys[2:] if not p.is_zero()]
    if tail or len(polys) < 2:
        return None
    p1 = polys[1]
    d = p1.degree
    if d is None or d < 1:
        return None
    ell = d + 1
    expected, _ = elementary_p1(ell, 0)
    if p1 == expected:
        return Counter({VertexLocalData(ell, 0): 1})
    return None


def recover_local_data(polys: list[BinPoly], allow_bouquet: bool = False) -> Counter:
    """Invert the polynomial table back to the multiset of local data.

    Proceeds batch by batch: the current remainder of P^1 has some degree d;
    the number n of pieces of that degree is read off from how long the
    degrees of P^i keep growing by d per step; their b-leading coefficients,
    divided by the product of all previously recovered roots, are the
    elementary symmetric functions of the batch roots lambda = 2*ell + m - 2.
    Each root yields (ell, m) = (lambda - d + 1, 2d - lambda).  The result is
    verified by recomputing the full table from the recovered multiset.
    """
    if not polys or polys[0] != ONE:
        raise InconsistentDegrees("first polynomial must be the constant 1")

    def p(i: int) -> BinPoly:
        return polys[i] if i < len(polys) else ZERO

    if allow_bouquet:
        match = _bouquet_match(list(polys))
        if match is not None:
            return match

    found: list[VertexLocalData] = []
    remainder = p(1)
    scale = 1
    deg_base = 0
    idx = 0
    while not remainder.is_zero():
        d = remainder.degree
        if d == 0:
            raise InconsistentDegrees("constant nonzero remainder in P^1")
        n = 0
        while p(idx + n + 1).degree == deg_base + (n + 1) * d:
            n += 1
        if n == 0:
            raise InconsistentDegrees(
                f"degree of P^{idx + 1} does not continue the batch pattern"
            )
        sym: list[int] = []
        for t in range(1, n + 1):
            blead = p(idx + t).blead
            if blead % scale:
                raise NonIntegerRoot("b-leading coefficient not divisible by batch scale")
            sym.append(blead // scale)
        coeffs = [1] + [(-1) ** t * s for t, s in enumerate(sym, start=1)]
        for lam in _integer_roots_monic(coeffs):
            ell, m = lam - d + 1, 2 * d - lam
            if ell < 0 or m < 1 or 2 * ell + m < 3:
                raise NonIntegerRoot(f"root {lam} at degree {d} is not valid local data")
            found.append(VertexLocalData(ell, m))
            piece, _ = elementary_p1(ell, m)
            remainder = remainder - piece
            scale *= lam
        deg_base += n * d
        idx += n

    forward = _table_from_local_data(found)
    got = list(polys)
    while len(got) > 1 and got[-1].is_zero():
        got.pop()
    if got != forward:
        raise RoundTripMismatch("recovered local data does not reproduce the input")
    return Counter(found)


def _table_from_local_data(data: list[VertexLocalData]) -> list[BinPoly]:
    grades = [ONE]
    for ell, m in data:
        p1, _ = elementary_p1(ell, m)
        nxt = [grades[0]]
        for i in range(1, len(grades) + 1):
            term = conv(grades[i - 1], p1)
            nxt.append(grades[i] + term if i < len(grades) else term)
        grades = nxt
    return grades


# -- renderings -------------------------------------------------------------------


def table_text(t: HilbertTable) -> str:
    lines = [f"P{i} = {binpoly.render(p)}" for i, p in enumerate(t.polys)]
    for (i, k), delta in sorted(t.residual.items()):
        lines.append(f"residual ({i},{k}) {delta}")
    return "\n".join(lines)


def table_json_dict(t: HilbertTable) -> dict:
    return {
        "v": 1,
        "P": [binpoly.to_json_dict(p) for p in t.polys],
        "residual": [[i, k, delta] for (i, k), delta in sorted(t.residual.items())],
        "essential": t.essential,
        "classification": t.classification,
    }
