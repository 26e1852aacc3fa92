"""Enumeration of marked configurations and the expansion bijection."""
from __future__ import annotations

import pytest

from grapeconf import configs, corpus, hilbert
from grapeconf.binpoly import binom
from grapeconf.configs import (
    ElemHE,
    ElemSHE,
    HalfEdgeRef,
    count_he_grape,
    count_she_grape,
    enum_he_elem,
    enum_he_grape,
    enum_she_elem,
    enum_she_grape,
    expand_she,
)
from grapeconf.errors import CapExceeded, InvalidShape, SizeExceeded, SingletonStem, TrivialGraph
from grapeconf.graphs import essential_vertices, parse_grape


def shapes_under(total_max: int):
    """Elementary shapes with ell + m <= total_max, both stem and bouquet kinds."""
    out = []
    for ell in range(total_max + 1):
        for m in range(total_max + 1 - ell):
            if m >= 1 and 2 * ell + m >= 3:
                out.append((ell, m))
            elif m == 0 and ell >= 1:
                out.append((ell, m))
    return out


def closed_she_count(ell: int, m: int, j: int, which: int) -> int:
    """Closed-form counts; stated for sizes j >= 1 (plus the one-loop special case)."""
    if m == 0 and ell == 1:
        return 1 if (which == 2 and j == 0) else 0
    d = ell + m - 2
    if which == 1:
        return (ell + m - 2) * binom(d, j - 1) - binom(d, j)
    return ell * binom(d, j - 1)


def closed_he_count(ell: int, m: int, k: int, which: int) -> int:
    if m == 0 and ell == 1:
        return 1 if which == 2 else 0
    d = ell + m - 2
    if which == 1:
        return (ell + m - 2) * binom(k + d, ell + m - 1) - binom(k + d, d) + 1
    return ell * binom(k + d, ell + m - 1)


def test_she_examples():
    got = enum_she_elem(0, 3, 2)
    assert got == [ElemSHE(HalfEdgeRef(2, 1), (0, 1, 1))]
    got = enum_she_elem(3, 4, 1)
    assert len(got) == 3 and all(s.h.which == 2 for s in got)
    assert closed_she_count(3, 4, 1, 1) + closed_she_count(3, 4, 1, 2) == 3
    # appendix bouquet: 4 loops, size 2, type 2
    got = enum_she_elem(4, 0, 2, which=2)
    assert len(got) == 8 == 4 * binom(2, 1)
    for s in got:
        prev = (s.h.slot - 2) % 4
        assert s.b[prev] == 0 and s.b[s.h.slot - 1] == 1
    # one-loop bouquet: a single size-0 configuration
    assert enum_she_elem(1, 0, 0, which=2) == [ElemSHE(HalfEdgeRef(1, 2), (0,))]
    assert enum_she_elem(1, 0, 1) == []


def test_she_structure():
    for ell, m in shapes_under(5):
        for j in range(6):
            for s in enum_she_elem(ell, m, j):
                assert s.size == j
                assert all(b in (0, 1) for b in s.b)
                assert s.b[s.h.slot - 1] == (1 if not (m == 0 and ell == 1) else 0)
                if m >= 1:
                    assert s.b[0] == 0
                    if s.h.which == 2:
                        assert s.h.slot > m  # marks a loop
                if s.h.which == 1:
                    assert 1 < s.h.slot < ell + m
                    assert any(s.b[t] for t in range(s.h.slot, ell + m))


def test_she_counts_match_closed_forms():
    for ell, m in shapes_under(7):
        for j in range(1, 9):
            for which in (1, 2):
                got = len(enum_she_elem(ell, m, j, which))
                assert got == closed_she_count(ell, m, j, which), (ell, m, j, which)


def test_he_examples():
    got = enum_he_elem(0, 3, 2)
    assert got == [ElemHE(HalfEdgeRef(2, 1), (0, 1, 1))]
    assert len(enum_he_elem(3, 4, 1)) == 3
    for k in range(5):
        assert enum_he_elem(1, 0, k) == [ElemHE(HalfEdgeRef(1, 2), (k,))]


def test_he_counts_match_closed_forms_and_she_sums():
    for ell, m in shapes_under(6):
        for k in range(7):
            for which in (1, 2):
                got = len(enum_he_elem(ell, m, k, which))
                assert got == closed_he_count(ell, m, k, which), (ell, m, k, which)
                via_she = sum(
                    len(enum_she_elem(ell, m, j, which)) * binom(k, j)
                    for j in range(k + 1)
                )
                assert got == via_she


def test_type_split_is_exact():
    for ell, m in shapes_under(5):
        for j in range(6):
            both = enum_she_elem(ell, m, j)
            assert len(both) == len(enum_she_elem(ell, m, j, 1)) + len(
                enum_she_elem(ell, m, j, 2)
            )


def test_expand_examples():
    she = ElemSHE(HalfEdgeRef(2, 1), (0, 1, 1))
    assert expand_she(0, 3, she, 2) == [ElemHE(HalfEdgeRef(2, 1), (0, 1, 1))]
    assert len(expand_she(0, 3, she, 3)) == 3 == binom(3, 2)
    singleton = ElemSHE(HalfEdgeRef(1, 2), (0,))
    assert expand_she(1, 0, singleton, 5) == [ElemHE(HalfEdgeRef(1, 2), (5,))]
    with pytest.raises(SizeExceeded):
        expand_she(0, 3, she, 1)


def test_expansion_partitions_he():
    for ell, m in shapes_under(6):
        for k in range(7):
            expected = enum_he_elem(ell, m, k)
            produced = []
            for j in range(k + 1):
                for she in enum_she_elem(ell, m, j):
                    produced.extend(expand_she(ell, m, she, k))
            assert len(produced) == len(set(produced)) == len(expected)
            assert set(produced) == set(expected), (ell, m, k)


def test_invalid_shapes():
    with pytest.raises(InvalidShape):
        enum_she_elem(0, 0, 1)
    with pytest.raises(InvalidShape):
        enum_she_elem(0, 2, 1)
    with pytest.raises(InvalidShape):
        enum_he_elem(1, 1 - 1, 0)  # (1, 0) is fine... bouquet; use (0,1):
    with pytest.raises(InvalidShape):
        enum_he_elem(0, 1, 2)


def test_grape_examples():
    d = corpus.dumbbell()
    assert count_she_grape(d, 2, 2) == 1
    assert count_she_grape(d, 1, 1) == 2
    assert len(enum_she_grape(d, 2, 2)) == 1
    big = corpus.big_grape()
    assert count_she_grape(big, 0, 0) == 1
    assert all(count_she_grape(big, 0, j) == 0 for j in range(1, 6))
    assert count_he_grape(d, 2, 2) == 1
    assert count_he_grape(d, 1, 3) == 6
    assert count_he_grape(d, 0, 4) == 1


def test_grape_errors():
    with pytest.raises(SingletonStem):
        count_she_grape(corpus.bouquet(2), 1, 1)
    with pytest.raises(TrivialGraph):
        count_she_grape(corpus.interval(), 0, 0)
    with pytest.raises(CapExceeded):
        enum_he_grape(corpus.dumbbell(), 1, 5, cap=3)


def test_grape_counts_match_enumeration_and_coefficients():
    for entry in corpus.build_corpus():
        g = entry.graph
        if g.n == 1 or not essential_vertices(g):
            continue
        t = hilbert.hilbert_table(g)
        imax = len(essential_vertices(g))
        for i in range(min(imax, 3) + 1):
            for j in range(7):
                count = count_she_grape(g, i, j)
                assert count == hilbert.coefficient(g, i, j), (entry.name, i, j)
                assert count == t.poly(i).coeff(j), (entry.name, i, j)
                if count <= 400:
                    assert count == len(enum_she_grape(g, i, j)), (entry.name, i, j)


def test_grape_he_count_matches_polynomial():
    for entry in corpus.build_corpus():
        g = entry.graph
        if g.n == 1 or not essential_vertices(g):
            continue
        t = hilbert.hilbert_table(g)
        for i in range(min(len(essential_vertices(g)), 3) + 1):
            for k in range(5):
                assert count_he_grape(g, i, k) == t.value(i, k) - t.residual.get((i, k), 0)


def test_counts_invariant_under_rerooting_and_relabeling():
    d = corpus.dumbbell()
    rerooted = parse_grape("edge 0 1\nloops 0 1\nloops 1 1\nroot 1 0")
    relabeled = parse_grape("edge 1 0\nloops 1 1\nloops 0 1")
    for i in range(3):
        for j in range(4):
            base = count_she_grape(d, i, j)
            assert count_she_grape(rerooted, i, j) == base
            assert count_she_grape(relabeled, i, j) == base
    g = corpus.elementary(2, 3)
    flipped = parse_grape("edge 0 1\nedge 0 2\nedge 0 3\nloops 0 2\nroot 0 3")
    for j in range(5):
        assert count_she_grape(g, 1, j) == count_she_grape(flipped, 1, j)


def test_enum_he_grape_sizes_and_renderings():
    d = corpus.dumbbell()
    items = enum_he_grape(d, 1, 2)
    assert len(items) == count_he_grape(d, 1, 2) == 4
    assert all(x.she.size == len(x.c) and sum(x.c) <= 2 for x in items)
    line = configs.render_grape_he(items[0])
    assert line.startswith("W={0}") and "c=(" in line
