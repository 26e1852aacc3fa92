"""Grape-graph modeling, parsing, and invariants."""
from __future__ import annotations

from collections import Counter

import pytest

from grapeconf import corpus, graphs
from grapeconf.errors import (
    EdgeNotFound,
    LoopCut,
    NoEssentialVertex,
    ParseError,
    SingletonStem,
    TrivialGraph,
    ValidationError,
)
from grapeconf.graphs import (
    Classification,
    GrapeGraph,
    VertexLocalData,
    canonical_labeling,
    classify,
    components_after_removal,
    decompose_along_stem,
    degree,
    essential_vertices,
    local_data,
    one_bridge_decompose,
    parse_grape,
    parse_grape_json,
    ramos_delta,
    stem_degree,
)


def stem_canonical_form(g: GrapeGraph) -> tuple:
    """Rooted-tree canonical form with loop-count labels, minimized over roots.

    Standard bottom-up encoding; used as the isomorphism oracle for small
    graphs in these tests.
    """
    adj = {v: [] for v in g.stem_vertices}
    for a, b in g.stem_edges:
        adj[a].append(b)
        adj[b].append(a)

    def encode(v: int, parent: int | None) -> tuple:
        children = sorted(encode(u, v) for u in adj[v] if u != parent)
        return (g.loops[v], tuple(children))

    return min(encode(r, None) for r in g.stem_vertices)


# -- parsing ------------------------------------------------------------------


def test_parse_dumbbell():
    g = parse_grape("edge 0 1\nloops 0 1\nloops 1 1")
    assert g.n == 2 and g.stem_edges == ((0, 1),) and g.loops == (1, 1)


def test_parse_star():
    g = parse_grape("edge 0 1\nedge 0 2\nedge 0 3")
    assert g.n == 4 and len(g.stem_edges) == 3 and sum(g.loops) == 0
    assert essential_vertices(g) == (0,)


def test_parse_bouquet_without_edges():
    g = parse_grape("loops 0 2")
    assert g.n == 1 and g.loops == (2,) and classify(g) is Classification.BOUQUET


def test_parse_reindexes_densely():
    g = parse_grape("edge 5 9\nloops 9 1")
    assert g.stem_vertices == (0, 1) and g.stem_edges == ((0, 1),) and g.loops == (0, 1)


def test_parse_comments_and_root():
    g = parse_grape("# a dumbbell\nedge 0 1  # stem\nloops 0 1\nloops 1 1\nroot 0 1")
    assert g.root == (0, 1)


def test_parse_errors():
    with pytest.raises(ParseError):
        parse_grape("edge 0")
    with pytest.raises(ParseError):
        parse_grape("edge 0 0")
    with pytest.raises(ParseError):
        parse_grape("loops 0 0")
    with pytest.raises(ParseError):
        parse_grape("loops 0 1\nloops 0 2")
    with pytest.raises(ParseError):
        parse_grape("")
    with pytest.raises(ParseError):
        parse_grape("vertex 3")


def test_validation_errors():
    with pytest.raises(ValidationError):
        parse_grape("edge 0 1\nedge 2 3")  # disconnected
    with pytest.raises(ValidationError):
        GrapeGraph((0, 1, 2), ((0, 1), (1, 2), (2, 0)), (0, 0, 0))  # cycle
    with pytest.raises(ValidationError):
        GrapeGraph((0,), (), (0,))  # no edges at all
    with pytest.raises(ValidationError):
        GrapeGraph((0, 1), ((0, 1),), (0, 0), root=(0, 1))  # root not essential


def test_parse_json_equivalent():
    text = '{"stem_edges": [[0,1]], "loops": {"0": 1, "1": 1}, "root": [0, 1]}'
    g = parse_grape_json(text)
    assert g == parse_grape("edge 0 1\nloops 0 1\nloops 1 1\nroot 0 1")
    with pytest.raises(ParseError):
        parse_grape_json("not json")


# -- classification and local data ----------------------------------------------


def test_classify_examples():
    assert classify(parse_grape("edge 0 1\nedge 1 2")) is Classification.INTERVAL
    assert classify(parse_grape("loops 0 1")) is Classification.CIRCLE
    assert classify(parse_grape("loops 0 3")) is Classification.BOUQUET
    assert classify(corpus.dumbbell()) is Classification.GENERAL


def test_essential_vertices_examples():
    assert essential_vertices(corpus.dumbbell()) == (0, 1)
    assert essential_vertices(corpus.star(3)) == (0,)
    assert essential_vertices(parse_grape("edge 0 1")) == ()


def test_local_data_dumbbell_and_star():
    assert local_data(corpus.dumbbell()) == Counter({VertexLocalData(1, 1): 2})
    assert local_data(corpus.star(3)) == Counter({VertexLocalData(0, 3): 1})


def test_local_data_fourteen_vertex_example():
    got = local_data(corpus.big_grape())
    expected = Counter(
        {
            VertexLocalData(0, 4): 1,
            VertexLocalData(1, 1): 5,
            VertexLocalData(0, 3): 3,
            VertexLocalData(1, 4): 1,
            VertexLocalData(3, 1): 1,
        }
    )
    assert got == expected


def test_decompose_along_stem():
    assert decompose_along_stem(corpus.dumbbell()) == {
        0: VertexLocalData(1, 1),
        1: VertexLocalData(1, 1),
    }
    assert decompose_along_stem(corpus.star(3)) == {0: VertexLocalData(0, 3)}
    with pytest.raises(TrivialGraph):
        decompose_along_stem(parse_grape("edge 0 1"))
    with pytest.raises(SingletonStem):
        decompose_along_stem(corpus.bouquet(2))


def test_handshake():
    for entry in corpus.build_corpus():
        g = entry.graph
        assert sum(degree(g, v) for v in g.stem_vertices) == 2 * (
            len(g.stem_edges) + sum(g.loops)
        )


# -- one-bridge decomposition -----------------------------------------------------


def test_one_bridge_dumbbell_symmetry():
    g1, g2 = one_bridge_decompose(corpus.dumbbell(), (0, 1))
    for piece in (g1, g2):
        assert local_data(piece) == Counter({VertexLocalData(1, 1): 1})
    assert stem_canonical_form(g1) == stem_canonical_form(g2)


def test_one_bridge_path():
    path = parse_grape("edge 0 1\nedge 1 2")
    first, second = one_bridge_decompose(path, (0, 1))
    assert first.n == 2 and len(first.stem_edges) == 1
    assert second.n == 3 and len(second.stem_edges) == 2


def test_one_bridge_errors():
    with pytest.raises(LoopCut):
        one_bridge_decompose(corpus.dumbbell(), (0, 0))
    with pytest.raises(EdgeNotFound):
        one_bridge_decompose(corpus.dumbbell(), (0, 5))


def test_one_bridge_reglue_is_isomorphic():
    for entry in corpus.build_corpus():
        g = entry.graph
        for e in g.stem_edges:
            g1, g2 = one_bridge_decompose(g, e)
            # the dangling copy is the last edge of each piece (anchor, dangle);
            # re-glue by joining the two anchors directly
            a1, _d1 = g1.stem_edges[-1]
            a2, _d2 = g2.stem_edges[-1]
            off = g1.n
            edges = (
                list(g1.stem_edges[:-1])
                + [(u + off, v + off) for u, v in g2.stem_edges[:-1]]
                + [(a1, a2 + off)]
            )
            loops = {v: c for v, c in enumerate(g1.loops) if c}
            loops.update({v + off: c for v, c in enumerate(g2.loops) if c})
            glued = GrapeGraph.build(edges, loops)
            assert stem_canonical_form(glued) == stem_canonical_form(g)


# -- the component-count invariant ---------------------------------------------


def test_ramos_examples():
    assert ramos_delta(corpus.elementary(3, 4), 1) == 7
    assert ramos_delta(corpus.dumbbell(), 2) == 3
    assert ramos_delta(corpus.dumbbell(), 3) is None
    assert ramos_delta(corpus.dumbbell(), 0) == 1


def test_ramos_monotone_and_formula():
    for entry in corpus.build_corpus():
        g = entry.graph
        ess = essential_vertices(g)
        values = [ramos_delta(g, i) for i in range(len(ess) + 1)]
        assert values[0] == 1
        assert all(a <= b for a, b in zip(values, values[1:]))
        # removal of essential vertices on a stem with >= 1 edge splits into
        # exactly 1 + sum (ell + m - 1) pieces
        if g.n > 1:
            from itertools import combinations

            for size in range(len(ess) + 1):
                for w in combinations(ess, size):
                    expected = 1 + sum(
                        g.loops[v] + stem_degree(g, v) - 1 for v in w
                    )
                    assert components_after_removal(g, set(w)) == expected


# -- canonical labeling ------------------------------------------------------------


def test_labeling_dumbbell():
    lab = canonical_labeling(corpus.dumbbell())
    assert lab.root == (0, 1)
    assert lab.slots[1][0] == graphs.Slot("stem", 1, 0)  # pivot points at the root
    assert lab.slots[1][1] == graphs.Slot("loop", 1, 0)
    assert lab.slots[0] == (graphs.Slot("stem", 0, 1), graphs.Slot("loop", 0, 0))


def test_labeling_rerooting_swaps_pivots():
    g = corpus.dumbbell()
    lab0 = canonical_labeling(g, (0, 1))
    lab1 = canonical_labeling(g, (1, 0))
    assert lab0.slots[0][0].other == 1 and lab1.slots[1][0].other == 0


def test_labeling_elementary_3_4():
    g = corpus.elementary(3, 4)
    lab = canonical_labeling(g)
    slots = lab.slots[0]
    assert len(slots) == 7
    assert [s.kind for s in slots] == ["stem"] * 4 + ["loop"] * 3
    assert lab.half_edge_count(0) == 10


def test_labeling_errors():
    with pytest.raises(NoEssentialVertex):
        canonical_labeling(parse_grape("edge 0 1"))
    with pytest.raises(SingletonStem):
        canonical_labeling(corpus.bouquet(2))
    with pytest.raises(ValidationError):
        canonical_labeling(corpus.dumbbell(), (0, 5))


def test_local_data_invariance_under_relabeling_and_root():
    g = corpus.big_grape()
    # relabel vertices by reversing the edge list order
    edges = [(13 - a, 13 - b) for a, b in g.stem_edges]
    loops = {13 - v: c for v, c in enumerate(g.loops) if c}
    h = GrapeGraph.build(edges, loops)
    assert local_data(h) == local_data(g)
