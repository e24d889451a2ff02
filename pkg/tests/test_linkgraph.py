import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from skeinlab import linkgraph as LG
from skeinlab.linkgraph import LinkGraph

from graphgen import random_link_graph


def axioms(g):
    return {d.axiom for d in LG.validate_graph(g)}


def shifted_ring(k, offset, tag):
    g = LG.ring_graph(k)
    return [(f"{tag}{e.u}", f"{tag}{e.v}", e.colour + offset) for e in g.edges]


def test_validation_examples():
    assert axioms(LinkGraph.build([("a", "b", 0), ("b", "c", 0)])) == set()
    assert axioms(LinkGraph.build([("a", "b", 0), ("b", "c", 0), ("c", "a", 0)])) == {"tree"}
    assert "colours" in axioms(LinkGraph.build([("x", "a", 0), ("x", "b", 1), ("x", "c", 2)]))
    assert "binary" in axioms(LinkGraph.build([("a", "x", 0), ("x", "b", 1)]))
    star = [("x", f"l{i}", 0) for i in range(4)]
    assert "valency" in axioms(LinkGraph.build(star))


def test_self_attachment_rejected():
    g = LinkGraph.build([("a", "b", 0)], self_attached=["a"])
    assert axioms(g) == {"self_attachment"}
    with pytest.raises(LG.GraphError):
        LG.brunnian_report(g)


def test_leaf_partition_on_path():
    g = LinkGraph.build([("a", "v", 0), ("v", "b", 0), ("v", "z", 1)])
    assert LG.leaf_partition(g, "v") == (frozenset({"a"}), frozenset({"b"}))


def test_leaf_partition_rejects_monochrome_and_leaves():
    star = LinkGraph.build([("x", "a", 0), ("x", "b", 0), ("x", "c", 0)])
    with pytest.raises(LG.GraphError):
        LG.leaf_partition(star, "x")
    with pytest.raises(LG.GraphError):
        LG.leaf_partition(star, "a")


def test_ring_graph_partitions_separate_endpoints():
    g = LG.ring_graph(3)
    for v in LG.m_g(g):
        lp, lm = LG.leaf_partition(g, v)
        assert lp and lm and not lp & lm
        c = next(col for col in g.colours()
                 if sum(e.colour == col for e in g.incident()[v]) == 2)
        ends = LG.endpoints(g, c)
        assert lp | lm == ends and len(lp) == len(lm) == 1


def test_closure_examples():
    g = LinkGraph.build([("a", "b", 0), ("c", "d", 1)])
    assert LG.closure(g, ()) == LG.m_g(g) == frozenset("abcd")
    ring = LG.ring_graph(3)
    assert LG.univalent(ring) == frozenset()
    assert LG.closure(ring, ()) == frozenset()
    assert not LG.is_unlinked(ring)
    assert LG.is_initial(ring, LG.m_g(ring))
    for c in ring.colours():
        assert LG.closure(ring, LG.endpoints(ring, c)) == LG.m_g(ring)
    with pytest.raises(LG.GraphError):
        LG.closure(ring, {"nope"})


def test_ring_graph_is_brunnian():
    rep = LG.brunnian_report(LG.ring_graph(3))
    assert rep.is_brunnian and rep.is_strongly_brunnian and not rep.partial
    assert all(rep.per_colour.values())
    assert all(len(s) == 1 for s in rep.minimal_initial_sets)


def test_chain_graph_is_strongly_brunnian():
    g = LG.chain_graph(3)
    assert LG.validate_graph(g) == []
    rep = LG.brunnian_report(g)
    assert rep.is_strongly_brunnian and rep.is_brunnian
    assert rep.minimal_initial_sets == [()]


def test_two_separate_rings_not_brunnian():
    g = LinkGraph.build(shifted_ring(2, 0, "p") + shifted_ring(2, 2, "q"))
    assert LG.validate_graph(g) == []
    rep = LG.brunnian_report(g)
    assert not rep.is_brunnian
    assert not any(rep.per_colour.values())


def test_minimal_set_search_is_flagged_when_too_large():
    rep = LG.brunnian_report(LG.ring_graph(8), limit=10)
    assert rep.partial and rep.minimal_initial_sets == []


def test_reduce_examples():
    edge = LinkGraph.build([("a", "b", 0)])
    assert LG.reduce(edge) == edge
    tripod = LinkGraph.build([("x", "a", 0), ("x", "b", 0), ("x", "c", 0)])
    red = LG.reduce(tripod)
    assert len(red.edges) == 1 and LG.is_trivially_unlinked(red)
    hook = LinkGraph.build([("v", "u", 0), ("u", "w", 0), ("u", "z", 1)])
    red = LG.reduce(hook)
    assert "u" not in red.vertices and {"u.0", "u.1"} <= set(red.vertices)
    assert sorted(e.colour for e in red.edges) == [0, 1]
    assert LG.is_trivially_unlinked(red)


def test_reduce_keeps_ring_graph_linked():
    red = LG.reduce(LG.ring_graph(3))
    assert not LG.is_trivially_unlinked(red)
    assert not LG.is_unlinked(red)


def _graphs(seed_range, **kw):
    rng = random.Random(seed_range)
    return [random_link_graph(rng, **kw) for _ in range(150)]


@pytest.mark.parametrize("seed", range(4))
def test_reduce_preserves_unlinking(seed):
    for g in _graphs(seed, hooks=4 + 3 * seed):
        assert LG.validate_graph(g) == []
        r = LG.reduce(g)
        assert LG.is_unlinked(g) == LG.is_unlinked(r) == LG.is_trivially_unlinked(r)


@pytest.mark.parametrize("seed", range(4))
def test_closure_matches_brute_force(seed):
    checked = 0
    for g in _graphs(100 + seed, hooks=6 + 2 * seed):
        mg = sorted(LG.m_g(g), key=str)
        if len(mg) > LG.ORACLE_LIMIT:
            continue
        rng = random.Random(seed)
        for _ in range(4):
            s = {v for v in mg if rng.random() < 0.3}
            assert LG.closure(g, s) == LG.brute_force_closure(g, s)
            checked += 1
    assert checked > 50


@given(st.integers(0, 10 ** 6), st.integers(0, 12))
@settings(max_examples=150, deadline=None)
def test_closure_monotone_and_idempotent(seed, hooks):
    rng = random.Random(seed)
    g = random_link_graph(rng, colours=3, max_edges=4, hooks=hooks)
    mg = sorted(LG.m_g(g), key=str)
    small = {v for v in mg if rng.random() < 0.3}
    big = small | {v for v in mg if rng.random() < 0.3}
    cs = LG.closure(g, small)
    assert cs <= LG.closure(g, big)
    assert LG.closure(g, cs) == cs
    assert small <= cs <= LG.m_g(g)


@given(st.integers(0, 10 ** 6), st.integers(0, 12))
@settings(max_examples=100, deadline=None)
def test_partition_vertices_are_bivalent_in_doubled_tree(seed, hooks):
    g = random_link_graph(random.Random(seed), hooks=hooks)
    inc = g.incident()
    for v in LG.m_g(g):
        if len(inc[v]) == 3:
            lp, lm = LG.leaf_partition(g, v)
            assert lp and lm and not lp & lm


def test_json_and_dot_round_trip():
    g = LG.from_json({"edges": [{"u": "a", "v": "b", "colour": "red"},
                                {"u": "b", "v": "c", "colour": "red"},
                                {"u": "b", "v": "d", "colour": "blue"}]})
    assert g.colour_names == ("red", "blue")
    again = LG.from_json(LG.to_json(g))
    assert again == g and again.colour_names == g.colour_names
    dot = LG.to_dot(g)
    assert LG.load(dot) == g
    assert LG.load(dot).colour_names == g.colour_names


def test_dot_without_colour_rejected():
    with pytest.raises(LG.GraphError):
        LG.from_dot("graph { a -- b [weight=2]; }")
    with pytest.raises(LG.GraphError):
        LG.from_json({"nodes": []})
