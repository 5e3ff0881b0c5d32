from __future__ import annotations

import itertools
import json

import pytest
from hypothesis import given, settings, strategies as st

from medcube.graphs import (GraphError, SimpGraph, complete_graph, connected_subsets, cycle_graph,
                            edgeless_graph, load_graph, path_graph)

P3, P4, C4, C5, K3 = path_graph(3), path_graph(4), cycle_graph(4), cycle_graph(5), complete_graph(3)


@st.composite
def graphs(draw, max_n=6):
    n = draw(st.integers(1, max_n))
    pairs = list(itertools.combinations("abcdef"[:n], 2))
    keep = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return SimpGraph("abcdef"[:n], [e for e, k in zip(pairs, keep) if k])


def test_link_examples():
    assert P4.link("b") == {"a", "c"}
    assert all(len(C5.link(v)) == 2 for v in C5.vertices)
    assert SimpGraph(["x"]).link("x") == frozenset()


def test_star_examples():
    assert P4.star("b") == {"a", "b", "c"}
    assert SimpGraph(["x", "y"]).star("x") == {"x"}
    assert all(len(C5.star(v)) == 3 for v in C5.vertices)


def test_unknown_vertex_rejected():
    with pytest.raises(GraphError):
        P4.link("z")
    with pytest.raises(GraphError):
        P4.star("z")


def test_opposite_examples():
    opp = C5.opposite()
    assert all(len(opp.link(v)) == 2 for v in opp.vertices) and opp.is_connected()
    assert complete_graph(4).opposite() == edgeless_graph(4)
    assert set(map(frozenset, P4.opposite().edges)) == {frozenset("ac"), frozenset("ad"), frozenset("bd")}


def test_join_factors_examples():
    assert sorted(map(sorted, P3.join_factors())) == [["a", "c"], ["b"]]
    assert P4.join_factors() == [frozenset("abcd")] and P4.is_irreducible()
    assert sorted(map(sorted, C4.join_factors())) == [["a", "c"], ["b", "d"]]


def test_clique_number_examples():
    assert C5.clique_number() == 2
    assert K3.clique_number() == 3
    assert P4.clique_number() == 2


def test_link_reduce_examples():
    bar, r = edgeless_graph(2).link_reduce()
    assert len(bar) == 1 and set(r.values()) == set(bar.vertices)
    bar, r = P4.link_reduce()
    assert bar == P4 and all(r[v] == v for v in P4.vertices)
    bar, r = C4.link_reduce()
    assert len(bar) == 2 and len(bar.edges) == 1


def test_perp_examples():
    assert P4.perp({"a", "c"}) == {"b"}
    assert P4.perp(set()) == set(P4.vertices)
    assert K3.perp({"a"}) == {"b", "c"}


def test_distances_and_components():
    assert P4.distance("a", "d") == 3 and P4.diameter() == 3
    assert C5.diameter() == 2
    g = SimpGraph("abc", [("a", "b")])
    assert not g.is_connected() and g.distance("a", "c") == float("inf")
    assert sorted(map(sorted, g.connected_components())) == [["a", "b"], ["c"]]
    assert P4.set_distance({"a"}, {"c", "d"}) == 2


def test_loader_rejects_bad_files(tmp_path):
    bad = [
        {"vertices": ["a", "a"], "edges": []},
        {"vertices": ["a"], "edges": [["a", "a"]]},
        {"vertices": ["a", "b"], "edges": [["a", "b"], ["b", "a"]]},
        {"vertices": ["a"], "edges": [["a", "z"]]},
        {"vertices": ["a"], "edges": [], "kind": "hyperbolic"},
    ]
    for i, data in enumerate(bad):
        f = tmp_path / f"g{i}.json"
        f.write_text(json.dumps(data))
        with pytest.raises(GraphError):
            load_graph(f)
    f = tmp_path / "junk.json"
    f.write_text("{not json")
    with pytest.raises(GraphError):
        load_graph(f)


def test_json_round_trip(tmp_path):
    f = tmp_path / "c5.json"
    f.write_text(json.dumps(C5.to_json()))
    assert load_graph(f) == C5


def test_connected_subsets_of_path():
    # intervals of a path: n(n+1)/2
    assert len(connected_subsets(path_graph(5))) == 15


@settings(max_examples=60, deadline=None)
@given(graphs())
def test_perp_is_a_closure_identity(g):
    for k in range(len(g) + 1):
        for D in itertools.combinations(g.vertices, k):
            assert g.perp(g.perp(g.perp(D))) == g.perp(D)


@settings(max_examples=60, deadline=None)
@given(graphs())
def test_link_reduce_idempotent_and_compatible(g):
    bar, r = g.link_reduce()
    assert set(r.values()) == set(bar.vertices)
    for v in g.vertices:
        assert bar.link(r[v]) == frozenset(r[u] for u in g.link(v))
    bar2, r2 = bar.link_reduce()
    assert bar2 == bar and all(r2[v] == v for v in bar.vertices)


@settings(max_examples=60, deadline=None)
@given(graphs())
def test_join_factors_rebuild_the_graph(g):
    fs = g.join_factors()
    assert sorted(v for f in fs for v in f) == sorted(g.vertices)
    for f1, f2 in itertools.combinations(fs, 2):
        assert all(g.adjacent(u, v) for u in f1 for v in f2)


@settings(max_examples=60, deadline=None)
@given(graphs())
def test_antigraph_diameter_bound(g):
    r = g.clique_number()
    opp = g.opposite()
    for S in connected_subsets(opp):
        assert opp.diameter(S) <= 2 * r - 1
