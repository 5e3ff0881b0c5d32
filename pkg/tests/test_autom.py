from __future__ import annotations

import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from medcube.autom import (GRAPH, INV, JOIN, PC, TWIST, AutError, Automorphism, ElemAut, check_disc_property,
                           cmp_report, disc_diagram_path, graph_aut, identity, inversion, mu_set, mu_set_report,
                           mu_set_slow, parse_automorphism, partial_conj, reentrant_halfspaces, transvection,
                           twists, untwisted_generators)
from medcube.graphs import SimpGraph
from medcube.words import Presentation, is_parabolic_member, support
from conftest import group

NAMES = ["f2", "z2", "z3", "p3", "p4", "c5"]


def all_untwisted(p):
    gens = untwisted_generators(p)
    if not p.is_coxeter:
        gens = [inversion(p, v) for v in p.graph.vertices] + gens
    return gens


# -- validation --------------------------------------------------------------------

def test_constructor_validation():
    p3, p4, z2 = group("p3"), group("p4"), group("z2")
    with pytest.raises(AutError, match="lk a ⊄ St d"):
        transvection(p4, "a", "d")
    with pytest.raises(AutError, match="twist"):
        transvection(z2, "a", "b", "join")
    with pytest.raises(AutError, match="join"):
        transvection(p3, "a", "c", "twist")
    with pytest.raises(AutError, match="connected component"):
        partial_conj(p4, "a", {"c"})
    with pytest.raises(AutError, match="edge"):
        graph_aut(p4, {"a": "b", "b": "a"})
    cox = group("p4", "coxeter")
    with pytest.raises(AutError, match="inversions are trivial"):
        inversion(cox, "a")
    with pytest.raises(AutError, match="not an involution"):
        transvection(cox, "a", "c")
    assert transvection(p3, "a", "c").kind == JOIN
    assert transvection(z2, "a", "b").kind == TWIST


def test_untwisted_mode_rejections():
    z2, c4 = group("z2"), Presentation(SimpGraph("abcd", [("a", "b"), ("b", "c"), ("c", "d"), ("d", "a")]))
    with pytest.raises(AutError, match="twist"):
        parse_automorphism(z2, "twist(a,b)", untwisted_only=True)
    # the rotation of C4 moves a to b, whose link differs
    with pytest.raises(AutError, match="lk"):
        parse_automorphism(c4, "graph(a>b,b>c,c>d,d>a)", untwisted_only=True)
    # the reflection swapping a and c preserves links
    assert parse_automorphism(c4, "graph(a>c,c>a)", untwisted_only=True)("a") == c4("c")


def test_parse_syntax():
    p4 = group("p4")
    phi = parse_automorphism(p4, "inv(a); join(a,c); pc(d,{a,b}); graph(a>d,b>c,c>b,d>a)")
    assert [f.kind for f in phi.factors] == [INV, JOIN, PC, GRAPH]
    assert str(parse_automorphism(p4, "id")) == "id"
    for bad in ["foo(a)", "inv(q)", "join(a)", "pc(a,c)", "inv a"]:
        with pytest.raises(AutError):
            parse_automorphism(p4, bad)


def test_generator_lists():
    p4 = group("p4")
    names = [str(f) for f in untwisted_generators(p4)]
    assert names == ["join(a,c)", "join(d,b)", "pc(a,{c,d})", "pc(b,{d})", "pc(c,{a})", "pc(d,{a,b})"]
    assert {str(f) for f in twists(group("z2"))} == {"twist(a,b)", "twist(b,a)"}
    assert all(f.kind != JOIN for f in untwisted_generators(group("p4", "coxeter")))


# -- action ---------------------------------------------------------------------------

def test_apply_examples():
    f2, p3 = group("f2"), group("p3")
    assert parse_automorphism(f2, "join(a,b)")("a") == f2("a b")
    assert parse_automorphism(p3, "pc(a,{c})")("c") == p3("a^-1 c a")
    for name in NAMES:
        p = group(name)
        for f in all_untwisted(p):
            assert Automorphism(p, [f])(p.identity).is_identity


def test_composition_order():
    # rightmost factor acts first
    f2 = group("f2")
    phi = parse_automorphism(f2, "inv(b); join(a,b)")
    assert phi("a") == f2("a b^-1")
    psi = parse_automorphism(f2, "join(a,b); inv(b)")
    assert psi("a") == f2("a b")
    assert psi("b") == f2("b^-1")


def test_inverse_examples():
    f2 = group("f2")
    ia = parse_automorphism(f2, "inv(a)")
    assert [str(f) for f in ia.inverse().factors] == ["inv(a)"]
    tau = parse_automorphism(f2, "join(a,b)")
    assert tau.inverse()("a b") == f2("a")


@pytest.mark.parametrize("name,kind", [(n, "artin") for n in NAMES] + [("p4", "coxeter"), ("c5", "coxeter")])
def test_inverse_round_trip_three_factors(name, kind):
    p = group(name, kind)
    gens = all_untwisted(p) + ([] if p.is_coxeter else twists(p))
    rng = random.Random(0)
    for _ in range(4):
        phi = Automorphism(p, [rng.choice(gens) for _ in range(3)])
        inv = phi.inverse()
        for g in p.ball(3):
            assert inv(phi(g)) == g and phi(inv(g)) == g


@st.composite
def aut_and_words(draw):
    name = draw(st.sampled_from(NAMES + ["p4x", "c5x"]))
    p = group(name[:-1], "coxeter") if name.endswith("x") else group(name)
    gens = all_untwisted(p) + ([] if p.is_coxeter else twists(p))
    fs = draw(st.lists(st.sampled_from(gens), min_size=1, max_size=4))
    x = draw(st.lists(st.sampled_from(p.letters), max_size=8))
    y = draw(st.lists(st.sampled_from(p.letters), max_size=8))
    return Automorphism(p, fs), p.normalize(x), p.normalize(y)


@settings(max_examples=300, deadline=None)
@given(aut_and_words())
def test_apply_is_a_homomorphism(data):
    phi, x, y = data
    assert phi(x * y) == phi(x) * phi(y)
    assert phi(x.inverse()) == phi(x).inverse()


@settings(max_examples=300, deadline=None)
@given(aut_and_words())
def test_untwisted_preserves_support_perp(data):
    phi, x, _ = data
    if not phi.is_untwisted_product:
        return
    g = phi.pres.graph
    assert g.perp(support(phi(x))) == g.perp(support(x))


@pytest.mark.parametrize("name", ["p3", "p4", "c5"])
def test_perp_parabolics_are_conjugated_by_w(name):
    p = group(name)
    g = p.graph
    for f in all_untwisted(p):
        phi = Automorphism(p, [f])
        inv = phi.inverse()
        cands = [p.identity] + ([p.gen(f.w), p.gen(f.w, -1)] if f.w else [])
        for k in range(1, len(g) + 1):
            for D in itertools.combinations(g.vertices, k):
                P = g.perp(D)
                if not P:
                    continue
                ok = False
                for c in cands:
                    ci = c.inverse()
                    fwd = all(is_parabolic_member(ci * phi(p.gen(v)) * c, P) for v in P)
                    back = all(is_parabolic_member(inv(c * p.gen(v) * ci), P) for v in P)
                    if fwd and back:
                        ok = True
                        break
                assert ok, (str(f), D)


# -- μ-sets ------------------------------------------------------------------------------

def test_mu_set_examples():
    f2 = group("f2")
    assert mu_set(parse_automorphism(f2, "join(a,b)"), 4) == {f2.identity, f2("b^-1")}
    for name in NAMES:
        p = group(name)
        for v in p.graph.vertices:
            assert mu_set(Automorphism(p, [inversion(p, v)]), 3) == {p.identity}
    p4 = group("p4")
    assert mu_set(parse_automorphism(p4, "graph(a>d,b>c,c>b,d>a)"), 3) == {p4.identity}
    z2 = group("z2")
    shear = parse_automorphism(z2, "twist(a,b)")
    sizes = [len(mu_set(shear, R)) for R in range(2, 7)]
    assert all(a < b for a, b in zip(sizes, sizes[1:]))


@pytest.mark.parametrize("name", ["f2", "z2", "p3", "p4", "c5"])
def test_mu_kernel_matches_python(name):
    p = group(name)
    gens = all_untwisted(p) + twists(p)
    for f in gens[:6]:
        phi = Automorphism(p, [f])
        assert mu_set(phi, 2) == mu_set_slow(phi, 2)


def test_mu_set_monotone_in_radius():
    z2 = group("z2")
    shear = parse_automorphism(z2, "twist(a,b)")
    sets = [mu_set(shear, R) for R in range(1, 6)]
    assert all(a <= b for a, b in zip(sets, sets[1:]))


def test_mu_set_budget_truncates():
    p = group("c5")
    res = mu_set_report(identity(p), 4, budget_pairs=10_000)
    assert res.truncated and res.radius < 4 and res.requested_radius == 4


def test_compositions_of_untwisted_stay_bounded():
    p4 = group("p4")
    for text in ["join(a,c); pc(d,{a,b})", "pc(a,{c,d}); join(d,b); inv(b)"]:
        phi = parse_automorphism(p4, text)
        assert mu_set(phi, 3) == mu_set(phi, 4)


def test_cmp_report_verdicts():
    f2, z2 = group("f2"), group("z2")
    rep = cmp_report(parse_automorphism(f2, "join(a,b)"), [2, 3])
    assert rep["verdict"].startswith("bounded") and rep["sets"]["3"] == ["1", "b^-1"]
    rep = cmp_report(parse_automorphism(z2, "twist(a,b)"), [2, 3, 4])
    assert rep["verdict"] == "growing"
    rep = cmp_report(identity(z2), [1, 2])
    assert rep["sets"]["2"] == ["1"]


# -- disc diagrams ---------------------------------------------------------------------------

def test_disc_path_examples():
    f2, p3, p4 = group("f2"), group("p3"), group("p4")
    path = disc_diagram_path(f2, transvection(f2, "a", "b"), f2.identity, f2("a").word)
    assert path == [f2.identity, f2("a"), f2("a b")]
    f = partial_conj(p4, "a", {"c", "d"})
    ba = (p4.letter("b"), p4.letter("a"))
    path = disc_diagram_path(p4, f, p4.identity, ba)
    assert path == [p4.identity, p4("b"), p4("b a")]
    path = disc_diagram_path(p3, partial_conj(p3, "a", {"c"}), p3.identity, p3("c").word)
    assert [str(v) for v in path] == ["1", "a^-1", "a^-1 c", "a^-1 c a"]
    with pytest.raises(AutError, match="geodesic"):
        disc_diagram_path(f2, transvection(f2, "a", "b"), f2.identity, (0, 1))


def test_reentrant_examples():
    f2 = group("f2")
    phi = parse_automorphism(f2, "inv(a)")
    geo = [f2.identity, f2("a"), f2("a b")]
    assert reentrant_halfspaces([phi(v) for v in geo]) == []
    f = transvection(f2, "a", "b")
    path = disc_diagram_path(f2, f, f2.identity, f2("a b^-1").word)
    hs = reentrant_halfspaces(path)
    assert len(hs) <= 1 and all(h.label == f2.letter("b") for h in hs)
    assert check_disc_property(f2, f, hs)[0]


@pytest.mark.parametrize("name", ["p3", "p4", "c5"])
def test_disc_property_on_random_geodesics(name):
    p = group(name)
    rng = random.Random(1)
    ball = p.ball(4)
    for f in untwisted_generators(p):
        for _ in range(60):
            word = rng.choice(ball).word + rng.choice(ball).word
            word = p.normalize(word).word
            start = rng.choice(ball)
            hs = reentrant_halfspaces(disc_diagram_path(p, f, start, word))
            ok, why = check_disc_property(p, f, hs)
            assert ok, why


def test_disc_property_negative_control():
    # a path that backtracks over a non-w edge must be rejected
    p = group("p3")
    f = transvection(p, "a", "c")
    path = [p.identity, p("b"), p.identity, p("a")]
    ok, why = check_disc_property(p, f, reentrant_halfspaces(path))
    assert not ok and "label" in why
    # two reentrant w-halfspaces that intersect
    path = [p.identity, p("c"), p.identity, p("c^-1"), p.identity]
    hs = reentrant_halfspaces(path)
    assert len(hs) == 2
    path = [p.identity, p("c"), p("c^2"), p("c"), p.identity]
    hs = reentrant_halfspaces(path)
    assert check_disc_property(p, f, hs) == (False, "two reentrant halfspaces intersect")
