from __future__ import annotations

import random

import pytest

from medcube.autom import Automorphism, identity, inversion, parse_automorphism, untwisted_generators
from medcube.fixsub import (FixError, approx_subalgebra_defect, bestvina_brady_automorphism, cc_bad_pair,
                            centralizer_description, displacement_bound_check, fix_ball, fixed_in_ball,
                            is_label_irreducible, label_irreducible_components, primitive_root,
                            quasiconvexity_probe, wall_label_spread, _dist_to_fixed)
from medcube.graphs import SimpGraph
from medcube.medgeom import dist
from medcube.words import conj_length, support
from conftest import group

NAMES = ["f2", "z2", "z3", "p3", "p4", "c5"]


def comps(g):
    return sorted(str(c) for c in label_irreducible_components(g).components)


def test_label_components_examples():
    z2, p3 = group("z2"), group("p3")
    assert comps(z2("a b")) == ["a", "b"]
    assert comps(p3("a c")) == ["a c"]
    assert comps(p3("a b c")) == ["a c", "b"]


def test_label_irreducible_examples():
    assert is_label_irreducible(group("f2")("a"))
    assert not is_label_irreducible(group("z2")("a b"))
    assert is_label_irreducible(group("f2")("a b"))


@pytest.mark.parametrize("name", NAMES)
def test_label_decomposition_additive(name):
    p = group(name)
    g_op = p.graph.opposite()
    rng = random.Random(0)
    ball = p.ball(6) if name in ("z2", "f2") else p.ball(4)
    for g in rng.sample(ball, min(300, len(ball))):
        dec = label_irreducible_components(g)
        cs = dec.components
        assert dec.product() == g
        assert sum(conj_length(c) for c in cs) == conj_length(g)
        for i, a in enumerate(cs):
            assert g_op.is_connected(support(a))
            for b in cs[i + 1:]:
                assert a * b == b * a
                assert all(p.graph.adjacent(u, v) for u in support(a) for v in support(b))


def test_primitive_root_examples():
    f2 = group("f2")
    assert primitive_root(f2("a^3")) == (f2("a"), 3)
    assert primitive_root(f2("a b a b")) == (f2("a b"), 2)
    assert primitive_root(f2("a b")) == (f2("a b"), 1)
    with pytest.raises(FixError):
        primitive_root(f2.identity)
    with pytest.raises(FixError):
        primitive_root(group("z2")("a b"))


def test_primitive_root_of_conjugate_and_powers():
    p = group("p4")
    rng = random.Random(1)
    irr = [g for g in p.ball(3) if not g.is_identity and is_label_irreducible(g)]
    for g in rng.sample(irr, 40):
        r, k = primitive_root(g)
        for j in (2, 3):
            r2, k2 = primitive_root(g ** j)
            assert r2 == r and k2 == k * j


def test_centralizer_examples():
    z2, f2 = group("z2"), group("f2")
    d = centralizer_description(z2("a"))
    assert d["parabolic"] == ["b"] and d["roots"] == ["a"]
    d = centralizer_description(f2("a b"))
    assert d["parabolic"] == [] and d["roots"] == ["a b"]
    d = centralizer_description(f2.identity)
    assert d["parabolic"] == ["a", "b"]


@pytest.mark.parametrize("name", NAMES)
def test_centralizer_generators_commute(name):
    p = group(name)
    rng = random.Random(2)
    for g in rng.sample(p.ball(3), min(40, len(p.ball(3)))):
        d = centralizer_description(g)
        for x in d["generators"]:
            x = p.normalize(x)
            assert x * g == g * x


def test_fix_ball_examples():
    f2 = group("f2")
    rep = fix_ball(parse_automorphism(f2, "inv(a)"), 3)
    assert {str(g) for g in rep.fixed} == {"1", "b", "b^-1", "b^2", "b^-2", "b^3", "b^-3"}
    assert [str(g) for g in rep.generators] == ["b"]
    rep = fix_ball(identity(f2), 2)
    assert len(rep.fixed) == len(f2.ball(2))


def test_bestvina_brady_fixed_set():
    p, psi, alpha = bestvina_brady_automorphism(SimpGraph("ab", [("a", "b")]))
    rep = fix_ball(psi, 4)
    kernel = {g for g in p.ball(4) if alpha(g) == 0}
    assert set(rep.fixed) == kernel
    assert psi(p("a b^-1")) == p("a b^-1")
    assert psi(p("a")) == p("a z")
    for g in p.ball(3):
        n = sum(1 if s == p.letter("z") else -1 for s in g.word if p.gen_of(s) == "z")
        assert psi(g) == g * p.gen("z") ** alpha(g)


def test_fix_ball_is_subgroup_slice():
    for name in ["p3", "p4"]:
        p = group(name)
        for f in untwisted_generators(p):
            F = set(fixed_in_ball(Automorphism(p, [f]), 3))
            for x in F:
                assert x.inverse() in F
                for y in F:
                    xy = x * y
                    if len(xy) <= 3:
                        assert xy in F


def test_cc_bad_fixture():
    out = cc_bad_pair()
    assert out["product"] == "a b y^2" and out["product_matches"]
    assert out["components"] == ["a b", "y^2"]
    assert out["hits"] == []


def test_wall_label_spread_examples():
    f2, p3 = group("f2"), group("p3")
    assert wall_label_spread(f2("a b"), 2) == {"a", "b"}
    # strictly between: a single step of "a" has no wall in between
    assert wall_label_spread(f2("a"), 1) == set()
    assert wall_label_spread(f2("a"), 2) == {"a"}
    assert wall_label_spread(p3("a c"), 6) == {"a", "c"}


@pytest.mark.parametrize("name", ["f2", "p3", "p4", "c5"])
def test_wall_label_spread_recovers_support(name):
    p = group(name)
    r = p.graph.clique_number()
    for g in p.ball(3):
        if not g.is_identity and is_label_irreducible(g):
            assert wall_label_spread(g, 4 * r - 2) == set(support(g))


def test_displacement_probe_for_isometries():
    for name in NAMES:
        p = group(name)
        for v in p.graph.vertices:
            ok, info = displacement_bound_check(Automorphism(p, [inversion(p, v)]), 3)
            assert ok and info["violations"] == 0
    p4 = group("p4")
    ok, _ = displacement_bound_check(parse_automorphism(p4, "graph(a>d,b>c,c>b,d>a)"), 3)
    assert ok


def test_displacement_probe_counterexample():
    # ½·d(g, φg) ≤ d(g, Fix φ) fails for a join: g = a^-1 is 3 from its image and 1 from the fixed point 1
    f2 = group("f2")
    tau = parse_automorphism(f2, "join(a,b)")
    g = f2("a^-1")
    assert dist(g, tau(g)) == 3 and tau(f2.identity) == f2.identity and dist(g, f2.identity) == 1
    ok, info = displacement_bound_check(tau, 4)
    assert not ok and info["violations"] == 78
    assert info["first_violation"] == {"g": "a^-1", "displacement": 3, "fix_distance": 1}


@pytest.mark.parametrize("name", ["f2", "p3", "p4"])
def test_fixed_near_kernel_matches_python(name):
    p = group(name)
    for f in untwisted_generators(p)[:3]:
        phi = Automorphism(p, [f])
        _, info = displacement_bound_check(phi, 3)
        count = 0
        for g in p.ball(3):
            need = (dist(g, phi(g)) + 1) // 2
            d = _dist_to_fixed(phi, g, 6, need - 1) if need > 0 else None
            count += d is not None
        assert count == info["violations"]


def test_defect_examples():
    f2 = group("f2")
    assert approx_subalgebra_defect(identity(f2), 2)["defect"] == 0
    assert approx_subalgebra_defect(parse_automorphism(f2, "inv(a)"), 3)["defect"] == 0


def test_defect_stable_for_untwisted():
    p = group("p3")
    for f in untwisted_generators(p):
        phi = Automorphism(p, [f])
        d3 = approx_subalgebra_defect(phi, 3)["defect"]
        d4 = approx_subalgebra_defect(phi, 4)["defect"]
        assert d4 <= max(d3, 1)


def test_quasiconvexity_examples():
    f2, p3 = group("f2"), group("p3")
    assert set(quasiconvexity_probe(identity(f2), [1, 2])["profile"].values()) == {0}
    assert set(quasiconvexity_probe(parse_automorphism(f2, "inv(a)"), [1, 2, 3])["profile"].values()) == {0}
    prof = quasiconvexity_probe(parse_automorphism(p3, "pc(a,{c})"), [2, 3])["profile"]
    assert max(prof.values()) <= 2
