"""Good partitions of defining graphs and the amalgam splittings they induce.

A partition V = Λ⁺ ⊔ Λ ⊔ Λ⁻ gives A = A₊ *_{A_Λ} A₋ with A_± = A_{Λ ∪ Λ^±}.
Good partitions are those whose splitting is preserved (up to inner
automorphisms) by every untwisted automorphism.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .autom import PC, Automorphism, ElemAut, INV, JOIN, GRAPH
from .graphs import SimpGraph
from .medgeom import coset_rep, gate_parabolic
from .words import GroupElement, Presentation


class PartitionError(ValueError):
    pass


@dataclass(frozen=True)
class GoodPartition:
    lambda_plus: frozenset
    lambda_: frozenset
    lambda_minus: frozenset
    trace: tuple = field(default=(), compare=False)

    def side(self, eps: int) -> frozenset:
        return self.lambda_plus if eps > 0 else self.lambda_minus

    @property
    def a_plus(self) -> frozenset:
        return self.lambda_ | self.lambda_plus

    @property
    def a_minus(self) -> frozenset:
        return self.lambda_ | self.lambda_minus

    def to_json(self) -> dict:
        return {"lambda_plus": sorted(self.lambda_plus), "lambda": sorted(self.lambda_),
                "lambda_minus": sorted(self.lambda_minus), "trace": list(self.trace)}


def partition(plus, mid, minus, trace=()) -> GoodPartition:
    return GoodPartition(frozenset(plus), frozenset(mid), frozenset(minus), tuple(trace))


# -- the checker ------------------------------------------------------------------

def is_good(g: SimpGraph, P: GoodPartition) -> tuple[bool, str | None]:
    """Check the three conditions; on failure name the first violated one with its vertices."""
    parts = (P.lambda_plus, P.lambda_, P.lambda_minus)
    if any(not x for x in parts):
        return False, "a part is empty"
    if set().union(*parts) != set(g.vertices) or sum(map(len, parts)) != len(g):
        return False, "not a partition of the vertex set"
    for u in sorted(P.lambda_plus):
        for v in sorted(P.lambda_minus):
            if g.adjacent(u, v):
                return False, f"(i): {u} ∈ Λ+ is adjacent to {v} ∈ Λ-"
    for eps in (1, -1):
        own, other = P.side(eps), P.side(-eps)
        sgn = "+" if eps > 0 else "-"
        for w in sorted(own):
            target = g.link(w) | own
            for v in sorted(P.lambda_ | other):
                if g.link(v) <= target:
                    return False, f"(ii): lk {v} ⊆ lk {w} ∪ Λ{sgn}"
    for eps in (1, -1):
        other = P.side(-eps)
        sgn = "+" if eps > 0 else "-"
        for w in sorted(P.side(eps)):
            rest = (P.lambda_ | other) - g.star(w)
            if len(g.connected_components(rest)) > 1:
                return False, f"(iii): (Λ ∪ Λ{'-' if eps > 0 else '+'}) ∖ St {w} is disconnected (w ∈ Λ{sgn})"
    return True, None


# -- the constructor -------------------------------------------------------------

def _link_quotient(g: SimpGraph) -> tuple[SimpGraph, dict[str, str]]:
    """Identify vertices with equal links; representatives are the least vertex of each class."""
    rep: dict[str, str] = {}
    for v in g.vertices:
        for u in g.vertices:
            if u <= v and g.link(u) == g.link(v):
                rep[v] = u
                break
    reps = sorted(set(rep.values()))
    edges = [(a, b) for a, b in itertools.combinations(reps, 2) if g.adjacent(a, b)]
    return SimpGraph(reps, edges, g.kind), rep


def _excellent(g: SimpGraph) -> GoodPartition:
    best = None
    for x, y in itertools.combinations(sorted(g.vertices), 2):
        d = g.distance(x, y)
        if d >= 3 and (best is None or d > best[0]):
            best = (d, x, y)
    _, x, y = best
    cy = next(c for c in g.connected_components(set(g.vertices) - g.star(x)) if y in c)
    cx = next(c for c in g.connected_components(set(g.vertices) - g.star(y)) if x in c)
    assert cx | cy == set(g.vertices)
    plus = {z for z in g.vertices if not (g.star(z) & cy)}
    minus = {z for z in g.vertices if not (g.star(z) & cx)}
    mid = set(g.vertices) - plus - minus
    assert g.set_distance(plus, minus) >= 3
    return partition(plus, mid, minus, [f"(a) diameter ≥ 3: x={x}, y={y}"])


def construct_good_partition(g: SimpGraph) -> GoodPartition:
    """Build a good partition of a connected, irreducible graph with ≥ 2 vertices, recursively."""
    if len(g) < 2:
        raise PartitionError("graph must have at least 2 vertices")
    if not g.is_connected():
        raise PartitionError("graph is not connected")
    if not g.is_irreducible():
        raise PartitionError("graph is reducible (a nontrivial join)")
    P = _construct(g)
    ok, why = is_good(g, P)
    if not ok:
        raise AssertionError(f"constructed partition is not good: {why}")
    return P


def _construct(g: SimpGraph) -> GoodPartition:
    if g.diameter() >= 3:
        return _excellent(g)
    bar, rep = _link_quotient(g)
    if len(bar) < len(g):
        Q = _construct(bar)
        lift = lambda S: {v for v in g.vertices if rep[v] in S}
        P = partition(lift(Q.lambda_plus), lift(Q.lambda_), lift(Q.lambda_minus),
                      Q.trace + ("(b) lift through the equal-link quotient",))
        ok, why = is_good(g, P)
        assert ok, f"lift of a good partition failed: {why}"
        return P
    # diameter 2 and no two vertices share a link
    maximal = [x for x in sorted(g.vertices)
               if not any(y != x and g.link(x) < g.link(y) for y in g.vertices)]
    x = maximal[0]
    rest = g.minus([x])
    if not rest.is_irreducible():
        return partition({x}, g.link(x), set(g.vertices) - g.star(x),
                         [f"(c) Γ∖{x} reducible: star partition at {x}"])
    Q = _construct(rest)
    cands = [
        ("Λ+", partition(Q.lambda_plus | {x}, Q.lambda_, Q.lambda_minus)),
        ("Λ", partition(Q.lambda_plus, Q.lambda_ | {x}, Q.lambda_minus)),
        ("Λ-", partition(Q.lambda_plus, Q.lambda_, Q.lambda_minus | {x})),
    ]
    for name, P in cands:
        if is_good(g, P)[0]:
            return partition(P.lambda_plus, P.lambda_, P.lambda_minus,
                             Q.trace + (f"(d) extend from Γ∖{x}: {x} into {name}",))
    raise AssertionError(f"no extension of the partition of Γ∖{x} is good")


# -- amalgam normal forms ---------------------------------------------------------

def amalgam_factorize(P: GoodPartition, g: GroupElement) -> list[tuple[GroupElement, str]]:
    """Write g as an alternating product of elements of A₊ and A₋ by stripping maximal parabolic prefixes."""
    p = g.pres
    one = p.identity
    out: list[tuple[GroupElement, str]] = []
    while not g.is_identity:
        a = gate_parabolic(g, one, P.a_plus)
        b = gate_parabolic(g, one, P.a_minus)
        if out:
            pre, side = (a, "+") if out[-1][1] == "-" else (b, "-")
        else:
            pre, side = (a, "+") if len(a) >= len(b) else (b, "-")
        assert not pre.is_identity
        out.append((pre, side))
        g = pre.inverse() * g
    return out


# -- preservative representatives --------------------------------------------------

def _preserves(phi: Automorphism, delta: frozenset) -> bool:
    p = phi.pres
    for v in delta:
        if not {p.gen_of(s) for s in phi.image_of(v).word} <= delta:
            return False
    inv = phi.inverse()
    return all({p.gen_of(s) for s in inv.image_of(v).word} <= delta for v in delta)


def preservative_representative(f: ElemAut, P: GoodPartition, pres: Presentation) -> Automorphism:
    """An automorphism in the same outer class as f preserving both A₊ and A₋."""
    g = pres.graph
    phi = Automorphism(pres, [f])
    if f.kind == PC and f.w not in P.lambda_:
        eps = 1 if f.w in P.lambda_plus else -1
        far = P.lambda_ | P.side(-eps)
        comps = g.connected_components(set(g.vertices) - g.star(f.w))
        K = [c for c in comps if c & far]
        assert len(K) == 1, "condition (iii) gives a unique component meeting Λ ∪ Λ^-ε"
        if f.comp == K[0]:
            others = [c for c in comps if c != K[0]]
            phi = Automorphism(pres, [ElemAut(PC, w=f.w, comp=c, flip=not f.flip) for c in others])
    elif f.kind not in (PC, INV, JOIN):
        raise PartitionError(f"{f} is not an untwisted elementary automorphism")
    if not (_preserves(phi, P.a_plus) and _preserves(phi, P.a_minus)):
        raise AssertionError(f"representative {phi} does not preserve A+ and A-")
    return phi


def differs_by_inner(phi: Automorphism, psi: Automorphism) -> GroupElement | None:
    """A conjugator c with phi(v) = c psi(v) c^-1 for every generator, searched in a ball, or None."""
    p = phi.pres
    radius = max(len(phi.image_of(v)) + len(psi.image_of(v)) for v in p.graph.vertices)
    for c in p.ball(radius):
        ci = c.inverse()
        if all(phi.image_of(v) == c * psi.image_of(v) * ci for v in p.graph.vertices):
            return c
    return None


# -- Bass-Serre tree fragment -----------------------------------------------------

def bass_serre_ball(P: GoodPartition, pres: Presentation, R: int, phi: Automorphism | None = None) -> dict:
    """Cosets gA₊, gA₋ (vertices) and gA_Λ (edges) for g ∈ B_R, with the generator action.

    If ``phi`` preserves A₊ and A₋, the induced map f(gA) = φ(g)A is checked
    for f ∘ s = φ(s) ∘ f on every table entry that stays in the fragment.
    """
    sides = {"+": P.a_plus, "-": P.a_minus}
    verts = set()
    edges = set()
    ball = pres.ball(R)
    for g in ball:
        for s, D in sides.items():
            verts.add((s, coset_rep(g, D).word))
        e = coset_rep(g, P.lambda_).word
        ge = GroupElement(pres, e)
        edges.add((e, coset_rep(ge, P.a_plus).word, coset_rep(ge, P.a_minus).word))

    def vkey(side, g):
        return (side, coset_rep(g, sides[side]).word)

    action = {}
    for s_el in pres.generators():
        row = {}
        for side, w in verts:
            row[f"{side}{pres.format(w)}"] = vkey(side, s_el * GroupElement(pres, w))
        action[str(s_el)] = row
    out = {
        "radius": R,
        "vertices": sorted(f"{s}{pres.format(w)}" for s, w in verts),
        "edges": sorted(f"{pres.format(e)}: +{pres.format(a)} -- -{pres.format(b)}" for e, a, b in edges),
        "vertex_count": len(verts), "edge_count": len(edges),
    }
    if phi is not None:
        violations = 0
        checked = 0
        for s_el in pres.generators():
            ps = phi(s_el)
            for side, w in verts:
                v = GroupElement(pres, w)
                sv = vkey(side, s_el * v)
                if sv not in verts:
                    continue
                lhs = vkey(side, phi(GroupElement(pres, sv[1])))
                rhs = vkey(side, ps * phi(v))
                checked += 1
                violations += lhs != rhs
        out["equivariance"] = {"automorphism": str(phi), "checked": checked, "violations": violations}
    return out
