"""Fixed subgroups of automorphisms and element-level structure.

Label-irreducible decomposition, primitive roots, centralizers, truncated
fixed sets Fix φ ∩ B_R with measurements against them, and scripted examples
(Bestvina-Brady type automorphisms, a non-convex-cocompact subgroup).

Every distance to Fix φ is measured against a stated truncation Fix ∩ B_R'.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

from . import _kernels as K
from .autom import Automorphism, ElemAut, TWIST
from .graphs import SimpGraph
from .medgeom import _heap_order, dist, median, prefixes, wall_of_edge
from .words import GroupElement, Presentation, cyclic_reduce, support


class FixError(ValueError):
    pass


# -- label-irreducible decomposition ---------------------------------------------

@dataclass
class LabelDecomposition:
    components: list[GroupElement]
    conjugator: GroupElement
    core_components: list[GroupElement]

    def product(self) -> GroupElement:
        p = self.conjugator.pres
        out = p.identity
        for c in self.components:
            out = out * c
        return out


def label_irreducible_components(g: GroupElement) -> LabelDecomposition:
    """Split g along the components of the opposite graph restricted to its support."""
    p = g.pres
    core, conj = cyclic_reduce(g)
    supp = {p.gen_of(s) for s in core.word}
    comps = p.graph.opposite().connected_components(supp)
    cores = [p.normalize([s for s in core.word if p.gen_of(s) in c]) for c in comps]
    ci = conj.inverse()
    return LabelDecomposition([conj * c * ci for c in cores], conj, cores)


def is_label_irreducible(g: GroupElement) -> bool:
    return len(label_irreducible_components(g).components) == 1


# -- roots and centralizers --------------------------------------------------------

def _core_root(core: GroupElement) -> tuple[GroupElement, int]:
    n = len(core)
    pre = prefixes(core)
    for k in range(n, 0, -1):
        if n % k:
            continue
        L = n // k
        for r in sorted(q for q in pre if len(q) == L):
            if r ** k == core:
                return r, k
    return core, 1


def _brute_root(core: GroupElement) -> int:
    """Largest k ≥ 1 with x^k = core for some x of length ≤ |core|/2."""
    p = core.pres
    best = 1
    for x in p.ball(len(core) // 2):
        if x.is_identity:
            continue
        k = len(core) // len(x)
        if k > best and len(core) % len(x) == 0 and x ** k == core:
            best = k
    return best


def primitive_root(g: GroupElement, brute_limit: int = 10) -> tuple[GroupElement, int]:
    """(r, k) with r^k = g and k maximal.

    Candidates are prefixes of the cyclic core of the right length; when the
    core is short the answer is compared with a search over a ball.
    """
    if g.is_identity:
        raise FixError("the identity has no primitive root")
    if not is_label_irreducible(g):
        raise FixError("g is not label-irreducible")
    core, conj = cyclic_reduce(g)
    r, k = _core_root(core)
    if len(core) <= brute_limit:
        kb = _brute_root(core)
        if kb != k:
            raise FixError(f"root search disagreement: prefix search gives power {k}, ball search {kb}")
    root = conj * r * conj.inverse()
    assert root ** k == g
    return root, k


def centralizer_description(g: GroupElement) -> dict:
    """Z(g) = c (A_{Γ(g)^⊥} × ⟨roots⟩) c^-1, emitted as generators."""
    p = g.pres
    if g.is_identity:
        gens = [p.gen(v) for v in p.graph.vertices]
        return {"conjugator": "1", "parabolic": list(p.graph.vertices), "roots": [],
                "generators": [str(x) for x in gens]}
    dec = label_irreducible_components(g)
    conj = dec.conjugator
    ci = conj.inverse()
    perp = sorted(p.graph.perp(support(g)))
    roots = [primitive_root(c)[0] for c in dec.components]
    gens = [conj * p.gen(v) * ci for v in perp] + roots
    for x in gens:
        if x * g != g * x:
            raise FixError(f"emitted generator {x} does not commute with {g}")
    return {"conjugator": str(conj), "parabolic": perp, "roots": [str(r) for r in roots],
            "generators": [str(x) for x in gens]}


# -- truncated fixed sets --------------------------------------------------------

@dataclass
class FixBallReport:
    radius: int
    fixed: list[GroupElement]
    generators: list[GroupElement]
    stats: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {"radius": self.radius, "size": len(self.fixed),
                "fixed": [str(g) for g in self.fixed] if len(self.fixed) <= 500 else None,
                "generator_candidates": [str(g) for g in self.generators], **self.stats}


def fixed_in_ball(phi: Automorphism, R: int) -> list[GroupElement]:
    return [g for g in phi.pres.ball(R) if phi(g) == g]


def _span_in_ball(gens: list[GroupElement], R: int) -> set[GroupElement]:
    p = gens[0].pres
    steps = gens + [x.inverse() for x in gens]
    seen = {p.identity}
    todo = [p.identity]
    while todo:
        x = todo.pop()
        for s in steps:
            y = x * s
            if len(y) <= R and y not in seen:
                seen.add(y)
                todo.append(y)
    return seen


def fix_ball(phi: Automorphism, R: int) -> FixBallReport:
    """Fix φ ∩ B_R, with greedy generator candidates in (length, ShortLex) order.

    A fixed element becomes a candidate when it is not reached by words in the
    earlier candidates whose partial products stay in B_R.
    """
    fixed = fixed_in_ball(phi, R)
    gens: list[GroupElement] = []
    span = {phi.pres.identity}
    for g in fixed:
        if g not in span:
            gens.append(g)
            span = _span_in_ball(gens, R)
    return FixBallReport(R, fixed, gens, {"spanned_in_ball": len(span)})


def _dist_to_fixed(phi: Automorphism, m: GroupElement, bound: int, max_r: int,
                   memo: dict | None = None) -> int | None:
    """d(m, Fix ∩ B_bound) if it is ≤ max_r, else None."""
    p = m.pres
    if memo is None:
        memo = {}
    layer = [m]
    seen = {m}
    for r in range(max_r + 1):
        for z in layer:
            if len(z) <= bound:
                f = memo.get(z)
                if f is None:
                    f = memo[z] = phi(z) == z
                if f:
                    return r
        if r == max_r:
            break
        nxt = []
        for z in layer:
            for s in p.letters:
                y = p.normalize(z.word + (s,))
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        layer = nxt
    return None


def approx_subalgebra_defect(phi: Automorphism, R: int) -> dict:
    """max over x, y, z ∈ Fix ∩ B_R of d(m(x,y,z), Fix ∩ B_{3R})."""
    F = fixed_in_ball(phi, R)
    bound = 3 * R
    best, arg = 0, None
    cache: dict[GroupElement, int] = {}
    memo: dict = {}
    for x, y, z in itertools.combinations_with_replacement(F, 3):
        m = median(x, y, z)
        if m not in cache:
            d = _dist_to_fixed(phi, m, bound, len(m), memo)
            cache[m] = d if d is not None else len(m)  # 1 is always fixed
        if cache[m] > best:
            best, arg = cache[m], (x, y, z)
    return {"radius": R, "target_radius": bound, "defect": best,
            "witness": [str(g) for g in arg] if arg else None, "fixed_points": len(F)}


def displacement_bound_check(phi: Automorphism, R: int) -> tuple[bool, dict]:
    """Test ½·d(g, φg) ≤ d(g, Fix ∩ B_{2R}) for every g ∈ B_R.

    A fixed point closer than ½·d(g, φg) would lie in B_{2R}, so the search
    around g up to that radius is exhaustive.  The inequality holds whenever φ
    is an isometry of the word metric (graph automorphisms, inversions); for
    transvections and partial conjugations it can fail, and every violation
    is counted.
    """
    p = phi.pres
    ball = p.ball(R)
    disp = [dist(g, phi(g)) for g in ball]
    # smallest integer ≥ d/2; a violation is a fixed point at distance < that
    needs = [(d + 1) // 2 for d in disp]
    steps = p.ball(max(max(needs, default=1) - 1, 0))
    W, nw = K.pack(ball)
    S, ns = K.pack(steps)
    img = np.zeros((2 * p.rank, K.MAXLEN), dtype=np.int64)
    ilen = np.zeros(2 * p.rank, dtype=np.int64)
    for s in range(2 * p.rank):
        w = phi._img[s]
        img[s, :len(w)] = w
        ilen[s] = len(w)
    comm, block, cox = K.tables(p)
    hit = K.fixed_near(W, nw, np.array(needs, dtype=np.int64), S, ns, img, ilen,
                       comm, block, cox, 2 * R, K.key_base(p))
    violations = int((hit >= 0).sum())
    first = None
    if violations:
        i = int(np.argmax(hit >= 0))
        first = {"g": str(ball[i]), "displacement": disp[i], "fix_distance": int(hit[i])}
    i = int(np.argmax(disp)) if disp else None
    worst = (ball[i], disp[i]) if disp and disp[i] > 0 else None
    info = {"radius": R, "target_radius": 2 * R, "violations": violations, "first_violation": first}
    if worst:
        info.update(max_displacement=worst[1], witness=str(worst[0]))
    return violations == 0, info


def quasiconvexity_probe(phi: Automorphism, radii) -> dict:
    """max d(m(a, b, x), Fix ∩ B_{2R}) over a, b ∈ Fix ∩ B_R and x ∈ B_R, per R."""
    out = {}
    for R in radii:
        F = fixed_in_ball(phi, R)
        B = phi.pres.ball(R)
        cache: dict[GroupElement, int] = {}
        memo: dict = {}
        best = 0
        for a, b in itertools.combinations_with_replacement(F, 2):
            for x in B:
                m = median(a, b, x)
                if m not in cache:
                    d = _dist_to_fixed(phi, m, 2 * R, len(m), memo)
                    cache[m] = d if d is not None else len(m)
                best = max(best, cache[m])
        out[str(R)] = best
    return {"profile": out}


# -- scripted examples -------------------------------------------------------------

def bestvina_brady_automorphism(g: SimpGraph, z: str = "z"):
    """Cone Γ to a new vertex z; ψ = τ_{v1,z} ... τ_{vk,z}; α = exponent sum on Γ.

    Returns (presentation of A_Γ × Z, ψ, α), with ψ(h z^n) = h z^{n + α(h)}.
    """
    if z in g:
        raise FixError(f"cone vertex {z!r} already in the graph")
    cone = SimpGraph(list(g.vertices) + [z], list(g.edges) + [(v, z) for v in g.vertices], "artin")
    p = Presentation(cone)
    psi = Automorphism(p, [ElemAut(TWIST, v=v, w=z) for v in g.vertices])

    def alpha(h: GroupElement) -> int:
        return sum(-1 if s & 1 else 1 for s in h.word if p.gen_of(s) != z)

    return p, psi, alpha


def cc_bad_graph() -> SimpGraph:
    return SimpGraph("abxy", [("a", "y"), ("b", "y")])


def cc_bad_pair(L: int = 8, kmax: int = 3) -> dict:
    """H = ⟨a y x^-1, x b y⟩ contains a b y^2 but, up to word length L, no power of its components."""
    p = Presentation(cc_bad_graph())
    h1, h2 = p.normalize("a y x^-1"), p.normalize("x b y")
    prod = h1 * h2
    target = p.normalize("a b y^2")
    dec = label_irreducible_components(prod)
    comps = sorted(str(c) for c in dec.components)
    powers = {}
    for c in dec.components:
        for k in range(1, kmax + 1):
            powers[c ** k] = f"({c})^{k}"
    gens = [h1, h1.inverse(), h2, h2.inverse()]
    hits = []
    layer = [((), p.identity)]
    scanned = 0
    for _ in range(L):
        nxt = []
        for word, x in layer:
            for i, s in enumerate(gens):
                if word and word[-1] == i ^ 1:
                    continue
                y = x * s
                scanned += 1
                if y in powers:
                    hits.append((word + (i,), powers[y]))
                nxt.append((word + (i,), y))
        layer = nxt
    return {"product": str(prod), "product_matches": prod == target, "components": comps,
            "words_scanned": scanned, "max_length": L, "max_power": kmax,
            "hits": [h[1] for h in hits]}


def wall_label_spread(g: GroupElement, k: int) -> set[str]:
    """Labels of the walls strictly between u and g^k u, for u the first wall on an axis of g.

    Walls crossed along an axis are either nested or transverse; a wall lies
    strictly between u and g^k u iff it is forced after u and before g^k u in
    the heap order of the axis word.
    """
    if not is_label_irreducible(g):
        raise FixError("g is not label-irreducible")
    p = g.pres
    core, conj = cyclic_reduce(g)
    n = len(core)
    word = core.word * k + core.word[:1]
    above = _heap_order(word, p)
    end = k * n
    return {p.gen_of(word[j]) for j in range(1, end) if j in above[0] and end in above[j]}


def axis_walls(g: GroupElement, k: int):
    """Walls crossed by the axis segment from the core point c to g^k c (c the conjugator)."""
    p = g.pres
    core, conj = cyclic_reduce(g)
    cur = conj
    out = []
    for s in core.word * k:
        out.append(wall_of_edge(cur, s))
        cur = p.normalize(cur.word + (s,))
    return out
