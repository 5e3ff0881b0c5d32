"""Elementary automorphisms of right-angled Artin/Coxeter groups.

An :class:`Automorphism` is a product ``f_1 f_2 ... f_n`` of validated
elementary factors, acting as the composition ``f_1 ∘ f_2 ∘ ... ∘ f_n`` (the
rightmost factor acts first).  Images of generators are cached, so applying
an automorphism is one substitution followed by normalisation.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Sequence

import numpy as np

from . import _kernels as K
from .graphs import GraphError
from .medgeom import _heap_order, crossing_list, median, wall_of_edge
from .words import GroupElement, Presentation, WordError, initial_letters

GRAPH, INV, PC, JOIN, TWIST = "graph", "inv", "pc", "join", "twist"


class AutError(ValueError):
    """An elementary automorphism whose defining conditions fail."""


@dataclass(frozen=True)
class ElemAut:
    """One elementary generator.  Build these with the module-level constructors."""

    kind: str
    v: str | None = None
    w: str | None = None
    comp: frozenset = frozenset()
    sigma: tuple = ()
    # an inverse partial conjugation u -> w u w^-1 (used by inverse())
    flip: bool = False

    def __str__(self) -> str:
        if self.kind == GRAPH:
            return "graph(" + ",".join(f"{a}>{b}" for a, b in self.sigma if a != b) + ")"
        if self.kind == INV:
            return f"inv({self.v})"
        if self.kind == PC:
            c = ",".join(sorted(self.comp))
            return f"pc({self.w}{'^-1' if self.flip else ''},{{{c}}})"
        return f"{self.kind}({self.v},{self.w})"

    def images(self, p: Presentation) -> dict[str, tuple[int, ...]]:
        """Image word of each generator (only the moved ones)."""
        L = p.letter
        if self.kind == GRAPH:
            return {a: (L(b),) for a, b in self.sigma if a != b}
        if self.kind == INV:
            return {self.v: (L(self.v, -1),)}
        if self.kind == PC:
            w, wi = L(self.w), L(self.w, -1)
            if self.flip:
                w, wi = wi, w
            return {u: (wi, L(u), w) for u in self.comp}
        return {self.v: (L(self.v), L(self.w))}

    @property
    def untwisted(self) -> bool:
        return self.kind != TWIST


def graph_aut(p: Presentation, sigma: dict[str, str]) -> ElemAut:
    g = p.graph
    full = {v: sigma.get(v, v) for v in g.vertices}
    if set(full) != set(g.vertices) or sorted(full.values()) != list(g.vertices):
        raise AutError("graph automorphism must permute the vertices")
    for a, b in g.edges:
        if not g.adjacent(full[a], full[b]):
            raise AutError(f"σ does not preserve the edge {a}-{b}")
    return ElemAut(GRAPH, sigma=tuple(sorted(full.items())))


def inversion(p: Presentation, v: str) -> ElemAut:
    p.graph.index(v)
    if p.is_coxeter:
        raise AutError("inversions are trivial in a Coxeter group (generators are involutions)")
    return ElemAut(INV, v=v)


def partial_conj(p: Presentation, w: str, comp: Iterable[str]) -> ElemAut:
    g = p.graph
    comp = frozenset(comp)
    g.index(w)
    for u in comp:
        g.index(u)
    if comp not in g.connected_components(set(g.vertices) - g.star(w)):
        raise AutError(f"C={{{','.join(sorted(comp))}}} is not a connected component of Γ∖St {w}")
    return ElemAut(PC, w=w, comp=comp)


def transvection(p: Presentation, v: str, w: str, flavor: str | None = None) -> ElemAut:
    g = p.graph
    g.index(v)
    g.index(w)
    if v == w:
        raise AutError("transvection needs v ≠ w")
    if not g.link(v) <= g.star(w):
        raise AutError(f"lk {v} ⊄ St {w}")
    kind = TWIST if g.adjacent(v, w) else JOIN
    if flavor is not None and flavor != kind:
        if flavor == JOIN:
            raise AutError(f"join needs {v}, {w} non-adjacent (they span an edge: this is a twist)")
        raise AutError(f"twist needs {v}, {w} adjacent (they do not: this is a join)")
    if p.is_coxeter and kind == JOIN:
        raise AutError(f"{v} ↦ {v}{w} is not an involution in W_Γ when {v}, {w} are non-adjacent")
    return ElemAut(kind, v=v, w=w)


def elem_inverse(p: Presentation, f: ElemAut) -> list[ElemAut]:
    if f.kind == GRAPH:
        return [ElemAut(GRAPH, sigma=tuple(sorted((b, a) for a, b in f.sigma)))]
    if f.kind == INV:
        return [f]
    if p.is_coxeter:
        return [f]  # partial conjugations and Coxeter transvections are involutions
    if f.kind == PC:
        return [ElemAut(PC, w=f.w, comp=f.comp, flip=not f.flip)]
    iw = ElemAut(INV, v=f.w)
    return [iw, f, iw]


class Automorphism:
    """A product of elementary automorphisms."""

    def __init__(self, pres: Presentation, factors: Sequence[ElemAut] = (), untwisted_only: bool = False):
        self.pres = pres
        self.factors = tuple(factors)
        self.untwisted_only = untwisted_only
        if untwisted_only:
            for f in self.factors:
                if f.kind == TWIST:
                    raise AutError(f"{f} is a twist, not allowed in untwisted mode")
                if f.kind == GRAPH:
                    for a, b in f.sigma:
                        if pres.graph.link(a) != pres.graph.link(b):
                            raise AutError(f"graph automorphism moves {a} to {b} but lk {b} ≠ lk {a}")
        self._img = self._generator_images()

    def __repr__(self) -> str:
        return f"Automorphism({self})"

    def __str__(self) -> str:
        return "; ".join(str(f) for f in self.factors) or "id"

    def _generator_images(self) -> list[tuple[int, ...]]:
        p = self.pres
        # letter-level images for the current partial product, starting from the identity
        cur = {s: (s,) for s in range(2 * p.rank)}
        for f in reversed(self.factors):
            im = f.images(p)
            step = {}
            for s in range(2 * p.rank):
                v = p.gen_of(s)
                if v in im:
                    wd = im[v]
                    step[s] = wd if not (s & 1) else tuple(p.inv_letter(t) for t in reversed(wd))
                else:
                    step[s] = (s,)
            # new image of s = f(cur[s])
            cur = {s: p.normalize([t for u in cur[s] for t in step[u]]).word for s in cur}
        return [cur[s] for s in range(2 * p.rank)]

    def image_of(self, v: str) -> GroupElement:
        return GroupElement(self.pres, self._img[self.pres.letter(v)])

    def apply(self, x: GroupElement | str) -> GroupElement:
        p = self.pres
        if isinstance(x, str):
            x = p.normalize(x)
        img = self._img
        return p.normalize([t for s in x.word for t in img[s]])

    __call__ = apply

    def compose(self, other: Automorphism) -> Automorphism:
        """self ∘ other."""
        return Automorphism(self.pres, self.factors + other.factors,
                            self.untwisted_only and other.untwisted_only)

    def inverse(self) -> Automorphism:
        out: list[ElemAut] = []
        for f in reversed(self.factors):
            out.extend(elem_inverse(self.pres, f))
        return Automorphism(self.pres, out, self.untwisted_only)

    @property
    def is_untwisted_product(self) -> bool:
        return all(f.untwisted for f in self.factors)


def identity(p: Presentation) -> Automorphism:
    return Automorphism(p, ())


# -- syntax -------------------------------------------------------------------

_CALL = re.compile(r"^\s*(\w+)\s*\((.*)\)\s*$")


def parse_elem(p: Presentation, text: str) -> ElemAut:
    m = _CALL.match(text)
    if not m:
        raise AutError(f"cannot parse automorphism factor {text!r}")
    name, args = m.group(1).lower(), m.group(2).strip()
    if name == "inv":
        return inversion(p, args)
    if name in ("join", "twist", "tr"):
        parts = [a.strip() for a in args.split(",")]
        if len(parts) != 2:
            raise AutError(f"{name} takes two vertices")
        return transvection(p, parts[0], parts[1], None if name == "tr" else name)
    if name == "pc":
        mm = re.match(r"^(\w+)\s*,\s*\{(.*)\}$", args)
        if not mm:
            raise AutError("pc syntax is pc(w,{c,d})")
        comp = [c.strip() for c in mm.group(2).split(",") if c.strip()]
        return partial_conj(p, mm.group(1), comp)
    if name == "graph":
        sigma = {}
        for item in args.split(","):
            if not item.strip():
                continue
            a, _, b = item.partition(">")
            sigma[a.strip()] = b.strip()
        return graph_aut(p, sigma)
    raise AutError(f"unknown elementary automorphism {name!r}")


def parse_automorphism(p: Presentation, text: str, untwisted_only: bool = False) -> Automorphism:
    """``"inv(a); join(a,b); pc(w,{c,d}); twist(a,b); graph(a>b,b>a)"``; ``"id"`` is the identity."""
    parts = [t for t in text.split(";") if t.strip()]
    if len(parts) == 1 and parts[0].strip() in ("id", "1"):
        parts = []
    try:
        return Automorphism(p, [parse_elem(p, t) for t in parts], untwisted_only)
    except (WordError, GraphError) as exc:
        raise AutError(str(exc)) from None


def untwisted_generators(p: Presentation) -> list[ElemAut]:
    """Every join and partial conjugation of the graph (fixed deterministic order)."""
    g = p.graph
    out = []
    for v in g.vertices:
        for w in g.vertices:
            if v != w and not g.adjacent(v, w) and g.link(v) <= g.star(w):
                if not p.is_coxeter:
                    out.append(ElemAut(JOIN, v=v, w=w))
    for w in g.vertices:
        for comp in g.connected_components(set(g.vertices) - g.star(w)):
            out.append(ElemAut(PC, w=w, comp=comp))
    return out


def twists(p: Presentation) -> list[ElemAut]:
    g = p.graph
    return [ElemAut(TWIST, v=v, w=w) for v in g.vertices for w in g.vertices
            if v != w and g.adjacent(v, w) and g.link(v) <= g.star(w)]


# -- μ(φ) -------------------------------------------------------------------------

@lru_cache(maxsize=32)
def _ball_arrays(p: Presentation, R: int):
    B = p.ball(R)
    W, n = K.pack(B)
    imask = np.array([sum(1 << s for s in initial_letters(g)) for g in B], dtype=np.int64)
    return B, W, n, imask


@dataclass
class MuResult:
    radius: int
    requested_radius: int
    elements: list[GroupElement]
    pairs: int
    truncated: bool

    def to_json(self) -> dict:
        return {"radius": self.radius, "requested_radius": self.requested_radius,
                "size": len(self.elements), "elements": [str(g) for g in self.elements],
                "pairs_scanned": self.pairs, "truncated": self.truncated}


def mu_set_report(phi: Automorphism, R: int, budget_pairs: int = 30_000_000) -> MuResult:
    """μ(1, φx, φy) over all x, y ∈ B_R(1) with μ(1, x, y) = 1, exhaustively.

    If the ball has more than ``budget_pairs`` pairs the radius is lowered until
    it fits and the result is marked truncated.
    """
    p = phi.pres
    r = R
    while r > 0 and len(p.ball(r)) ** 2 // 2 > budget_pairs:
        r -= 1
    B, W, n, imask = _ball_arrays(p, r)
    PW, pn = K.pack([phi(g) for g in B])
    comm, block, cox = K.tables(p)
    keys = K.mu_keys(W, n, imask, PW, pn, comm, block, cox, K.key_base(p))
    els = sorted(GroupElement(p, K.decode(int(k), p)) for k in keys.keys())
    return MuResult(r, R, els, len(B) * (len(B) + 1) // 2, r < R)


def mu_set(phi: Automorphism, R: int) -> set[GroupElement]:
    return set(mu_set_report(phi, R).elements)


def mu_set_slow(phi: Automorphism, R: int) -> set[GroupElement]:
    """Pure-Python reference for small radii."""
    p = phi.pres
    B = p.ball(R)
    one = p.identity
    out = set()
    for i, x in enumerate(B):
        for y in B[i:]:
            if median(one, x, y) == one:
                out.add(median(one, phi(x), phi(y)))
    return out


def cmp_report(phi: Automorphism, radii: Sequence[int]) -> dict:
    sizes = {}
    sets = {}
    trunc = False
    for R in radii:
        res = mu_set_report(phi, R)
        sizes[R] = len(res.elements)
        sets[R] = [str(g) for g in res.elements] if len(res.elements) <= 32 else None
        trunc |= res.truncated
    seq = [sizes[R] for R in radii]
    growing = len(seq) > 1 and all(a < b for a, b in zip(seq, seq[1:]))
    if phi.is_untwisted_product:
        verdict = "bounded: product of untwisted elementary factors (each has μ ⊆ {1, w^-1})"
    elif growing:
        verdict = "growing"
    else:
        verdict = "bounded-at-scale"
    return {"automorphism": str(phi), "sizes": {str(R): sizes[R] for R in radii},
            "sets": {str(R): sets[R] for R in radii}, "verdict": verdict, "truncated": trunc}


# -- disc-diagram paths ------------------------------------------------------------

def disc_diagram_path(p: Presentation, f: ElemAut, start: GroupElement, word: Sequence[int]) -> list[GroupElement]:
    """Vertices of the image path φ(α) of the geodesic α from ``start`` spelling ``word``."""
    word = tuple(word)
    if len(p.normalize(word)) != len(word):
        raise AutError("α is not a geodesic")
    if f.kind not in (JOIN, PC, TWIST):
        raise AutError("path images are defined for transvections and partial conjugations")
    phi = Automorphism(p, [f])
    labels: list[int] = []
    if f.kind in (JOIN, TWIST):
        for s in word:
            labels.extend(phi(GroupElement(p, (s,))).word if p.gen_of(s) == f.v else (s,))
    else:
        w, wi = p.letter(f.w), p.letter(f.w, -1)
        if f.flip:
            w, wi = wi, w
        inC = [p.gen_of(s) in f.comp for s in word]
        n = len(word)
        for i, s in enumerate(word):
            if not inC[i]:
                labels.append(s)
                continue
            first = i == 0 or not inC[i - 1]
            last = i == n - 1 or not inC[i + 1]
            if first:
                labels.append(wi)
            labels.append(s)
            if last:
                labels.append(w)
    cur = phi(start)
    out = [cur]
    for s in labels:
        cur = p.normalize(cur.word + (s,))
        out.append(cur)
    return out


@dataclass
class Reentrant:
    wall: object
    label: int          # letter entering the halfspace
    inside: GroupElement  # a path vertex in the halfspace
    crossings: int


def reentrant_halfspaces(path: Sequence[GroupElement]) -> list[Reentrant]:
    """Halfspaces the path enters and leaves again with both endpoints outside.

    Walls crossed an even number of times do not separate the endpoints; the
    halfspace is the side first entered.
    """
    p = path[0].pres
    counts: dict = {}
    first: dict = {}
    for a, b in zip(path, path[1:]):
        s = (a.inverse() * b).word
        if len(s) != 1:
            raise AutError("path vertices must be adjacent")
        wall = wall_of_edge(a, s[0])
        counts[wall] = counts.get(wall, 0) + 1
        if wall not in first:
            first[wall] = (s[0], b)
    return [Reentrant(w, first[w][0], first[w][1], c) for w, c in counts.items() if c % 2 == 0]


def halfspaces_disjoint(h1: Reentrant, h2: Reentrant) -> bool:
    """h1 ∩ h2 = ∅, decided on a geodesic between points p1 ∈ h1, p2 ∈ h2.

    They meet iff some geodesic p1 → p2 crosses the wall of h2 before that of h1,
    i.e. iff the h2 crossing is not forced after the h1 crossing in the heap order.
    """
    p1, p2 = h1.inside, h2.inside
    cl = [w for w, _ in crossing_list(p1, p2)]
    if h2.wall not in cl or h1.wall not in cl:
        return False  # p1 ∈ h2 or p2 ∈ h1
    i1, i2 = cl.index(h1.wall), cl.index(h2.wall)
    above = _heap_order((p1.inverse() * p2).word, p1.pres)
    return i2 in above[i1]


def check_disc_property(p: Presentation, f: ElemAut, hs: list[Reentrant]) -> tuple[bool, str]:
    """All reentrant halfspaces carry the positive label w and are pairwise disjoint."""
    wl = p.letter(f.w)
    for h in hs:
        if h.label != wl:
            return False, f"halfspace with label {p.format((h.label,))}, expected {f.w}"
    for i in range(len(hs)):
        for j in range(i + 1, len(hs)):
            if not halfspaces_disjoint(hs[i], hs[j]):
                return False, "two reentrant halfspaces intersect"
    return True, "ok"
