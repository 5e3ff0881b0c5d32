"""Median geometry of the Salvetti/Davis universal cover, computed on the group.

Vertices of the cube complex are group elements and edges join ``g`` to
``g*s``.  Nothing here materialises the complex: medians, intervals, gates and
walls are all read off normal forms.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable

import networkx as nx

from .words import (GroupElement, Presentation, initial_letters, cyclic_reduce,
                    terminal_letters)

DEFAULT_CAP = 20_000


class CapExceeded(RuntimeError):
    """An enumeration would exceed its size cap."""


# -- medians ------------------------------------------------------------------

def _extract_common(u: GroupElement, v: GroupElement) -> GroupElement:
    """Greedy meet of u and v in the prefix order (the median of 1, u, v)."""
    p = u.pres
    m: list[int] = []
    while True:
        common = initial_letters(u) & initial_letters(v)
        if not common:
            return p.normalize(m)
        s = min(common)
        m.append(s)
        t = (p.inv_letter(s),)
        u = p.normalize(t + u.word)
        v = p.normalize(t + v.word)


def median(x: GroupElement, y: GroupElement, z: GroupElement) -> GroupElement:
    """The median vertex of x, y, z: translate x to 1, then meet y and z greedily."""
    xi = x.inverse()
    return x * _extract_common(xi * y, xi * z)


def dist(x: GroupElement, y: GroupElement) -> int:
    return len(x.inverse() * y)


# -- intervals, gates, hulls -----------------------------------------------------

def prefixes(g: GroupElement, cap: int = DEFAULT_CAP) -> set[GroupElement]:
    """All p with |p| + |p^-1 g| = |g|, by DFS over initial letters."""
    p = g.pres
    seen = {p.identity}
    todo = [p.identity]
    while todo:
        q = todo.pop()
        rest = q.inverse() * g
        for s in initial_letters(rest):
            nq = p.normalize(q.word + (s,))
            if nq not in seen:
                seen.add(nq)
                if len(seen) > cap:
                    raise CapExceeded(f"interval larger than cap={cap}")
                todo.append(nq)
    return seen


def interval(x: GroupElement, y: GroupElement, cap: int = DEFAULT_CAP) -> set[GroupElement]:
    """I(x, y): every vertex on some geodesic from x to y."""
    return {x * q for q in prefixes(x.inverse() * y, cap)}


def J(points: Iterable[GroupElement], cap: int = DEFAULT_CAP) -> set[GroupElement]:
    pts = list(set(points))
    out = set(pts)
    for a, b in itertools.combinations(pts, 2):
        out |= interval(a, b, cap)
        if len(out) > cap:
            raise CapExceeded(f"hull larger than cap={cap}")
    return out


def hull(points: Iterable[GroupElement], cap: int = DEFAULT_CAP) -> set[GroupElement]:
    """Convex hull, by iterating J to a fixpoint (at most clique-number rounds)."""
    cur = set(points)
    while True:
        nxt = J(cur, cap)
        if nxt == cur:
            return cur
        cur = nxt


def hull_rounds(points: Iterable[GroupElement], cap: int = DEFAULT_CAP) -> tuple[set[GroupElement], int]:
    """Hull plus the number of J applications that changed the set."""
    cur = set(points)
    k = 0
    while True:
        nxt = J(cur, cap)
        if nxt == cur:
            return cur, k
        cur, k = nxt, k + 1


def hull_by_walls(points: Iterable[GroupElement], cap: int = DEFAULT_CAP) -> set[GroupElement]:
    """Convex hull as the set of p whose walls (seen from a base point of A) all separate the base from A.

    Grows outward from the base point, so it scales to sets where pairwise J is
    too slow.
    """
    pts = list(points)
    if not pts:
        return set()
    base = pts[0]
    p = base.pres
    walls = set()
    for a in pts:
        walls.update(w for w, _ in crossing_list(base, a))
    local = {base.inverse() * a for a in pts}
    out = {p.identity}
    frontier = [p.identity]
    while frontier:
        nxt = []
        for q in frontier:
            for s in p.letters:
                nq = p.normalize(q.word + (s,))
                if len(nq) != len(q) + 1 or nq in out:
                    continue
                if wall_of_edge(base * q, s) in walls:
                    out.add(nq)
                    nxt.append(nq)
                    if len(out) > cap:
                        raise CapExceeded(f"hull larger than cap={cap}")
        frontier = nxt
    assert local <= out
    return {base * q for q in out}


def gate_parabolic(x: GroupElement, g: GroupElement, delta: Iterable[str]) -> GroupElement:
    """Nearest point of the coset g·A_Δ to x."""
    p = x.pres
    delta = set(delta)
    u = g.inverse() * x
    got: list[int] = []
    while True:
        cand = [s for s in initial_letters(u) if p.gen_of(s) in delta]
        if not cand:
            return g * p.normalize(got)
        s = min(cand)
        got.append(s)
        u = p.normalize((p.inv_letter(s),) + u.word)


def coset_rep(g: GroupElement, delta: Iterable[str]) -> GroupElement:
    """ShortLex-least (equivalently shortest) element of g·A_Δ: strip Δ-terminal letters."""
    p = g.pres
    delta = set(delta)
    while True:
        cand = [s for s in terminal_letters(g) if p.gen_of(s) in delta]
        if not cand:
            return g
        g = p.normalize(g.word + (p.inv_letter(cand[0]),))


# -- walls --------------------------------------------------------------------

@dataclass(frozen=True, order=True)
class WallId:
    """A hyperplane: its label and the two canonical cosets of A_{lk v} it separates."""

    label: str
    sides: tuple[tuple[int, ...], tuple[int, ...]]

    def describe(self, pres: Presentation) -> str:
        a, b = (pres.format(s) for s in self.sides)
        return f"{self.label}[{a}|{b}]"


def wall_of_edge(u: GroupElement, s: int) -> WallId:
    """The wall dual to the edge from u to u·s."""
    p = u.pres
    v = p.gen_of(s)
    lk = p.graph.link(v)
    a = coset_rep(u, lk)
    b = coset_rep(p.normalize(u.word + (s,)), lk)
    lo, hi = sorted((a.word, b.word))
    return WallId(v, (lo, hi))


def crossing_list(x: GroupElement, y: GroupElement) -> list[tuple[WallId, tuple[int, ...]]]:
    """Walls crossed by the canonical geodesic x → y, each with the side it enters (the y side)."""
    p = x.pres
    path = x.inverse() * y
    out = []
    cur = x
    for s in path.word:
        w = wall_of_edge(cur, s)
        cur = p.normalize(cur.word + (s,))
        out.append((w, coset_rep(cur, p.graph.link(w.label)).word))
    return out


def _heap_order(word: tuple[int, ...], pres: Presentation) -> list[set[int]]:
    """above[i] = positions j > i forced after i by a chain of non-commuting letters."""
    n = len(word)
    above: list[set[int]] = [set() for _ in range(n)]
    for i in range(n - 1, -1, -1):
        gi = word[i] >> 1
        for j in range(i + 1, n):
            gj = word[j] >> 1
            if gi == gj or not pres.commutes[gi][gj]:
                above[i].add(j)
                above[i] |= above[j]
    return above


def halfspace_order(x: GroupElement, y: GroupElement) -> tuple[list, list[set[int]]]:
    """Crossing list of H(x|y) and the strict inclusion relation: j in above[i] iff h_i ⊋ h_j."""
    cl = crossing_list(x, y)
    path = x.inverse() * y
    return cl, _heap_order(path.word, x.pres)


def dilworth_chains(x: GroupElement, y: GroupElement) -> list[list[tuple[WallId, tuple[int, ...]]]]:
    """Minimum partition of H(x|y) into inclusion chains (largest halfspace first)."""
    cl, above = halfspace_order(x, y)
    n = len(cl)
    if n == 0:
        return []
    bip = nx.Graph()
    left = [("L", i) for i in range(n)]
    bip.add_nodes_from(left)
    bip.add_nodes_from(("R", j) for j in range(n))
    for i in range(n):
        for j in above[i]:
            bip.add_edge(("L", i), ("R", j))
    match = nx.bipartite.hopcroft_karp_matching(bip, top_nodes=left)
    succ = {i: match[("L", i)][1] for i in range(n) if ("L", i) in match}
    has_pred = set(succ.values())
    chains = []
    for i in range(n):
        if i in has_pred:
            continue
        chain = [i]
        while chain[-1] in succ:
            chain.append(succ[chain[-1]])
        chains.append([cl[k] for k in chain])
    return chains


# -- displacement and cores ---------------------------------------------------

def conj_displacement(g: GroupElement) -> int:
    """ℓ(g): the minimal displacement, i.e. the length of the cyclic reduction."""
    return len(cyclic_reduce(g)[0])


def is_in_core(x: GroupElement, g: GroupElement) -> bool:
    """x lies on an axis of g iff it is moved exactly ℓ(g)."""
    return dist(x, g * x) == conj_displacement(g)
