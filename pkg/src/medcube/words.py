"""Elements of right-angled Artin and Coxeter groups in ShortLex normal form.

Letters are small integers: generator ``i`` (the i-th vertex in graph order)
is ``2*i`` and its inverse is ``2*i + 1``.  Integer order is therefore the
letter order a < a^-1 < b < b^-1 < ... used for ShortLex.  A Coxeter
presentation only ever uses even codes.

Every :class:`GroupElement` holds the ShortLex-least reduced word of its
group element, so equality and hashing are structural.
"""
from __future__ import annotations

import re
from collections import deque
from typing import Iterable, Iterator, Sequence

from .graphs import GraphError, SimpGraph

ARTIN = "artin"
COXETER = "coxeter"


class WordError(ValueError):
    """Unparseable word or unknown generator."""


class Presentation:
    """A RAAG or RACG defined by a graph."""

    def __init__(self, graph: SimpGraph, kind: str | None = None):
        kind = kind or graph.kind
        if kind not in (ARTIN, COXETER):
            raise GraphError(f"unknown kind {kind!r}")
        self.graph = graph
        self.kind = kind
        self.names = graph.vertices
        self.rank = len(self.names)
        n = self.rank
        # commutes[i][j]: distinct generators i, j span an edge
        self.commutes = [[graph.adjacent(self.names[i], self.names[j]) for j in range(n)] for i in range(n)]
        if kind == ARTIN:
            self.letters = tuple(range(2 * n))
        else:
            self.letters = tuple(2 * i for i in range(n))
        self._identity = GroupElement(self, ())

    def __repr__(self) -> str:
        return f"Presentation({self.kind}, {self.graph!r})"

    def __eq__(self, other) -> bool:
        return isinstance(other, Presentation) and self.kind == other.kind and self.graph == other.graph

    def __hash__(self) -> int:
        return hash((self.kind, self.graph))

    @property
    def is_coxeter(self) -> bool:
        return self.kind == COXETER

    # -- letters -----------------------------------------------------------

    def inv_letter(self, s: int) -> int:
        return s if self.kind == COXETER else s ^ 1

    def gen_of(self, s: int) -> str:
        return self.names[s >> 1]

    def letter(self, v: str, sign: int = 1) -> int:
        try:
            i = self.graph.index(v)
        except GraphError:
            raise WordError(f"unknown generator {v!r}") from None
        if sign < 0 and self.kind == ARTIN:
            return 2 * i + 1
        return 2 * i

    def letters_commute(self, s: int, t: int) -> bool:
        """Distinct generators joined by an edge (a letter never commutes past itself here)."""
        return self.commutes[s >> 1][t >> 1]

    # -- reduction ---------------------------------------------------------

    def reduce(self, word: Iterable[int]) -> list[int]:
        """A reduced word for the same element (not yet canonical)."""
        out: list[int] = []
        comm = self.commutes
        cox = self.kind == COXETER
        for s in word:
            g = s >> 1
            inv = s if cox else s ^ 1
            j = len(out) - 1
            cancelled = False
            while j >= 0:
                t = out[j]
                h = t >> 1
                if h == g:
                    if t == inv:
                        del out[j]
                        cancelled = True
                    break
                if not comm[g][h]:
                    break
                j -= 1
            if not cancelled:
                out.append(s)
        return out

    def canonical(self, reduced: list[int]) -> tuple[int, ...]:
        """ShortLex-least rearrangement of a reduced word by commutations."""
        w = list(reduced)
        out = []
        comm = self.commutes
        while w:
            best = None
            bi = -1
            blocked: set[int] = set()
            for i, s in enumerate(w):
                g = s >> 1
                if g not in blocked and (best is None or s < best):
                    best, bi = s, i
                blocked.add(g)
                for h in range(self.rank):
                    if not comm[g][h]:
                        blocked.add(h)
                if len(blocked) == self.rank:
                    break
            out.append(best)
            del w[bi]
        return tuple(out)

    def normalize(self, raw) -> GroupElement:
        if isinstance(raw, GroupElement):
            return raw
        if isinstance(raw, str):
            raw = self.parse_letters(raw)
        for s in raw:
            if not 0 <= s < 2 * self.rank:
                raise WordError(f"letter code {s} out of range")
        word = [s & ~1 for s in raw] if self.kind == COXETER else list(raw)
        return GroupElement(self, self.canonical(self.reduce(word)))

    __call__ = normalize

    # -- syntax ------------------------------------------------------------

    _TOKEN = re.compile(r"^([A-Za-z_][A-Za-z0-9_]*?)(?:\^(-?\d+))?$")

    def parse_letters(self, text: str) -> list[int]:
        """Parse ``"a b^-2 c"``; ``"1"`` (or empty) is the identity."""
        text = text.strip()
        if text in ("", "1", "ε"):
            return []
        out: list[int] = []
        for tok in text.split():
            if tok == "1":
                continue
            m = self._TOKEN.match(tok)
            if not m:
                raise WordError(f"cannot parse token {tok!r}")
            name, exp = m.group(1), int(m.group(2) or 1)
            if name not in self.graph:
                raise WordError(f"unknown generator {name!r}")
            s = self.letter(name, 1 if exp > 0 else -1)
            out.extend([s] * abs(exp))
        return out

    def format(self, word: Sequence[int]) -> str:
        if not word:
            return "1"
        parts = []
        i = 0
        while i < len(word):
            j = i
            while j < len(word) and word[j] == word[i]:
                j += 1
            k = j - i
            s = word[i]
            name = self.gen_of(s)
            e = -k if (s & 1) else k
            parts.append(name if e == 1 else f"{name}^{e}")
            i = j
        return " ".join(parts)

    # -- elements ----------------------------------------------------------

    @property
    def identity(self) -> GroupElement:
        return self._identity

    def gen(self, v: str, sign: int = 1) -> GroupElement:
        return GroupElement(self, (self.letter(v, sign),))

    def generators(self) -> list[GroupElement]:
        """The symmetric generating set S (Artin: S ∪ S^-1)."""
        return [GroupElement(self, (s,)) for s in self.letters]

    def ball(self, radius: int) -> list[GroupElement]:
        """B_R(1) by breadth-first search, sorted by (length, ShortLex)."""
        return [g for layer in self.spheres(radius) for g in layer]

    def spheres(self, radius: int) -> list[list[GroupElement]]:
        seen = {self._identity}
        layers = [[self._identity]]
        for _ in range(radius):
            nxt = []
            for g in layers[-1]:
                for s in self.letters:
                    h = self.normalize(g.word + (s,))
                    if h not in seen:
                        seen.add(h)
                        nxt.append(h)
            nxt.sort(key=lambda g: g.word)
            layers.append(nxt)
        return layers

    def parabolic_ball(self, delta: Iterable[str], radius: int) -> list[GroupElement]:
        """Elements of A_Δ of length ≤ radius."""
        gens = [s for s in self.letters if self.gen_of(s) in set(delta)]
        seen = {self._identity}
        frontier = [self._identity]
        for _ in range(radius):
            nxt = []
            for g in frontier:
                for s in gens:
                    h = self.normalize(g.word + (s,))
                    if h not in seen:
                        seen.add(h)
                        nxt.append(h)
            frontier = nxt
        return sorted(seen, key=lambda g: (len(g), g.word))


class GroupElement:
    """A group element stored as its canonical (ShortLex-least reduced) word."""

    __slots__ = ("pres", "word", "_hash")

    def __init__(self, pres: Presentation, word: tuple[int, ...]):
        self.pres = pres
        self.word = word
        self._hash = hash(word)

    def __hash__(self) -> int:
        return self._hash

    def __eq__(self, other) -> bool:
        return isinstance(other, GroupElement) and self.word == other.word

    def __lt__(self, other: GroupElement) -> bool:
        return (len(self.word), self.word) < (len(other.word), other.word)

    def __len__(self) -> int:
        return len(self.word)

    def __iter__(self) -> Iterator[int]:
        return iter(self.word)

    def __mul__(self, other: GroupElement) -> GroupElement:
        return self.pres.normalize(self.word + other.word)

    def __invert__(self) -> GroupElement:
        return self.inverse()

    def __pow__(self, k: int) -> GroupElement:
        base = self if k >= 0 else self.inverse()
        return self.pres.normalize(base.word * abs(k))

    def inverse(self) -> GroupElement:
        inv = self.pres.inv_letter
        return self.pres.normalize([inv(s) for s in reversed(self.word)])

    def __str__(self) -> str:
        return self.pres.format(self.word)

    def __repr__(self) -> str:
        return f"<{self}>"

    @property
    def is_identity(self) -> bool:
        return not self.word

    @property
    def letters(self) -> list[tuple[str, int]]:
        """Run-length view: ``[(generator, exponent), ...]``."""
        out: list[tuple[str, int]] = []
        for s in self.word:
            name = self.pres.gen_of(s)
            e = -1 if (s & 1) else 1
            if out and out[-1][0] == name and (out[-1][1] > 0) == (e > 0) and not self.pres.is_coxeter:
                out[-1] = (name, out[-1][1] + e)
            else:
                out.append((name, e))
        return out


# -- module-level operations ------------------------------------------------

def normalize(p: Presentation, raw) -> GroupElement:
    return p.normalize(raw)


def multiply(x: GroupElement, y: GroupElement) -> GroupElement:
    return x * y


def invert(x: GroupElement) -> GroupElement:
    return x.inverse()


def length(x: GroupElement) -> int:
    return len(x.word)


def dist(x: GroupElement, y: GroupElement) -> int:
    return len(x.inverse() * y)


def initial_letters(x: GroupElement) -> set[int]:
    """Letter codes s such that some reduced expression of x begins with s."""
    p = x.pres
    out = set()
    blocked: set[int] = set()
    for s in x.word:
        g = s >> 1
        if g not in blocked:
            out.add(s)
        blocked.add(g)
        for h in range(p.rank):
            if not p.commutes[g][h]:
                blocked.add(h)
    return out


def terminal_letters(x: GroupElement) -> set[int]:
    p = x.pres
    out = set()
    blocked: set[int] = set()
    for s in reversed(x.word):
        g = s >> 1
        if g not in blocked:
            out.add(s)
        blocked.add(g)
        for h in range(p.rank):
            if not p.commutes[g][h]:
                blocked.add(h)
    return out


def strip_initial(x: GroupElement, s: int) -> GroupElement:
    """s^-1 x for an initial letter s (a letter deletion, no renormalisation of length)."""
    return x.pres.normalize((x.pres.inv_letter(s),) + x.word)


def cyclic_reduce(x: GroupElement) -> tuple[GroupElement, GroupElement]:
    """``(core, conjugator)`` with ``x = conjugator * core * conjugator^-1``.

    The core is cyclically reduced, hence of minimal length in the conjugacy
    class of ``x``.
    """
    p = x.pres
    core = x
    conj = p.identity
    while True:
        term = terminal_letters(core)
        step = None
        for s in sorted(initial_letters(core)):
            if p.inv_letter(s) in term:
                cand = p.normalize((p.inv_letter(s),) + core.word + (s,))
                if len(cand) == len(core) - 2:
                    step = (s, cand)
                    break
        if step is None:
            return core, conj
        s, core = step
        conj = conj * GroupElement(p, (s,))


def conj_length(x: GroupElement) -> int:
    return len(cyclic_reduce(x)[0])


def support(x: GroupElement) -> frozenset[str]:
    core, _ = cyclic_reduce(x)
    return frozenset(x.pres.gen_of(s) for s in core.word)


def word_support(x: GroupElement) -> frozenset[str]:
    """Generators occurring in the normal form itself (not cyclically reduced)."""
    return frozenset(x.pres.gen_of(s) for s in x.word)


def is_parabolic_member(x: GroupElement, delta: Iterable[str]) -> bool:
    return word_support(x) <= set(delta)


def bfs_distances(p: Presentation, radius: int) -> dict[GroupElement, int]:
    """BFS layer of every element of B_R(1); independent of word lengths."""
    out = {p.identity: 0}
    q = deque([p.identity])
    while q:
        g = q.popleft()
        d = out[g]
        if d == radius:
            continue
        for s in p.letters:
            h = p.normalize(g.word + (s,))
            if h not in out:
                out[h] = d + 1
                q.append(h)
    return out
