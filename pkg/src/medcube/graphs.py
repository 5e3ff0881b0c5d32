"""Finite simplicial defining graphs.

A :class:`SimpGraph` is an immutable value: a sorted tuple of string vertex
ids plus a symmetric, irreflexive adjacency relation.  The vertex order is the
seed for every ShortLex tie-break downstream, so it is fixed at construction
(lexicographic).
"""
from __future__ import annotations

import itertools
import json
from collections import deque
from pathlib import Path
from typing import Iterable


class GraphError(ValueError):
    """Malformed graph data or a query on an unknown vertex."""


class SimpGraph:
    __slots__ = ("vertices", "_adj", "_index", "kind")

    def __init__(self, vertices: Iterable[str], edges: Iterable[tuple[str, str]] = (), kind: str = "artin"):
        verts = list(vertices)
        if len(set(verts)) != len(verts):
            raise GraphError("duplicate vertex ids")
        for v in verts:
            if not isinstance(v, str) or not v:
                raise GraphError(f"vertex ids must be nonempty strings, got {v!r}")
        if kind not in ("artin", "coxeter"):
            raise GraphError(f"unknown kind {kind!r}")
        self.vertices: tuple[str, ...] = tuple(sorted(verts))
        self._index = {v: i for i, v in enumerate(self.vertices)}
        adj: dict[str, set[str]] = {v: set() for v in self.vertices}
        seen = set()
        for e in edges:
            u, v = e
            if u not in adj or v not in adj:
                raise GraphError(f"edge {u}-{v} uses an unknown vertex")
            if u == v:
                raise GraphError(f"loop at {u}")
            key = frozenset((u, v))
            if key in seen:
                raise GraphError(f"duplicate edge {u}-{v}")
            seen.add(key)
            adj[u].add(v)
            adj[v].add(u)
        self._adj = {v: frozenset(n) for v, n in adj.items()}
        self.kind = kind

    # -- basic queries -----------------------------------------------------

    def __contains__(self, v) -> bool:
        return v in self._index

    def __len__(self) -> int:
        return len(self.vertices)

    def __eq__(self, other) -> bool:
        return (isinstance(other, SimpGraph) and self.vertices == other.vertices
                and self._adj == other._adj and self.kind == other.kind)

    def __hash__(self) -> int:
        return hash((self.vertices, frozenset(self.edges)))

    def __repr__(self) -> str:
        es = " ".join(f"{u}-{v}" for u, v in self.edges)
        return f"SimpGraph({','.join(self.vertices)}; {es})"

    def index(self, v: str) -> int:
        try:
            return self._index[v]
        except KeyError:
            raise GraphError(f"unknown vertex {v!r}") from None

    @property
    def edges(self) -> list[tuple[str, str]]:
        return [(u, v) for u, v in itertools.combinations(self.vertices, 2) if v in self._adj[u]]

    def adjacent(self, u: str, v: str) -> bool:
        return v in self._adj[u]

    def link(self, v: str) -> frozenset[str]:
        self.index(v)
        return self._adj[v]

    def star(self, v: str) -> frozenset[str]:
        return self.link(v) | {v}

    def perp(self, delta: Iterable[str]) -> frozenset[str]:
        """Intersection of the links of ``delta``; the empty set gives every vertex."""
        out = frozenset(self.vertices)
        for v in delta:
            out &= self.link(v)
        return out

    # -- derived graphs ----------------------------------------------------

    def opposite(self) -> SimpGraph:
        es = [(u, v) for u, v in itertools.combinations(self.vertices, 2) if v not in self._adj[u]]
        return SimpGraph(self.vertices, es, self.kind)

    def full_subgraph(self, vs: Iterable[str]) -> SimpGraph:
        vs = set(vs)
        for v in vs:
            self.index(v)
        return SimpGraph(vs, [(u, v) for u, v in self.edges if u in vs and v in vs], self.kind)

    def minus(self, vs: Iterable[str]) -> SimpGraph:
        return self.full_subgraph(set(self.vertices) - set(vs))

    def minus_star(self, v: str) -> SimpGraph:
        return self.minus(self.star(v))

    # -- connectivity ------------------------------------------------------

    def connected_components(self, within: Iterable[str] | None = None) -> list[frozenset[str]]:
        """Components of the full subgraph on ``within`` (default: all), ordered by least vertex."""
        pool = set(self.vertices if within is None else within)
        comps = []
        for start in sorted(pool):
            if not any(start in c for c in comps):
                comp = {start}
                todo = [start]
                while todo:
                    u = todo.pop()
                    for w in self._adj[u]:
                        if w in pool and w not in comp:
                            comp.add(w)
                            todo.append(w)
                comps.append(frozenset(comp))
        return comps

    def is_connected(self, within: Iterable[str] | None = None) -> bool:
        return len(self.connected_components(within)) <= 1

    def distances_from(self, v: str, within: Iterable[str] | None = None) -> dict[str, int]:
        pool = set(self.vertices if within is None else within)
        dist = {v: 0}
        q = deque([v])
        while q:
            u = q.popleft()
            for w in self._adj[u]:
                if w in pool and w not in dist:
                    dist[w] = dist[u] + 1
                    q.append(w)
        return dist

    def distance(self, u: str, v: str) -> float:
        return self.distances_from(u).get(v, float("inf"))

    def set_distance(self, a: Iterable[str], b: Iterable[str]) -> float:
        b = set(b)
        best = float("inf")
        for u in a:
            d = self.distances_from(u)
            best = min([best] + [d[w] for w in b if w in d])
        return best

    def diameter(self, within: Iterable[str] | None = None) -> float:
        """Graph diameter of the full subgraph on ``within``; inf when disconnected."""
        pool = sorted(set(self.vertices if within is None else within))
        best = 0
        for v in pool:
            d = self.distances_from(v, pool)
            if len(d) < len(pool):
                return float("inf")
            best = max(best, max(d.values()))
        return best

    # -- structure ---------------------------------------------------------

    def join_factors(self) -> list[frozenset[str]]:
        """Vertex sets of the connected components of the opposite graph.

        The graph is the join of the full subgraphs on these sets; a single
        factor means the graph is irreducible.
        """
        return self.opposite().connected_components()

    def is_irreducible(self) -> bool:
        return len(self.join_factors()) <= 1

    def cliques(self) -> list[frozenset[str]]:
        """All cliques, including the empty one (exhaustive)."""
        out = [frozenset()]

        def grow(clique, candidates):
            for i, v in enumerate(candidates):
                c = clique | {v}
                out.append(c)
                grow(c, [w for w in candidates[i + 1:] if w in self._adj[v]])

        grow(frozenset(), list(self.vertices))
        return out

    def clique_number(self) -> int:
        return max(len(c) for c in self.cliques())

    def link_reduce(self) -> tuple[SimpGraph, dict[str, str]]:
        """Quotient by the relation lk v = lk w.

        Each class is named by its least vertex.  Returns the quotient graph
        and the vertex map onto it.
        """
        rep: dict[frozenset[str], str] = {}
        r = {}
        for v in self.vertices:
            r[v] = rep.setdefault(self._adj[v], v)
        qv = sorted(set(r.values()))
        qe = {tuple(sorted((r[u], r[v]))) for u, v in self.edges}
        return SimpGraph(qv, sorted(qe), self.kind), r

    def automorphisms(self) -> list[dict[str, str]]:
        """All graph automorphisms by brute force over permutations (small graphs only)."""
        vs = self.vertices
        es = {frozenset(e) for e in self.edges}
        out = []
        for perm in itertools.permutations(vs):
            sigma = dict(zip(vs, perm))
            if all(frozenset((sigma[u], sigma[v])) in es for u, v in self.edges):
                out.append(sigma)
        return out

    # -- serialisation -----------------------------------------------------

    def to_json(self) -> dict:
        return {"vertices": list(self.vertices), "edges": [list(e) for e in self.edges], "kind": self.kind}

    @classmethod
    def from_json(cls, data: dict) -> SimpGraph:
        if not isinstance(data, dict) or "vertices" not in data:
            raise GraphError("graph JSON must be an object with a 'vertices' list")
        edges = data.get("edges", [])
        for e in edges:
            if not isinstance(e, (list, tuple)) or len(e) != 2:
                raise GraphError(f"bad edge entry {e!r}")
        return cls(data["vertices"], [tuple(e) for e in edges], data.get("kind", "artin"))


def load_graph(path: str | Path) -> SimpGraph:
    try:
        data = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise GraphError(f"{path}: invalid JSON ({exc})") from None
    return SimpGraph.from_json(data)


# Small named graphs.  Vertex names follow the corpus files.

def path_graph(n: int, names: str = "abcdefghijkl") -> SimpGraph:
    vs = list(names[:n])
    return SimpGraph(vs, list(zip(vs, vs[1:])))


def cycle_graph(n: int, names: str = "abcdefghijkl") -> SimpGraph:
    vs = list(names[:n])
    return SimpGraph(vs, list(zip(vs, vs[1:])) + [(vs[-1], vs[0])])


def complete_graph(n: int, names: str = "abcdefghijkl") -> SimpGraph:
    vs = list(names[:n])
    return SimpGraph(vs, list(itertools.combinations(vs, 2)))


def edgeless_graph(n: int, names: str = "abcdefghijkl") -> SimpGraph:
    return SimpGraph(list(names[:n]))


def connected_subsets(g: SimpGraph) -> list[frozenset[str]]:
    """All nonempty vertex subsets spanning a connected full subgraph."""
    out = []
    for k in range(1, len(g) + 1):
        for sub in itertools.combinations(g.vertices, k):
            if g.is_connected(sub):
                out.append(frozenset(sub))
    return out
