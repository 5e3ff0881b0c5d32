"""The acceptance criteria as callable checks.

Each ``criterion_N`` returns a :class:`Outcome`.  The pytest suite and the
``acceptance`` subcommand both run these functions, so the printed table and
the test results come from the same code.
"""
from __future__ import annotations

import itertools
import math
import random
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable

import networkx as nx

from . import _kernels as K
from .autom import (Automorphism, ElemAut, INV, check_disc_property, disc_diagram_path,
                    mu_set_report, parse_automorphism, reentrant_halfspaces, untwisted_generators)
from .cubealg import (FinMedAlg, grid_staircase, h_bound, product, random_tree, staircase_length,
                      subalgebra_closure, from_group_points)
from .fixsub import (bestvina_brady_automorphism, cc_bad_pair, displacement_bound_check, fix_ball,
                     label_irreducible_components)
from .graphs import GraphError, SimpGraph, connected_subsets, load_graph, path_graph
from .medgeom import dilworth_chains, halfspace_order, hull_by_walls, median
from .splittings import construct_good_partition, is_good
from .words import COXETER, Presentation, bfs_distances, conj_length

CORPUS_DIR = Path(__file__).with_name("corpus")
GROUP_NAMES = ("f2", "z2", "z3", "p3", "p4", "c5")
GRAPH_NAMES = GROUP_NAMES + ("ccbad", "intro7")


@dataclass
class Outcome:
    number: int
    title: str
    passed: bool
    detail: dict = field(default_factory=dict)
    seconds: float = 0.0

    def line(self) -> str:
        return f"[{'PASS' if self.passed else 'FAIL'}] criterion {self.number:2d}: {self.title}"

    def to_json(self) -> dict:
        return {"criterion": self.number, "title": self.title, "passed": self.passed,
                "seconds": round(self.seconds, 2), "detail": self.detail}


class Corpus:
    """Named graphs read from a directory of ``<name>.json`` files."""

    def __init__(self, directory: str | Path = CORPUS_DIR):
        self.directory = Path(directory)
        if not self.directory.is_dir():
            raise GraphError(f"corpus directory {self.directory} does not exist")
        self.graphs = {p.stem: load_graph(p) for p in sorted(self.directory.glob("*.json"))}
        if not self.graphs:
            raise GraphError(f"corpus directory {self.directory} contains no graphs")

    def graph(self, name: str) -> SimpGraph:
        if name not in self.graphs:
            raise GraphError(f"corpus is missing graph {name!r}")
        return self.graphs[name]

    def group(self, name: str, kind: str | None = None) -> Presentation:
        return Presentation(self.graph(name), kind)

    def median_groups(self) -> list[tuple[str, Presentation]]:
        out = [(n, self.group(n, "artin")) for n in GROUP_NAMES]
        out.append(("p4-coxeter", self.group("p4", COXETER)))
        return out


def _timed(number: int, title: str, fn: Callable[[], tuple[bool, dict]]) -> Outcome:
    t = time.perf_counter()
    ok, detail = fn()
    return Outcome(number, title, bool(ok), detail, time.perf_counter() - t)


# -- 1: median oracle ---------------------------------------------------------------

def median_oracle_kernel(p: Presentation, R: int = 3) -> dict:
    """All triples of B_R: the greedy median lies between each pair, with BFS distances."""
    ball = p.ball(R)
    W, n = K.pack(ball)
    comm, block, cox = K.tables(p)
    table = K.bfs_table(p.rank, comm, block, cox, 2 * R)
    checked, failures, bad = K.check_all_triples(W, n, comm, block, cox, table, K.key_base(p))
    out = {"ball": len(ball), "triples": int(checked), "failures": int(failures)}
    if failures:
        out["first_failure"] = [str(ball[i]) for i in bad]
    return out


def median_oracle_python(p: Presentation, R: int, median_fn=median) -> dict:
    """Same check in pure Python with a pluggable median (used for negative controls)."""
    ball = p.ball(R)
    dist = bfs_distances(p, 2 * R)

    def d(x, y):
        # a true median is within 2R of each point; farther means failure
        return dist.get(x.inverse() * y, math.inf)

    failures = 0
    checked = 0
    for x in ball:
        for y, z in itertools.combinations_with_replacement(ball, 2):
            m = median_fn(x, y, z)
            checked += 1
            if m not in dist or any(d(a, m) + d(m, b) != d(a, b) for a, b in ((x, y), (x, z), (y, z))):
                failures += 1
    return {"ball": len(ball), "triples": checked, "failures": failures}


def criterion_1(corpus: Corpus) -> Outcome:
    def run():
        res = {name: median_oracle_kernel(p, 3) for name, p in corpus.median_groups()}
        return all(r["failures"] == 0 for r in res.values()), res
    return _timed(1, "greedy median agrees with the BFS median on all triples of B_3", run)


# -- 2, 3: μ-sets ------------------------------------------------------------------

def criterion_2(corpus: Corpus) -> Outcome:
    def run():
        ok = True
        res = {}
        for name in ("p3", "p4", "c5"):
            p = corpus.group(name, "artin")
            for f in untwisted_generators(p):
                phi = Automorphism(p, [f])
                one, wi = p.identity, p.gen(f.w, -1)
                sizes = []
                for R in range(1, 5):
                    mu = set(mu_set_report(phi, R).elements)
                    good = mu <= {one, wi} and (R < 2 or wi in mu)
                    ok &= good
                    sizes.append(sorted(str(g) for g in mu))
                res[f"{name}:{f}"] = sizes[-1]
        return ok, res
    return _timed(2, "μ(φ) ⊆ {1, w^-1} with w^-1 attained, joins and partial conjugations, R ≤ 4", run)


def criterion_3(corpus: Corpus) -> Outcome:
    def run():
        p = corpus.group("z2", "artin")
        phi = parse_automorphism(p, "twist(a,b)")
        sizes = [len(mu_set_report(phi, R).elements) for R in range(2, 7)]
        return all(a < b for a, b in zip(sizes, sizes[1:])), {"sizes_R2_to_R6": sizes}
    return _timed(3, "the Z^2 shear has strictly growing μ-sets for R = 2..6", run)


# -- 4: staircases ----------------------------------------------------------------

def criterion_4(corpus: Corpus, radii=(1, 2, 3)) -> Outcome:
    def run():
        ok = True
        res = {}
        groups = [(n, corpus.group(n, "artin")) for n in GRAPH_NAMES]
        groups.append(("p4-coxeter", corpus.group("p4", COXETER)))
        for name, p in groups:
            best = 0
            for R in radii:
                alg, _, _ = from_group_points(hull_by_walls(p.ball(R), cap=10 ** 6))
                st = staircase_length(alg)
                bound = st.length if st.exact else st.upper
                best = max(best, bound)
                res[f"{name}:R{R}"] = {"points": len(alg), "walls": alg.width,
                                       "length": st.length, "exact": st.exact, "upper": st.upper}
            ok &= best <= p.rank
        fig = staircase_length(grid_staircase(5))
        res["figure"] = {"length": fig.length, "exact": fig.exact}
        ok &= fig.exact and fig.length == 5
        return ok, res
    return _timed(4, "staircase length ≤ #vertices on hull(B_R), R ≤ 3; figure complex has length 5", run)


# -- 5: Dilworth ------------------------------------------------------------------

def _heap_elements(p: Presentation, L: int):
    """One element per halfspace poset of I(1, g), g ∈ B_L.

    The poset of H(1|g) depends only on the unsigned letter sequence of g's
    normal form; positive words realise every such sequence in the Artin case.
    """
    if p.is_coxeter:
        yield from p.ball(L)
        return
    layer = {()}
    yield p.identity
    for _ in range(L):
        nxt = set()
        for w in layer:
            for s in range(p.rank):
                nxt.add(p.canonical(list(w) + [2 * s]))
        layer = nxt
        for w in sorted(layer):
            yield p.normalize(w)


def _brute_width(above: list[set[int]]) -> int:
    n = len(above)
    comp = [0] * n
    for i in range(n):
        for j in above[i]:
            comp[i] |= 1 << j
            comp[j] |= 1 << i
    best = 0
    for S in range(1 << n):
        c = bin(S).count("1")
        if c <= best:
            continue
        if all(not (comp[i] & S) for i in range(n) if (S >> i) & 1):
            best = c
    return best


def _clique_rank(above: list[set[int]]) -> int:
    n = len(above)
    g = nx.Graph()
    g.add_nodes_from(range(n))
    g.add_edges_from((i, j) for i in range(n) for j in range(i + 1, n) if j not in above[i])
    return max((len(c) for c in nx.find_cliques(g)), default=0)


def criterion_5(corpus: Corpus, R: int = 4) -> Outcome:
    def run():
        ok = True
        res = {}
        for name, p in corpus.median_groups():
            count = 0
            bad = None
            for g in _heap_elements(p, 2 * R):
                if g.is_identity:
                    continue
                one = p.identity
                chains = dilworth_chains(one, g)
                _, above = halfspace_order(one, g)
                w, r = _brute_width(above), _clique_rank(above)
                count += 1
                if not (len(chains) == w == r and sum(map(len, chains)) == len(g)):
                    ok = False
                    bad = bad or str(g)
            res[name] = {"posets": count, "first_failure": bad}
        return ok, res
    return _timed(5, "Dilworth chain count = max antichain = interval rank over pairs of B_4", run)


# -- 6: subalgebra closure ------------------------------------------------------------

def criterion_6(seed: int = 0, trials: int = 200, rank3_trials: int = 50) -> Outcome:
    def run():
        rng = random.Random(seed)
        worst2 = 0
        tree_ok = True
        for _ in range(trials):
            n1 = rng.randint(2, 16)
            n2 = rng.randint(2, max(2, 256 // n1))
            m = product(random_tree(n1, rng), random_tree(n2, rng))
            pts = sorted(m.points)
            A = rng.sample(pts, rng.randint(1, min(len(pts), 12)))
            _, steps = subalgebra_closure(A, m.width)
            worst2 = max(worst2, steps)
            tree_ok &= steps <= 1
        worst3 = 0
        h3 = h_bound(3)["h"]
        for _ in range(rank3_trials):
            ns = [rng.randint(2, 6) for _ in range(3)]
            m = product(*(random_tree(n, rng) for n in ns))
            pts = sorted(m.points)
            A = rng.sample(pts, rng.randint(1, min(len(pts), 12)))
            _, steps = subalgebra_closure(A, m.width)
            worst3 = max(worst3, steps)
        ok = worst2 <= 2 and worst3 <= h3
        return ok, {"rank2_max_steps": worst2, "rank2_tree_products_at_most_1": tree_ok,
                    "rank3_max_steps": worst3, "h3": h3}
    return _timed(6, "closure steps ≤ 2 on rank-2 tree products, ≤ h(3) on rank 3", run)


# -- 7: good partitions -------------------------------------------------------------

def all_connected_irreducible(max_n: int = 6):
    for n in range(2, max_n + 1):
        vs = "abcdefgh"[:n]
        pairs = list(itertools.combinations(vs, 2))
        for mask in range(1 << len(pairs)):
            g = SimpGraph(vs, [e for i, e in enumerate(pairs) if (mask >> i) & 1])
            if g.is_connected() and g.is_irreducible():
                yield g


def criterion_7(max_n: int = 6) -> Outcome:
    def run():
        count = 0
        cases: dict[str, int] = {}
        for g in all_connected_irreducible(max_n):
            P = construct_good_partition(g)
            ok, why = is_good(g, P)
            if not ok:
                return False, {"graph": repr(g), "violation": why}
            count += 1
            key = P.trace[-1][:3]
            cases[key] = cases.get(key, 0) + 1
        return True, {"graphs": count, "final_case_counts": dict(sorted(cases.items()))}
    return _timed(7, "good partitions built and certified on all connected irreducible graphs, 2-6 vertices", run)


# -- 8, 9: scripted examples ----------------------------------------------------------

def criterion_8() -> Outcome:
    def run():
        p, psi, _ = bestvina_brady_automorphism(path_graph(2))
        got = set(fix_ball(psi, 4).fixed)
        a, b, z = p.gen("a"), p.gen("b"), p.gen("z")
        want = set()
        for i in range(-4, 5):
            for k in range(-4, 5):
                g = (a ** i) * (b ** -i) * (z ** k)
                if len(g) <= 4:
                    want.add(g)
        return got == want, {"fixed": len(got), "expected": len(want)}
    return _timed(8, "Bestvina-Brady fixture: Fix ψ ∩ B_4 is the kernel slice", run)


def criterion_9() -> Outcome:
    def run():
        r = cc_bad_pair(8, 3)
        ok = r["product_matches"] and r["components"] == ["a b", "y^2"] and not r["hits"]
        return ok, r
    return _timed(9, "cc-bad fixture: a b y^2 in H, components {ab, y^2}, no component power found", run)


# -- 10: label-irreducible additivity -------------------------------------------------

def _random_element(p: Presentation, rng: random.Random, L: int):
    n = rng.randint(0, L)
    return p.normalize([rng.choice(p.letters) for _ in range(n)])


def criterion_10(corpus: Corpus, seed: int = 0, samples: int = 1000) -> Outcome:
    def run():
        rng = random.Random(seed)
        ok = True
        res = {}
        for name, p in corpus.median_groups():
            bad = 0
            for _ in range(samples):
                g = _random_element(p, rng, 6)
                dec = label_irreducible_components(g)
                cs = dec.components
                comm = all(x * y == y * x for x, y in itertools.combinations(cs, 2))
                good = comm and dec.product() == g and conj_length(g) == sum(conj_length(c) for c in cs)
                bad += not good
            res[name] = {"samples": samples, "failures": bad}
            ok &= bad == 0
        return ok, res
    return _timed(10, "label-irreducible components commute, reassemble g and add up ℓ", run)


# -- 11: disc diagrams ------------------------------------------------------------

def _random_geodesic(p: Presentation, rng: random.Random, n: int) -> tuple[int, ...]:
    w: list[int] = []
    while len(w) < n:
        s = rng.choice(p.letters)
        if len(p.normalize(w + [s])) == len(w) + 1:
            w.append(s)
    return tuple(w)


def criterion_11(corpus: Corpus, seed: int = 0, samples: int = 1000) -> Outcome:
    def run():
        rng = random.Random(seed)
        ok = True
        res = {}
        for name in ("p3", "p4", "c5"):
            p = corpus.group(name, "artin")
            for f in untwisted_generators(p):
                seen = bad = 0
                for _ in range(samples):
                    start = _random_element(p, rng, 3)
                    word = _random_geodesic(p, rng, rng.randint(0, 8))
                    hs = reentrant_halfspaces(disc_diagram_path(p, f, start, word))
                    seen += len(hs)
                    good, _ = check_disc_property(p, f, hs)
                    bad += not good
                res[f"{name}:{f}"] = {"reentrant": seen, "failures": bad}
                ok &= bad == 0
        return ok, res
    return _timed(11, "reentrant halfspaces carry label w and are pairwise disjoint", run)


# -- 12: displacement -------------------------------------------------------------

def criterion_12(corpus: Corpus, R: int = 4) -> Outcome:
    def run():
        ok = True
        res = {}
        for name in GROUP_NAMES:
            p = corpus.group(name, "artin")
            gens = [ElemAut(INV, v=v) for v in p.graph.vertices] + untwisted_generators(p)
            for f in gens:
                good, info = displacement_bound_check(Automorphism(p, [f]), R)
                ok &= good
                res[f"{name}:{f}"] = {"violations": info["violations"], "first": info["first_violation"]}
        return ok, res
    return _timed(12, "½·d(g, φg) ≤ d(g, Fix ∩ B_8) for g ∈ B_4 and untwisted elementary φ", run)


# -- 13: antigraph diameter -----------------------------------------------------------

def criterion_13(corpus: Corpus) -> Outcome:
    def run():
        ok = True
        res = {}
        for name in GRAPH_NAMES:
            g = corpus.graph(name)
            r = g.clique_number()
            opp = g.opposite()
            worst = 0
            for S in connected_subsets(opp):
                worst = max(worst, opp.diameter(S))
            res[name] = {"max_diameter": worst, "bound": 2 * r - 1}
            ok &= worst <= 2 * r - 1
        return ok, res
    return _timed(13, "connected full subgraphs of the opposite graph have diameter ≤ 2r - 1", run)


# -- 14: multi-bridges --------------------------------------------------------------

def _random_algebra(rng: random.Random) -> FinMedAlg:
    k = rng.randint(1, 3)
    sizes = [rng.randint(2, 7) for _ in range(k)]
    return product(*(random_tree(n, rng) for n in sizes))


def check_multi_bridge(m: FinMedAlg, Cs: list[set[int]]) -> tuple[bool, str]:
    B, par, perp = m.multi_bridge(Cs)
    r = m.rank()
    for x in m.points:
        if m.dist_to(x, B) > r * max(m.dist_to(x, C) for C in Cs):
            return False, f"distance bound fails at {m.fmt(x)}"
    moving = [c for c in range(m.width) if len({(p >> c) & 1 for p in B}) == 2]
    if set(par) & set(perp) or set(moving) != set(par) | set(perp):
        return False, "parallel and perpendicular coordinates do not split the walls of B"
    pm = sum(1 << c for c in par)
    qm = sum(1 << c for c in perp)
    base = next(iter(B))
    fixed = ~(pm | qm)
    par_vals = {p & pm for p in B}
    perp_vals = {p & qm for p in B}
    rebuilt = {(base & fixed) | a | b for a in par_vals for b in perp_vals}
    if rebuilt != B:
        return False, "B is not the product of its parallel and perpendicular factors"
    for a in par_vals:
        fibre = {p for p in B if p & pm == a}
        if any(not (fibre & C) for C in Cs):
            return False, "a perpendicular fibre misses some C_i"
    return True, "ok"


def criterion_14(seed: int = 0, trials: int = 100) -> Outcome:
    def run():
        rng = random.Random(seed)
        for t in range(trials):
            m = _random_algebra(rng)
            pts = sorted(m.points)
            Cs = [m.hull(rng.sample(pts, rng.randint(1, min(3, len(pts))))) for _ in range(rng.randint(2, 3))]
            ok, why = check_multi_bridge(m, Cs)
            if not ok:
                return False, {"trial": t, "reason": why}
        return True, {"trials": trials}
    return _timed(14, "multi-bridge distance bound and product splitting", run)


# -- runner ---------------------------------------------------------------------

def run_all(corpus: Corpus | None = None, only: set[int] | None = None, seed: int = 0) -> list[Outcome]:
    corpus = corpus or Corpus()
    table = {
        1: lambda: criterion_1(corpus), 2: lambda: criterion_2(corpus), 3: lambda: criterion_3(corpus),
        4: lambda: criterion_4(corpus), 5: lambda: criterion_5(corpus), 6: lambda: criterion_6(seed),
        7: lambda: criterion_7(), 8: criterion_8, 9: criterion_9,
        10: lambda: criterion_10(corpus, seed), 11: lambda: criterion_11(corpus, seed),
        12: lambda: criterion_12(corpus), 13: lambda: criterion_13(corpus),
        14: lambda: criterion_14(seed),
    }
    return [table[k]() for k in sorted(table) if only is None or k in only]
