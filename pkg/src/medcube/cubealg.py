"""Finite median algebras as majority-closed sets of bitvectors.

A point is a Python int whose bit ``c`` is coordinate ``c``.  Halfspaces are
indexed ``2*c + b`` and hold the points whose coordinate ``c`` equals ``b``;
``h ^ 1`` is the complementary halfspace.  Inclusion and transversality of
halfspaces are read off one co-occurrence matrix.
"""
from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Sequence

import networkx as nx
import numpy as np


class MedAlgError(ValueError):
    """A point set that is not a valid finite median algebra (or a bad argument)."""


def maj(a: int, b: int, c: int) -> int:
    return (a & b) | (b & c) | (a & c)


def popcount(x: int) -> int:
    return bin(x).count("1")


def _bits_matrix(points: Sequence[int], width: int) -> np.ndarray:
    """Boolean N x width matrix of coordinates."""
    nbytes = (width + 7) // 8 or 1
    raw = np.frombuffer(b"".join(p.to_bytes(nbytes, "little") for p in points), dtype=np.uint8)
    bits = np.unpackbits(raw.reshape(len(points), nbytes), axis=1, bitorder="little")
    return bits[:, :width].astype(bool)


def _rows_to_ints(mat: np.ndarray) -> list[int]:
    packed = np.packbits(mat.astype(np.uint8), axis=1, bitorder="little")
    return [int.from_bytes(r.tobytes(), "little") for r in packed]


def _halfspace_matrix(bits: np.ndarray) -> np.ndarray:
    n, w = bits.shape
    H = np.empty((n, 2 * w), dtype=np.float32)
    H[:, 0::2] = ~bits
    H[:, 1::2] = bits
    return H


# -- closure under majority ------------------------------------------------------

def M_step(points: Iterable[int], width: int | None = None) -> set[int]:
    """M(A): every majority of three points of A (repetitions allowed, so A ⊆ M(A))."""
    pts = sorted(set(points))
    if width is None:
        width = max(pts, default=0).bit_length()
    if width <= 63 and len(pts) > 8:
        a = np.array(pts, dtype=np.uint64)
        out: set[int] = set()
        for i in range(len(a)):
            x = a[i]
            y = a[i:]
            both = x & y
            either = x | y
            # maj(x, y, z) = (x & y) | (z & (x | y)) over all z at once
            m = both[:, None] | (a[None, :] & either[:, None])
            out.update(np.unique(m).tolist())
        return {int(p) for p in out}
    out = set(pts)
    for x, y, z in itertools.combinations(pts, 3):
        out.add(maj(x, y, z))
    return out


def subalgebra_closure(points: Iterable[int], width: int | None = None) -> tuple[set[int], int]:
    """Least majority-closed superset of A and the number of M-steps that changed the set."""
    cur = set(points)
    steps = 0
    while True:
        nxt = M_step(cur, width)
        if nxt == cur:
            return cur, steps
        cur = nxt
        steps += 1


# iteration count quoted alongside the rank-2 bound; it differs from h(2) = 12
STATED_RANK2_BOUND = 244


def h_bound(r: int) -> dict[str, int]:
    """The iteration bounds f, g, h evaluated at r (exact integers)."""
    def f(n: int) -> int:
        return 2 ** (2 ** n)

    def g(n: int) -> int:
        return 1 + f(n * (n - 1) // 2)

    return {"f": f(r), "g": g(r), "h": r * g(r) + r}


# -- 2-SAT view: a bitvector set is majority-closed iff it is the model set of its 2-clauses

def _is_median_closed(points: Sequence[int], width: int, bits: np.ndarray | None = None) -> bool:
    pts = set(points)
    if not pts:
        return True
    if bits is None:
        bits = _bits_matrix(sorted(pts), width)
    H = _halfspace_matrix(bits)
    cooc = H.T @ H
    nlit = 2 * width
    # literal 2c+b means "coordinate c equals b"; no point has both L and L'  =>  L -> not L'
    imp = (cooc == 0)
    imp = imp[:, np.arange(nlit) ^ 1]
    for c in range(width):
        imp[2 * c:2 * c + 2, 2 * c:2 * c + 2] = False
        # unit clause: a literal no point satisfies implies its negation
        for b in (0, 1):
            if cooc[2 * c + b, 2 * c + b] == 0:
                imp[2 * c + b, 2 * c + 1 - b] = True
    np.fill_diagonal(imp, True)
    # transitive closure by repeated squaring
    R = imp.astype(np.float32)
    while True:
        R2 = ((R @ R) > 0).astype(np.float32)
        if np.array_equal(R2, R):
            break
        R = R2
    closure = _rows_to_ints(R > 0)
    even = sum(1 << (2 * c) for c in range(width))

    def consistent(assigned: int) -> bool:
        return not (assigned & (assigned >> 1) & even)

    root = 0
    for lit in range(nlit):
        if closure[lit] >> (lit ^ 1) & 1:  # lit implies its own negation
            root |= closure[lit ^ 1]
    if not consistent(root):
        return False
    count = 0
    stack = [root]
    while stack:
        a = stack.pop()
        free = next((c for c in range(width) if not (a >> (2 * c)) & 3), None)
        if free is None:
            p = sum(1 << c for c in range(width) if (a >> (2 * c + 1)) & 1)
            if p not in pts:
                return False
            count += 1
            if count > len(pts):
                return False
            continue
        for b in (1, 0):
            nxt = a | closure[2 * free + b]
            if consistent(nxt):
                stack.append(nxt)
    return count == len(pts)


# -- the algebra ---------------------------------------------------------------

class FinMedAlg:
    """A finite median algebra: a majority-closed set of ``width``-bit points.

    Every coordinate must separate (take both values).  Construction verifies
    this and majority-closure unless ``check=False``.
    """

    def __init__(self, width: int, points: Iterable[int], check: bool = True):
        self.width = int(width)
        self.points: frozenset[int] = frozenset(points)
        self._order: list[int] | None = None
        self._bits = None
        self._cooc = None
        if check:
            ok, why = self.verify_reason()
            if not ok:
                raise MedAlgError(why)

    def __len__(self) -> int:
        return len(self.points)

    def __contains__(self, p: int) -> bool:
        return p in self.points

    def __repr__(self) -> str:
        return f"FinMedAlg(width={self.width}, points={len(self.points)})"

    # -- (de)serialisation -------------------------------------------------

    def fmt(self, p: int) -> str:
        return "".join("1" if (p >> c) & 1 else "0" for c in range(self.width))

    @staticmethod
    def parse_point(s: str) -> int:
        if set(s) - {"0", "1"}:
            raise MedAlgError(f"bad point string {s!r}")
        return sum(1 << i for i, ch in enumerate(s) if ch == "1")

    @classmethod
    def from_strings(cls, pts: Iterable[str], check: bool = True) -> FinMedAlg:
        pts = list(pts)
        widths = {len(s) for s in pts}
        if len(widths) != 1:
            raise MedAlgError("points must all have the same width")
        return cls(widths.pop(), [cls.parse_point(s) for s in pts], check)

    def to_json(self) -> dict:
        return {"width": self.width, "points": [self.fmt(p) for p in self.ordered]}

    @classmethod
    def from_json(cls, data: dict, check: bool = True) -> FinMedAlg:
        if not isinstance(data, dict) or "width" not in data or "points" not in data:
            raise MedAlgError("median algebra JSON needs 'width' and 'points'")
        w = int(data["width"])
        pts = []
        for s in data["points"]:
            if len(s) != w:
                raise MedAlgError(f"point {s!r} does not have width {w}")
            pts.append(cls.parse_point(s))
        return cls(w, pts, check)

    @classmethod
    def load(cls, path: str | Path) -> FinMedAlg:
        try:
            data = json.loads(Path(path).read_text())
        except json.JSONDecodeError as exc:
            raise MedAlgError(f"{path}: invalid JSON ({exc})") from None
        return cls.from_json(data)

    # -- cached views --------------------------------------------------------

    @property
    def ordered(self) -> list[int]:
        if self._order is None:
            self._order = sorted(self.points, key=lambda p: self.fmt(p))
        return self._order

    @property
    def bits(self) -> np.ndarray:
        if self._bits is None:
            self._bits = _bits_matrix(self.ordered, self.width)
        return self._bits

    @property
    def cooc(self) -> np.ndarray:
        """cooc[h, k] = #(h ∩ k) over halfspace indices."""
        if self._cooc is None:
            H = _halfspace_matrix(self.bits)
            self._cooc = (H.T @ H).astype(np.int64)
        return self._cooc

    # -- validation ---------------------------------------------------------

    def verify_reason(self) -> tuple[bool, str]:
        if not self.points:
            return False, "empty point set"
        if any(p >> self.width for p in self.points):
            return False, "a point has bits beyond the width"
        col = self.bits.sum(axis=0)
        for c in range(self.width):
            if col[c] in (0, len(self.points)):
                return False, f"coordinate {c} is constant"
        if not _is_median_closed(self.ordered, self.width, self.bits):
            return False, "not closed under majority"
        return True, "ok"

    def verify(self) -> bool:
        return self.verify_reason()[0]

    def redundant_coordinates(self) -> list[tuple[int, int]]:
        """Pairs of coordinates inducing the same bipartition (the same wall)."""
        seen: dict[bytes, int] = {}
        out = []
        for c in range(self.width):
            col = self.bits[:, c]
            key = col.tobytes() if col[0] else (~col).tobytes()
            if key in seen:
                out.append((seen[key], c))
            else:
                seen[key] = c
        return out

    # -- metric and halfspaces ------------------------------------------------

    @staticmethod
    def dist(p: int, q: int) -> int:
        return popcount(p ^ q)

    def dist_to(self, p: int, A: Iterable[int]) -> int:
        return min(popcount(p ^ a) for a in A)

    def halfspace(self, h: int) -> frozenset[int]:
        c, b = divmod(h, 2)
        return frozenset(p for p in self.points if (p >> c) & 1 == b)

    def subset(self, h: int, k: int) -> bool:
        """h ⊆ k."""
        return self.cooc[h, k ^ 1] == 0

    def transverse(self, h: int, k: int) -> bool:
        C = self.cooc
        return bool(C[h, k] and C[h, k ^ 1] and C[h ^ 1, k] and C[h ^ 1, k ^ 1])

    def relations(self) -> tuple[np.ndarray, np.ndarray]:
        """(sub, trans): sub[h, k] iff k ⊊ h; trans[h, k] iff h, k transverse."""
        C = self.cooc
        flip = np.arange(2 * self.width) ^ 1
        inside = C[flip, :] == 0  # inside[h, k]: h* ∩ k empty, i.e. k ⊆ h
        sub = inside & ~inside.T
        np.fill_diagonal(sub, False)
        pos = C > 0
        trans = pos & pos[flip, :] & pos[:, flip] & pos[flip][:, flip]
        return sub, trans

    def wall_transverse(self) -> np.ndarray:
        """Walls (coordinates) c, d transverse."""
        _, trans = self.relations()
        return trans[0::2, 0::2]

    def rank(self) -> int:
        """Maximal number of pairwise transverse walls."""
        T = self.wall_transverse()
        G = nx.Graph()
        G.add_nodes_from(range(self.width))
        G.add_edges_from(zip(*np.nonzero(np.triu(T, 1))))
        if self.width == 0:
            return 0
        return max(len(c) for c in nx.find_cliques(G))

    def separating(self, A: Iterable[int], B: Iterable[int]) -> int:
        """Mask of coordinates constant on A, constant on B, with different values."""
        A, B = list(A), list(B)
        full = (1 << self.width) - 1
        same = full
        a0, b0 = A[0], B[0]
        for a in A:
            same &= ~(a ^ a0)
        for b in B:
            same &= ~(b ^ b0)
        return same & (a0 ^ b0) & full

    def constant_mask(self, A: Iterable[int]) -> int:
        A = list(A)
        full = (1 << self.width) - 1
        a0 = A[0]
        same = full
        for a in A:
            same &= ~(a ^ a0)
        return same & full

    # -- convexity and gates ---------------------------------------------------

    def hull(self, A: Iterable[int]) -> set[int]:
        """Intersection of all halfspaces containing A."""
        A = list(A)
        mask = self.constant_mask(A)
        want = A[0] & mask
        return {p for p in self.points if p & mask == want}

    def is_convex(self, C: Iterable[int]) -> bool:
        """m(C, C, M) ⊆ C; in a finite median algebra this is C = hull(C)."""
        C = set(C)
        return bool(C) and C <= self.points and self.hull(C) == C

    def gate(self, x: int, C: Iterable[int]) -> int:
        """Gate of x on a convex C: keep x's coordinates where C varies, else C's constant value."""
        C = set(C)
        mask = self.constant_mask(C)
        g = (x & ~mask) | (next(iter(C)) & mask)
        if g not in C:
            raise MedAlgError("gate requested on a non-convex set")
        return g

    def interval(self, x: int, y: int) -> set[int]:
        return {p for p in self.points if maj(x, y, p) == p}

    # -- pentagonal configurations -----------------------------------------------

    def pentagonal_configs(self, limit: int = 64) -> list[tuple[int, ...]]:
        """Ordered 5-tuples (one per rotation class) with all five 3|2 wall sets nonempty."""
        pts = self.ordered
        if len(pts) > limit:
            raise MedAlgError(f"pentagonal search is exhaustive only up to {limit} points")
        full = (1 << self.width) - 1
        splits = [((i - 1) % 5, i, (i + 1) % 5, (i + 2) % 5, (i + 3) % 5) for i in range(5)]
        out = []

        def alive(tup):
            k = len(tup)
            for a1, a2, a3, b1, b2 in splits:
                A = [tup[j] for j in (a1, a2, a3) if j < k]
                B = [tup[j] for j in (b1, b2) if j < k]
                mask = full
                for grp in (A, B):
                    for p in grp:
                        mask &= ~(p ^ grp[0])
                if A and B:
                    mask &= A[0] ^ B[0]
                if not mask:
                    return False
            return True

        def grow(tup, lo):
            if len(tup) == 5:
                out.append(tuple(tup))
                return
            for j, p in enumerate(pts):
                if j <= lo or p in tup:
                    continue
                tup.append(p)
                if alive(tup):
                    grow(tup, lo)
                tup.pop()

        for i, p in enumerate(pts):
            grow([p], i)
        return out

    # -- multi-bridges ------------------------------------------------------------

    def multi_bridge(self, Cs: Sequence[Iterable[int]]) -> tuple[set[int], list[int], list[int]]:
        """(B, parallel coordinates, perpendicular coordinates) of the convex sets Cs."""
        Cs = [set(C) for C in Cs]
        if not Cs:
            raise MedAlgError("multi_bridge needs at least one set")
        for C in Cs:
            if not self.is_convex(C):
                raise MedAlgError("multi_bridge input is not convex")
        const = [self.constant_mask(C) for C in Cs]
        # halfspaces that contain some C_i and meet every C_j
        fixed_mask = 0
        fixed_val = 0
        for c in range(self.width):
            for b in (0, 1):
                contains = any((const[i] >> c) & 1 and ((next(iter(C)) >> c) & 1) == b
                               for i, C in enumerate(Cs))
                meets = all(any(((p >> c) & 1) == b for p in C) for C in Cs)
                if contains and meets:
                    fixed_mask |= 1 << c
                    fixed_val |= b << c
        B = {p for p in self.points if p & fixed_mask == fixed_val}
        par = [c for c in range(self.width) if all(not (m >> c) & 1 for m in const)]
        perp = []
        for c in range(self.width):
            if any((self.separating(Ci, Cj) >> c) & 1 for Ci, Cj in itertools.permutations(Cs, 2)):
                perp.append(c)
        return B, par, perp

    # -- edge-connectedness and weak quasi-convexity --------------------------------

    def edge_connected(self, A: Iterable[int]) -> bool:
        A = set(A)
        if not A:
            return True
        start = next(iter(A))
        seen = {start}
        todo = [start]
        while todo:
            p = todo.pop()
            for c in range(self.width):
                q = p ^ (1 << c)
                if q in A and q not in seen:
                    seen.add(q)
                    todo.append(q)
        return len(seen) == len(A)

    def res_injective(self, A: Iterable[int]) -> bool:
        """No two distinct walls cutting A induce the same bipartition of A."""
        A = sorted(set(A))
        seen = set()
        for c in range(self.width):
            col = tuple((p >> c) & 1 for p in A)
            if len(set(col)) < 2:
                continue
            flip = tuple(1 - b for b in col)
            if col in seen or flip in seen:
                return False
            seen.add(col)
        return True

    def weak_qc_profile(self, A: Iterable[int]) -> dict[int, int]:
        """D ↦ worst d(p, A) over p, a, b with W(p|a) transverse to W(p|b) and D = max(d(a,A), d(b,A))."""
        A = set(A)
        pts = self.ordered
        T = self.wall_transverse()
        trans = [sum(1 << d for d in np.nonzero(T[c])[0]) for c in range(self.width)]
        full = (1 << self.width) - 1
        dA = {p: self.dist_to(p, A) for p in pts}
        prof: dict[int, int] = {}
        for p in pts:
            allowed = {}
            for b in pts:
                w = p ^ b
                mask = full
                c = 0
                while w:
                    if w & 1:
                        mask &= trans[c]
                    w >>= 1
                    c += 1
                allowed[b] = mask
            for a in pts:
                wa = p ^ a
                for b in pts:
                    if wa & ~allowed[b]:
                        continue
                    D = max(dA[a], dA[b])
                    if dA[p] > prof.get(D, -1):
                        prof[D] = dA[p]
        return dict(sorted(prof.items()))

    def hull_distance(self, A: Iterable[int]) -> int:
        """max over p in hull(A) of d(p, A)."""
        A = set(A)
        return max(self.dist_to(p, A) for p in self.hull(A))


# -- staircases ---------------------------------------------------------------------

@dataclass
class StaircaseResult:
    length: int
    exact: bool
    upper: int
    hs: list[int] = field(default_factory=list)
    ks: list[int] = field(default_factory=list)

    def to_json(self, m: FinMedAlg | None = None) -> dict:
        return {"length": self.length, "exact": self.exact, "upper_bound": self.upper,
                "h": [list(divmod(h, 2)) for h in self.hs], "k": [list(divmod(k, 2)) for k in self.ks]}


def is_staircase(m: FinMedAlg, hs: Sequence[int], ks: Sequence[int]) -> bool:
    """Check the defining pattern directly."""
    n = len(hs)
    if n != len(ks) or n == 0:
        return n == len(ks)
    sub, trans = m.relations()
    for i in range(n - 1):
        if not (sub[hs[i], hs[i + 1]] and sub[ks[i], ks[i + 1]] and sub[hs[i], ks[i + 1]]):
            return False
    return all(trans[hs[i], ks[j]] for i in range(n) for j in range(i + 1))


def _layers(T, sub_hh, sub_hk, sub_kk):
    """Boolean layers S_L[h, k]: a staircase of length ≥ L starts with (h, k) (chain conditions only)."""
    f = np.float32
    Shh, Shk, Skk = sub_hh.astype(f), sub_hk.astype(f), sub_kk.astype(f)
    S = T.copy()
    out = [S]
    while S.any():
        A = ((Shh @ S.astype(f)) > 0) & sub_hk
        S = T & ((A.astype(f) @ Skk.T) > 0)
        if S.any():
            out.append(S)
        else:
            break
    return out


def staircase_length(m: FinMedAlg, max_halfspaces: int = 4096) -> StaircaseResult:
    """Longest staircase in m.

    A relaxed layered DP (consecutive conditions only) gives an upper bound.
    The exact value fixes k_1 and keeps only h-candidates transverse to k_1;
    with the chain conditions this is equivalent to the full pattern.  Above
    ``max_halfspaces`` only the bound and a greedy lower bound are returned
    (``exact=False``).
    """
    sub, trans = m.relations()
    nh = 2 * m.width
    if not trans.any():
        return StaircaseResult(0, True, 0)
    relaxed = _layers(trans, sub, sub, sub)
    upper = len(relaxed)
    # level[h, k] = largest L with relaxed S_L[h, k]
    level = np.zeros((nh, nh), dtype=np.int64)
    for L, S in enumerate(relaxed, start=1):
        level[S] = L
    best, witness = 0, ([], [])
    exact = nh <= max_halfspaces
    cand = sorted(range(nh), key=lambda k: -level[:, k].max())
    for k1 in cand:
        if level[:, k1].max() <= best:
            break
        if not exact and best:
            break
        # every h_i is transverse to k_1, and every k_i to some h_i
        H = np.nonzero(trans[:, k1])[0]
        below = np.nonzero(sub[k1] & trans[H].any(axis=0))[0]
        K = np.concatenate(([k1], below))
        lay = _layers(trans[np.ix_(H, K)], sub[np.ix_(H, H)], sub[np.ix_(H, K)], sub[np.ix_(K, K)])
        got = 0
        for L, S in enumerate(lay, start=1):
            if S[:, 0].any():
                got = L
        if got > best:
            best = got
            witness = _trace(lay, H, K, sub, got)
    res = StaircaseResult(best, exact, upper, *witness)
    assert is_staircase(m, res.hs, res.ks)
    return res


def _trace(lay, H, K, sub, n):
    hs, ks = [], []
    i = int(np.nonzero(lay[n - 1][:, 0])[0][0])
    j = 0
    hs.append(int(H[i]))
    ks.append(int(K[j]))
    for L in range(n - 1, 0, -1):
        S = lay[L - 1]
        done = False
        for i2, j2 in zip(*np.nonzero(S)):
            h2, k2 = H[i2], K[j2]
            if sub[hs[-1], h2] and sub[ks[-1], k2] and sub[hs[-1], k2]:
                hs.append(int(h2))
                ks.append(int(k2))
                done = True
                break
        assert done
    return hs, ks


def staircase_brute(m: FinMedAlg) -> int:
    """Exhaustive DFS over the definition (small algebras only)."""
    sub, trans = m.relations()
    nh = 2 * m.width
    best = 0

    def extend(hs, ks):
        nonlocal best
        best = max(best, len(hs))
        for h in range(nh):
            if not sub[hs[-1], h]:
                continue
            for k in range(nh):
                if sub[ks[-1], k] and sub[hs[-1], k] and all(trans[h, kk] for kk in ks + [k]):
                    extend(hs + [h], ks + [k])

    for h in range(nh):
        for k in range(nh):
            if trans[h, k]:
                extend([h], [k])
    return best


# -- constructors -------------------------------------------------------------------

def cube(n: int) -> FinMedAlg:
    return FinMedAlg(n, range(1 << n))


def tree_algebra(parent: Sequence[int | None]) -> FinMedAlg:
    """Vertices of a rooted tree; coordinate e-1 says "below the edge into vertex e"."""
    n = len(parent)
    pts = []
    for v in range(n):
        p, u = 0, v
        while parent[u] is not None:
            p |= 1 << (u - 1)
            u = parent[u]
        pts.append(p)
    return FinMedAlg(n - 1, pts, check=False)


def random_tree(n: int, rng) -> FinMedAlg:
    return tree_algebra([None] + [rng.randrange(v) for v in range(1, n)])


def product(*algs: FinMedAlg) -> FinMedAlg:
    width = sum(a.width for a in algs)
    pts = [0]
    shift = 0
    for a in algs:
        pts = [p | (q << shift) for p in pts for q in a.points]
        shift += a.width
    return FinMedAlg(width, pts, check=False)


def grid_staircase(n: int) -> FinMedAlg:
    """Lattice points 0 ≤ x, y ≤ n above the staircase path y = x - 1.

    Coordinates 0..n-1 are "x ≥ j+1", n..2n-1 are "y ≥ i+1".
    """
    pts = []
    for x in range(n + 1):
        for y in range(n + 1):
            if y >= x - 1:
                p = sum(1 << j for j in range(x)) | sum(1 << (n + i) for i in range(y))
                pts.append(p)
    return FinMedAlg(2 * n, pts)


def pentagon() -> FinMedAlg:
    """Five squares around a vertex: centre, five midpoints e_j, five outer points e_j + e_{j+1}."""
    pts = [0] + [1 << j for j in range(5)] + [(1 << j) | (1 << ((j + 1) % 5)) for j in range(5)]
    return FinMedAlg(5, pts)


def pentagon_outer() -> list[int]:
    return [(1 << j) | (1 << ((j + 1) % 5)) for j in range(5)]


def from_group_points(points, base=None) -> tuple[FinMedAlg, list, list]:
    """Encode a finite convex set of group elements: one coordinate per wall it sees.

    Returns the algebra, the point order (group elements) and the wall order.
    """
    from .medgeom import crossing_list

    pts = sorted(points, key=lambda g: (len(g), g.word))
    if base is None:
        base = pts[0]
    sides = []
    walls: dict = {}
    for q in pts:
        cl = crossing_list(base, q)
        row = []
        for w, _ in cl:
            if w not in walls:
                walls[w] = len(walls)
            row.append(walls[w])
        sides.append(row)
    order = sorted(walls)
    remap = {walls[w]: i for i, w in enumerate(order)}
    ints = [sum(1 << remap[c] for c in row) for row in sides]
    return FinMedAlg(len(order), ints, check=False), pts, order
