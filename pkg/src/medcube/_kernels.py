"""Compiled word kernels for the exhaustive scans (all triples of a ball, μ-sets).

Same algorithms as :mod:`medcube.words` / :mod:`medcube.medgeom`, on int64
arrays.  A word is a row of letter codes plus a length.  ``block[g]`` is the
bitmask of generators that do not commute with ``g`` (including ``g``).
Words are keyed by ``sum((c_i + 1) * B**i)`` with ``B = 2*rank + 1``.
"""
from __future__ import annotations

import numpy as np
from numba import njit, types
from numba.typed import Dict

MAXLEN = 48


@njit(cache=True)
def _reduce(src, n, comm, cox, out):
    k = 0
    for i in range(n):
        s = src[i]
        g = s >> 1
        inv = s if cox else s ^ 1
        j = k - 1
        cancelled = False
        while j >= 0:
            t = out[j]
            h = t >> 1
            if h == g:
                if t == inv:
                    for q in range(j, k - 1):
                        out[q] = out[q + 1]
                    k -= 1
                    cancelled = True
                break
            if not comm[g, h]:
                break
            j -= 1
        if not cancelled:
            out[k] = s
            k += 1
    return k


@njit(cache=True)
def _canonicalize(buf, n, block, out):
    m = n
    for pos in range(n):
        best = -1
        bi = -1
        blocked = 0
        for i in range(m):
            s = buf[i]
            g = s >> 1
            if not (blocked >> g) & 1:
                if best < 0 or s < best:
                    best = s
                    bi = i
            blocked |= block[g]
        out[pos] = best
        for q in range(bi, m - 1):
            buf[q] = buf[q + 1]
        m -= 1
    return n


@njit(cache=True)
def _normalize(src, n, comm, block, cox, tmp, out):
    k = _reduce(src, n, comm, cox, tmp)
    return _canonicalize(tmp, k, block, out)


@njit(cache=True)
def _inverse_into(w, n, cox, out):
    for i in range(n):
        s = w[n - 1 - i]
        out[i] = s if cox else s ^ 1
    return n


@njit(cache=True)
def _initial_mask(w, n, block):
    mask = 0
    blocked = 0
    for i in range(n):
        s = w[i]
        g = s >> 1
        if not (blocked >> g) & 1:
            mask |= 1 << s
        blocked |= block[g]
    return mask


@njit(cache=True)
def _delete_first_gen(w, n, g):
    for i in range(n):
        if (w[i] >> 1) == g:
            for q in range(i, n - 1):
                w[q] = w[q + 1]
            return n - 1
    return n


@njit(cache=True)
def _meet(u, nu, v, nv, block, out):
    """Greedy common-initial-letter extraction; consumes u and v."""
    k = 0
    while True:
        common = _initial_mask(u, nu, block) & _initial_mask(v, nv, block)
        if common == 0:
            return k
        s = 0
        while not (common >> s) & 1:
            s += 1
        out[k] = s
        k += 1
        nu = _delete_first_gen(u, nu, s >> 1)
        nv = _delete_first_gen(v, nv, s >> 1)


@njit(cache=True)
def _key(w, n, base):
    key = 0
    mult = 1
    for i in range(n):
        key += (w[i] + 1) * mult
        mult *= base
    return key


@njit(cache=True)
def _concat(a, na, b, nb, out):
    for i in range(na):
        out[i] = a[i]
    for i in range(nb):
        out[na + i] = b[i]
    return na + nb


@njit(cache=True)
def bfs_table(rank, comm, block, cox, radius):
    """Map key(canonical word) -> BFS layer for B_radius(1)."""
    base = 2 * rank + 1
    letters = np.arange(2 * rank) if not cox else np.arange(0, 2 * rank, 2)
    table = Dict.empty(key_type=types.int64, value_type=types.int64)
    table[0] = 0
    frontier = np.zeros((1, MAXLEN), dtype=np.int64)
    flen = np.zeros(1, dtype=np.int64)
    tmp = np.zeros(MAXLEN, dtype=np.int64)
    cat = np.zeros(MAXLEN, dtype=np.int64)
    out = np.zeros(MAXLEN, dtype=np.int64)
    for d in range(1, radius + 1):
        cap = frontier.shape[0] * letters.shape[0]
        nxt = np.zeros((cap, MAXLEN), dtype=np.int64)
        nlen = np.zeros(cap, dtype=np.int64)
        c = 0
        for i in range(frontier.shape[0]):
            for s in letters:
                n = flen[i]
                for q in range(n):
                    cat[q] = frontier[i, q]
                cat[n] = s
                k = _normalize(cat, n + 1, comm, block, cox, tmp, out)
                key = _key(out, k, base)
                if key not in table:
                    table[key] = d
                    for q in range(k):
                        nxt[c, q] = out[q]
                    nlen[c] = k
                    c += 1
        frontier = nxt[:c]
        flen = nlen[:c]
    return table


@njit(cache=True)
def median_rows(X, nx_, Y, ny, Z, nz, comm, block, cox, M, nm):
    """Greedy medians of row triples (X[i], Y[i], Z[i]) into M / nm."""
    a = np.zeros(MAXLEN, dtype=np.int64)
    u = np.zeros(MAXLEN, dtype=np.int64)
    v = np.zeros(MAXLEN, dtype=np.int64)
    cat = np.zeros(2 * MAXLEN, dtype=np.int64)
    tmp = np.zeros(2 * MAXLEN, dtype=np.int64)
    m = np.zeros(MAXLEN, dtype=np.int64)
    out = np.zeros(2 * MAXLEN, dtype=np.int64)
    for i in range(X.shape[0]):
        na = _inverse_into(X[i], nx_[i], cox, a)
        k = _concat(a, na, Y[i], ny[i], cat)
        nu = _normalize(cat, k, comm, block, cox, tmp, u)
        k = _concat(a, na, Z[i], nz[i], cat)
        nv = _normalize(cat, k, comm, block, cox, tmp, v)
        km = _meet(u, nu, v, nv, block, m)
        k = _concat(X[i], nx_[i], m, km, cat)
        k = _normalize(cat, k, comm, block, cox, tmp, out)
        for q in range(k):
            M[i, q] = out[q]
        nm[i] = k


@njit(cache=True)
def check_all_triples(W, nw, comm, block, cox, table, base):
    """For every x and unordered {y, z} in the ball, verify that the greedy median m
    satisfies d(x,m)+d(m,y)=d(x,y), d(x,m)+d(m,z)=d(x,z), d(y,m)+d(m,z)=d(y,z),
    with all distances read from the BFS table.

    Returns (checked, failures, first failing (x, y, z) or (-1, -1, -1)).
    """
    N = W.shape[0]
    a = np.zeros(MAXLEN, dtype=np.int64)
    cat = np.zeros(2 * MAXLEN, dtype=np.int64)
    tmp = np.zeros(2 * MAXLEN, dtype=np.int64)
    U = np.zeros((N, MAXLEN), dtype=np.int64)
    nu = np.zeros(N, dtype=np.int64)
    du = np.zeros(N, dtype=np.int64)
    uu = np.zeros(MAXLEN, dtype=np.int64)
    vv = np.zeros(MAXLEN, dtype=np.int64)
    m = np.zeros(MAXLEN, dtype=np.int64)
    mc = np.zeros(MAXLEN, dtype=np.int64)
    mi = np.zeros(MAXLEN, dtype=np.int64)
    r = np.zeros(2 * MAXLEN, dtype=np.int64)
    D = np.full((N, N), -1, dtype=np.int64)
    for y in range(N):
        na = _inverse_into(W[y], nw[y], cox, a)
        for z in range(N):
            k = _concat(a, na, W[z], nw[z], cat)
            k = _normalize(cat, k, comm, block, cox, tmp, r)
            D[y, z] = table[_key(r, k, base)]
    checked = 0
    failures = 0
    bad = (-1, -1, -1)
    for x in range(N):
        na = _inverse_into(W[x], nw[x], cox, a)
        for y in range(N):
            k = _concat(a, na, W[y], nw[y], cat)
            nu[y] = _normalize(cat, k, comm, block, cox, tmp, U[y])
            du[y] = D[x, y]
        for y in range(N):
            for z in range(y, N):
                for q in range(nu[y]):
                    uu[q] = U[y, q]
                for q in range(nu[z]):
                    vv[q] = U[z, q]
                km = _meet(uu, nu[y], vv, nu[z], block, m)
                km = _normalize(m, km, comm, block, cox, tmp, mc)
                dxm = table[_key(mc, km, base)]
                ni = _inverse_into(mc, km, cox, mi)
                k = _concat(mi, ni, U[y], nu[y], cat)
                k = _normalize(cat, k, comm, block, cox, tmp, r)
                dmy = table[_key(r, k, base)]
                k = _concat(mi, ni, U[z], nu[z], cat)
                k = _normalize(cat, k, comm, block, cox, tmp, r)
                dmz = table[_key(r, k, base)]
                checked += 1
                if dxm + dmy != du[y] or dxm + dmz != du[z] or dmy + dmz != D[y, z]:
                    failures += 1
                    if bad[0] < 0:
                        bad = (x, y, z)
    return checked, failures, bad


@njit(cache=True)
def mu_keys(W, nw, imask, PW, npw, comm, block, cox, base):
    """Keys of μ(1, φx, φy) over pairs with μ(1, x, y) = 1 (no common initial letter of x, y)."""
    N = W.shape[0]
    seen = Dict.empty(key_type=types.int64, value_type=types.int64)
    uu = np.zeros(MAXLEN, dtype=np.int64)
    vv = np.zeros(MAXLEN, dtype=np.int64)
    m = np.zeros(MAXLEN, dtype=np.int64)
    mc = np.zeros(MAXLEN, dtype=np.int64)
    tmp = np.zeros(MAXLEN, dtype=np.int64)
    for i in range(N):
        for j in range(i, N):
            if imask[i] & imask[j]:
                continue
            for q in range(npw[i]):
                uu[q] = PW[i, q]
            for q in range(npw[j]):
                vv[q] = PW[j, q]
            km = _meet(uu, npw[i], vv, npw[j], block, m)
            km = _normalize(m, km, comm, block, cox, tmp, mc)
            key = _key(mc, km, base)
            if key not in seen:
                seen[key] = km
    return seen


@njit(cache=True)
def fixed_near(W, nw, need, S, ns, img, ilen, comm, block, cox, bound, base):
    """For each g = W[i], the least |h| < need[i] (h over the rows of S, sorted by
    length) with g·h fixed by the substitution ``img`` and |g·h| ≤ bound; -1 if none."""
    N = W.shape[0]
    out = np.full(N, -1, dtype=np.int64)
    memo = Dict.empty(key_type=types.int64, value_type=types.boolean)
    cat = np.zeros(4 * MAXLEN, dtype=np.int64)
    tmp = np.zeros(4 * MAXLEN, dtype=np.int64)
    f = np.zeros(4 * MAXLEN, dtype=np.int64)
    pf = np.zeros(4 * MAXLEN, dtype=np.int64)
    for i in range(N):
        for j in range(S.shape[0]):
            if ns[j] >= need[i]:
                break
            k = _concat(W[i], nw[i], S[j], ns[j], cat)
            nf = _normalize(cat, k, comm, block, cox, tmp, f)
            if nf > bound:
                continue
            key = _key(f, nf, base)
            if key in memo:
                fixed = memo[key]
            else:
                m = 0
                for q in range(nf):
                    s = f[q]
                    for t in range(ilen[s]):
                        cat[m] = img[s, t]
                        m += 1
                npf = _normalize(cat, m, comm, block, cox, tmp, pf)
                fixed = npf == nf
                if fixed:
                    for q in range(nf):
                        if pf[q] != f[q]:
                            fixed = False
                            break
                memo[key] = fixed
            if fixed:
                out[i] = ns[j]
                break
    return out


# -- Python-side helpers ---------------------------------------------------------

def tables(pres):
    n = pres.rank
    comm = np.zeros((n, n), dtype=np.bool_)
    block = np.zeros(n, dtype=np.int64)
    for g in range(n):
        for h in range(n):
            comm[g, h] = pres.commutes[g][h]
            if not pres.commutes[g][h]:
                block[g] |= 1 << h
    return comm, block, pres.is_coxeter


def pack(elements, width: int | None = None):
    width = width or MAXLEN
    W = np.zeros((len(elements), width), dtype=np.int64)
    n = np.zeros(len(elements), dtype=np.int64)
    for i, g in enumerate(elements):
        w = g.word
        if len(w) > width:
            raise ValueError(f"word longer than kernel width {width}")
        W[i, :len(w)] = w
        n[i] = len(w)
    return W, n


def key_base(pres) -> int:
    return 2 * pres.rank + 1


def decode(key: int, pres) -> tuple[int, ...]:
    base = key_base(pres)
    out = []
    while key:
        key, d = divmod(key, base)
        out.append(d - 1)
    return tuple(out)
