"""Brute-force oracles built from plain adjacency dicts and bitmasks.

Nothing here imports the package, so every check is a second route to the
answer.
"""

from __future__ import annotations

import random
from itertools import combinations


class Plain:
    """Adjacency over vertices 0..n-1 (or any sorted id list) with bitmask helpers."""

    def __init__(self, vertices, edges):
        self.vs = sorted(vertices)
        self.idx = {v: i for i, v in enumerate(self.vs)}
        self.n = len(self.vs)
        self.adj = {v: set() for v in self.vs}
        for u, v in edges:
            if u != v:
                self.adj[u].add(v)
                self.adj[v].add(u)
        self.masks = [0] * self.n
        for v, ws in self.adj.items():
            for w in ws:
                self.masks[self.idx[v]] |= 1 << self.idx[w]
        self.full = (1 << self.n) - 1

    @classmethod
    def of(cls, g):
        return cls(g.vertices, g.edges())

    def bits(self, X):
        m = 0
        for v in X:
            m |= 1 << self.idx[v]
        return m

    def unbits(self, m):
        return frozenset(self.vs[i] for i in range(self.n) if m >> i & 1)

    def reach(self, start, allowed):
        seen = start & allowed
        frontier = seen
        while frontier:
            nxt = 0
            f = frontier
            while f:
                low = f & -f
                nxt |= self.masks[low.bit_length() - 1]
                f ^= low
            nxt &= allowed & ~seen
            seen |= nxt
            frontier = nxt
        return seen

    def components(self, allowed):
        out = []
        rest = allowed
        while rest:
            comp = self.reach(rest & -rest, allowed)
            out.append(comp)
            rest &= ~comp
        return out

    def is_separator(self, sm):
        return len(self.components(self.full & ~sm)) >= 2

    def nbhd(self, xm):
        out = 0
        for i in range(self.n):
            if xm >> i & 1:
                out |= self.masks[i]
        return out & ~xm


def popcount(m):
    return bin(m).count("1")


def kappa(p: Plain, cap=None):
    """Exact vertex connectivity (n - 1 for complete graphs), optionally capped."""
    top = p.n - 1 if cap is None else min(cap, p.n - 1)
    for k in range(top + 1):
        for combo in combinations(range(p.n), k):
            sm = sum(1 << i for i in combo)
            if p.is_separator(sm):
                return k
    return top if cap is None else min(cap, p.n - 1)


def all_separators_below(p: Plain, c):
    out = []
    for k in range(min(c, p.n)):
        for combo in combinations(range(p.n), k):
            sm = sum(1 << i for i in combo)
            if p.is_separator(sm):
                out.append(p.unbits(sm))
    return out


def separates_weak(p: Plain, sm, am, bm):
    """No path from A - S to B - S avoiding S."""
    allowed = p.full & ~sm
    return p.reach(am & ~sm & allowed, allowed) & bm & ~sm == 0


def min_weak_separators(p: Plain, A, B, cap):
    """(mu, all minimum separators as bitmasks) with mu <= cap, or (None, [])."""
    am, bm = p.bits(A), p.bits(B)
    for k in range(cap + 1):
        found = []
        for combo in combinations(range(p.n), k):
            sm = sum(1 << i for i in combo)
            if separates_weak(p, sm, am, bm):
                found.append(sm)
        if found:
            return k, found
    return None, []


def nonempty_subsets(items):
    items = sorted(items)
    return [frozenset(items[i] for i in range(len(items)) if m >> i & 1) for m in range(1, 1 << len(items))]


def weak_table(p: Plain, T, cap):
    """For every pair of nonempty A, B within T (A before B in mask order): mu <= cap and all minimum separators.

    Candidate separators are visited by size; for each one the terminals
    are labelled by component, and a pair is separated exactly when the
    component labels of A and B are disjoint.  Yields (A, B, mu, seps).
    """
    ts = sorted(T)
    k = len(ts)
    tpos = [p.idx[t] for t in ts]
    size = 1 << k
    best = {}
    for s_size in range(min(cap, p.n) + 1):
        for combo in combinations(range(p.n), s_size):
            sm = 0
            for i in combo:
                sm |= 1 << i
            comps = p.components(p.full & ~sm)
            pc = [0] * k
            for ci, comp in enumerate(comps):
                for j, pos in enumerate(tpos):
                    if comp >> pos & 1:
                        pc[j] |= 1 << ci
            cm = [0] * size
            buckets = {}
            for a in range(1, size):
                low = a & -a
                cm[a] = cm[a ^ low] | pc[low.bit_length() - 1]
                buckets.setdefault(cm[a], []).append(a)
            keys = list(buckets)
            for x in keys:
                for y in keys:
                    if x & y:
                        continue
                    for a in buckets[x]:
                        for b in buckets[y]:
                            if a > b:
                                continue
                            got = best.get((a, b))
                            if got is None:
                                best[(a, b)] = (s_size, [sm])
                            elif got[0] == s_size:
                                got[1].append(sm)
    def unmask(m):
        return frozenset(ts[i] for i in range(k) if m >> i & 1)
    for (a, b), (mu, seps) in sorted(best.items()):
        yield unmask(a), unmask(b), mu, seps


def _split(p, sm, X_masks):
    k = popcount(sm)
    for xm in X_masks:
        closed = xm | p.nbhd(xm)
        if popcount(sm & closed) > k - 1:
            return False
    return True


def _t_hit(p, sm, X_masks, tm, mu_t):
    for xm in X_masks:
        if popcount(sm & xm & ~tm) > mu_t - 1:
            return False
    return True


def roc_partition_failures(p: Plain, T, c, Z, X, C, brittle_only=False):
    """(A, B) pairs where no minimum weak separator is covered, split or T-hit."""
    tm = p.bits(T)
    cm = p.bits(C)
    X_masks = [p.bits(x) for x in X]
    bad = []
    for A, B, mu, seps in weak_table(p, T, c):
        mu_t = min(popcount(s & ~tm) for s in seps)
        ok = False
        for s in seps:
            if s & ~cm == 0:
                ok = True
                break
            if brittle_only and popcount(s & ~tm) != mu_t:
                continue
            if _split(p, s, X_masks) or _t_hit(p, s, X_masks, tm, mu_t):
                ok = True
                break
        if not ok:
            bad.append((sorted(A), sorted(B)))
    return bad


def _splits_in(p, sep_m, s):
    """sep is an (x, y)-separator for some x, y in s - sep."""
    allowed = p.full & ~sep_m
    rest = s & ~sep_m
    while rest:
        low = rest & -rest
        comp = p.reach(low, allowed)
        if rest & ~comp:
            return True
        rest &= ~comp
    return False


def roc_sspair_failures(p: Plain, T, c, separators, C):
    tm = p.bits(T)
    cm = p.bits(C)
    sep_masks = [p.bits(s) for s in separators]
    bad = []
    for A, B, mu, seps in weak_table(p, T, c):
        if any(s & ~cm == 0 for s in seps):
            continue
        mu_t = min(popcount(s & ~tm) for s in seps)
        brittle = [s for s in seps if popcount(s & ~tm) == mu_t]
        ok = any(sp & s & ~tm for s in brittle for sp in sep_masks) or \
            any(_splits_in(p, sp, s) for s in brittle for sp in sep_masks)
        if not ok:
            bad.append((sorted(A), sorted(B)))
    return bad


def covering_failures(p: Plain, T, c, c_t, cover):
    """Pairs with mu <= c and mu^T <= c_T where no minimum separator lies inside cover."""
    tm = p.bits(T)
    km = p.bits(cover)
    bad = []
    for A, B, mu, seps in weak_table(p, T, c):
        if min(popcount(s & ~tm) for s in seps) > c_t:
            continue
        if not any(s & ~km == 0 for s in seps):
            bad.append((sorted(A), sorted(B)))
    return bad


def random_connected(rng: random.Random, n, p_edge):
    while True:
        edges = [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p_edge]
        pl = Plain(range(n), edges)
        if n <= 1 or len(pl.components(pl.full)) == 1:
            return edges


def random_graph(rng: random.Random, n, p_edge):
    return [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p_edge]
