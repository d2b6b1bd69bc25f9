"""Unit vertex-capacity flows on the in/out split network.

Every vertex ``v`` becomes two nodes, ``in(v) -> out(v)`` with capacity one,
and every edge ``uv`` becomes two infinite arcs ``out(u) -> in(v)`` and
``out(v) -> in(u)``.  Hypergraphs reuse the same network with one extra node
per hyperedge joined to its members by infinite arcs, so a hyperedge can
never be cut.  All searches are breadth-first in insertion order, which is
sorted by vertex id, so every answer is reproducible.
"""

from __future__ import annotations

from collections import deque
from itertools import combinations
from typing import Callable, Iterable, Sequence

from .graph import Graph, SeparatorResult, VertexCut

INF = 1 << 40


class SplitNetwork:
    """Residual network with unit split arcs and infinite connector arcs."""

    def __init__(self, vertices: Sequence[int], extra_nodes: int = 0):
        self.vertices = list(vertices)
        self.index = {v: i for i, v in enumerate(self.vertices)}
        nv = len(self.vertices)
        self.num_nodes = 2 * nv + extra_nodes
        self.adj: list[list[int]] = [[] for _ in range(self.num_nodes)]
        self.to: list[int] = []
        self.cap0: list[int] = []
        self.split_arc = [self._arc(2 * i, 2 * i + 1, 1) for i in range(nv)]

    def _arc(self, u: int, v: int, cap: int) -> int:
        a = len(self.to)
        self.to.append(v)
        self.cap0.append(cap)
        self.adj[u].append(a)
        self.to.append(u)
        self.cap0.append(0)
        self.adj[v].append(a + 1)
        return a

    def add_edge(self, u: int, v: int) -> None:
        i, j = self.index[u], self.index[v]
        self._arc(2 * i + 1, 2 * j, INF)
        self._arc(2 * j + 1, 2 * i, INF)

    def add_hyperedge(self, node: int, members: Iterable[int]) -> None:
        for v in members:
            i = self.index[v]
            self._arc(2 * i + 1, node, INF)
            self._arc(node, 2 * i, INF)

    def node_in(self, v: int) -> int:
        return 2 * self.index[v]

    def node_out(self, v: int) -> int:
        return 2 * self.index[v] + 1

    # core max-flow with early exit
    def max_flow(self, sources: Sequence[int], sinks: Iterable[int], limit: int,
                 unlimited: Iterable[int] = ()) -> tuple[int, list[int]]:
        """Augment until ``limit + 1`` units flow or no path remains.

        Returns the flow value (``INF`` when an uncuttable path exists) and
        the residual capacity list.
        """
        cap = self.cap0[:]
        for v in unlimited:
            cap[self.split_arc[self.index[v]]] = INF
        sink = bytearray(self.num_nodes)
        for t in sinks:
            sink[t] = 1
        for s in sources:
            if sink[s]:
                return INF, cap
        adj, to, N = self.adj, self.to, self.num_nodes
        flow = 0
        while flow <= limit:
            parent = [-1] * N
            for s in sources:
                parent[s] = -2
            queue = deque(sources)
            hit = -1
            while queue and hit < 0:
                u = queue.popleft()
                for a in adj[u]:
                    if cap[a] > 0:
                        w = to[a]
                        if parent[w] == -1:
                            parent[w] = a
                            if sink[w]:
                                hit = w
                                break
                            queue.append(w)
            if hit < 0:
                break
            bottleneck = INF
            w = hit
            while parent[w] != -2:
                a = parent[w]
                if cap[a] < bottleneck:
                    bottleneck = cap[a]
                w = to[a ^ 1]
            if bottleneck >= INF:
                return INF, cap
            w = hit
            while parent[w] != -2:
                a = parent[w]
                cap[a] -= 1
                cap[a ^ 1] += 1
                w = to[a ^ 1]
            flow += 1
        return flow, cap

    def reachable(self, cap: list[int], sources: Iterable[int]) -> bytearray:
        seen = bytearray(self.num_nodes)
        queue = deque()
        for s in sources:
            if not seen[s]:
                seen[s] = 1
                queue.append(s)
        adj, to = self.adj, self.to
        while queue:
            u = queue.popleft()
            for a in adj[u]:
                if cap[a] > 0 and not seen[to[a]]:
                    seen[to[a]] = 1
                    queue.append(to[a])
        return seen

    def coreachable(self, cap: list[int], sinks: Iterable[int]) -> bytearray:
        """Nodes with a residual path into ``sinks``."""
        seen = bytearray(self.num_nodes)
        queue = deque()
        for t in sinks:
            if not seen[t]:
                seen[t] = 1
                queue.append(t)
        adj, to = self.adj, self.to
        while queue:
            v = queue.popleft()
            for a in adj[v]:
                u = to[a]
                if cap[a ^ 1] > 0 and not seen[u]:
                    seen[u] = 1
                    queue.append(u)
        return seen

    def classify(self, side: bytearray, sources: Iterable[int] = ()) -> tuple[frozenset, frozenset, frozenset]:
        """Turn a source-side node set into a vertex triple (L, S, R).

        A vertex is in L when both its nodes are on the source side, in S when
        only its in-node is, and in R otherwise.  ``sources`` are placed in L.
        """
        forced = set(sources)
        L, S, R = [], [], []
        for i, v in enumerate(self.vertices):
            if v in forced or (side[2 * i] and side[2 * i + 1]):
                L.append(v)
            elif side[2 * i]:
                S.append(v)
            else:
                R.append(v)
        return frozenset(L), frozenset(S), frozenset(R)


def graph_network(g: Graph) -> SplitNetwork:
    net = g.cache().get("split_network")
    if net is None:
        net = SplitNetwork(g.vertices)
        for u, v in g.edges():
            net.add_edge(u, v)
        g.cache()["split_network"] = net
    return net


class CutEngine:
    """Flow queries over a split network plus an adjacency predicate.

    The same engine answers questions for graphs and for hypergraphs; only
    the network and the adjacency test differ.
    """

    def __init__(self, net: SplitNetwork, adjacent: Callable[[int, int], bool]):
        self.net = net
        self.adjacent = adjacent

    @property
    def vertices(self) -> list[int]:
        return self.net.vertices

    def _known(self, X: Iterable[int]) -> frozenset:
        X = frozenset(X)
        for v in X:
            if v not in self.net.index:
                raise KeyError(f"unknown vertex {v}")
        return X

    def weak(self, A: Iterable[int], B: Iterable[int], cap: int):
        """Minimum (A, B)-weak separator of size <= cap, as (value, S) or None."""
        A, B = sorted(self._known(A)), sorted(self._known(B))
        if not A or not B:
            raise ValueError("A and B must be nonempty")
        net = self.net
        value, resid = net.max_flow([net.node_in(a) for a in A], [net.node_out(b) for b in B], cap)
        if value > cap:
            return None
        _, S, _ = net.classify(net.reachable(resid, [net.node_in(a) for a in A]))
        assert len(S) == value
        return value, S

    def pair(self, x: int, y: int, limit: int, maximal: bool = False):
        """Min (x, y)-separator of size <= limit as a cut, or None."""
        if x == y:
            raise ValueError("x and y must differ")
        self._known((x, y))
        if limit < 0 or self.adjacent(x, y):
            return None
        net = self.net
        src, snk = [net.node_out(x)], [net.node_in(y)]
        value, resid = net.max_flow(src, snk, limit, unlimited=(x, y))
        if value > limit:
            return None
        if maximal:
            co = net.coreachable(resid, snk)
            side = bytearray(1 - b for b in co)
        else:
            side = net.reachable(resid, src)
        return VertexCut(*net.classify(side, (x,)))

    def kappa(self, x: int, y: int, cap: int) -> SeparatorResult:
        cut = self.pair(x, y, cap - 1)
        return SeparatorResult(None if cut is None else cut.S, cap)

    def steiner(self, T: Iterable[int], cap: int):
        """Minimum Steiner cut with |S| <= cap, or None.

        Some terminal among the first ``cap + 1`` lies outside any separator
        of size at most ``cap``, so pairing those with every other terminal
        finds a minimum.  Ties: smaller S, then lexicographic S, then L.
        """
        T = sorted(self._known(T))
        if len(T) < 2:
            raise ValueError("a Steiner cut needs at least two terminals")
        best, best_key = None, None
        limit = cap
        for a in T[: cap + 1]:
            for b in T:
                if b == a:
                    continue
                cut = self.pair(a, b, limit)
                if cut is None:
                    continue
                key = (len(cut.S), sorted(cut.S), sorted(cut.L))
                if best_key is None or key < best_key:
                    best, best_key = cut, key
                    limit = len(cut.S)
            if best is not None and not best.S:
                break
        return best

    def isolating(self, t: int, T: Iterable[int], cap: int, maximal: bool = False):
        """Minimum t-isolating Steiner cut with |S| <= cap, or None.

        The cut must keep a terminal in R.  The canonical answer has the
        inclusion-minimal (or, with ``maximal``, inclusion-maximal) L.
        """
        T = self._known(T)
        if t not in T:
            raise ValueError("t must be a terminal")
        others = sorted(T - {t})
        if not others:
            raise ValueError("an isolating cut needs a second terminal")
        net = self.net
        src = [net.node_out(t)]
        sinks = [net.node_out(b) for b in others]
        value, resid = net.max_flow(src, sinks, cap, unlimited=(t,))
        if value > cap:
            return None
        if maximal:
            co = net.coreachable(resid, sinks)
            side = bytearray(1 - b for b in co)
        else:
            side = net.reachable(resid, src)
        cut = VertexCut(*net.classify(side, (t,)))
        if cut.R & T:
            return cut
        # every minimum cut swallows the other terminals into S; force one into R
        best, best_key = None, None
        limit = cap
        for b in others:
            snk = [net.node_out(o) for o in others if o != b] + [net.node_in(b)]
            value, resid = net.max_flow(src, snk, limit, unlimited=(t,))
            if value > limit:
                continue
            if maximal:
                co = net.coreachable(resid, snk)
                side = bytearray(1 - x for x in co)
                cand = VertexCut(*net.classify(side, (t,)))
                key = (value, -len(cand.L), sorted(cand.L))
            else:
                cand = VertexCut(*net.classify(net.reachable(resid, src), (t,)))
                key = (value, len(cand.L), sorted(cand.L))
            if best_key is None or key < best_key:
                best, best_key = cand, key
                limit = value
        return best

    def isolate_value(self, t: int, T: Iterable[int], cap: int) -> int | None:
        cut = self.isolating(t, T, cap)
        return None if cut is None else len(cut.S)


def graph_engine(g: Graph) -> CutEngine:
    eng = g.cache().get("cut_engine")
    if eng is None:
        eng = CutEngine(graph_network(g), g.has_edge)
        g.cache()["cut_engine"] = eng
    return eng


def min_weak_separator(g: Graph, A: Iterable[int], B: Iterable[int], cap: int) -> SeparatorResult:
    """Minimum (A, B)-weak separator when its size is at most ``cap``.

    A weak separator may contain vertices of A and B themselves.
    """
    if cap < 0:
        raise ValueError("cap must be non-negative")
    res = graph_engine(g).weak(A, B, cap)
    return SeparatorResult(None if res is None else res[1], cap)


def mu(g: Graph, A: Iterable[int], B: Iterable[int], cap: int) -> int:
    """min(mu(A, B), cap + 1)."""
    res = graph_engine(g).weak(A, B, cap)
    return cap + 1 if res is None else res[0]


def kappa_pair(g: Graph, x: int, y: int, cap: int) -> SeparatorResult:
    """Minimum (x, y)-separator of size below ``cap`` (x, y excluded)."""
    return graph_engine(g).kappa(x, y, cap)


def min_steiner_cut(g: Graph, T: Iterable[int], cap: int) -> VertexCut | None:
    return graph_engine(g).steiner(T, cap)


def min_isolating_cut(g: Graph, t: int, T: Iterable[int], cap: int, maximal: bool = False) -> VertexCut | None:
    return graph_engine(g).isolating(t, T, cap, maximal)


def min_vertex_separator(g: Graph, cap: int) -> SeparatorResult:
    """Minimum separator of g of size below ``cap`` (flow oracle).

    A separator of size below ``cap`` misses one of the first ``cap``
    vertices, and that vertex has a non-neighbor on the far side, so
    pairs (v_i, w) with i < cap and w a non-neighbor suffice.
    """
    if cap <= 0:
        return SeparatorResult(None, cap)
    if g.n >= 1 and not g.is_connected():
        return SeparatorResult(frozenset(), cap)
    eng = graph_engine(g)
    best: frozenset | None = None
    limit = cap - 1
    verts = g.vertices
    for i, v in enumerate(verts[:cap]):
        nbr = g.neighbor_set(v)
        for w in verts:
            if w == v or w in nbr or w in verts[:i]:
                continue
            cut = eng.pair(v, w, limit)
            if cut is not None:
                best = cut.S
                limit = len(best) - 1
                if limit < 0:
                    return SeparatorResult(best, cap)
    return SeparatorResult(best, cap)


# brute-force oracles


def _reach_mask(masks: list[int], start: int, allowed: int) -> int:
    seen = start & allowed
    frontier = seen
    while frontier:
        nxt = 0
        f = frontier
        while f:
            low = f & -f
            nxt |= masks[low.bit_length() - 1]
            f ^= low
        nxt &= allowed & ~seen
        seen |= nxt
        frontier = nxt
    return seen


def enumerate_weak_separators(g: Graph, A: Iterable[int], B: Iterable[int], cap: int,
                              oracle_limit: int = 16) -> list[frozenset]:
    """All minimum (A, B)-weak separators of size <= cap, by subset enumeration.

    Subsets are visited in lexicographic order by size, so the list is sorted
    that way too.  Returns ``[]`` when the minimum exceeds ``cap``.
    """
    if g.n > oracle_limit and cap > 3:
        raise ValueError(f"instance too large for the enumeration oracle (n={g.n}, cap={cap})")
    A, B = frozenset(A), frozenset(B)
    if not A or not B:
        raise ValueError("A and B must be nonempty")
    idx = g.index()
    masks = g.adjacency_masks()
    am = sum(1 << idx[v] for v in A)
    bm = sum(1 << idx[v] for v in B)
    full = (1 << g.n) - 1
    verts = g.vertices
    for k in range(cap + 1):
        found = []
        for combo in combinations(range(g.n), k):
            sm = 0
            for i in combo:
                sm |= 1 << i
            allowed = full & ~sm
            if not _reach_mask(masks, am, allowed) & bm & allowed:
                found.append(frozenset(verts[i] for i in combo))
        if found:
            return found
    return []
