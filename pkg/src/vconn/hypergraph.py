"""Hypergraphs with union-find hyperedge merging.

A hypergraph stands for the graph obtained by turning every hyperedge into
a clique, so clique insertions become single hyperedges and merging
hyperedges takes the union of their cliques.  Incidences are stored as
``(vertex, generation)`` pairs: deleting a vertex bumps nothing eagerly,
and a re-added vertex gets a fresh generation so stale memberships vanish.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable

from .flow import CutEngine, SplitNetwork
from .graph import Graph, VertexCut
from .localvc import _bfs_prefix


class MergableHypergraph:
    def __init__(self, vertices: Iterable[int] = ()):
        self._parent: list[int] = []
        self._members: list[list[tuple[int, int]]] = []
        self._alive: list[bool] = []
        self._gen: dict[int, int] = {}
        self._present: set[int] = set()
        self._inc: dict[int, list[int]] = {}
        self._version = 0
        self._cache: tuple | None = None
        for v in vertices:
            self.add_vertex(v)

    @classmethod
    def from_graph(cls, g: Graph) -> "MergableHypergraph":
        h = cls(g.vertices)
        for u, v in g.edges():
            h.add_hyperedge((u, v))
        return h

    def copy(self) -> "MergableHypergraph":
        h = MergableHypergraph.__new__(MergableHypergraph)
        h._parent = self._parent[:]
        h._members = [list(m) for m in self._members]
        h._alive = self._alive[:]
        h._gen = dict(self._gen)
        h._present = set(self._present)
        h._inc = {v: list(x) for v, x in self._inc.items()}
        h._version = 0
        h._cache = None
        return h

    def _touch(self) -> None:
        self._version += 1
        self._cache = None

    # union-find
    def find(self, e: int) -> int:
        root = e
        parent = self._parent
        while parent[root] != root:
            root = parent[root]
        while parent[e] != root:
            parent[e], e = root, parent[e]
        return root

    # vertices
    def add_vertex(self, v: int) -> None:
        if v in self._present:
            raise ValueError(f"vertex {v} already present")
        self._gen[v] = self._gen.get(v, -1) + 1
        self._present.add(v)
        self._inc[v] = []
        self._touch()

    def delete_vertex(self, v: int) -> None:
        if v not in self._present:
            raise KeyError(f"unknown vertex {v}")
        self._present.discard(v)
        self._inc[v] = []
        self._touch()

    def has_vertex(self, v: int) -> bool:
        return v in self._present

    @property
    def vertices(self) -> tuple[int, ...]:
        return tuple(sorted(self._present))

    def _valid(self, v: int, gen: int) -> bool:
        return v in self._present and self._gen[v] == gen

    # hyperedges
    def add_hyperedge(self, vs: Iterable[int]) -> int:
        h = len(self._parent)
        self._parent.append(h)
        self._alive.append(True)
        mem = []
        for v in vs:
            if v not in self._present:
                raise KeyError(f"unknown vertex {v}")
            mem.append((v, self._gen[v]))
            self._inc[v].append(h)
        self._members.append(mem)
        self._touch()
        return h

    def delete_hyperedge(self, e: int) -> None:
        self._alive[self.find(e)] = False
        self._touch()

    def add_incidence(self, v: int, e: int) -> None:
        r = self.find(e)
        if not self._alive[r]:
            raise ValueError("hyperedge was deleted")
        self._members[r].append((v, self._gen[v]))
        self._inc[v].append(r)
        self._touch()

    def merge(self, handles: Iterable[int]) -> int:
        """Union the given hyperedges; returns the surviving handle."""
        roots = []
        seen = set()
        for e in handles:
            r = self.find(e)
            if not self._alive[r]:
                raise ValueError("cannot merge a deleted hyperedge")
            if r not in seen:
                seen.add(r)
                roots.append(r)
        if not roots:
            raise ValueError("merge needs at least one hyperedge")
        root = roots[0]
        for r in roots[1:]:
            self._parent[r] = root
            self._members[root].extend(self._members[r])
            self._members[r] = []
        if len(roots) > 1:
            self._touch()
        return root

    def members(self, e: int) -> tuple[int, ...]:
        r = self.find(e)
        if not self._alive[r]:
            return ()
        return tuple(sorted({v for v, gen in self._members[r] if self._valid(v, gen)}))

    def incidences(self, e: int) -> int:
        """Raw incidence count of a hyperedge, parallel incidences included."""
        r = self.find(e)
        return sum(1 for v, gen in self._members[r] if self._valid(v, gen)) if self._alive[r] else 0

    def incident(self, v: int) -> list[int]:
        """Live hyperedges containing v, in first-insertion order."""
        out, seen = [], set()
        for e in self._inc.get(v, ()):
            r = self.find(e)
            if r in seen or not self._alive[r]:
                continue
            seen.add(r)
            out.append(r)
        return out

    def degree(self, v: int) -> int:
        return len(self.incident(v))

    def hyperedges(self) -> list[tuple[int, tuple[int, ...]]]:
        """(handle, members) for every live hyperedge with at least one member."""
        out = []
        for e in range(len(self._parent)):
            if self._parent[e] == e and self._alive[e]:
                mem = self.members(e)
                if mem:
                    out.append((e, mem))
        return out

    @property
    def size(self) -> int:
        return sum(len(m) for _, m in self.hyperedges())

    def volume(self, X: Iterable[int]) -> int:
        return sum(self.degree(v) for v in X)

    # derived views
    def _snapshot(self):
        if self._cache is None:
            nbr: dict[int, set[int]] = {v: set() for v in self._present}
            edges = self.hyperedges()
            for _, mem in edges:
                for v in mem:
                    nbr[v].update(mem)
            for v in nbr:
                nbr[v].discard(v)
            self._cache = (edges, {v: frozenset(s) for v, s in nbr.items()}, None)
        return self._cache

    def neighbor_set(self, v: int) -> frozenset:
        return self._snapshot()[1][v]

    def neighbors(self, v: int) -> list[int]:
        return sorted(self.neighbor_set(v))

    def neighborhood(self, X: Iterable[int]) -> frozenset:
        X = frozenset(X)
        out = set()
        for v in X:
            out |= self.neighbor_set(v)
        return frozenset(out - X)

    def adjacent(self, u: int, v: int) -> bool:
        return v in self.neighbor_set(u)

    def engine(self) -> CutEngine:
        edges, nbr, eng = self._snapshot()
        if eng is None:
            net = SplitNetwork(self.vertices, extra_nodes=len(edges))
            base = 2 * len(self.vertices)
            for j, (_, mem) in enumerate(edges):
                net.add_hyperedge(base + j, mem)
            eng = CutEngine(net, self.adjacent)
            self._cache = (edges, nbr, eng)
        return eng

    def component_masks(self, allowed: int, index: dict[int, int]) -> list[int]:
        """Components of the sub-hypergraph on the vertex bitmask ``allowed``."""
        emasks = self._cache_masks(index)
        comps = []
        rest = allowed
        while rest:
            low = rest & -rest
            reach = low
            grew = True
            while grew:
                grew = False
                for em in emasks:
                    if em & reach:
                        new = em & allowed
                        if new & ~reach:
                            reach |= new
                            grew = True
            comps.append(reach)
            rest &= ~reach
        return comps

    def _cache_masks(self, index: dict[int, int]) -> list[int]:
        edges = self._snapshot()[0]
        masks = []
        for _, mem in edges:
            b = 0
            for v in mem:
                b |= 1 << index[v]
            masks.append(b)
        return masks

    def __repr__(self) -> str:
        return f"MergableHypergraph(n={len(self._present)}, hyperedges={len(self.hyperedges())})"


def hyper_clique(h: MergableHypergraph) -> Graph:
    nbr = {v: set(h.neighbor_set(v)) for v in h.vertices}
    return Graph._from_sets(nbr)


def merge(h: MergableHypergraph, handles: Iterable[int]) -> int:
    return h.merge(handles)


def _smallest_terminal(side: frozenset, T: frozenset) -> int:
    cand = side & T
    if not cand:
        raise ValueError("cut side holds no terminal")
    return min(cand)


def _contract(h: MergableHypergraph, hat: frozenset, keep: int, strict: bool) -> MergableHypergraph:
    """Contract ``hat`` into ``keep`` after putting a clique on its boundary."""
    out = h.copy()
    touched = []
    boundary = set()
    for v in sorted(hat):
        for e in out.incident(v):
            if e not in touched:
                touched.append(e)
    for e in touched:
        boundary.update(out.members(e))
    boundary -= hat
    for e in touched:
        out.delete_hyperedge(e)
    for v in sorted(hat):
        out.delete_vertex(v)
    if strict:
        if boundary:
            out.add_hyperedge(sorted(boundary))
    else:
        out.add_vertex(keep)
        out.add_hyperedge([keep] + sorted(boundary))
    return out


def hyper_left_right(h: MergableHypergraph, T: Iterable[int], cut: VertexCut, strict: bool = False):
    """Hypergraph left and right graphs of a min Steiner cut.

    The left side contracts R u (S - T) into the smallest terminal of R;
    the right side is symmetric.  With ``strict`` the contracted vertex is
    closed as well, leaving only the boundary hyperedge.
    """
    T = frozenset(T)
    L, S, R = cut.L, cut.S, cut.R
    t_r = _smallest_terminal(R, T)
    t_l = _smallest_terminal(L, T)
    h_left = _contract(h, R | (S - T), t_r, strict)
    h_right = _contract(h, L | (S - T), t_l, strict)
    return h_left, h_right


def hyper_min_weak_separator(h: MergableHypergraph, A, B, cap: int):
    res = h.engine().weak(A, B, cap)
    return None if res is None else res[1]


def hyper_min_steiner_cut(h: MergableHypergraph, T, cap: int) -> VertexCut | None:
    return h.engine().steiner(T, cap)


def hyper_maximal_isolating_cut(h: MergableHypergraph, t: int, T, cap: int) -> VertexCut | None:
    return h.engine().isolating(t, T, cap, maximal=True)


def hyper_local_cut(h: MergableHypergraph, t: int, c: int, phi) -> tuple[frozenset, frozenset] | None:
    """Minimum |N(L)| over L containing t with |L| <= c/phi and a nonempty far side.

    Returns (L, N(L)) for the minimizer when the minimum is at most c.
    The search guesses boundary vertices: with a partial boundary D fixed,
    a BFS from t avoiding D either closes within the size budget or its
    first budget + 1 vertices contain another boundary vertex of any
    qualifying connected L.  Budgets are tried in increasing order.
    """
    if not h.has_vertex(t):
        raise KeyError(f"unknown vertex {t}")
    bound = int(Fraction(c) / Fraction(phi))
    n = len(h.vertices)

    def search(D: frozenset, k: int, failed: set) -> frozenset | None:
        if D in failed:
            return None
        prefix, closed = _bfs_prefix(t, h.neighbors, lambda v: 1, bound, D)
        if closed:
            L = frozenset(prefix)
            if len(L) + len(h.neighborhood(L)) < n:
                return L
        if len(D) < k:
            for v in prefix[1:]:
                got = search(D | {v}, k, failed)
                if got is not None:
                    return got
        failed.add(D)
        return None

    for k in range(c + 1):
        L = search(frozenset(), k, set())
        if L is not None:
            return L, h.neighborhood(L)
    return None


def split_low_volume(h: MergableHypergraph, L: Iterable[int], S: Iterable[int], T: Iterable[int],
                     phi=None) -> tuple[MergableHypergraph, MergableHypergraph]:
    """Left and right hypergraphs of the cut (L, N(L), rest) without scanning the big side.

    The left hypergraph is built from scratch out of the hyperedges meeting
    L; boundary membership of S-terminals is probed through their
    hyperedges.  The input is modified in place into the right
    hypergraph by merging the hyperedges that meet S - T into one, deleting
    L u (S - T), and wiring the kept terminal and S n T into the merged
    hyperedge.  Returns (left, right) where right is ``h`` itself.
    """
    L, S, T = frozenset(L), frozenset(S), frozenset(T)
    if h.neighborhood(L) != S:
        raise ValueError("S must equal N(L)")
    inner = L | (S & T)
    s_free = S - T
    l_hat = L | s_free
    t_l = _smallest_terminal(L, T)
    far_t = [v for v in T if v not in L and v not in S]
    if not far_t:
        raise ValueError("the far side holds no terminal")
    t_r = min(far_t)

    # left hypergraph
    keep_edges = []
    boundary = set()
    seen = set()
    for s in sorted(S & T):
        for e in h.incident(s):
            mem = h.members(e)
            if any(u not in inner for u in mem):
                boundary.add(s)
            elif e not in seen and not any(u in L for u in mem):
                seen.add(e)
                keep_edges.append(mem)
    for v in sorted(L):
        for e in h.incident(v):
            if e in seen:
                continue
            seen.add(e)
            mem = h.members(e)
            if any(u in s_free for u in mem):
                boundary.update(u for u in mem if u in L)
            else:
                keep_edges.append(mem)
    left = MergableHypergraph(sorted(inner) + [t_r])
    for mem in keep_edges:
        left.add_hyperedge(mem)
    left.add_hyperedge([t_r] + sorted(boundary))

    # right hypergraph, in place
    e1 = []
    for v in sorted(s_free):
        for e in h.incident(v):
            if e not in e1:
                e1.append(e)
    e_hat = [e for e in e1 if not all(u in l_hat for u in h.members(e))]
    doomed = []
    for v in sorted(l_hat):
        for e in h.incident(v):
            if e not in doomed:
                doomed.append(e)
    hub = h.merge(e_hat) if e_hat else None
    for e in doomed:
        if hub is None or h.find(e) != hub:
            h.delete_hyperedge(e)
    for v in sorted(l_hat):
        h.delete_vertex(v)
    h.add_vertex(t_l)
    if hub is None:
        hub = h.add_hyperedge([t_l])
    else:
        h.add_incidence(t_l, hub)
    present = set(h.members(hub))
    for s in sorted(S & T):
        if s not in present:
            h.add_incidence(s, hub)
    return left, h
