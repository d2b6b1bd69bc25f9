"""Immutable simple undirected graphs and vertex-cut value types."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator

VertexSet = frozenset


class Graph:
    """A simple undirected graph on non-negative integer vertex ids.

    Vertex ids live in a global namespace: derived graphs (induced subgraphs,
    closures, left/right graphs) keep the ids of the graph they came from.
    Neighbor tuples are sorted ascending so every traversal is reproducible.
    """

    __slots__ = ("_vertices", "_adj", "_nbr", "_m", "_cache")

    def __init__(self, vertices: Iterable[int] = (), edges: Iterable[tuple[int, int]] = ()):
        vs = set()
        for v in vertices:
            if not isinstance(v, int) or v < 0:
                raise ValueError(f"vertex ids must be non-negative integers, got {v!r}")
            vs.add(v)
        nbr: dict[int, set[int]] = {v: set() for v in vs}
        m = 0
        for u, v in edges:
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            if u not in nbr or v not in nbr:
                raise ValueError(f"edge ({u}, {v}) uses an unknown vertex")
            if v in nbr[u]:
                raise ValueError(f"duplicate edge ({u}, {v})")
            nbr[u].add(v)
            nbr[v].add(u)
            m += 1
        self._vertices = tuple(sorted(vs))
        self._adj = {v: tuple(sorted(nbr[v])) for v in self._vertices}
        self._nbr = {v: frozenset(nbr[v]) for v in self._vertices}
        self._m = m
        self._cache: dict = {}

    @classmethod
    def _from_sets(cls, nbr: dict[int, set[int]]) -> "Graph":
        g = cls.__new__(cls)
        g._vertices = tuple(sorted(nbr))
        g._adj = {v: tuple(sorted(nbr[v])) for v in g._vertices}
        g._nbr = {v: frozenset(nbr[v]) for v in g._vertices}
        g._m = sum(len(s) for s in nbr.values()) // 2
        g._cache = {}
        return g

    @classmethod
    def from_edges(cls, edges: Iterable[tuple[int, int]], n: int | None = None) -> "Graph":
        edges = list(edges)
        if n is None:
            n = 1 + max((max(e) for e in edges), default=-1)
        return cls(range(n), edges)

    @classmethod
    def complete(cls, vertices: Iterable[int]) -> "Graph":
        vs = sorted(set(vertices))
        return cls(vs, [(vs[i], vs[j]) for i in range(len(vs)) for j in range(i + 1, len(vs))])

    # basic accessors
    @property
    def vertices(self) -> tuple[int, ...]:
        return self._vertices

    @property
    def n(self) -> int:
        return len(self._vertices)

    @property
    def m(self) -> int:
        return self._m

    def vertex_set(self) -> frozenset[int]:
        vs = self._cache.get("vset")
        if vs is None:
            vs = self._cache["vset"] = frozenset(self._vertices)
        return vs

    def __contains__(self, v: object) -> bool:
        return v in self._adj

    def __iter__(self) -> Iterator[int]:
        return iter(self._vertices)

    def __len__(self) -> int:
        return len(self._vertices)

    def neighbors(self, v: int) -> tuple[int, ...]:
        try:
            return self._adj[v]
        except KeyError:
            raise KeyError(f"unknown vertex {v}") from None

    def neighbor_set(self, v: int) -> frozenset[int]:
        try:
            return self._nbr[v]
        except KeyError:
            raise KeyError(f"unknown vertex {v}") from None

    def degree(self, v: int) -> int:
        return len(self.neighbors(v))

    def has_edge(self, u: int, v: int) -> bool:
        s = self._nbr.get(u)
        return s is not None and v in s

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in self._vertices for v in self._adj[u] if u < v]

    def min_degree(self) -> int:
        return min((len(a) for a in self._adj.values()), default=0)

    def min_degree_vertex(self) -> int:
        """Smallest-id vertex among those of minimum degree."""
        best = None
        for v in self._vertices:
            if best is None or len(self._adj[v]) < len(self._adj[best]):
                best = v
        if best is None:
            raise ValueError("empty graph")
        return best

    # neighborhoods
    def _check(self, X: Iterable[int]) -> frozenset[int]:
        X = frozenset(X)
        for v in X:
            if v not in self._adj:
                raise KeyError(f"unknown vertex {v}")
        return X

    def neighborhood(self, X: Iterable[int]) -> frozenset[int]:
        """Open neighborhood N(X) = vertices outside X adjacent to X."""
        X = self._check(X)
        out: set[int] = set()
        for v in X:
            out.update(self._adj[v])
        return frozenset(out - X)

    def closed_neighborhood(self, X: Iterable[int]) -> frozenset[int]:
        X = self._check(X)
        return X | self.neighborhood(X)

    def volume(self, X: Iterable[int]) -> int:
        return sum(len(self._adj[v]) for v in self._check(X))

    # derived graphs
    def induced(self, X: Iterable[int]) -> "Graph":
        X = self._check(X)
        return Graph._from_sets({v: set(self._nbr[v] & X) for v in X})

    def remove(self, X: Iterable[int]) -> "Graph":
        X = self._check(X)
        return self.induced(self.vertex_set() - X)

    def with_edges(self, edges: Iterable[tuple[int, int]], vertices: Iterable[int] = ()) -> "Graph":
        """Union with extra edges (and vertices); existing edges are kept once."""
        nbr = {v: set(self._nbr[v]) for v in self._vertices}
        for v in vertices:
            nbr.setdefault(v, set())
        for u, v in edges:
            if u == v:
                continue
            if u not in nbr or v not in nbr:
                raise KeyError(f"edge ({u}, {v}) uses an unknown vertex")
            nbr[u].add(v)
            nbr[v].add(u)
        return Graph._from_sets(nbr)

    def without_edges(self, edges: Iterable[tuple[int, int]]) -> "Graph":
        nbr = {v: set(self._nbr[v]) for v in self._vertices}
        for u, v in edges:
            nbr[u].discard(v)
            nbr[v].discard(u)
        return Graph._from_sets(nbr)

    # connectivity
    def components(self, exclude: Iterable[int] = ()) -> list[frozenset[int]]:
        """Connected components of g - exclude, ordered by smallest vertex."""
        banned = set(exclude)
        seen = set(banned)
        comps = []
        for s in self._vertices:
            if s in seen:
                continue
            seen.add(s)
            comp = [s]
            queue = deque([s])
            while queue:
                u = queue.popleft()
                for w in self._adj[u]:
                    if w not in seen:
                        seen.add(w)
                        comp.append(w)
                        queue.append(w)
            comps.append(frozenset(comp))
        return comps

    def component_of(self, v: int, exclude: Iterable[int] = ()) -> frozenset[int]:
        banned = set(exclude)
        seen = {v}
        queue = deque([v])
        while queue:
            u = queue.popleft()
            for w in self._adj[u]:
                if w not in seen and w not in banned:
                    seen.add(w)
                    queue.append(w)
        return frozenset(seen)

    def is_connected(self) -> bool:
        return self.n <= 1 or len(self.component_of(self._vertices[0])) == self.n

    def is_clique(self, X: Iterable[int] | None = None) -> bool:
        X = self.vertex_set() if X is None else self._check(X)
        return all(len(self._nbr[v] & X) == len(X) - 1 for v in X)

    def is_separator(self, S: Iterable[int]) -> bool:
        """True when g - S has at least two components."""
        return len(self.components(S)) >= 2

    def index(self) -> dict[int, int]:
        idx = self._cache.get("index")
        if idx is None:
            idx = self._cache["index"] = {v: i for i, v in enumerate(self._vertices)}
        return idx

    def adjacency_masks(self) -> list[int]:
        """Neighbor bitmasks indexed by position in ``vertices``."""
        masks = self._cache.get("masks")
        if masks is None:
            idx = self.index()
            masks = []
            for v in self._vertices:
                b = 0
                for w in self._adj[v]:
                    b |= 1 << idx[w]
                masks.append(b)
            self._cache["masks"] = masks
        return masks

    def cache(self) -> dict:
        return self._cache

    # value semantics
    def _key(self):
        return (self._vertices, tuple(self.edges()))

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Graph) and self._key() == other._key()

    def __hash__(self) -> int:
        return hash(self._key())

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"


@dataclass(frozen=True)
class VertexCut:
    """A vertex cut (L, S, R): no edge joins L and R."""

    L: frozenset
    S: frozenset
    R: frozenset

    def __post_init__(self):
        object.__setattr__(self, "L", frozenset(self.L))
        object.__setattr__(self, "S", frozenset(self.S))
        object.__setattr__(self, "R", frozenset(self.R))

    def problems(self, g: Graph) -> list[str]:
        out = []
        L, S, R = self.L, self.S, self.R
        if L & S or L & R or S & R:
            out.append("sides overlap")
        if L | S | R != g.vertex_set():
            out.append("sides do not cover the vertex set")
        if not L:
            out.append("L is empty")
        if not R:
            out.append("R is empty")
        for v in L:
            if v in g and g.neighbor_set(v) & R:
                out.append(f"edge between L and R at {v}")
                break
        return out

    def is_valid(self, g: Graph) -> bool:
        return not self.problems(g)

    def validate(self, g: Graph) -> "VertexCut":
        bad = self.problems(g)
        if bad:
            raise ValueError("invalid vertex cut: " + "; ".join(bad))
        return self

    def swapped(self) -> "VertexCut":
        return VertexCut(self.R, self.S, self.L)

    def oriented(self) -> "VertexCut":
        """The same cut with |L| <= |R| (ties keep the original orientation)."""
        return self.swapped() if len(self.L) > len(self.R) else self

    def as_dict(self) -> dict:
        return {"L": sorted(self.L), "S": sorted(self.S), "R": sorted(self.R)}


@dataclass(frozen=True)
class SeparatorResult:
    """Either a separator or the token asserting nothing exists below ``cap``."""

    separator: frozenset | None
    cap: int

    NONE = "none-below-cap"

    @property
    def found(self) -> bool:
        return self.separator is not None

    def __repr__(self) -> str:
        if self.separator is None:
            return f"SeparatorResult({self.NONE}, cap={self.cap})"
        return f"SeparatorResult({sorted(self.separator)}, cap={self.cap})"


def neighbors_closed(g: Graph, X: Iterable[int]) -> frozenset[int]:
    return g.closed_neighborhood(X)


def expansion(g: Graph, cut: VertexCut) -> Fraction:
    """|S| / min(|L u S|, |S u R|) as an exact rational."""
    cut.validate(g)
    s = len(cut.S)
    return Fraction(s, min(len(cut.L) + s, len(cut.R) + s))


def separates(g: Graph, S: Iterable[int], A: Iterable[int], B: Iterable[int]) -> bool:
    """True when g - S has no path from A - S to B - S."""
    S = frozenset(S)
    A = frozenset(A) - S
    B = frozenset(B) - S
    if not A or not B:
        return True
    if A & B:
        return False
    seen = set(A) | S
    queue = deque(A)
    while queue:
        u = queue.popleft()
        for w in g.neighbors(u):
            if w not in seen:
                if w in B:
                    return False
                seen.add(w)
                queue.append(w)
    return True
