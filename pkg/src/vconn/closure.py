"""Vertex closure: clique on the neighborhood, then delete the vertex."""

from __future__ import annotations

from typing import Iterable

from .graph import Graph
from .sparsify import ni_sparsify


def _clique_edges(vs: Iterable[int]) -> list[tuple[int, int]]:
    vs = sorted(vs)
    return [(vs[i], vs[j]) for i in range(len(vs)) for j in range(i + 1, len(vs))]


def close_vertex(g: Graph, v: int) -> Graph:
    if v not in g:
        raise KeyError(f"unknown vertex {v}")
    return g.with_edges(_clique_edges(g.neighbors(v))).remove({v})


def close_set(g: Graph, X: Iterable[int]) -> Graph:
    """Close every vertex of X; each component of g[X] contributes one clique on its boundary."""
    X = frozenset(X)
    for v in X:
        if v not in g:
            raise KeyError(f"unknown vertex {v}")
    if not X:
        return g
    inner = g.induced(X)
    extra = []
    for Y in inner.components():
        extra += _clique_edges(g.neighborhood(Y))
    return g.with_edges(extra).remove(X)


def partial_clique_edges(vs: Iterable[int], c: int) -> list[tuple[int, int]]:
    """Edges of a c-partial clique: the c smallest vertices joined to everything."""
    vs = sorted(vs)
    if len(vs) <= c:
        return _clique_edges(vs)
    hubs = vs[:c]
    out = _clique_edges(hubs)
    out += [(h, w) for h in hubs for w in vs[c:]]
    return out


def offline_closure_oracle(g: Graph, X: Iterable[int], c: int) -> Graph:
    """Sparse stand-in for close_set(g, X) that agrees on separators below c.

    Each component of g[X] puts a c-partial clique on its boundary instead
    of a full clique; the result is then sparsified to at most c edges per
    vertex.
    """
    X = frozenset(X)
    extra = []
    if X:
        for Y in g.induced(X).components():
            extra += partial_clique_edges(g.neighborhood(Y), c)
    h = g.with_edges(extra).remove(X)
    return ni_sparsify(h, c)
