"""Sparse certificates for small vertex separators via scan-first forests."""

from __future__ import annotations

import heapq

from .graph import Graph


def scan_forest_labels(g: Graph) -> dict[tuple[int, int], int]:
    """Forest index (1-based) of every edge under maximum-adjacency scanning.

    Vertices are scanned in maximum-adjacency order, ties broken by smallest
    id.  When ``u`` is scanned, each unscanned neighbor ``w`` receives the
    edge ``uw`` in forest ``r(w) + 1`` where ``r(w)`` counts its already
    scanned neighbors.  Forest ``i`` is then a maximal spanning forest of
    what remains after forests ``1..i-1``.
    """
    r = {v: 0 for v in g.vertices}
    scanned: set[int] = set()
    heap = [(0, v) for v in g.vertices]
    heapq.heapify(heap)
    labels: dict[tuple[int, int], int] = {}
    while heap:
        negr, u = heapq.heappop(heap)
        if u in scanned or -negr != r[u]:
            continue
        scanned.add(u)
        for w in g.neighbors(u):
            if w in scanned:
                continue
            r[w] += 1
            labels[(min(u, w), max(u, w))] = r[w]
            heapq.heappush(heap, (-r[w], w))
    return labels


def ni_sparsify(g: Graph, c: int, labels: dict | None = None) -> Graph:
    """Union of the first ``c`` scan forests; keeps every vertex.

    The result has at most ``c * n`` edges and the same separators of size
    below ``c`` as ``g``.
    """
    if c < 1:
        raise ValueError("c must be at least 1")
    if labels is None:
        labels = scan_forest_labels(g)
    return Graph(g.vertices, [e for e, i in sorted(labels.items()) if i <= c])
