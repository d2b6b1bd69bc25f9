"""Deterministic graph corpora."""

from __future__ import annotations

import random
from typing import Iterator

from .graph import Graph

# number of connected unlabeled graphs on n vertices, n = 1..8
CONNECTED_COUNTS = (1, 1, 2, 6, 21, 112, 853, 11117)


def _refine(masks: list[int], colors: list[int]) -> list[int]:
    """Color refinement; new colors are ranked by (old color, neighbor color multiset)."""
    n = len(masks)
    while True:
        sigs = []
        for v in range(n):
            m = masks[v]
            nb = []
            while m:
                low = m & -m
                nb.append(colors[low.bit_length() - 1])
                m ^= low
            nb.sort()
            sigs.append((colors[v], tuple(nb)))
        ranked = {s: i for i, s in enumerate(sorted(set(sigs)))}
        new = [ranked[s] for s in sigs]
        if len(ranked) == len(set(colors)):
            return new
        colors = new


def _certificate(masks: list[int], order: list[int]) -> int:
    pos = [0] * len(order)
    for i, v in enumerate(order):
        pos[v] = i
    cert = 0
    for i, v in enumerate(order):
        row = 0
        m = masks[v]
        while m:
            low = m & -m
            row |= 1 << pos[low.bit_length() - 1]
            m ^= low
        cert = (cert << len(order)) | row
    return cert


def canonical_form(masks: list[int]) -> int:
    """Largest adjacency certificate over the individualization-refinement leaves."""
    n = len(masks)
    best = -1
    stack = [_refine(masks, [0] * n)]
    while stack:
        colors = stack.pop()
        if len(set(colors)) == n:
            order = sorted(range(n), key=colors.__getitem__)
            cert = _certificate(masks, order)
            if cert > best:
                best = cert
            continue
        counts: dict[int, int] = {}
        for col in colors:
            counts[col] = counts.get(col, 0) + 1
        target = min(col for col, k in counts.items() if k > 1)
        for v in range(n):
            if colors[v] == target:
                split = [2 * col + (col == target and u != v) for u, col in enumerate(colors)]
                stack.append(_refine(masks, split))
    return best


def _decode(cert: int, n: int) -> list[tuple[int, int]]:
    rows = []
    for _ in range(n):
        rows.append(cert & ((1 << n) - 1))
        cert >>= n
    rows.reverse()
    return [(u, v) for u in range(n) for v in range(u + 1, n) if rows[u] >> v & 1]


def connected_graphs(n: int) -> list[Graph]:
    """Every connected graph on n vertices up to isomorphism, in canonical order.

    A connected graph always has a vertex whose removal keeps it connected,
    so extending each (n-1)-vertex class by one vertex with a nonempty
    neighborhood reaches every class.
    """
    if n < 1:
        return []
    level = {canonical_form([0])}
    for k in range(2, n + 1):
        nxt = set()
        for cert in level:
            masks = [0] * k
            for u, v in _decode(cert, k - 1):
                masks[u] |= 1 << v
                masks[v] |= 1 << u
            for nb in range(1, 1 << (k - 1)):
                ext = masks[:]
                ext[k - 1] = nb
                for u in range(k - 1):
                    if nb >> u & 1:
                        ext[u] |= 1 << (k - 1)
                nxt.add(canonical_form(ext))
        level = nxt
    return [Graph(range(n), _decode(cert, n)) for cert in sorted(level, reverse=True)]


def connected_graphs_upto(n: int) -> Iterator[Graph]:
    for k in range(1, n + 1):
        yield from connected_graphs(k)


def gnp(n: int, p: float, seed: int) -> Graph:
    rng = random.Random(seed)
    edges = [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p]
    return Graph(range(n), edges)


def planted_cut(n: int, cut_size: int, seed: int, p_in: float = 0.3) -> Graph:
    """Two (k+1)-connected halves joined only through k cut vertices, so kappa is exactly k.

    Each half holds a circulant backbone with offsets 1..k+1.  Each cut
    vertex gets k+1 neighbors in each half, so deleting fewer than k
    vertices leaves a cut vertex touching both halves.
    """
    k = cut_size
    if k < 1:
        raise ValueError("cut size must be at least 1")
    a = (n - k) // 2
    b = n - k - a
    need = 2 * (k + 1) + 2
    if a < need or b < need:
        raise ValueError(f"n must be at least {k + 2 * need} for cut size {k}")
    rng = random.Random(seed)
    halves = [list(range(a)), list(range(a, a + b))]
    cut = list(range(a + b, n))
    edges = set()
    for half in halves:
        size = len(half)
        for i in range(size):
            for off in range(1, k + 2):
                u, v = half[i], half[(i + off) % size]
                edges.add((min(u, v), max(u, v)))
        for i in range(size):
            for j in range(i + 1, size):
                if rng.random() < p_in:
                    edges.add((half[i], half[j]))
    for s in cut:
        for half in halves:
            for v in rng.sample(half, k + 1):
                edges.add((min(s, v), max(s, v)))
    perm = list(range(n))
    rng.shuffle(perm)
    return Graph(range(n), sorted((min(perm[u], perm[v]), max(perm[u], perm[v])) for u, v in edges))
