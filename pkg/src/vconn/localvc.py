"""Local vertex-cut search and connectivity testing inside expanders."""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable

from .flow import graph_engine
from .graph import Graph, SeparatorResult


@dataclass(frozen=True)
class LocalVCResult:
    """Either ``L`` (with ``|N(L)| < c`` and ``x`` in ``L``) or no local cut."""

    L: frozenset | None

    NONE = "no-local-cut"

    @property
    def found(self) -> bool:
        return self.L is not None


def _bfs_prefix(x: int, neighbors: Callable[[int], Iterable[int]], weight: Callable[[int], int],
                budget: int, banned: frozenset = frozenset()) -> tuple[list[int], bool]:
    """BFS order from x avoiding ``banned``, cut once accumulated weight exceeds budget.

    Returns the visited prefix and whether the search closed off its whole
    component without exceeding the budget.
    """
    order = [x]
    seen = {x} | banned
    total = weight(x)
    if total > budget:
        return order, False
    queue = deque([x])
    while queue:
        u = queue.popleft()
        for w in neighbors(u):
            if w in seen:
                continue
            seen.add(w)
            order.append(w)
            total += weight(w)
            if total > budget:
                return order, False
            queue.append(w)
    return order, True


def _flow_engine(g: Graph, x: int, nu: int, c: int) -> frozenset | None:
    comp = g.component_of(x)
    if len(comp) < g.n:
        return comp
    # any cut with vol(L) <= nu and |S| < c has |L u S| < nu + c, so one of
    # the first nu + c vertices reached from x lies on the far side
    eng = graph_engine(g)
    order = []
    seen = {x}
    queue = deque([x])
    want = nu + c
    while queue and len(order) < want:
        u = queue.popleft()
        for w in g.neighbors(u):
            if w not in seen:
                seen.add(w)
                order.append(w)
                queue.append(w)
                if len(order) >= want:
                    break
    nbr = g.neighbor_set(x)
    for y in order:
        if y in nbr:
            continue
        cut = eng.pair(x, y, c - 1)
        if cut is not None:
            return cut.L
    return None


def _branch_engine(g: Graph, x: int, nu: int, c: int) -> frozenset | None:
    """Exact search: grow the cut side by guessing separator vertices.

    With a guessed partial separator D, the component of x in g - D either
    closes off within the volume budget (a cut) or its budget-exceeding BFS
    prefix contains another separator vertex of any qualifying cut.
    """
    full = g.vertex_set()
    failed: set[frozenset] = set()

    def search(D: frozenset) -> frozenset | None:
        if D in failed:
            return None
        prefix, closed = _bfs_prefix(x, g.neighbors, g.degree, nu, D)
        if closed:
            L = frozenset(prefix)
            if len(L | g.neighborhood(L)) < len(full):
                return L
        if len(D) < c - 1:
            for v in prefix[1:]:
                got = search(D | {v})
                if got is not None:
                    return got
        failed.add(D)
        return None

    return search(frozenset())


ENGINES = {"flow": _flow_engine, "branch": _branch_engine}


def local_vc(g: Graph, x: int, nu: int, c: int, engine: str = "flow") -> LocalVCResult:
    """Search for a vertex cut (L, S, R) with x in L, vol(L) <= nu and |S| < c.

    ``"no-local-cut"`` certifies that no such cut exists.  A returned ``L``
    always contains ``x`` and has ``|N(L)| < c`` with a nonempty far side.
    The ``"flow"`` engine may return a cut of larger volume; the ``"branch"``
    engine only returns cuts within the volume budget.
    """
    if x not in g:
        raise KeyError(f"unknown vertex {x}")
    if c <= 0 or nu < 0:
        return LocalVCResult(None)
    L = ENGINES[engine](g, x, nu, c)
    return LocalVCResult(L)


def local_volume_bound(c: int, phi: Fraction) -> int:
    """ceil((c/phi)^2 + c^2/phi): the volume of a small side of a cut below c."""
    q = Fraction(c) / phi
    return math.ceil(q * q + Fraction(c * c) / phi)


def expander_connectivity(g: Graph, c: int, phi, engine: str = "flow") -> SeparatorResult:
    """Decide c-connectivity of a graph assumed to be a phi-vertex expander.

    Every returned separator is checked (size below c, disconnects g), so a
    wrong answer can only be a false "connected" on a non-expander.
    """
    phi = Fraction(phi)
    if not 0 < phi < 1:
        raise ValueError("phi must lie in (0, 1)")
    if not g.is_connected():
        return SeparatorResult(frozenset(), c)
    nu = local_volume_bound(c, phi)
    eng = graph_engine(g)
    for x in g.vertices:
        res = local_vc(g, x, nu, c, engine)
        if not res.found:
            continue
        L = res.L
        R = g.vertex_set() - g.closed_neighborhood(L)
        cut = eng.pair(min(L), min(R), c - 1)
        S = cut.S if cut is not None else g.neighborhood(L)
        if len(S) >= c or not g.is_separator(S):
            raise AssertionError("local search produced an invalid separator")
        return SeparatorResult(S, c)
    return SeparatorResult(None, c)
