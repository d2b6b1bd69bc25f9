"""Reduction of c-connectivity to expanders plus a terminal set.

A sparse cut (L, S, R) splits the problem into a left graph, where R is
replaced by a c-clique wired to S, and a right graph, where L is.  The
recursion bottoms out at certified expanders; separator vertices become
terminals whose pairwise connectivity still has to be checked.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .expander import (EXPANDER, REMAINDER, balanced_cut_or_expander,
                       exact_sparse_cut)
from .flow import kappa_pair
from .graph import Graph, SeparatorResult, VertexCut


def _replace_side(g: Graph, keep: frozenset, S: frozenset, gone: frozenset, c: int,
                  drop_ss_edges: bool) -> Graph:
    hub = frozenset(sorted(gone)[:c])
    h = g.induced(keep | S | hub)
    hub_list = sorted(hub)
    extra = [(a, b) for i, a in enumerate(hub_list) for b in hub_list[i + 1:]]
    extra += [(s, k) for s in sorted(S) for k in hub_list]
    h = h.with_edges(extra)
    if drop_ss_edges:
        h = h.without_edges([(u, v) for u in S for v in h.neighbors(u) if v in S and u < v])
    return h


def _check_sides(cut: VertexCut, c: int) -> None:
    if len(cut.L) <= c or len(cut.R) <= c:
        raise ValueError("both sides of the cut must have more than c vertices")


def c_left_graph(g: Graph, cut: VertexCut, c: int, drop_ss_edges: bool = False) -> Graph:
    """Keep L u S, replace R by its c smallest vertices made into a clique joined to S."""
    _check_sides(cut, c)
    return _replace_side(g, cut.L, cut.S, cut.R, c, drop_ss_edges)


def c_right_graph(g: Graph, cut: VertexCut, c: int, drop_ss_edges: bool = False) -> Graph:
    _check_sides(cut, c)
    return _replace_side(g, cut.R, cut.S, cut.L, c, drop_ss_edges)


@dataclass(frozen=True)
class CertifiedExpander:
    graph: Graph
    phi: Fraction


@dataclass
class ExpandersOrTerminalPair:
    expanders: list[CertifiedExpander] = field(default_factory=list)
    terminals: frozenset = frozenset()
    depth: int = 0

    @property
    def total_vertices(self) -> int:
        return sum(e.graph.n for e in self.expanders)


def _pair_fallback(g: Graph, cut: VertexCut, c: int) -> SeparatorResult:
    res = kappa_pair(g, min(cut.L), min(cut.R), c)
    if not res.found:
        raise AssertionError("sparse cut with a side of at most c vertices and no small separator")
    return res


def slow_expanders_or_terminals(g: Graph, c: int, phi, phibar) -> ExpandersOrTerminalPair | SeparatorResult:
    """Reference recursion: split on any phibar-sparse cut until every piece is a phi-expander.

    A separator result is returned only in the degenerate case where a cut
    side has at most c vertices, which cannot happen on connected inputs
    under the parameter constraints.
    """
    phi, phibar = Fraction(phi), Fraction(phibar)
    if c < 1 or not 0 < phi <= Fraction(1, 2 * c) or phibar < phi:
        raise ValueError("need c >= 1, 0 < phi <= 1/(2c) and phibar >= phi")

    def rec(h: Graph, depth: int):
        sc = exact_sparse_cut(h, int(phi * h.n))
        if sc is None or sc.expansion >= phi:
            return ExpandersOrTerminalPair([CertifiedExpander(h, phi)], frozenset(), depth)
        cut = sc.cut.oriented()
        if len(cut.L) <= c:
            return _pair_fallback(h, cut, c)
        left = rec(c_left_graph(h, cut, c), depth + 1)
        if isinstance(left, SeparatorResult):
            return left
        right = rec(c_right_graph(h, cut, c), depth + 1)
        if isinstance(right, SeparatorResult):
            return right
        return ExpandersOrTerminalPair(left.expanders + right.expanders,
                                       left.terminals | right.terminals | cut.S,
                                       max(left.depth, right.depth))

    return rec(g, 0)


def _log2(n: int) -> float:
    return math.log2(n) if n > 1 else 1.0


def fast_expanders_or_terminals(g: Graph, c: int, phi, strict: bool = True) -> ExpandersOrTerminalPair | SeparatorResult:
    """Recursive balanced-cut reduction with early exit on separators below c.

    Balanced cuts recurse on both sides; an unbalanced cut with an expander
    remainder emits the right graph directly.  An unbalanced cut without
    that certificate recurses on both sides as well.  ``strict`` enforces
    phi < 1/(2c log^2 n) and minimum degree at least c.
    """
    phi = Fraction(phi)
    if c < 1 or not 0 < phi < 1:
        raise ValueError("need c >= 1 and 0 < phi < 1")
    if strict:
        if phi * 2 * c * _log2(g.n) ** 2 >= 1:
            raise ValueError("phi must be below 1/(2c log^2 n)")
        if g.min_degree() < c:
            raise ValueError("minimum degree must be at least c")
    phibar = 2 * phi

    def rec(h: Graph, depth: int):
        res = balanced_cut_or_expander(h, phibar)
        if res.regime == EXPANDER:
            return ExpandersOrTerminalPair([CertifiedExpander(h, phibar)], frozenset(), depth)
        cut = res.cut
        if len(cut.S) < c:
            out = kappa_pair(h, min(cut.L), min(cut.R), c)
            if not out.found:
                raise AssertionError("cut below c without a small pair separator")
            return out
        if len(cut.L) <= c:
            return _pair_fallback(h, cut, c)
        left = rec(c_left_graph(h, cut, c, drop_ss_edges=True), depth + 1)
        if isinstance(left, SeparatorResult):
            return left
        if res.regime == REMAINDER:
            right_graph = c_right_graph(h, cut, c)
            return ExpandersOrTerminalPair(left.expanders + [CertifiedExpander(right_graph, phi)],
                                           left.terminals | cut.S, max(left.depth, depth + 1))
        right = rec(c_right_graph(h, cut, c, drop_ss_edges=True), depth + 1)
        if isinstance(right, SeparatorResult):
            return right
        return ExpandersOrTerminalPair(left.expanders + right.expanders,
                                       left.terminals | right.terminals | cut.S,
                                       max(left.depth, right.depth))

    return rec(g, 0)
