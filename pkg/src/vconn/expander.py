"""Exact sparse-cut search, balanced-cut-or-expander, and expander decomposition.

Everything here enumerates candidate separators exhaustively, so it is only
meant for small graphs or small separator budgets.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Iterator

from .graph import Graph, VertexCut


def _component_masks(masks: list[int], allowed: int) -> list[int]:
    comps = []
    rest = allowed
    while rest:
        low = rest & -rest
        seen = low
        frontier = low
        while frontier:
            nxt = 0
            f = frontier
            while f:
                b = f & -f
                nxt |= masks[b.bit_length() - 1]
                f ^= b
            nxt &= allowed & ~seen
            seen |= nxt
            frontier = nxt
        comps.append(seen)
        rest &= ~seen
    return comps


def _best_split(sizes: list[int]) -> tuple[int, list[int]]:
    """Subset of components whose total is the largest value <= half.

    Returns (total, chosen indices).  Requires at least two components.
    """
    total = sum(sizes)
    half = total // 2
    prefix = [1]
    for s in sizes:
        prefix.append(prefix[-1] | (prefix[-1] << s))
    reach = prefix[-1] & ((1 << (half + 1)) - 1)
    t = reach.bit_length() - 1
    chosen = []
    s = t
    for i in range(len(sizes) - 1, -1, -1):
        if (prefix[i] >> s) & 1:
            continue
        chosen.append(i)
        s -= sizes[i]
    assert s == 0
    return t, sorted(chosen)


@dataclass(frozen=True)
class SparseCut:
    cut: VertexCut
    expansion: Fraction
    balance: int

    @property
    def S(self):
        return self.cut.S


def iter_best_cuts(g: Graph, s_max: int) -> Iterator[SparseCut]:
    """For every separator of size <= s_max (lexicographic by size), its most balanced cut.

    ``balance`` is the smaller side size, and L is that side.
    """
    verts = g.vertices
    masks = g.adjacency_masks()
    full = (1 << g.n) - 1
    for k in range(min(s_max, g.n - 2) + 1):
        for combo in combinations(range(g.n), k):
            sm = 0
            for i in combo:
                sm |= 1 << i
            comps = _component_masks(masks, full & ~sm)
            if len(comps) < 2:
                continue
            sizes = [bin(c).count("1") for c in comps]
            t, chosen = _best_split(sizes)
            lm = 0
            for i in chosen:
                lm |= comps[i]
            rm = full & ~sm & ~lm
            L = frozenset(verts[i] for i in range(g.n) if lm >> i & 1)
            R = frozenset(verts[i] for i in range(g.n) if rm >> i & 1)
            S = frozenset(verts[i] for i in combo)
            yield SparseCut(VertexCut(L, S, R), Fraction(k, k + t), t)


def exact_sparse_cut(g: Graph, s_max: int) -> SparseCut | None:
    """Cut of minimum expansion among separators of size <= s_max.

    Ties prefer larger balance, then the lexicographically smaller S.
    """
    if s_max < 0:
        raise ValueError("s_max must be non-negative")
    best, best_key = None, None
    for sc in iter_best_cuts(g, s_max):
        key = (sc.expansion, -sc.balance, sorted(sc.S))
        if best_key is None or key < best_key:
            best, best_key = sc, key
        if not sc.S:
            break
    return best


def vertex_expansion(g: Graph, s_max: int | None = None) -> Fraction | None:
    """Exact minimum expansion when a cut exists within the budget."""
    sc = exact_sparse_cut(g, g.n if s_max is None else s_max)
    return None if sc is None else sc.expansion


def is_expander(g: Graph, phi) -> bool:
    """No cut of expansion below ``phi`` (any such cut has |S| < phi * n)."""
    phi = Fraction(phi)
    s_max = int(phi * g.n)
    sc = exact_sparse_cut(g, s_max)
    return sc is None or sc.expansion >= phi


def most_balanced_sparse_cut(g: Graph, phi) -> SparseCut | None:
    """phi-sparse cut maximizing min(|L u S|, |R u S|); ties by smaller |S|, then S."""
    phi = Fraction(phi)
    s_max = int(phi * g.n)
    best, best_key = None, None
    for sc in iter_best_cuts(g, s_max):
        if sc.expansion >= phi:
            continue
        key = (-(len(sc.S) + sc.balance), len(sc.S), sorted(sc.S))
        if best_key is None or key < best_key:
            best, best_key = sc, key
    return best


BALANCED = "balanced"
REMAINDER = "unbalanced-expander-remainder"
EXPANDER = "expander"
UNBALANCED = "unbalanced"


@dataclass(frozen=True)
class BalancedCutResult:
    cut: VertexCut | None
    regime: str


def balanced_cut_or_expander(g: Graph, phibar, r: int = 1) -> BalancedCutResult:
    """Most balanced phibar-sparse cut, classified by balance and remainder expansion.

    Regimes: ``expander`` (no phibar-sparse cut), ``balanced`` (both sides
    at least n/3), ``unbalanced-expander-remainder`` (G[R u S] has no
    phibar-sparse cut), and ``unbalanced`` when neither certificate holds.
    The cut is oriented with |L| <= |R|.  ``r`` is accepted and unused.
    """
    phibar = Fraction(phibar)
    if not 0 < phibar <= Fraction(1, 10):
        raise ValueError("phibar must lie in (0, 1/10]")
    sc = most_balanced_sparse_cut(g, phibar)
    if sc is None:
        return BalancedCutResult(None, EXPANDER)
    cut = sc.cut
    n = g.n
    if 3 * (len(cut.L) + len(cut.S)) >= n:
        return BalancedCutResult(cut, BALANCED)
    rest = g.induced(cut.R | cut.S)
    regime = REMAINDER if is_expander(rest, phibar) else UNBALANCED
    return BalancedCutResult(cut, regime)


@dataclass
class ExpanderDecomposition:
    Z: frozenset
    pieces: list[tuple[frozenset, frozenset, bool]] = field(default_factory=list)

    @property
    def boundary_total(self) -> int:
        """Sum over pieces of |Y_i - X_i|."""
        return sum(len(Y - X) for X, Y, _ in self.pieces)

    @property
    def uncovered_z(self) -> frozenset:
        """Vertices of Z adjacent to no X_i."""
        used = frozenset().union(*(Y - X for X, Y, _ in self.pieces)) if self.pieces else frozenset()
        return self.Z - used


def expander_decompose(g: Graph, phi) -> ExpanderDecomposition:
    """Split along most balanced phi-sparse cuts until no sparse cut remains.

    Z collects the separators; X_i are the components of g - Z and
    Y_i = N[X_i].  Each piece is flagged by an exact expansion check of
    G[Y_i] against ``phi``.
    """
    phi = Fraction(phi)
    if not 0 < phi < 1:
        raise ValueError("phi must lie in (0, 1)")
    Z: set[int] = set()
    stack = [g.vertex_set()]
    while stack:
        W = stack.pop()
        sc = most_balanced_sparse_cut(g.induced(W), phi)
        if sc is None:
            continue
        Z |= sc.cut.S
        stack.append(sc.cut.S | sc.cut.R)
        stack.append(sc.cut.L | sc.cut.S)
    Z = frozenset(Z)
    pieces = []
    for X in g.components(Z):
        Y = g.closed_neighborhood(X)
        pieces.append((X, Y, is_expander(g.induced(Y), phi)))
    return ExpanderDecomposition(Z, pieces)
