"""Covering sets: vertex sets holding a minimum weak separator for every qualifying terminal pair."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable

from .closure import close_set
from .graph import Graph
from .roc import RocConfig, fast_roc
from .sparsify import ni_sparsify


@dataclass(frozen=True)
class CoveringSpec:
    T: frozenset
    c: int
    c_T: int
    phi: Fraction

    def __post_init__(self):
        object.__setattr__(self, "T", frozenset(self.T))
        object.__setattr__(self, "phi", Fraction(self.phi))
        if self.c < 0 or self.c_T < 0:
            raise ValueError("c and c_T must be non-negative")


@dataclass
class CoveringStats:
    calls: int = 0
    max_depth: int = 0
    roc_sizes: list = field(default_factory=list)


def covering_set(g: Graph, spec: CoveringSpec, config: RocConfig | None = None,
                 stats: CoveringStats | None = None) -> frozenset:
    """Recursive covering set; the result always contains T unless it is empty by definition."""
    if not spec.T <= g.vertex_set():
        raise ValueError("terminals must be vertices")
    stats = stats if stats is not None else CoveringStats()
    return _covering(g, spec.T, spec.c, spec.c_T, spec.phi, config or RocConfig(), stats, 0)


def _covering(g: Graph, T: frozenset, c: int, c_T: int, phi: Fraction, cfg: RocConfig,
              stats: CoveringStats, depth: int) -> frozenset:
    stats.calls += 1
    stats.max_depth = max(stats.max_depth, depth)
    if c_T > c or c == 0:
        return frozenset()
    if c_T == 0:
        return T
    # c + 1 forests keep every weak separator of size <= c
    h = ni_sparsify(g, c + 1)
    pair = fast_roc(h, T, c, phi, cfg)
    out = set(pair.Z | pair.C | T)
    k_total = boundary = 0
    for X in pair.X:
        Y = h.closed_neighborhood(X)
        T_i = (T & X) | h.neighborhood(X)
        k_total += len(T_i)
        boundary += len(T_i - X)
        sub = h.induced(Y)
        out |= _covering(sub, T_i, c - 1, c_T, phi, cfg, stats, depth + 1)
        out |= _covering(sub, T_i, c, c_T - 1, phi, cfg, stats, depth + 1)
    stats.roc_sizes.append({"n": g.n, "T": len(T), "Z": len(pair.Z), "C": len(pair.C),
                            "pieces": len(pair.X), "sum_T_i": k_total,
                            "boundary": boundary, "phi_n": float(phi * g.n),
                            "sum_T_i_bound": (len(T) + boundary) * c * c})
    return frozenset(out)


def default_blowup(c: int) -> int:
    return (c + 2) ** 2


def covering_phi(n: int, c: int, blowup: Callable[[int], int] = default_blowup) -> Fraction:
    """1 / (10 * ceil(log2(n)^2) * B(c))."""
    lg = math.log2(n) if n > 1 else 1.0
    return Fraction(1, 10 * max(1, math.ceil(lg * lg)) * blowup(c))


@dataclass
class CoveringResult:
    cover: frozenset
    rounds: int
    sizes: list
    fallback: bool
    phi: Fraction
    stats: CoveringStats


def covering_set_full(g: Graph, T: Iterable[int], c: int, blowup: Callable[[int], int] = default_blowup,
                      phi=None, config: RocConfig | None = None) -> CoveringResult:
    """Covering set with c_T = c, shrunk by repeating on the closure of the uncovered vertices.

    A round whose output is not at most half the previous size plus
    |T| * B(c) triggers the fallback: the whole vertex set, flagged.
    """
    T = frozenset(T)
    if not T <= g.vertex_set():
        raise ValueError("terminals must be vertices")
    phi = covering_phi(g.n, c, blowup) if phi is None else Fraction(phi)
    target = len(T) * blowup(c)
    stats = CoveringStats()
    cfg = config or RocConfig()
    if c == 0 or not T:
        return CoveringResult(T, 0, [len(T)], False, phi, stats)
    current = g
    cover = g.vertex_set()
    sizes = [len(cover)]
    max_rounds = max(1, math.ceil(math.log2(max(2, g.n)))) + 1
    rounds = 0
    while rounds < max_rounds:
        Z = _covering(current, T, c, c, phi, cfg, stats, 0)
        rounds += 1
        if len(Z) > len(cover) / 2 + target and len(Z) < len(cover):
            return CoveringResult(g.vertex_set(), rounds, sizes + [len(Z)], True, phi, stats)
        if len(Z) >= len(cover):
            break
        cover = Z
        sizes.append(len(Z))
        if len(Z) <= target:
            break
        current = close_set(current, current.vertex_set() - Z)
    return CoveringResult(cover, rounds, sizes, False, phi, stats)
