"""Top level: terminal sparsification and the c-connectivity driver."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable

from .closure import offline_closure_oracle
from .covering import CoveringResult, covering_phi, covering_set_full, default_blowup
from .flow import min_vertex_separator
from .graph import Graph, SeparatorResult
from .localvc import expander_connectivity
from .roc import RocConfig
from .xort import fast_expanders_or_terminals


@dataclass
class SparsifyResult:
    graph: Graph
    terminals: frozenset
    cover: CoveringResult


def vertex_sparsify(g: Graph, T: Iterable[int], c: int, blowup: Callable[[int], int] = default_blowup,
                    phi=None, config: RocConfig | None = None) -> SparsifyResult:
    """Close every vertex outside a covering set of T, then sparsify to c forests."""
    T = frozenset(T)
    if not T <= g.vertex_set():
        raise ValueError("terminals must be vertices")
    if c < 1:
        raise ValueError("c must be at least 1")
    cov = covering_set_full(g, T, c, blowup, phi, config)
    keep = cov.cover | T
    h = offline_closure_oracle(g, g.vertex_set() - keep, c)
    return SparsifyResult(h, T, cov)


@dataclass(frozen=True)
class MainConfig:
    base_factor: int = 100
    blowup: Callable[[int], int] = default_blowup
    phi: Fraction | None = None
    engine: str = "flow"
    roc: RocConfig = field(default_factory=RocConfig)


def _valid(g: Graph, S: frozenset, c: int) -> bool:
    return len(S) < c and S <= g.vertex_set() and g.is_separator(S)


def augment_terminals(g: Graph, T: Iterable[int], c: int) -> frozenset:
    """T plus the c smallest-id neighbors of every terminal."""
    out = set(T)
    for v in T:
        out.update(g.neighbors(v)[:c])
    return frozenset(out)


def main(g: Graph, c: int, config: MainConfig | None = None, stats: dict | None = None) -> SeparatorResult:
    """A separator of size below c, or the certificate that none exists.

    Complete graphs and graphs on at most one vertex have no separator.
    Every separator returned has been checked against the input graph.
    """
    if c < 1:
        raise ValueError("c must be at least 1")
    cfg = config or MainConfig()
    st = stats if stats is not None else {}
    st.update({"levels": 0, "phi": [], "terminals": [], "sizes": [], "fallback_triggered": False,
               "route": None})

    def finish(S: frozenset | None, route: str) -> SeparatorResult:
        if S is not None and not _valid(g, S, c):
            st["fallback_triggered"] = True
            st["route"] = "fallback-invalid-separator"
            return min_vertex_separator(g, c)
        st["route"] = route
        return SeparatorResult(S, c)

    if g.n <= 1:
        return finish(None, "trivial")
    if not g.is_connected():
        return finish(frozenset(), "disconnected")
    if g.is_clique():
        return finish(None, "complete")
    current = g
    while True:
        st["levels"] += 1
        st["sizes"].append([current.n, current.m])
        if current.n <= 1:
            return finish(None, "trivial")
        if not current.is_connected():
            return finish(frozenset(), "disconnected")
        if current.n <= cfg.base_factor * c:
            return finish(min_vertex_separator(current, c).separator, "base")
        v = current.min_degree_vertex()
        if current.degree(v) < c:
            return finish(current.neighbor_set(v), "min-degree")
        phi = cfg.phi if cfg.phi is not None else covering_phi(current.n, c, cfg.blowup)
        st["phi"].append(str(phi))
        xo = fast_expanders_or_terminals(current, c, phi, strict=cfg.phi is None)
        if isinstance(xo, SeparatorResult):
            return finish(xo.separator, "expander-split")
        for piece in xo.expanders:
            res = expander_connectivity(piece.graph, c, piece.phi, cfg.engine)
            if res.found:
                # the recoverability chain is stated for minimum separators
                best = min_vertex_separator(piece.graph, c)
                return finish(best.separator, "expander")
        if not xo.terminals:
            return finish(None, "expander")
        T = augment_terminals(current, xo.terminals, c)
        st["terminals"].append(len(T))
        sp = vertex_sparsify(current, T, c, cfg.blowup, None, cfg.roc)
        if sp.graph.n > current.n / 2:
            st["fallback_triggered"] = True
            res = min_vertex_separator(current, c)
            if res.found and not _valid(g, res.separator, c):
                res = min_vertex_separator(g, c)
            st["route"] = "fallback-no-shrink"
            return SeparatorResult(res.separator, c)
        current = sp.graph
