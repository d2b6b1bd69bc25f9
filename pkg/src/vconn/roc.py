"""Reducing-or-covering pairs.

A recursion on minimum Steiner cuts contracts one side of each cut onto a
terminal and recurses on both halves.  Small terminal sets are solved
directly by collecting one minimum weak separator per pair of terminal
subsets.  The recursion runs over explicit graphs (the reference) or over
mergeable hypergraphs, and an expander variant walks the right spine with
local cuts.  Leaves of the recursion tree become the non-reducer sets of a
partition; the cuts on the way form the reducer.
"""

from __future__ import annotations

import heapq
import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Iterator

from .expander import expander_decompose
from .flow import graph_engine
from .graph import Graph, VertexCut
from .hypergraph import (MergableHypergraph, hyper_left_right, hyper_local_cut,
                         split_low_volume)

BALANCED = "balanced"
ISOLATING = "isolating"
UNBALANCED = "unbalanced-non-isolating"
BASE = "base"

BASE_SMALL = "small-terminal-set"
BASE_CLIQUE = "terminal-clique"
BASE_NO_CUT = "no-small-steiner-cut"


@dataclass(frozen=True)
class RocConfig:
    """``base_size`` caps the terminal count solved by pair enumeration.

    The default is min(4c^2, 5): pair enumeration costs 4^|T| flows, so the
    literal 4c^2 threshold is only usable for c = 1.
    """

    base_size: int | None = None
    audit: bool = True
    # every finished recursion tree is appended here as a dict, if set
    sink: list | None = field(default=None, compare=False)

    def threshold(self, c: int) -> int:
        b = min(4 * c * c, 5) if self.base_size is None else self.base_size
        return max(1, b)


@dataclass
class TraceNode:
    terminals: frozenset
    vertices: frozenset
    kind: str
    cut: VertexCut | None = None
    C: frozenset = frozenset()
    base: str | None = None
    strict: bool = False
    upgrades: int = 0
    size: int = 0
    left: "TraceNode | None" = None
    right: "TraceNode | None" = None

    @property
    def is_leaf(self) -> bool:
        return self.cut is None

    def as_dict(self) -> dict:
        out = {"branch_kind": self.kind, "terminals": sorted(self.terminals),
               "cut": None if self.cut is None else self.cut.as_dict()}
        if self.base is not None:
            out["base"] = self.base
        if self.left is not None:
            out["left"] = self.left.as_dict()
        if self.right is not None:
            out["right"] = self.right.as_dict()
        return out


@dataclass
class RecursionTrace:
    root: TraceNode

    def nodes(self) -> Iterator[TraceNode]:
        stack = [self.root]
        while stack:
            node = stack.pop()
            yield node
            if node.right is not None:
                stack.append(node.right)
            if node.left is not None:
                stack.append(node.left)

    def leaves(self) -> list[TraceNode]:
        return [v for v in self.nodes() if v.is_leaf]

    def separators(self) -> list[frozenset]:
        return [v.cut.S for v in self.nodes() if not v.is_leaf]

    @property
    def C(self) -> frozenset:
        return frozenset().union(*(v.C for v in self.leaves()))

    def counts(self) -> dict[str, int]:
        out = {BALANCED: 0, ISOLATING: 0, UNBALANCED: 0, BASE: 0}
        for v in self.nodes():
            out[v.kind] += 1
        return out

    def max_size(self) -> int:
        return max(v.size for v in self.nodes())

    def to_json(self) -> str:
        return json.dumps(self.root.as_dict(), sort_keys=True)


@dataclass(frozen=True)
class SeparatorsSetPair:
    separators: tuple
    C: frozenset


@dataclass
class PartitionSetPair:
    Z: frozenset
    X: tuple
    C: frozenset
    trace: RecursionTrace | None = None
    audit: dict = field(default_factory=dict)

    def problems(self, g: Graph) -> list[str]:
        out = []
        seen = set(self.Z)
        for X in self.X:
            if not X:
                out.append("empty non-reducer set")
            if seen & X:
                out.append("sets overlap")
            seen |= X
        if seen != g.vertex_set():
            out.append("sets do not cover the vertex set")
        for X in self.X:
            if not g.neighborhood(X) <= self.Z:
                out.append("reducer does not separate the non-reducer sets")
                break
        return out

    def validate(self, g: Graph) -> "PartitionSetPair":
        bad = self.problems(g)
        if bad:
            raise ValueError("invalid partition-set pair: " + "; ".join(bad))
        return self


# left and right graphs


def _contract_graph(g: Graph, hat: frozenset, keep: int, strict: bool) -> Graph:
    boundary = sorted(g.neighborhood(hat))
    out = g.remove(hat)
    edges = [(a, b) for i, a in enumerate(boundary) for b in boundary[i + 1:]]
    if strict:
        return out.with_edges(edges)
    edges += [(keep, b) for b in boundary]
    return out.with_edges(edges, vertices=[keep])


def _sides(T: frozenset, cut: VertexCut) -> tuple[int, int]:
    if not cut.L & T or not cut.R & T:
        raise ValueError("both sides of the cut need a terminal")
    return min(cut.L & T), min(cut.R & T)


def side_terminals(T: Iterable[int], cut: VertexCut, strict: bool = False) -> tuple[frozenset, frozenset]:
    T = frozenset(T)
    t_l, t_r = _sides(T, cut)
    T_L = T & (cut.L | cut.S)
    T_R = T & (cut.S | cut.R)
    if not strict:
        T_L |= {t_r}
        T_R |= {t_l}
    return T_L, T_R


def steiner_left_right(g: Graph, T: Iterable[int], cut: VertexCut, strict: bool = False):
    """(G_L, T_L, G_R, T_R) for a min Steiner cut.

    G_L puts a clique on N(R u (S - T)) and contracts that set onto the
    smallest terminal of R; G_R is symmetric.  ``strict`` also closes the
    contracted vertex.
    """
    T = frozenset(T)
    t_l, t_r = _sides(T, cut)
    free = cut.S - T
    g_left = _contract_graph(g, cut.R | free, t_r, strict)
    g_right = _contract_graph(g, cut.L | free, t_l, strict)
    T_L, T_R = side_terminals(T, cut, strict)
    return g_left, T_L, g_right, T_R


# instances


class _GraphInstance:
    def __init__(self, g: Graph):
        self.g = g
        self.vertices = g.vertices
        self.size = g.m

    def engine(self):
        return graph_engine(self.g)

    def is_clique(self, T: frozenset) -> bool:
        return self.g.is_clique(T)

    def neighborhood(self, X) -> frozenset:
        return self.g.neighborhood(X)

    def children(self, T, cut, strict):
        g_left, _, g_right, _ = steiner_left_right(self.g, T, cut, strict)
        return _GraphInstance(g_left), _GraphInstance(g_right)


class _HyperInstance:
    def __init__(self, h: MergableHypergraph):
        self.h = h
        self.vertices = h.vertices
        self.size = h.size

    def engine(self):
        return self.h.engine()

    def is_clique(self, T: frozenset) -> bool:
        return all(u in self.h.neighbor_set(v) for v in T for u in T if u != v)

    def neighborhood(self, X) -> frozenset:
        return self.h.neighborhood(X)

    def children(self, T, cut, strict):
        h_left, h_right = hyper_left_right(self.h, T, cut, strict)
        return _HyperInstance(h_left), _HyperInstance(h_right)


# recursion


def _subsets(items: list[int]) -> list[list[int]]:
    return [[items[i] for i in range(len(items)) if m >> i & 1] for m in range(1, 1 << len(items))]


def base_cover(inst, T: frozenset, c: int) -> frozenset:
    """Union of one minimum weak separator of size <= c per pair of nonempty A, B within T.

    The chosen separator is the one closest to A, which is unique and does
    not depend on how the graph is represented.
    """
    eng = inst.engine()
    subs = _subsets(sorted(T))
    C = set()
    for i, A in enumerate(subs):
        for B in subs[i:]:
            res = eng.weak(A, B, c)
            if res is not None:
                C |= res[1]
    return frozenset(C)


def _classify(cut: VertexCut, T: frozenset, c: int) -> str:
    lt, rt = len(cut.L & T), len(cut.R & T)
    if min(lt, rt) == 1:
        return ISOLATING
    if min(lt, rt) >= 4 * c * c:
        return BALANCED
    return UNBALANCED


def _good_isolating(inst, T: frozenset, cut: VertexCut, t: int, max_rounds: int | None = None):
    """Grow a t-isolating min Steiner cut until S is all terminals or isolate(t) rises in G_R."""
    eng = inst.engine()
    k = len(cut.S)
    seed = eng.isolating(t, T, k, maximal=True)
    if seed is not None and len(seed.S) == k and seed.L & T == {t}:
        cut = seed
    rounds = 0
    while not cut.S <= T:
        if max_rounds is not None and rounds >= max_rounds:
            break
        _, right = inst.children(T, cut, False)
        _, T_R = side_terminals(T, cut)
        nxt = right.engine().isolating(t, T_R, k, maximal=True)
        if nxt is None:
            break
        if len(nxt.S) != k:
            raise AssertionError("isolating value dropped in the right graph")
        L = cut.L | (cut.S - T) | nxt.L
        S = nxt.S
        grown = VertexCut(L, S, frozenset(inst.vertices) - L - S)
        if inst.neighborhood(L) != S or not grown.R & T or len(L) <= len(cut.L):
            raise AssertionError("mapped isolating cut is not a larger cut of the parent")
        cut = grown
        rounds += 1
    return cut, rounds


def _roc(inst, T: frozenset, c: int, cfg: RocConfig) -> TraceNode:
    node = TraceNode(T, frozenset(inst.vertices), BASE, size=inst.size)
    if len(T) <= cfg.threshold(c):
        node.base, node.C = BASE_SMALL, base_cover(inst, T, c)
        return node
    if inst.is_clique(T):
        node.base, node.C = BASE_CLIQUE, T
        return node
    cut = inst.engine().steiner(T, c)
    if cut is None:
        node.base, node.C = BASE_NO_CUT, T
        return node
    kind = _classify(cut, T, c)
    strict = False
    if kind == ISOLATING:
        if len(cut.L & T) != 1:
            cut = cut.swapped()
        (t,) = cut.L & T
        cut, node.upgrades = _good_isolating(inst, T, cut, t)
        strict = cut.S <= T
    node.kind, node.cut, node.strict = kind, cut, strict
    left, right = inst.children(T, cut, strict)
    T_L, T_R = side_terminals(T, cut, strict)
    node.left = _roc(left, T_L, c, cfg)
    node.right = _roc(right, T_R, c, cfg)
    return node


def _emit(cfg: RocConfig, trace: RecursionTrace) -> RecursionTrace:
    if cfg.sink is not None:
        cfg.sink.append(trace.root.as_dict())
    return trace


def roc_reference(g: Graph, T: Iterable[int], c: int,
                  config: RocConfig | None = None) -> tuple[SeparatorsSetPair, RecursionTrace]:
    T = frozenset(T)
    if not T <= g.vertex_set():
        raise ValueError("terminals must be vertices")
    cfg = config or RocConfig()
    trace = _emit(cfg, RecursionTrace(_roc(_GraphInstance(g), T, c, cfg)))
    return SeparatorsSetPair(tuple(trace.separators()), trace.C), trace


def extract_partition(trace: RecursionTrace, g_orig: Graph, c: int | None = None) -> PartitionSetPair:
    """Filter V(g_orig) down each root-to-leaf path; leaves give the X_i, cuts give Z.

    Vertices that reappear in a cut elsewhere in the tree are moved to Z.
    With ``c`` given, the neighbor growth at every cut is checked against 3c.
    """
    Z: set[int] = set()
    Xs: list[frozenset] = []
    growth_violations = []
    internal = 0
    stack = [(trace.root, g_orig.vertex_set() & trace.root.vertices)]
    while stack:
        node, core = stack.pop()
        if node.is_leaf:
            Xs.append(core)
            continue
        internal += 1
        cut = node.cut
        Z |= cut.S
        XL, XR = core & cut.L, core & cut.R
        if c is not None:
            grown = len(g_orig.neighborhood(XL)) + len(g_orig.neighborhood(XR))
            if grown > len(g_orig.neighborhood(core)) + 3 * c:
                growth_violations.append(sorted(core))
        stack.append((node.right, XR))
        stack.append((node.left, XL))
    Z = frozenset(Z) & g_orig.vertex_set()
    X = tuple(x - Z for x in Xs if x - Z)
    audit = {
        "internal_nodes": internal,
        "neighbor_growth_violations": growth_violations,
        "boundary_total": sum(len(g_orig.neighborhood(x)) for x in X),
    }
    return PartitionSetPair(Z, X, trace.C & g_orig.vertex_set(), trace, audit)


def roc_few_terminals(g: Graph, T: Iterable[int], c: int, config: RocConfig | None = None) -> PartitionSetPair:
    T = frozenset(T)
    if not T <= g.vertex_set():
        raise ValueError("terminals must be vertices")
    inst = _HyperInstance(MergableHypergraph.from_graph(g))
    cfg = config or RocConfig()
    trace = _emit(cfg, RecursionTrace(_roc(inst, T, c, cfg)))
    return extract_partition(trace, g, c)


# expander spine


class _LocalQueue:
    """Lower bounds on local(t) in a heap; pops a terminal whose bound is tight."""

    def __init__(self, T: Iterable[int]):
        self.lower = {t: 0 for t in T}
        self.heap = [(0, t) for t in sorted(self.lower)]
        self.pops = 0
        self.stale = 0

    def reset(self, T: Iterable[int]) -> None:
        self.lower = {t: 0 for t in T}
        self.heap = [(0, t) for t in sorted(self.lower)]

    def add(self, t: int) -> None:
        self.lower[t] = 0
        heapq.heappush(self.heap, (0, t))

    def pop_min(self, h: MergableHypergraph, T: frozenset, c: int, phi: Fraction):
        while self.heap:
            lv, t = self.heap[0]
            if t not in T or self.lower.get(t) != lv:
                heapq.heappop(self.heap)
                continue
            if lv > c:
                return None
            heapq.heappop(self.heap)
            self.pops += 1
            res = hyper_local_cut(h, t, c, phi)
            val = c + 1 if res is None else len(res[1])
            if val < lv:
                self.stale += 1
            if val > lv:
                self.lower[t] = val
                heapq.heappush(self.heap, (val, t))
                continue
            self.lower[t] = val
            return self._tie_break(h, T, c, phi, val, t, res)
        return None

    def _tie_break(self, h, T, c, phi, k, t, res):
        """Among terminals whose local value is also k, keep the cut with the smallest (S, L)."""
        best = (sorted(res[1]), sorted(res[0]), t, res)
        held = [(k, t)]
        while self.heap and self.heap[0][0] == k:
            lv, u = heapq.heappop(self.heap)
            if u not in T or self.lower.get(u) != lv or u == t:
                continue
            self.pops += 1
            got = hyper_local_cut(h, u, c, phi)
            val = c + 1 if got is None else len(got[1])
            self.lower[u] = val
            held.append((val, u))
            if val == k:
                best = min(best, (sorted(got[1]), sorted(got[0]), u, got))
        for item in held:
            heapq.heappush(self.heap, item)
        return best[2], best[3]


def _expander_upgrade(h: MergableHypergraph, T: frozenset, L: frozenset, S: frozenset, t: int,
                      c: int, phi: Fraction, max_rounds: int) -> tuple[frozenset, frozenset, int, str]:
    """Grow a t-isolating local cut; reports how the loop ended."""
    k = len(S)
    rounds = 0
    while True:
        if S <= T:
            return L, S, rounds, "boundary-all-terminals"
        if rounds >= max_rounds:
            return L, S, rounds, "round-limit"
        trial = h.copy()
        _, right = split_low_volume(trial, L, S, T)
        R = frozenset(h.vertices) - L - S
        T_R = (T & (S | R)) | {t}
        res = hyper_local_cut(right, t, c, phi)
        if res is None or len(res[1]) > k:
            return L, S, rounds, "isolate-increased"
        L2, _ = res
        if L2 & T_R != {t}:
            return L, S, rounds, "not-isolating"
        L_new = L | (S - T) | L2
        S_new = h.neighborhood(L_new)
        if len(S_new) != k:
            raise AssertionError("mapped local cut changed size")
        L, S = L_new, S_new
        rounds += 1


def roc_expander(g: Graph, T: Iterable[int], c: int, phi, config: RocConfig | None = None) -> PartitionSetPair:
    """Expander variant: local cuts find min Steiner cuts, left halves are small.

    The spine keeps one hypergraph that is split in place at every cut.  With
    auditing on, each local minimum is checked against a flow-based minimum
    Steiner cut, and a mismatch raises.
    """
    phi = Fraction(phi)
    T = frozenset(T)
    cfg = config or RocConfig()
    if phi * len(T) < 2 * c:
        return roc_few_terminals(g, T, c, cfg)
    h = MergableHypergraph.from_graph(g)
    queue = _LocalQueue(T)
    max_rounds = int(2 * c / phi)
    audit = {"pops": 0, "stale_bounds": 0, "resets": 0, "upgrade_rounds": 0, "upgrade_outcomes": {},
             "left_vertices": [], "sizes": []}
    root: TraceNode | None = None
    parent: TraceNode | None = None

    def attach(node: TraceNode) -> None:
        nonlocal root
        if parent is None:
            root = node
        else:
            parent.right = node

    while True:
        inst = _HyperInstance(h)
        audit["sizes"].append(h.size)
        # few terminals left, or a base case of the plain recursion
        if phi * len(T) < 2 * c or len(T) <= cfg.threshold(c):
            attach(_roc(inst, T, c, cfg))
            break
        node = TraceNode(T, frozenset(h.vertices), BASE, size=h.size)
        if inst.is_clique(T):
            node.base, node.C = BASE_CLIQUE, T
            attach(node)
            break
        got = queue.pop_min(h, T, c, phi)
        if cfg.audit:
            ref = h.engine().steiner(T, c)
            want = None if ref is None else len(ref.S)
            have = None if got is None else len(got[1][1])
            if want != have:
                audit["resets"] += 1
                queue.reset(T)
                got = queue.pop_min(h, T, c, phi)
                have = None if got is None else len(got[1][1])
                if want != have:
                    raise AssertionError("local cuts disagree with the min Steiner cut; input is not a low-volume expander")
        if got is None:
            node.base, node.C = BASE_NO_CUT, T
            attach(node)
            break
        t, (L, S) = got
        V = frozenset(h.vertices)
        if not (V - L - S) & T:
            raise AssertionError("local cut is not a Steiner cut")
        if L & T == {t}:
            L, S, rounds, outcome = _expander_upgrade(h, T, L, S, t, c, phi, max_rounds)
            node.upgrades = rounds
            audit["upgrade_rounds"] += rounds
            audit["upgrade_outcomes"][outcome] = audit["upgrade_outcomes"].get(outcome, 0) + 1
        cut = VertexCut(L, S, V - L - S)
        kind = _classify(cut, T, c)
        strict = kind == ISOLATING and S <= T
        node.kind, node.cut, node.strict = kind, cut, strict
        attach(node)
        t_l, t_r = _sides(T, cut)
        T_L, T_R = side_terminals(T, cut, strict)
        left, h = split_low_volume(h, L, S, T)
        if strict:
            left.delete_vertex(t_r)
            h.delete_vertex(t_l)
        else:
            queue.add(t_l)
        audit["left_vertices"].append(len(left.vertices))
        node.left = _roc(_HyperInstance(left), T_L, c, cfg)
        parent = node
        T = T_R
    audit["pops"], audit["stale_bounds"] = queue.pops, queue.stale
    out = extract_partition(_emit(cfg, RecursionTrace(root)), g, c)
    out.audit.update(audit)
    return out


# composition


def compose(Z: Iterable[int], pieces: list, g: Graph | None = None) -> PartitionSetPair:
    """Glue per-piece pairs: (pair_i, Y_i, X_i) for a partition {Z, X_1..X_l}.

    With ``g`` the boundary bound is measured and recorded in the audit.
    """
    Z = frozenset(Z)
    Zs = set(Z)
    C = set()
    for pair, _, _ in pieces:
        Zs |= pair.Z
        C |= pair.C
    Zs = frozenset(Zs)
    X = []
    for pair, _, _ in pieces:
        for Q in pair.X:
            if Q - Zs:
                X.append(Q - Zs)
    audit = {}
    if g is not None:
        lhs = sum(len(g.neighborhood(x)) for x in X)
        rhs = 0
        for pair, Y, Xi in pieces:
            gi = g.induced(Y)
            rhs += sum(len(gi.neighborhood(Q)) for Q in pair.X) + len(Y - Xi)
        audit = {"boundary_total": lhs, "boundary_bound": rhs}
    return PartitionSetPair(Zs, tuple(X), frozenset(C), None, audit)


def fast_roc(g: Graph, T: Iterable[int], c: int, phi, config: RocConfig | None = None) -> PartitionSetPair:
    """Decompose into expanders, solve each piece, and compose."""
    phi = Fraction(phi)
    T = frozenset(T)
    cfg = config or RocConfig()
    dec = expander_decompose(g, phi)
    pieces = []
    routes = {"expander": 0, "few-terminals": 0}
    for X, Y, certified in dec.pieces:
        T_i = (T & X) | (Y - X)
        gi = g.induced(Y)
        if certified and phi * len(T_i) >= 2 * c:
            pair = roc_expander(gi, T_i, c, phi, cfg)
            routes["expander"] += 1
        else:
            pair = roc_few_terminals(gi, T_i, c, cfg)
            routes["few-terminals"] += 1
        pieces.append((pair, Y, X))
    out = compose(dec.Z, pieces, g)
    out.audit["routes"] = routes
    out.audit["pieces"] = len(pieces)
    return out
