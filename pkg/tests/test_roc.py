import json
import random
from fractions import Fraction

import pytest

from vconn import flow
from vconn.expander import expander_decompose, is_expander, vertex_expansion
from vconn.graph import Graph, VertexCut
from vconn.roc import (BALANCED, BASE_CLIQUE, BASE_SMALL, ISOLATING, UNBALANCED, RocConfig,
                       base_cover, compose, extract_partition, fast_roc, roc_expander,
                       roc_few_terminals, roc_reference, side_terminals, steiner_left_right)
from vconn.roc import _GraphInstance

import oracles
from shapes import bowtie, complete, path

# regression constants for the branch-count audit
BRANCH_A, BRANCH_B = 2, 2


def random_instance(rng, nmin=4, nmax=14, tmax=5):
    n = rng.randint(nmin, nmax)
    g = Graph.from_edges(oracles.random_connected(rng, n, rng.choice([0.25, 0.35, 0.5])), n)
    T = frozenset(rng.sample(range(n), rng.randint(1, min(n, tmax))))
    return g, T, rng.randint(1, 3)


def expansion_phi(g):
    """The graph's own expansion, so it is certified at that value."""
    e = vertex_expansion(g)
    return Fraction(g.n - 1, g.n) if e is None else min(e, Fraction(g.n - 1, g.n))


def partition_key(P):
    return P.Z, frozenset(P.X), P.C


def check_roc(g, T, c, P):
    P.validate(g)
    p = oracles.Plain.of(g)
    assert not oracles.roc_partition_failures(p, T, c, P.Z, P.X, P.C)
    assert not oracles.roc_partition_failures(p, T, c, P.Z, P.X, P.C, brittle_only=True)


# left and right graphs


def test_steiner_left_right_path():
    gl, T_L, gr, T_R = steiner_left_right(path(5), {0, 4}, VertexCut({0, 1}, {2}, {3, 4}))
    # R u (S - T) = {2, 3, 4} has boundary {1}; it contracts onto 4
    assert gl == Graph([0, 1, 4], [(0, 1), (1, 4)])
    assert gr == Graph([0, 3, 4], [(0, 3), (3, 4)])
    assert T_L == {0, 4} and T_R == {0, 4}


def test_steiner_left_right_strict_closes_contracted_vertex():
    g = bowtie()
    cut = VertexCut({0, 1}, {2}, {3, 4})
    gl, T_L, _, _ = steiner_left_right(g, {0, 2, 4}, cut, strict=True)
    assert gl == complete(3) and T_L == {0, 2}
    assert side_terminals({0, 2, 4}, cut) == ({0, 2, 4}, {0, 2, 4})


def test_steiner_left_right_needs_terminals_on_both_sides():
    with pytest.raises(ValueError):
        steiner_left_right(path(5), {0, 1}, VertexCut({0, 1}, {2}, {3, 4}))


@pytest.mark.parametrize("seed", range(4))
def test_left_right_monotone(seed):
    rng = random.Random(seed)
    done = 0
    while done < 10:
        g, T, c = random_instance(rng, 5, 11)
        if len(T) < 2:
            continue
        cut = flow.min_steiner_cut(g, T, 3)
        if cut is None:
            continue
        pg = oracles.Plain.of(g)
        for strict in (False, True):
            gl, _, gr, _ = steiner_left_right(g, T, cut, strict)
            for side in (gl, gr):
                for sep in oracles.all_separators_below(oracles.Plain.of(side), 4):
                    assert pg.is_separator(pg.bits(sep))
        done += 1


def test_brittleness_transfers_to_left_graph():
    rng = random.Random(11)
    checked = 0
    for _ in range(150):
        g, T, c = random_instance(rng, 6, 10)
        if len(T) < 3:
            continue
        cut = flow.min_steiner_cut(g, T, c)
        if cut is None:
            continue
        L, S, R = cut.L, cut.S, cut.R
        gl, T_L, _, _ = steiner_left_right(g, T, cut)
        t_r = min(R & T)
        p, pl = oracles.Plain.of(g), oracles.Plain.of(gl)
        tm = p.bits(T)
        for A, B, mu, seps in oracles.weak_table(p, T, c):
            mu_t = min(oracles.popcount(s & ~tm) for s in seps)
            for sm in seps:
                Sp = frozenset(p.unbits(sm))
                if oracles.popcount(sm & ~tm) != mu_t or not Sp & S <= T or not Sp <= L | S:
                    continue
                if not A - Sp or not B - Sp:
                    continue
                off_b = set(g.vertices) - Sp - set(p.unbits(p.reach(p.bits(B - Sp), p.full & ~sm)))
                off_a = set(g.vertices) - Sp - set(p.unbits(p.reach(p.bits(A - Sp), p.full & ~sm)))
                shared = S & Sp
                for far, A2, B2 in ((off_b, (A - R) | shared | {t_r}, (B - R) | shared),
                                    (off_a, (A - R) | shared, (B - R) | shared | {t_r})):
                    # the proof's setting: all of R lands on the side holding the far terminal
                    if not (T & far & R) or not R <= far or not A2 or not B2:
                        continue
                    mu2, seps2 = oracles.min_weak_separators(pl, A2, B2, c)
                    if mu2 is None:
                        continue
                    tl = pl.bits(T_L)
                    mu2_t = min(oracles.popcount(s & ~tl) for s in seps2)
                    for s2 in seps2:
                        # t_R stands for the whole contracted side, so it has no vertex image in g
                        if oracles.popcount(s2 & ~tl) != mu2_t or s2 & pl.bits({t_r}):
                            continue
                        back = p.bits(pl.unbits(s2))
                        assert back in seps and oracles.popcount(back & ~tm) == mu_t
                        checked += 1
    assert checked > 20


# reference recursion


def test_reference_small_terminal_set_collects_all_pairs():
    rng = random.Random(3)
    for _ in range(10):
        g, T, c = random_instance(rng, 4, 10, 4)
        ss, trace = roc_reference(g, T, c, RocConfig(base_size=5))
        assert ss.separators == () and trace.root.base == BASE_SMALL
        p = oracles.Plain.of(g)
        want = set()
        for A, B, mu, seps in oracles.weak_table(p, T, c):
            assert any(s & ~p.bits(ss.C) == 0 for s in seps)
            res = flow.min_weak_separator(g, A, B, c)
            want |= res.separator
        assert ss.C == want == base_cover(_GraphInstance(g), T, c)


def test_reference_terminal_clique():
    ss, trace = roc_reference(complete(7), range(7), 1)
    assert ss.separators == () and ss.C == frozenset(range(7))
    assert trace.root.base == BASE_CLIQUE


def test_reference_rejects_foreign_terminals():
    with pytest.raises(ValueError):
        roc_reference(path(3), {5}, 1)


def test_extract_partition_bowtie():
    g = bowtie()
    ss, trace = roc_reference(g, {0, 1, 3, 4}, 1, RocConfig(base_size=1))
    P = extract_partition(trace, g, 1)
    P.validate(g)
    assert P.Z == {2}
    assert sorted(map(sorted, P.X)) == [[0, 1], [3, 4]]
    assert trace.root.cut.S == {2}


def test_trace_json_schema():
    sink = []
    g = bowtie()
    _, trace = roc_reference(g, {0, 1, 3, 4}, 1, RocConfig(base_size=1, sink=sink))
    doc = json.loads(trace.to_json())
    assert sink == [doc]
    assert set(doc) >= {"branch_kind", "cut", "terminals"}
    assert set(doc["cut"]) == {"L", "S", "R"}


@pytest.mark.parametrize("seed", range(8))
def test_reference_roc_property(seed):
    rng = random.Random(20 + seed)
    for _ in range(8):
        g, T, c = random_instance(rng)
        cfg = RocConfig(base_size=rng.choice([1, 2, None]))
        ss, trace = roc_reference(g, T, c, cfg)
        p = oracles.Plain.of(g)
        for S in ss.separators:
            assert g.is_separator(S)
        assert not oracles.roc_sspair_failures(p, T, c, ss.separators, ss.C)
        P = extract_partition(trace, g, c)
        check_roc(g, T, c, P)
        assert not P.audit["neighbor_growth_violations"]
        # pairwise separation: no path between different pieces avoiding Z
        allowed = p.full & ~p.bits(P.Z)
        for X in P.X:
            xm = p.bits(X)
            assert p.reach(xm, allowed) == xm or not any(
                p.reach(xm, allowed) & p.bits(Y) for Y in P.X if Y != X)
        counts = trace.counts()
        k = len(T)
        assert counts[BALANCED] <= BRANCH_A * k / c + BRANCH_B
        assert counts[ISOLATING] <= BRANCH_A * k * c + BRANCH_B
        assert counts[UNBALANCED] <= BRANCH_A * k * c + BRANCH_B


@pytest.mark.parametrize("seed", range(6))
def test_few_terminals_matches_reference(seed):
    rng = random.Random(40 + seed)
    for _ in range(10):
        g, T, c = random_instance(rng)
        cfg = RocConfig(base_size=rng.choice([1, 2, None]))
        few = roc_few_terminals(g, T, c, cfg)
        ref = extract_partition(roc_reference(g, T, c, cfg)[1], g, c)
        assert (few.Z, few.X, few.C) == (ref.Z, ref.X, ref.C)
        assert few.trace.max_size() <= few.trace.root.size == 2 * g.m
        check_roc(g, T, c, few)


def test_few_terminals_complete_graph():
    P = roc_few_terminals(complete(8), range(8), 2)
    assert P.trace.root.base == BASE_CLIQUE and P.Z == frozenset()


def expander_instances(rng, count, nmax=14):
    out = []
    while len(out) < count:
        n = rng.randint(6, nmax)
        g = Graph.from_edges(oracles.random_connected(rng, n, rng.choice([0.5, 0.7, 0.85])), n)
        phi = expansion_phi(g)
        c = rng.randint(1, 3)
        T = frozenset(rng.sample(range(n), rng.randint(1, min(n, 5))))
        if phi * len(T) >= 2 * c:
            out.append((g, T, c, phi))
    return out


@pytest.mark.parametrize("seed", range(4))
def test_expander_variant(seed):
    rng = random.Random(60 + seed)
    for g, T, c, phi in expander_instances(rng, 6):
        assert is_expander(g, phi)
        P = roc_expander(g, T, c, phi)
        check_roc(g, T, c, P)
        ref = extract_partition(roc_reference(g, T, c)[1], g, c)
        assert partition_key(P) == partition_key(ref)
        assert P.audit["stale_bounds"] == 0
        counts = P.trace.counts()
        assert counts[ISOLATING] + counts[UNBALANCED] <= BRANCH_A * len(T) * c + BRANCH_B


def test_expander_variant_many_terminals():
    """Larger terminal sets push the spine past the base case."""
    rng = random.Random(5)
    done = 0
    while done < 8:
        n = rng.randint(9, 12)
        g = Graph.from_edges(oracles.random_connected(rng, n, rng.choice([0.3, 0.45, 0.6])), n)
        c, phi = rng.choice([(1, Fraction(1, 4)), (2, Fraction(1, 2)), (1, Fraction(1, 3))])
        if not is_expander(g, phi) or int(2 * c / phi) > n:
            continue
        k = int(2 * c / phi)
        T = frozenset(rng.sample(range(n), rng.randint(k, min(n, k + 2))))
        cfg = RocConfig(base_size=rng.choice([1, 2, None]))
        P = roc_expander(g, T, c, phi, cfg)
        check_roc(g, T, c, P)
        ref = extract_partition(roc_reference(g, T, c, cfg)[1], g, c)
        assert partition_key(P) == partition_key(ref)
        assert all(v <= 2 * c / phi for v in P.audit["left_vertices"])
        assert P.audit["stale_bounds"] == 0
        done += 1


def test_expander_variant_delegates_with_few_terminals():
    g = complete(6)
    P = roc_expander(g, {0, 1}, 2, Fraction(1, 4))
    assert partition_key(P) == partition_key(roc_few_terminals(g, {0, 1}, 2))


# composition


def test_compose_single_piece_identity():
    g = bowtie()
    P = roc_few_terminals(g, {0, 4}, 1)
    out = compose(set(), [(P, g.vertex_set(), g.vertex_set())], g)
    assert partition_key(out) == partition_key(P)


def test_compose_bowtie_from_triangles():
    g = bowtie()
    T = frozenset({0, 1, 3, 4})
    pieces = []
    for X in ({0, 1}, {3, 4}):
        Y = frozenset(X | {2})
        T_i = (T & X) | (Y - X)
        pieces.append((roc_few_terminals(g.induced(Y), T_i, 1), Y, frozenset(X)))
    out = compose({2}, pieces, g)
    check_roc(g, T, 1, out)
    assert out.audit["boundary_total"] <= out.audit["boundary_bound"]


@pytest.mark.parametrize("seed", range(6))
def test_fast_roc(seed):
    rng = random.Random(80 + seed)
    for _ in range(8):
        g, T, c = random_instance(rng)
        phi = rng.choice([Fraction(1, 4), Fraction(1, 3), Fraction(1, 2)])
        P = fast_roc(g, T, c, phi)
        check_roc(g, T, c, P)
        assert P.audit["boundary_total"] <= P.audit["boundary_bound"]
        dec = expander_decompose(g, phi)
        assert dec.Z <= P.Z <= g.vertex_set()


def test_fast_roc_single_expander_piece():
    g = complete(6)
    P = fast_roc(g, range(6), 1, Fraction(1, 2))
    assert P.audit["pieces"] == 1 and P.audit["routes"]["expander"] == 1
    check_roc(g, frozenset(range(6)), 1, P)


def test_closure_recursion_glues_children():
    """Child pairs glued through the left and right graphs form a pair for the parent."""
    rng = random.Random(99)
    done = 0
    while done < 12:
        g, T, c = random_instance(rng, 6, 12)
        if len(T) < 3:
            continue
        cut = flow.min_steiner_cut(g, T, c)
        if cut is None:
            continue
        if len(cut.L & T) != 1:
            cut = cut.swapped()
        strict = len(cut.L & T) == 1 and cut.S <= T
        gl, T_L, gr, T_R = steiner_left_right(g, T, cut, strict)
        sl, _ = roc_reference(gl, T_L, c)
        sr, _ = roc_reference(gr, T_R, c)
        seps = sl.separators + (cut.S,) + sr.separators
        C = (sl.C | sr.C) & g.vertex_set()
        bad = oracles.roc_sspair_failures(oracles.Plain.of(g), T, c, seps, C)
        assert not bad
        done += 1
