import math
import random
from fractions import Fraction
from itertools import combinations

import pytest

from vconn.gen import connected_graphs_upto, planted_cut
from vconn.graph import Graph
from vconn.pipeline import MainConfig, augment_terminals, main, vertex_sparsify
from vconn.sparsify import ni_sparsify

import oracles
from shapes import bowtie, cliques_sharing, complete, cycle, star


def weak_values(g, T, c):
    """min(mu(A, B), c) for every pair, keyed by (A, B); absent pairs are at least c."""
    p = oracles.Plain.of(g)
    return {(A, B): mu for A, B, mu, _ in oracles.weak_table(p, T, c - 1)}


def pair_below(p, x, y, c):
    """Some set of fewer than c vertices other than x, y separates them."""
    rest = [v for v in range(p.n) if v not in (x, y)]
    for k in range(c):
        for combo in combinations(rest, k):
            if not p.reach(1 << x, p.full & ~p.bits(combo)) >> y & 1:
                return True
    return False


def check_sparsifier(g, T, c, res):
    h = res.graph
    assert T <= h.vertex_set() <= g.vertex_set()
    assert h.vertex_set() == res.cover.cover | T
    assert h.m <= c * h.n
    assert weak_values(h, T, c) == weak_values(g, T, c)
    pg, ph = oracles.Plain.of(g), oracles.Plain.of(h)
    for sep in oracles.all_separators_below(ph, c):
        assert pg.is_separator(pg.bits(sep))


def test_sparsify_all_terminals():
    rng = random.Random(2)
    g = Graph.from_edges(oracles.random_connected(rng, 10, 0.5), 10)
    res = vertex_sparsify(g, g.vertex_set(), 2)
    assert res.graph.vertex_set() == g.vertex_set()
    assert res.graph.m <= 2 * g.n
    check_sparsifier(g, g.vertex_set(), 2, res)
    assert weak_values(res.graph, range(10), 2) == weak_values(ni_sparsify(g, 2), range(10), 2)


def test_sparsify_rejects_bad_input():
    with pytest.raises(ValueError):
        vertex_sparsify(cycle(4), {9}, 1)
    with pytest.raises(ValueError):
        vertex_sparsify(cycle(4), {0}, 0)


@pytest.mark.parametrize("seed", range(8))
def test_sparsify_equivalence(seed):
    rng = random.Random(seed)
    for _ in range(5):
        n = rng.randint(4, 16)
        g = Graph.from_edges(oracles.random_graph(rng, n, rng.choice([0.2, 0.3, 0.45])), n)
        T = frozenset(rng.sample(range(n), rng.randint(1, min(n, 5))))
        c = rng.randint(1, 3)
        check_sparsifier(g, T, c, vertex_sparsify(g, T, c))


@pytest.mark.parametrize("seed", range(4))
def test_sparsify_keeps_small_terminal_cuts(seed):
    rng = random.Random(30 + seed)
    hits = 0
    for _ in range(6):
        c = rng.randint(2, 3)
        size, shared = rng.randint(5, 7), rng.randint(1, c - 1)
        g = cliques_sharing(size, shared)
        # thin both blobs while keeping minimum degree c
        for e in rng.sample(g.edges(), g.m // 4):
            h = g.without_edges([e])
            if h.min_degree() >= c and h.is_connected():
                g = h
        left = rng.choice(range(size - shared))
        right = rng.choice(range(size, g.n))
        T = frozenset({left, right, rng.randrange(g.n)})
        h = vertex_sparsify(g, augment_terminals(g, T, c), c).graph
        p = oracles.Plain.of(g)
        if any(pair_below(p, x, y, c) for x, y in combinations(sorted(T), 2)):
            assert oracles.all_separators_below(oracles.Plain.of(h), c)
            hits += 1
    assert hits


def test_augment_terminals():
    assert augment_terminals(star(5), {0}, 2) == {0, 1, 2}
    assert augment_terminals(cycle(6), {0, 3}, 1) == {0, 1, 2, 3}


def test_main_complete_graphs():
    for c in (1, 2, 3, 4):
        assert not main(complete(c + 2), c).found
    # small cliques take the min-degree branch unless caught first
    for n, c in [(2, 2), (4, 4), (3, 5)]:
        st = {}
        assert not main(complete(n), c, MainConfig(base_factor=0), st).found
        assert st["route"] == "complete" and not st["fallback_triggered"]


def test_main_low_degree_vertex():
    g = Graph.from_edges([(0, 1), (0, 2), (1, 2), (1, 3), (2, 3), (3, 4), (2, 4), (1, 4), (4, 5), (3, 5)], 6)
    st = {}
    res = main(g, 3, MainConfig(base_factor=0), st)
    # vertices 0 and 5 both have degree 2; the smaller id wins
    assert res.separator == {1, 2} and st["route"] == "min-degree"


def test_main_examples():
    assert main(bowtie(), 2).separator == {2}
    assert not main(cycle(7), 2).found
    assert main(cycle(7), 3).separator is not None
    assert main(Graph.from_edges([(0, 1), (2, 3)], 4), 1).separator == frozenset()
    assert not main(Graph([0], []), 5).found
    with pytest.raises(ValueError):
        main(cycle(4), 0)


def test_main_on_small_corpus():
    for g in connected_graphs_upto(6):
        p = oracles.Plain.of(g)
        k = oracles.kappa(p)
        for c in (1, 2, 3):
            for cfg in (MainConfig(), MainConfig(base_factor=0)):
                res = main(g, c, cfg)
                want = k < c and not g.is_clique()
                assert res.found == want
                if res.found:
                    assert len(res.separator) < c and p.is_separator(p.bits(res.separator))


@pytest.mark.parametrize("seed", range(4))
def test_main_full_route_random(seed):
    rng = random.Random(50 + seed)
    for _ in range(10):
        n = rng.randint(5, 16)
        g = Graph.from_edges(oracles.random_graph(rng, n, rng.choice([0.3, 0.5, 0.7])), n)
        c = rng.randint(1, 4)
        st = {}
        res = main(g, c, MainConfig(base_factor=0), st)
        p = oracles.Plain.of(g)
        assert res.found == bool(oracles.all_separators_below(p, c))
        if res.found:
            assert len(res.separator) < c and p.is_separator(p.bits(res.separator))
        assert st["levels"] <= math.ceil(math.log2(n)) + 1


@pytest.mark.slow
@pytest.mark.parametrize("k,c", [(2, 2), (2, 3), (3, 3)])
def test_main_full_route_planted(k, c):
    g = planted_cut(40, k, seed=1)
    st = {}
    res = main(g, c, MainConfig(base_factor=0, phi=Fraction(1, 20)), st)
    assert res.found == (k < c)
    if res.found:
        assert len(res.separator) < c and g.is_separator(res.separator)
    assert st["levels"] <= math.ceil(math.log2(g.n)) + 1
    assert st["phi"] == ["1/20"] * len(st["phi"])
