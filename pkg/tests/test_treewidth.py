import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from planarclust.errors import PreconditionError
from planarclust.generators import gen_grid, gen_random_triangulation
from planarclust.treewidth import (TdSizeError, TreeDecomposition,
                                   gm_exact_small, grid_minor_exact_small,
                                   td_q_separator, tw_exact_small,
                                   tw_upper_bound, tw_weight_bound,
                                   validate_td)

from conftest import K3, K4, cycle_graph, path_graph, star_graph
from oracles import (adjacency_of, brute_min_q_separator, component_sizes,
                     max_cycle_length, tw_by_permutations)


def random_adj(n, p, seed):
    rng = random.Random(seed)
    adj = {v: set() for v in range(n)}
    for v in range(n):
        for u in range(v + 1, n):
            if rng.random() < p:
                adj[v].add(u)
                adj[u].add(v)
    return adj


# -- validate_td ---------------------------------------------------------------

def test_validate_td_path_ok():
    T = TreeDecomposition(bags=[frozenset({0, 1}), frozenset({1, 2})],
                          edges=[(0, 1)])
    assert validate_td(path_graph(3), T) == []
    assert T.width == 1


def test_validate_td_uncovered_edge():
    T = TreeDecomposition(bags=[frozenset({0}), frozenset({2})], edges=[(0, 1)])
    bad = validate_td(path_graph(3), T)
    assert any("uncovered" in msg for msg in bad)


def test_validate_td_single_bag_k4():
    T = TreeDecomposition(bags=[frozenset({0, 1, 2, 3})], edges=[])
    assert validate_td(K4, T) == []
    assert T.width == 3


def test_validate_td_disconnected_trace():
    T = TreeDecomposition(
        bags=[frozenset({0, 1}), frozenset({1, 2}), frozenset({0, 2})],
        edges=[(0, 1), (1, 2)])
    bad = validate_td(K3, T)
    assert any("subtree" in msg for msg in bad)


# -- exact treewidth -----------------------------------------------------------

def test_tw_exact_known_values():
    assert tw_exact_small(K4) == 3
    assert tw_exact_small(gen_grid(3)) == 3
    assert tw_exact_small(path_graph(7)) == 1
    assert tw_exact_small(cycle_graph(8)) == 2
    assert tw_exact_small(star_graph(6)) == 1
    assert tw_exact_small({}) == -1


def test_tw_exact_limit():
    with pytest.raises(ValueError):
        tw_exact_small(random_adj(16, 0.5, 0), limit=15)


def test_tw_exact_matches_permutation_oracle():
    for seed in range(25):
        n = 4 + seed % 4
        adj = random_adj(n, 0.45, seed)
        assert tw_exact_small(adj) == tw_by_permutations_wrap(adj)


def tw_by_permutations_wrap(adj):
    class Dummy:
        n = len(adj)

        def edges(self):
            for v, ns in adj.items():
                for u in ns:
                    if u > v:
                        yield (v, u)

    return tw_by_permutations(Dummy())


# -- heuristic upper bound -------------------------------------------------------

def test_tw_ub_trees_and_cycles():
    w, T = tw_upper_bound(path_graph(9))
    assert w == 1 and validate_td(path_graph(9), T) == []
    w, T = tw_upper_bound(cycle_graph(9))
    assert w == 2 and validate_td(cycle_graph(9), T) == []


def test_tw_ub_grid3_exact():
    w, T = tw_upper_bound(gen_grid(3))
    assert w == 3
    assert validate_td(gen_grid(3), T) == []


def test_tw_ub_always_upper_bound_and_valid():
    for seed in range(20):
        n = 5 + seed % 6
        adj = random_adj(n, 0.4, 100 + seed)
        w, T = tw_upper_bound(adj)
        assert validate_td(adj, T) == []
        assert w >= tw_exact_small(adj)


def test_tw_ub_disconnected():
    adj = {0: {1}, 1: {0}, 2: {3}, 3: {2}, 4: set()}
    w, T = tw_upper_bound(adj)
    assert validate_td(adj, T) == []
    assert w == 1


# -- grid minors -----------------------------------------------------------------

def test_grid_minor_known():
    assert grid_minor_exact_small(gen_grid(3), 3) is True
    assert grid_minor_exact_small(gen_grid(3), 2) is True
    assert grid_minor_exact_small(K4, 2) is True
    assert grid_minor_exact_small(K3, 2) is False
    assert grid_minor_exact_small(star_graph(5), 2) is False
    assert grid_minor_exact_small(path_graph(9), 2) is False
    assert grid_minor_exact_small(cycle_graph(6), 2) is True
    # 8 vertices cannot host nine branch sets
    assert grid_minor_exact_small(random_adj(8, 0.9, 1), 3) is False


def test_grid_minor_k2_matches_cycle_oracle():
    for seed in range(30):
        n = 4 + seed % 6
        adj = random_adj(n, 0.35, 200 + seed)

        class Dummy:
            pass

        d = Dummy()
        d.n = n
        d.edges = lambda a=adj: ((v, u) for v, ns in a.items() for u in ns if u > v)
        expect = max_cycle_length(d) >= 4
        assert grid_minor_exact_small(adj, 2) == expect


def test_grid_minor_triangulated_grid():
    # adding chords cannot destroy a minor
    g = gen_grid(3)
    adj = {v: set(ns) for v, ns in enumerate(g.adjacency_sets())}
    adj[0].add(4)
    adj[4].add(0)
    assert grid_minor_exact_small(adj, 3) is True


def test_gm_exact_small_values():
    assert gm_exact_small(gen_grid(3).adjacency_sets()) == 3
    assert gm_exact_small(path_graph(5).adjacency_sets()) == 1
    assert gm_exact_small(K4.adjacency_sets()) == 2


# -- td_q_separator ----------------------------------------------------------------

def test_td_q_separator_trivial():
    g = path_graph(5)
    w, T = tw_upper_bound(g)
    assert td_q_separator(g, T, q=10, p=20) == []


def test_td_q_separator_path8():
    g = path_graph(8)
    w, T = tw_upper_bound(g)
    S = td_q_separator(g, T, q=2, p=8)
    assert len(S) <= 8
    assert all(c <= 2 for c in component_sizes(adjacency_of(g), set(S)))
    # the optimum, for reference, is two vertices
    assert brute_min_q_separator(g, 2) == 2


def test_td_q_separator_grid4():
    g = gen_grid(4)
    w, T = tw_upper_bound(g)
    p = 16 * (w + 1) / 8.0
    S = td_q_separator(g, T, q=8, p=p)
    assert len(S) <= p
    assert all(c <= 8 for c in component_sizes(adjacency_of(g), set(S)))


def test_td_q_separator_precondition_errors():
    g = gen_grid(4)
    w, T = tw_upper_bound(g)
    with pytest.raises(PreconditionError, match="pq"):
        td_q_separator(g, T, q=2, p=3)
    with pytest.raises(PreconditionError, match="k"):
        td_q_separator(g, T, q=1000, p=2)


def test_td_q_separator_strict_flag():
    # force overshoot with a tiny p that still passes the preconditions
    g = gen_grid(5)
    w, T = tw_upper_bound(g)
    q = 5.0
    p = 25 * (w + 1) / q
    try:
        S = td_q_separator(g, T, q=q, p=p, strict=True)
    except TdSizeError as exc:
        S = exc.separator
    assert all(c <= q for c in component_sizes(adjacency_of(g), set(S)))


# -- tw_weight_bound ------------------------------------------------------------------

def test_tw_weight_bound_arithmetic():
    assert tw_weight_bound(0, 5.0, 5.0) == 19.0
    assert tw_weight_bound(4, 12.0, 1.0) == 55.0


def test_tw_weight_bound_domain():
    with pytest.raises(ValueError):
        tw_weight_bound(0, 2.0, 0.5)
    with pytest.raises(ValueError):
        tw_weight_bound(0, 1.0, 2.0)
    with pytest.raises(ValueError):
        tw_weight_bound(-1, 2.0, 1.0)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 50), st.floats(1.0, 1e6), st.floats(1.0, 1e6),
       st.integers(0, 10), st.floats(0.0, 100.0))
def test_tw_weight_bound_monotone(x, w, n_extra, dx, dn):
    N = w + n_extra
    base = tw_weight_bound(x, N, w)
    assert tw_weight_bound(x + dx, N, w) >= base
    assert tw_weight_bound(x, N + dn, w) >= base
    if w + dn >= 1.0 and N >= w + dn:
        assert tw_weight_bound(x, N, w + dn) <= base + 1e-9
