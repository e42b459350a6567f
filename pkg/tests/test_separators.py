import math
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from planarclust.errors import PreconditionError
from planarclust.generators import gen_grid, gen_random_triangulation
from planarclust.plane import FaceWeighting, PlaneGraph, induced_subgraph, validate
from planarclust.separators import (balanced_cycle_separator, is_q_separator,
                                    is_triangulation, low_tw_q_separator,
                                    max_component_face_weight,
                                    minimalize_q_separator, noose_separator,
                                    q_separator, triangulate,
                                    vertex_balanced_separator)
from planarclust.treewidth import gm_exact_small

from conftest import K3, K4, path_graph
from oracles import (adjacency_of, brute_min_balanced_separator,
                     brute_min_q_separator, component_sizes,
                     surviving_face_weight_by_component)


def cyclic_equal(a, b):
    if len(a) != len(b):
        return False
    if not a:
        return True
    s = b + b
    for k in range(len(b)):
        if s[k:k + len(a)] == list(a):
            return True
    return False


# -- triangulate -----------------------------------------------------------------

def test_triangulate_k3_unchanged():
    r = triangulate(K3)
    assert r.graph == K3
    assert r.face_map == {0: (0,), 1: (1,)}


def test_triangulate_c4_gives_k4():
    C4 = PlaneGraph.from_neighbors([[1, 3], [2, 0], [3, 1], [0, 2]])
    r = triangulate(C4)
    assert r.graph.m == 6
    assert is_triangulation(r.graph)
    # one diagonal inside each original face
    hosts = sorted(r.chord_face.values())
    assert len(hosts) == 2 and hosts[0] != hosts[1]


def test_triangulate_two_disjoint_edges():
    D = PlaneGraph.from_neighbors([[1], [0], [3], [2]])
    r = triangulate(D)
    assert r.graph.n == 4 and r.graph.m == 6
    assert is_triangulation(r.graph)
    covered = sorted(f for fs in r.face_map.values() for f in fs)
    assert covered == [f.face_id for f in r.graph.faces()]


def test_triangulate_rejects_tiny():
    with pytest.raises(ValueError):
        triangulate(PlaneGraph.from_neighbors([[1], [0]]))


def test_triangulate_chords_stay_inside_their_face():
    G = gen_grid(4)
    r = triangulate(G)
    for (u, v), host in r.chord_face.items():
        verts = set(G.face_vertices(host))
        assert u in verts and v in verts


@settings(max_examples=50, deadline=None)
@given(st.integers(4, 35), st.integers(0, 10 ** 6), st.data())
def test_triangulate_random_subgraphs(n, seed, data):
    G = gen_random_triangulation(n, seed)
    keep = sorted(data.draw(st.sets(st.integers(0, n - 1), min_size=3, max_size=n)))
    H = induced_subgraph(G, keep)
    r = triangulate(H)
    T = r.graph
    assert validate(T) == []
    assert is_triangulation(T)
    # embedding preserved: old rotations are cyclic subsequences of new ones
    old, new = H.neighbors(), T.neighbors()
    for v in range(H.n):
        kept = [u for u in new[v] if u in set(old[v])]
        assert cyclic_equal(old[v], kept) or cyclic_equal(old[v], kept[::-1]) is False and cyclic_equal(old[v], kept)
    # face map partitions the new faces
    covered = sorted(f for fs in r.face_map.values() for f in fs)
    assert covered == [f.face_id for f in T.faces()]


# -- balanced cycle separator -------------------------------------------------------

def tri_faces_weighting(G, value=1.0):
    return FaceWeighting({f.face_id: value for f in G.faces()})


def check_cycle(G, noose):
    vs = noose.vertices
    assert len(vs) == len(set(vs)) and len(vs) >= 3
    adj = adjacency_of(G)
    for i, v in enumerate(vs):
        assert vs[(i + 1) % len(vs)] in adj[v]


def test_heavy_face_rule():
    T = triangulate(PlaneGraph.from_neighbors([[1, 3], [2, 0], [3, 1], [0, 2]])).graph
    faces = T.faces()
    w = FaceWeighting({faces[0].face_id: 9.0, faces[1].face_id: 3.0,
                       faces[2].face_id: 2.0, faces[3].face_id: 1.0})
    noose = balanced_cycle_separator(T, w)
    assert sorted(noose.vertices) == sorted(T.dart_tail[d] for d in faces[0].darts)


def test_zero_weights_any_cycle_ok():
    T = triangulate(gen_grid(3)).graph
    noose = balanced_cycle_separator(T, FaceWeighting({}))
    check_cycle(T, noose)


def test_non_triangulation_rejected():
    with pytest.raises(ValueError):
        balanced_cycle_separator(gen_grid(3), FaceWeighting({}))


def test_balanced_cycle_random_unit_weights():
    G = gen_random_triangulation(50, 1)
    w = tri_faces_weighting(G)
    noose = balanced_cycle_separator(G, w)
    check_cycle(G, noose)
    # independent re-summation
    parts = surviving_face_weight_by_component(G, w, set(noose.vertices))
    assert all(p <= 2 / 3 * w.total() + 1e-9 for p in parts)


@settings(max_examples=60, deadline=None)
@given(st.integers(4, 45), st.integers(0, 10 ** 6), st.integers(0, 3))
def test_balanced_cycle_stress(n, seed, mode):
    G = gen_random_triangulation(n, seed)
    rng = random.Random(seed + 17)
    wts = {}
    for f in G.faces():
        if mode == 0:
            wts[f.face_id] = 1.0
        elif mode == 1:
            wts[f.face_id] = rng.random()
        elif mode == 2:
            wts[f.face_id] = rng.choice([0.0, 0.0, 1.0, 7.0])
        else:
            wts[f.face_id] = 0.0
    w = FaceWeighting(wts)
    noose = balanced_cycle_separator(G, w)  # internal balance check runs
    check_cycle(G, noose)
    parts = surviving_face_weight_by_component(G, w, set(noose.vertices))
    assert all(p <= 2 / 3 * w.total() * (1 + 1e-9) + 1e-12 for p in parts)


def test_cycle_length_against_grid_minor_bound(small_corpus):
    # on small triangulations the cycle never exceeds 4*gm+4
    for name, tag, G in small_corpus:
        if G.n < 4 or G.n > 12 or not is_triangulation(G):
            continue
        noose = balanced_cycle_separator(G, tri_faces_weighting(G))
        gm = gm_exact_small(G.adjacency_sets())
        assert len(noose.vertices) <= 4 * gm + 4


# -- noose separator -------------------------------------------------------------------

def test_noose_trivial_k3():
    noose = noose_separator(K3, FaceWeighting({0: 1.0, 1: 2.0}))
    assert sorted(noose.vertices) == [0, 1, 2]


def test_noose_c4_weighted_inner_face():
    C4 = PlaneGraph.from_neighbors([[1, 3], [2, 0], [3, 1], [0, 2]])
    faces = {f.face_id: len(f.darts) for f in C4.faces()}
    w = FaceWeighting({fid: 10.0 if fid == 0 else 0.0 for fid in faces})
    noose = noose_separator(C4, w)
    parts = surviving_face_weight_by_component(C4, w, set(noose.vertices))
    assert all(p <= 20.0 / 3 + 1e-9 for p in parts)
    # crossings reference faces shared by the adjacent vertices or edges
    k = len(noose.vertices)
    fod = C4.face_of_dart()
    for i in range(k):
        u, v = noose.vertices[i], noose.vertices[(i + 1) % k]
        c = noose.crossed_faces[i]
        if c is None:
            assert C4.has_edge(u, v)
        else:
            assert u in C4.face_vertices(c) and v in C4.face_vertices(c)


def test_noose_zero_weight():
    C4 = PlaneGraph.from_neighbors([[1, 3], [2, 0], [3, 1], [0, 2]])
    noose = noose_separator(C4, FaceWeighting({}))
    assert len(noose.vertices) >= 1


def test_noose_disconnected_heavy_component():
    # two triangles side by side; all weight inside the second
    G = PlaneGraph.from_neighbors([[1, 2], [2, 0], [0, 1], [4, 5], [5, 3], [3, 4]])
    w = {f.face_id: 0.0 for f in G.faces()}
    heavy = [f.face_id for f in G.faces() if G.dart_tail[f.darts[0]] >= 3][0]
    w[heavy] = 30.0
    noose = noose_separator(G, FaceWeighting(w))
    assert set(noose.vertices) <= {3, 4, 5}
    parts = surviving_face_weight_by_component(G, FaceWeighting(w), set(noose.vertices))
    assert all(p <= 20.0 + 1e-9 for p in parts)


# -- vertex balanced separator ------------------------------------------------------------

def test_vertex_balanced_k3():
    S = vertex_balanced_separator(K3)
    assert len(S) == 1


def test_vertex_balanced_path9():
    G = path_graph(9)
    S = vertex_balanced_separator(G)
    assert all(c <= 6 for c in component_sizes(adjacency_of(G), set(S)))
    assert brute_min_balanced_separator(G) == 1


def test_vertex_balanced_grid4():
    G = gen_grid(4)
    S = vertex_balanced_separator(G)
    assert all(c <= 32 / 3 for c in component_sizes(adjacency_of(G), set(S)))


@settings(max_examples=30, deadline=None)
@given(st.integers(1, 40), st.integers(0, 10 ** 6))
def test_vertex_balanced_property(n, seed):
    G = gen_random_triangulation(max(n, 3), seed)
    S = vertex_balanced_separator(G)
    assert all(c <= 2 * G.n / 3 for c in component_sizes(adjacency_of(G), set(S)))


# -- q separator ------------------------------------------------------------------------

def test_q_separator_trivial():
    G = gen_grid(3)
    r = q_separator(G, 9.0)
    assert r.vertices == ()
    assert r.trace == []


def test_q_separator_rejects_bad_q():
    with pytest.raises(PreconditionError):
        q_separator(K3, 0.0)


def test_q_separator_grid4():
    G = gen_grid(4)
    r = q_separator(G, 4.0)
    assert is_q_separator(G, 4.0, set(r.vertices))
    assert brute_min_q_separator(G, 4.0, max_size=6) <= len(r.vertices)
    for e in r.trace:
        assert e.component_size > 1.5 ** (e.level - 1) * 4.0


def test_q_separator_size_bound_and_levels():
    for G, q in [(gen_grid(8), 9.0), (gen_random_triangulation(400, 2), 40.0)]:
        r = q_separator(G, q)
        assert is_q_separator(G, q, set(r.vertices))
        assert len(r.vertices) <= r.size_bound(G.n) + 1e-9
        for e in r.trace:
            assert e.component_size > 1.5 ** (e.level - 1) * q


def test_q_separator_comparable_to_rowcol():
    from planarclust.generators import grid_rowcol_separator

    k, s = 12, 3
    G = gen_grid(k)
    r = q_separator(G, float(s * s))
    rowcol = grid_rowcol_separator(k, s)
    # same order of magnitude as the row/column construction
    assert len(r.vertices) <= 4 * len(rowcol)


# -- minimalize -----------------------------------------------------------------------------

def test_minimalize_everything():
    G = gen_grid(3)
    assert minimalize_q_separator(G, 9.0, list(range(9))) == []


def test_minimalize_path5():
    G = path_graph(5)
    S = minimalize_q_separator(G, 2.0, [1, 2, 3])
    assert S == [2]


def test_minimalize_requires_separator():
    with pytest.raises(PreconditionError):
        minimalize_q_separator(path_graph(5), 1.0, [2])


def test_minimalize_idempotent_and_minimal():
    rng = random.Random(4)
    for trial in range(20):
        n = rng.randint(6, 30)
        G = gen_random_triangulation(n, trial)
        q = rng.choice([2.0, 3.0, 5.0])
        S0 = q_separator(G, q).vertices
        S1 = minimalize_q_separator(G, q, S0)
        assert is_q_separator(G, q, set(S1))
        assert minimalize_q_separator(G, q, S1) == S1
        for v in S1:
            assert not is_q_separator(G, q, set(S1) - {v})


# -- low treewidth q separator ------------------------------------------------------------------

def test_low_tw_q_separator_grid6():
    G = gen_grid(6)
    result, diag = low_tw_q_separator(G, 4.0)
    assert is_q_separator(G, 4.0, set(result.vertices))
    assert diag["tw_ub"] < 12 * math.sqrt(36 / 4) + 13  # = 49
    assert diag["size"] <= diag["size_before_minimalize"]


def test_low_tw_q_separator_trivial():
    G = gen_grid(3)
    result, diag = low_tw_q_separator(G, 9.0)
    assert result.vertices == ()
    assert diag["tw_ub"] == -1


def test_low_tw_q_separator_grid8_diagnostics():
    G = gen_grid(8)
    result, diag = low_tw_q_separator(G, 16.0)
    assert is_q_separator(G, 16.0, set(result.vertices))
    assert diag["tw_ub"] < diag["tw_bound"]
    if "tw_exact" in diag:
        assert diag["tw_exact"] <= diag["tw_ub"]
