"""Deterministic graph families: grids, fan-plus-apex graphs, and seeded
random planar triangulations.

Seeds are plain 64-bit integers; the same seed always yields a
bit-identical graph (the stacked-triangulation generator draws from
``random.Random(seed)``, whose sequence is stable).
"""

from __future__ import annotations

import math
import random

from ._builder import Builder
from .plane import PlaneGraph


def gen_grid(k: int) -> PlaneGraph:
    """The k x k grid with its standard embedding.

    Vertex (row r, column c) is r*k + c; rotations run up, right, down,
    left, which is clockwise with the y axis drawn downwards.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    nbrs = []
    coords = []
    for r in range(k):
        for c in range(k):
            around = []
            if r > 0:
                around.append((r - 1) * k + c)
            if c + 1 < k:
                around.append(r * k + c + 1)
            if r + 1 < k:
                around.append((r + 1) * k + c)
            if c > 0:
                around.append(r * k + c - 1)
            nbrs.append(around)
            coords.append((float(c), float(r)))
    return PlaneGraph.from_neighbors(nbrs, coords=coords)


def grid_rowcol_separator(k: int, s: int) -> list[int]:
    """Union of every s-th row and column of the k x k grid (1-based).

    Every component of the grid minus this set fits in an (s-1) x (s-1)
    subgrid.
    """
    if not (1 <= s <= k):
        raise ValueError("need 1 <= s <= k")
    rows = set(range(s - 1, k, s))
    cols = set(range(s - 1, k, s))
    out = []
    for r in range(k):
        for c in range(k):
            if r in rows or c in cols:
                out.append(r * k + c)
    return out


def gen_fan_apex(k: int) -> PlaneGraph:
    """k disjoint fans of k*k vertices each, plus an apex joined to all.

    A fan is a path of k*k - 1 vertices together with a centre adjacent to
    the whole path.  The apex is vertex 0; fan i occupies ids
    1 + i*k*k .. (i+1)*k*k, centre first.  The fans sit in consecutive
    sectors around the apex: each fan's path is drawn on an arc facing the
    apex, the centre sits beyond the arc, and the apex-centre edge wraps
    around the path's last vertex.  Total order is k**3 + 1.
    """
    if k < 2:
        raise ValueError("k must be >= 2")
    mm = k * k
    n = k * mm + 1
    nbrs: list[list[int]] = [[] for _ in range(n)]
    coords: list[tuple[float, float]] = [(0.0, 0.0)] * n
    apex_rot: list[int] = []
    for i in range(k):
        base = 1 + i * mm
        w = base
        path = list(range(base + 1, base + mm))  # mm - 1 >= 3 path vertices
        m = len(path)
        apex_rot.extend(path)
        apex_rot.append(w)
        # centre: apex reached around the far end of the path
        nbrs[w] = [0] + path[::-1]
        for j, p in enumerate(path):
            rot = []
            if j > 0:
                rot.append(path[j - 1])
            rot.append(w)
            if j + 1 < m:
                rot.append(path[j + 1])
            rot.append(0)
            nbrs[p] = rot
        # schematic coordinates in the fan's sector (rendering only)
        a0 = 2.0 * math.pi * i / k
        a1 = 2.0 * math.pi * (i + 0.8) / k
        for j, p in enumerate(path):
            t = a0 + (a1 - a0) * j / max(m - 1, 1)
            coords[p] = (2.0 * math.cos(t), 2.0 * math.sin(t))
        coords[w] = (3.0 * math.cos((a0 + a1) / 2), 3.0 * math.sin((a0 + a1) / 2))
    nbrs[0] = apex_rot
    return PlaneGraph.from_neighbors(nbrs, coords=coords)


def gen_random_triangulation(n: int, seed: int, flips: int = 0) -> PlaneGraph:
    """Stacked random triangulation: start from a triangle and repeatedly
    drop a new vertex into a uniformly chosen face, then optionally apply a
    pass of random edge flips.

    Simple, every face a 3-cycle, e = 3n - 6.  Coordinates are best-effort
    (face centroids) and may be poor for drawing after flips.
    """
    if n < 3:
        raise ValueError("n must be >= 3")
    rng = random.Random(seed)
    b = Builder(PlaneGraph.from_neighbors(
        [[1, 2], [2, 0], [0, 1]],
        coords=[(0.0, 0.0), (1.0, 0.0), (0.5, math.sqrt(3) / 2)]))
    # faces as dart triples, kept in step with insertions
    faces = [tuple(b.face_walk(0)), tuple(b.face_walk(1))]
    for _ in range(n - 3):
        fi = rng.randrange(len(faces))
        d1, d2, d3 = faces[fi]
        corners = (b.dart_tail[d1], b.dart_tail[d2], b.dart_tail[d3])
        z = b.add_vertex()
        if b.coords is not None:
            cx = sum(b.coords[v][0] for v in corners) / 3.0
            cy = sum(b.coords[v][1] for v in corners) / 3.0
            b.coords[z] = [cx, cy]
        # z's clockwise rotation is the reversed walk of the host face
        heads = [b.head(d1), b.head(d2), b.head(d3)]
        e1 = b.add_edge(heads[0], d1, z, None)          # first spoke seeds z
        e2 = b._new_dart_pair(heads[1], z)
        b._insert_after(d2 ^ 1, e2)
        b._insert_after(e1 ^ 1, e2 + 1)
        e3 = b._new_dart_pair(heads[2], z)
        b._insert_after(d3 ^ 1, e3)
        b._insert_after(e1 ^ 1, e3 + 1)
        faces[fi] = (d1, e1, e3 ^ 1)
        faces.append((d2, e2, e1 ^ 1))
        faces.append((d3, e3, e2 ^ 1))
    for _ in range(flips):
        e = rng.randrange(len(b.dart_tail) // 2)
        _try_flip(b, 2 * e, faces)
    return b.freeze()


def _try_flip(b: Builder, d: int, faces: list[tuple[int, int, int]]) -> bool:
    """Flip edge d to the opposite diagonal of its two triangles, in place.

    Skipped when the result would not be simple.  ``faces`` entries for the
    two incident triangles are refreshed.
    """
    fmap = {}
    for idx, tri in enumerate(faces):
        for dd in tri:
            fmap[dd] = idx
    u, v = b.dart_tail[d], b.dart_tail[d ^ 1]
    t1 = faces[fmap[d]]
    t2 = faces[fmap[d ^ 1]]
    i1 = t1.index(d)
    i2 = t2.index(d ^ 1)
    da = t1[(i1 + 1) % 3]     # v -> x
    db = t1[(i1 + 2) % 3]     # x -> u
    dc = t2[(i2 + 1) % 3]     # u -> y
    dd_ = t2[(i2 + 2) % 3]    # y -> v
    x, y = b.dart_tail[da ^ 1], b.dart_tail[dc ^ 1]
    if x == y or x in {b.head(dz) for dz in _rot_list(b, y)}:
        return False
    # remove d from both rotations
    for dart in (d, d ^ 1):
        t = b.dart_tail[dart]
        if b.rot_next[dart] == dart:
            b.vfirst[t] = -1
        else:
            p, nx = b.rot_prev[dart], b.rot_next[dart]
            b.rot_next[p] = nx
            b.rot_prev[nx] = p
            if b.vfirst[t] == dart:
                b.vfirst[t] = nx
    # reuse the dart pair for x -> y
    b.dart_tail[d] = x
    b.dart_tail[d ^ 1] = y
    b._insert_after(da ^ 1, d)       # at x, after dart x->v
    b._insert_after(dc ^ 1, d ^ 1)   # at y, after dart y->u
    faces[fmap[d]] = (d, dd_, da)    # x->y, y->v, v->x
    faces[fmap[d ^ 1]] = (d ^ 1, db, dc)  # y->x, x->u, u->y
    return True


def _rot_list(b: Builder, v: int) -> list[int]:
    d0 = b.vfirst[v]
    if d0 == -1:
        return []
    out = [d0]
    d = b.rot_next[d0]
    while d != d0:
        out.append(d)
        d = b.rot_next[d]
    return out
