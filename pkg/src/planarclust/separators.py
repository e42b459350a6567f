"""Vertex separators for plane graphs.

The central routine is :func:`balanced_cycle_separator`: given a plane
triangulation with face weights it returns a cycle such that the surviving
face weight of every component left after deleting the cycle's vertices is
at most two thirds of the total.  The search is constructive:

1. If some face carries at least a third of the weight, its boundary
   triangle works outright.
2. Otherwise a BFS spanning tree is built and every non-tree edge's
   fundamental cycle is scored through the dual spanning tree (the faces
   strictly inside a fundamental cycle are exactly one side of the dual
   tree cut).  If the best cycle already splits the weight 1/3 : 2/3, done.
3. Otherwise the heavy side is shrunk one face at a time: the face inside
   a cycle edge either has its apex off the cycle (slide the cycle across
   that face) or on it (the two chords split the heavy side in two; keep
   the heavier part, with or without the pivot face, whichever keeps the
   invariant).  Every step removes at least one face from the tracked
   side, the tracked weight stays above 2N/3 until a balanced cycle is
   produced, and a single face cannot hold 2N/3 (step 1), so the walk
   terminates with the balance guarantee met exactly.

Cycle length is measured, not promised; the weight balance is the
contract and is re-verified against an independent component scan before
returning.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, field

from ._builder import Builder
from .errors import PreconditionError
from .plane import FaceWeighting, PlaneGraph, induced_subgraph

TWO_THIRDS = 2.0 / 3.0


@dataclass
class CutEvent:
    """One separation step in the q-separator recursion."""

    component_size: int
    separator_size: int
    level: int


@dataclass
class SeparatorResult:
    vertices: tuple[int, ...]
    q: float
    trace: list[CutEvent] = field(default_factory=list)

    @property
    def c_impl(self) -> float:
        """Largest separator-size / sqrt(component-size) ratio observed."""
        return max((e.separator_size / math.sqrt(e.component_size)
                    for e in self.trace), default=0.0)

    def size_bound(self, n: int) -> float:
        """The recursion's size bound scaled by the measured constant."""
        base = 3.0 / math.sqrt(2.0)
        return (max(self.c_impl, base) / base) * 12.0 * n / math.sqrt(self.q)


@dataclass
class Noose:
    """A closed curve through vertices, crossing faces between them.

    ``crossed_faces[i]`` is the face the curve traverses between
    ``vertices[i]`` and ``vertices[i+1]`` (cyclically), or None when the
    curve follows an edge of the graph.
    """

    vertices: tuple[int, ...]
    crossed_faces: tuple[int | None, ...]

    def __len__(self) -> int:
        return len(self.vertices)


@dataclass
class TriangulationResult:
    graph: PlaneGraph
    face_map: dict[int, tuple[int, ...]]
    chord_face: dict[tuple[int, int], int]


# -- triangulation -----------------------------------------------------------

def triangulate(G: PlaneGraph, track_faces: bool = True) -> TriangulationResult:
    """Embedding-preserving triangulation of a plane graph with >= 3 vertices.

    Components are first tied together side by side (each component's
    designated outer walk is the one through its lowest dart), then every
    face is cut into triangles by ear chords, with a generic splitting
    chord as fallback on walks where no ear is available.  Original
    rotations survive as subsequences; ``face_map`` sends each original
    face id to the triangles that tile it (faces merged while connecting
    components are charged to the lowest participating id), and
    ``chord_face`` records which original face each added edge crosses.
    With ``track_faces=False`` both maps are skipped (they cost a second
    face trace), which suits callers that reweight the result directly.
    """
    if G.n < 3:
        raise ValueError(f"triangulation needs >= 3 vertices, got {G.n}")
    b = Builder(G)
    adj = [set(s) for s in G.adjacency_sets()]
    n_orig_darts = 2 * G.m
    iso_face = G.isolated_face_of() if (track_faces or not G.is_connected()) else {}
    orig_face_of = G.face_of_dart() if track_faces else None

    if not G.is_connected():
        comps = G.components()
        base = comps[0]
        anchor_v, anchor_d = _designated_walk(G, base, iso_face)
        for comp in comps[1:]:
            v2, d2 = _designated_walk(G, comp, iso_face)
            d = b.add_edge(anchor_v, anchor_d, v2, d2)
            adj[anchor_v].add(v2)
            adj[v2].add(anchor_v)
            anchor_d = d ^ 1  # dart entering anchor_v on the merged walk

    # host of each walk: smallest original face id seen along it
    def walk_host(walk: list[int]) -> int:
        if not track_faces:
            return 0
        ids = [orig_face_of[d] for d in walk if d < n_orig_darts]
        for d in walk:
            for v in (b.dart_tail[d], b.head(d)):
                if v in iso_face:
                    ids.append(iso_face[v])
        return min(ids)

    seen = [False] * len(b.dart_tail)
    work: list[tuple[list[int], int]] = []
    for d0 in range(len(b.dart_tail)):
        if seen[d0]:
            continue
        walk = b.face_walk(d0)
        for d in walk:
            seen[d] = True
        work.append((walk, walk_host(walk)))

    final: list[tuple[int, int]] = []  # (a dart of the triangle, host)
    chord_face: dict[tuple[int, int], int] = {}
    while work:
        walk, host = work.pop()
        if len(walk) == 3:
            final.append((walk[0], host))
            continue
        piece = _cut_face(b, adj, walk, host, chord_face, final)
        work.extend(piece)

    G2 = b.freeze()
    if not track_faces:
        return TriangulationResult(graph=G2, face_map={}, chord_face=chord_face)
    fod = G2.face_of_dart()
    face_map: dict[int, list[int]] = {f.face_id: [] for f in G.faces()}
    for d, host in final:
        face_map[host].append(fod[d])
    return TriangulationResult(
        graph=G2,
        face_map={h: tuple(sorted(fs)) for h, fs in face_map.items()},
        chord_face=chord_face,
    )


def _designated_walk(G: PlaneGraph, comp: list[int], iso_face) -> tuple[int, int | None]:
    """(vertex, entering dart) pinning a component's outer walk occurrence."""
    v = comp[0]
    if G.vfirst[v] == -1:
        return v, None
    low = min(min(G.darts_of(u)) for u in comp)
    # the occurrence right before `low` on its walk: low's predecessor dart
    # enters tail(low)
    prev = _face_prev(G, low)
    return G.dart_tail[low], prev


def _face_prev(G: PlaneGraph, d: int) -> int:
    # inverse of next(d) = rot_next[twin(d)]
    return G.rot_prev[d] ^ 1


def _cut_face(b: Builder, adj, walk: list[int], host: int,
              chord_face: dict, final: list) -> list[tuple[list[int], int]]:
    """Cut ears off one face walk until triangles remain.

    Returns leftover walks for the work stack (only from fallback splits).
    """
    L = len(walk)
    nxt = list(range(1, L)) + [0]
    prv = [L - 1] + list(range(L - 1))
    alive = L
    tails = [b.dart_tail[d] for d in walk]
    queue = deque(range(L))
    queued = [True] * L
    dead = [False] * L
    while alive > 3:
        if not queue:
            pieces = _fallback_split(b, adj, walk, nxt, prv, dead, alive, host, chord_face)
            if pieces is None:
                raise AssertionError("face walk admits neither ear nor split")
            return pieces
        j = queue.popleft()
        queued[j] = False
        if dead[j] or alive == 3:
            continue
        i, k = prv[j], nxt[j]
        u, vv = tails[i], tails[k]
        if u == vv or vv in adj[u]:
            continue
        # cut the ear at corner tails[j]
        c = b.add_edge(u, walk[prv[i]], vv, walk[j])
        adj[u].add(vv)
        adj[vv].add(u)
        chord_face[(u, vv) if u < vv else (vv, u)] = host
        final.append((walk[i], host))  # triangle (walk[i], walk[j], c^1)
        walk[i] = c  # chord replaces the two ear darts at position i
        tails[i] = u
        dead[j] = True
        alive -= 1
        nxt[i] = k
        prv[k] = i
        for t in (i, k):
            if not queued[t]:
                queue.append(t)
                queued[t] = True
    start = next(p for p in range(L) if not dead[p])
    tri = [walk[start], walk[nxt[start]], walk[nxt[nxt[start]]]]
    final.append((tri[0], host))
    return []


def _fallback_split(b: Builder, adj, walk, nxt, prv, dead, alive, host, chord_face):
    pos = [p for p in range(len(walk)) if not dead[p]]
    order = {p: idx for idx, p in enumerate(pos)}
    L = len(pos)
    for ii in range(L):
        for jj in range(ii + 2, L):
            if ii == 0 and jj == L - 1:
                continue
            pi, pj = pos[ii], pos[jj]
            u, vv = b.dart_tail[walk[pi]], b.dart_tail[walk[pj]]
            if u == vv or vv in adj[u]:
                continue
            c = b.add_edge(u, walk[prv[pi]], vv, walk[prv[pj]])
            adj[u].add(vv)
            adj[vv].add(u)
            chord_face[(u, vv) if u < vv else (vv, u)] = host
            w1 = [c]
            p = pj
            while p != pi:
                w1.append(walk[p])
                p = nxt[p]
            w2 = [c ^ 1]
            p = pi
            while p != pj:
                w2.append(walk[p])
                p = nxt[p]
            return [(w1, host), (w2, host)]
    return None


# -- balanced cycle separator -------------------------------------------------

def is_triangulation(G: PlaneGraph) -> bool:
    return (G.n >= 3 and G.is_connected() and G.m == 3 * G.n - 6
            and all(len(f.darts) == 3 for f in G.faces()))


def balanced_cycle_separator(G: PlaneGraph, w: FaceWeighting,
                             check: bool = True) -> Noose:
    """A cycle whose removal leaves every component with <= 2/3 of the
    face weight (see the module docstring for the construction)."""
    if G.n < 4 or not is_triangulation(G):
        raise ValueError("input must be a simple plane triangulation with >= 4 vertices")
    faces = G.faces()
    nf = len(faces)
    wf = [w.get(f.face_id, 0.0) for f in faces]
    N = math.fsum(wf)
    eps = 1e-12 * max(N, 1.0)

    heavy = min(range(nf), key=lambda f: (-wf[f], f))
    if wf[heavy] >= N / 3.0 - eps:
        verts = tuple(G.dart_tail[d] for d in faces[heavy].darts)
        return _finish_cycle(G, w, N, verts, check)

    cyc = _ShrinkState(G, wf, N, eps)
    verts = cyc.run()
    return _finish_cycle(G, w, N, verts, check)


def _finish_cycle(G, w, N, verts, check) -> Noose:
    noose = Noose(vertices=tuple(verts), crossed_faces=(None,) * len(verts))
    if check and N > 0:
        bad = max_component_face_weight(G, w, set(verts))
        if bad > TWO_THIRDS * N * (1 + 1e-9) + 1e-12:
            raise AssertionError(
                f"balance violated: component weight {bad} > 2/3 * {N}")
    return noose


def max_component_face_weight(G: PlaneGraph, w: FaceWeighting,
                              removed: set[int]) -> float:
    """Largest total weight of surviving faces over components of G - removed.

    A face survives in a component when all its boundary vertices lie
    there; an independent scan used to re-verify separator balance.
    """
    label = _component_labels_minus(G, removed)
    acc: dict[int, list[float]] = {}
    for f in G.faces():
        vs = G.face_vertices(f.face_id)
        if not vs:
            continue
        l0 = label[vs[0]]
        if l0 == -1 or any(label[v] != l0 for v in vs[1:]):
            continue
        acc.setdefault(l0, []).append(w.get(f.face_id, 0.0))
    return max((math.fsum(v) for v in acc.values()), default=0.0)


def _component_labels_minus(G: PlaneGraph, removed: set[int]) -> list[int]:
    label = [-1] * G.n
    adj = G.adjacency_sets()
    cur = 0
    for v0 in range(G.n):
        if v0 in removed or label[v0] != -1:
            continue
        label[v0] = cur
        stack = [v0]
        while stack:
            x = stack.pop()
            for u in adj[x]:
                if u not in removed and label[u] == -1:
                    label[u] = cur
                    stack.append(u)
        cur += 1
    return label


class _ShrinkState:
    """Fundamental-cycle pick plus the interior-shrinking walk."""

    def __init__(self, G: PlaneGraph, wf: list[float], N: float, eps: float):
        self.G = G
        self.wf = wf
        self.N = N
        self.eps = eps
        self.fod = G.face_of_dart()
        self.faces = G.faces()

    # -- setup: BFS tree, dual tree, fundamental cycle scores ---------------

    def run(self) -> list[int]:
        G = self.G
        nd = 2 * G.m
        tails, rnext, first = G.dart_tail, G.rot_next, G.vfirst
        # BFS tree from vertex 0; neighbours explored in rotation order,
        # which is deterministic for a fixed input
        parent_dart = [-1] * G.n
        depth = [-1] * G.n
        depth[0] = 0
        dq = deque([0])
        tree_dart = bytearray(nd)
        while dq:
            v = dq.popleft()
            d0 = first[v]
            if d0 == -1:
                continue
            dv1 = depth[v] + 1
            d = d0
            while True:
                u = tails[d ^ 1]
                if depth[u] == -1:
                    depth[u] = dv1
                    parent_dart[u] = d
                    tree_dart[d] = 1
                    tree_dart[d ^ 1] = 1
                    dq.append(u)
                d = rnext[d]
                if d == d0:
                    break
        fod = self.fod
        nf = len(self.faces)
        # dual tree on faces; edges are the non-tree darts
        dual_adj: list[list[tuple[int, int]]] = [[] for _ in range(nf)]
        for d in range(0, nd, 2):
            if not tree_dart[d]:
                f1, f2 = fod[d], fod[d ^ 1]
                dual_adj[f1].append((f2, d))
                dual_adj[f2].append((f1, d))
        tin = [0] * nf
        tout = [0] * nf
        sw = list(self.wf)
        sc = [1] * nf
        dual_parent_edge = [-1] * nf
        timer = 0
        stack = [(0, -1, False)]
        order = []
        seen = bytearray(nf)
        seen[0] = 1
        while stack:
            f, pe, done = stack.pop()
            if done:
                tout[f] = timer
                if pe != -1:
                    pf = fod[pe] if fod[pe] != f else fod[pe ^ 1]
                    sw[pf] += sw[f]
                    sc[pf] += sc[f]
                continue
            tin[f] = timer
            timer += 1
            order.append(f)
            stack.append((f, pe, True))
            for g, d in dual_adj[f]:
                if not seen[g]:
                    seen[g] = 1
                    dual_parent_edge[g] = d
                    stack.append((g, d, False))
        # score every non-tree edge through its dual child side
        best = None
        for d in range(0, nd, 2):
            if tree_dart[d]:
                continue
            f1, f2 = fod[d], fod[d ^ 1]
            child = f1 if tin[f1] > tin[f2] else f2
            s, cnt = sw[child], sc[child]
            hi = max(s, self.N - s)
            hcnt = cnt if s >= self.N - s else nf - cnt
            key = (hi, hcnt, d)
            if best is None or key < best[0]:
                best = (key, d, child, s, cnt)
        assert best is not None
        _, d_star, child, s, cnt = best
        self.tin, self.tout, self.child = tin, tout, child

        cyc_darts = self._fundamental_cycle(d_star, parent_dart, depth)
        inside_is_child = s >= self.N - s
        first = cyc_darts[0]
        f_first_in_child = tin[child] <= tin[self.fod[first]] < tout[child]
        if f_first_in_child != inside_is_child:
            cyc_darts = [x ^ 1 for x in reversed(cyc_darts)]
        self._init_cycle(cyc_darts, max(s, self.N - s),
                         cnt if inside_is_child else nf - cnt)
        if self.in_w <= TWO_THIRDS * self.N + self.eps:
            return self._vertices()
        return self._shrink()

    def _fundamental_cycle(self, d: int, parent_dart, depth) -> list[int]:
        G = self.G
        u, v = G.tail(d), G.head(d)
        up_u, up_v = [], []
        a, bb = u, v
        while depth[a] > depth[bb]:
            up_u.append(a)
            a = G.tail(parent_dart[a])
        while depth[bb] > depth[a]:
            up_v.append(bb)
            bb = G.tail(parent_dart[bb])
        while a != bb:
            up_u.append(a)
            up_v.append(bb)
            a = G.tail(parent_dart[a])
            bb = G.tail(parent_dart[bb])
        darts = [d]
        for x in up_v:
            darts.append(parent_dart[x] ^ 1)
        for x in reversed(up_u):
            darts.append(parent_dart[x])
        return darts

    # -- cycle data ----------------------------------------------------------

    def _init_cycle(self, darts: list[int], in_w: float, in_cnt: int):
        G = self.G
        self.cyc_next: dict[int, int] = {}
        self.cyc_prev: dict[int, int] = {}
        self.on_dart = bytearray(2 * G.m)
        self.on_vertex = bytearray(G.n)
        k = len(darts)
        for i, d in enumerate(darts):
            self.cyc_next[d] = darts[(i + 1) % k]
            self.cyc_prev[d] = darts[(i - 1) % k]
            self.on_dart[d] = 1
            self.on_vertex[G.tail(d)] = 1
        self.in_w = in_w
        self.in_cnt = in_cnt
        self.cursor = darts[0]

    def _vertices(self) -> list[int]:
        G = self.G
        out = [G.tail(self.cursor)]
        d = self.cyc_next[self.cursor]
        while d != self.cursor:
            out.append(G.tail(d))
            d = self.cyc_next[d]
        return out

    def _unlink(self, d: int):
        del self.cyc_next[d]
        del self.cyc_prev[d]
        self.on_dart[d] = 0

    def _link(self, a: int, b: int):
        self.cyc_next[a] = b
        self.cyc_prev[b] = a
        self.on_dart[a] = 1
        self.on_dart[b] = 1

    # -- the shrinking walk ---------------------------------------------------

    def _shrink(self) -> list[int]:
        G = self.G
        N, eps = self.N, self.eps
        fod = self.fod
        guard = 6 * len(self.faces) + 20
        while True:
            guard -= 1
            if guard < 0:
                raise AssertionError("shrink walk failed to terminate")
            if self.in_w <= TWO_THIRDS * N + eps:
                return self._vertices()
            assert self.in_cnt > 1, "single face heavier than 2N/3"
            cur = self.cursor
            f = fod[cur]
            d1, d2, d3 = self._rotate_walk(f, cur)
            y = G.tail(d3)
            if not self.on_vertex[y]:
                self._slide_across(cur, d2, d3, f, y)
                continue
            r1_empty = self.cyc_next[cur] == d2
            r2_empty = self.cyc_prev[cur] == d3
            if r1_empty and r2_empty:
                raise AssertionError("cycle reduced to a single face")
            if r2_empty:
                self._drop_corner_keep_r1(cur, d2, d3, f)
                continue
            if r1_empty:
                self._drop_corner_keep_r2(cur, d2, d3, f)
                continue
            self._split_step(cur, d2, d3, f, y)

    def _rotate_walk(self, f: int, cur: int) -> tuple[int, int, int]:
        a, b, c = self.faces[f].darts
        if a == cur:
            return a, b, c
        if b == cur:
            return b, c, a
        return c, a, b

    def _slide_across(self, cur, d2, d3, f, y):
        # apex off the cycle: replace edge (x,z) by the path x-y-z
        a, b = d3 ^ 1, d2 ^ 1     # x->y, y->z
        p, nx = self.cyc_prev[cur], self.cyc_next[cur]
        self._unlink(cur)
        if p == cur:  # cannot happen on cycles (length >= 3)
            raise AssertionError("degenerate cycle")
        self._link(p, a)
        self._link(a, b)
        self._link(b, nx)
        self.on_vertex[y] = 1
        self.in_w -= self.wf[f]
        self.in_cnt -= 1
        self.cursor = a

    def _drop_corner_keep_r1(self, cur, d2, d3, f):
        # edge (x,y) on the cycle just before cur: cut corner x
        G = self.G
        p = self.cyc_prev[d3]
        nx = self.cyc_next[cur]
        x = G.tail(cur)
        self._unlink(d3)
        self._unlink(cur)
        self._link(p, d2 ^ 1)
        self._link(d2 ^ 1, nx)
        self.on_vertex[x] = 0
        self.in_w -= self.wf[f]
        self.in_cnt -= 1
        self.cursor = d2 ^ 1

    def _drop_corner_keep_r2(self, cur, d2, d3, f):
        # edge (z,y) on the cycle just after cur: cut corner z
        G = self.G
        p = self.cyc_prev[cur]
        nx = self.cyc_next[d2]
        z = G.head(cur)
        self._unlink(cur)
        self._unlink(d2)
        self._link(p, d3 ^ 1)
        self._link(d3 ^ 1, nx)
        self.on_vertex[z] = 0
        self.in_w -= self.wf[f]
        self.in_cnt -= 1
        self.cursor = d3 ^ 1

    def _split_step(self, cur, d2, d3, f, y):
        """Apex on the cycle with both chord regions non-empty."""
        G, N, eps = self.G, self.N, self.eps
        a1 = [self.cyc_next[cur]]
        while G.head(a1[-1]) != y:
            a1.append(self.cyc_next[a1[-1]])
        start2 = self.cyc_next[a1[-1]]
        w1, c1, w2, c2 = self._measure_regions(cur, d2, d3, f)
        keep_r1 = (w1 > w2) or (w1 == w2 and c1 >= c2)
        wk, ck = (w1, c1) if keep_r1 else (w2, c2)
        with_f = wk + self.wf[f]
        if with_f <= TWO_THIRDS * N + eps:
            self._splice_keep(cur, d2, d3, a1, start2, keep_r1, include_f=True)
            self.in_w, self.in_cnt = with_f, ck + 1
            return
        if wk <= TWO_THIRDS * N + eps:
            # wk > in_w - wf > 2N/3 - N/3 = N/3 here, but guard against
            # float drift and fall through to the conservative branch
            if wk >= N / 3.0 - eps:
                self._splice_keep(cur, d2, d3, a1, start2, keep_r1, include_f=False)
                self.in_w, self.in_cnt = wk, ck
                return
            # wk < N/3 while wk + wf > 2N/3: keep the region plus the face
            self._splice_keep(cur, d2, d3, a1, start2, keep_r1, include_f=True)
            self.in_w, self.in_cnt = with_f, ck + 1
            return
        # wk alone is still heavy
        self._splice_keep(cur, d2, d3, a1, start2, keep_r1, include_f=False)
        self.in_w, self.in_cnt = wk, ck

    def _measure_regions(self, cur, d2, d3, f):
        """Exact weights and counts of the two chord regions (lockstep flood)."""
        fod = self.fod
        blocked = {d2 >> 1, d3 >> 1, cur >> 1}
        seed1 = fod[d2 ^ 1]
        seed2 = fod[d3 ^ 1]
        s1 = _Flood(self, seed1, blocked)
        s2 = _Flood(self, seed2, blocked)
        while True:
            if not s1.step():
                w1, c1 = s1.weight, s1.count
                w2 = self.in_w - self.wf[f] - w1
                c2 = self.in_cnt - 1 - c1
                return w1, c1, max(w2, 0.0), c2
            if not s2.step():
                w2, c2 = s2.weight, s2.count
                w1 = self.in_w - self.wf[f] - w2
                c1 = self.in_cnt - 1 - c2
                return max(w1, 0.0), c1, w2, c2

    def _splice_keep(self, cur, d2, d3, a1, start2, keep_r1: bool, include_f: bool):
        """Rebuild the cycle around the kept region; discard the other arc."""
        G = self.G
        if keep_r1:
            last1 = a1[-1]
            # discard arc A2 (start2 .. dart entering x)
            d = start2
            while True:
                nx = self.cyc_next[d]
                stop = G.head(d) == G.tail(cur)
                self.on_vertex[G.tail(d)] = 0
                self._unlink(d)
                if stop:
                    break
                d = nx
            self.on_vertex[G.tail(start2)] = 1  # y stays
            if include_f:
                # cycle x -> z -> ... -> y -> x via chord (y,x) = d3
                self._link(last1, d3)
                self._link(d3, cur)
                self.cursor = d3
            else:
                self._unlink(cur)
                self.on_vertex[G.tail(cur)] = 0  # x leaves
                self._link(last1, d2 ^ 1)
                self._link(d2 ^ 1, a1[0])
                self.cursor = d2 ^ 1
        else:
            # discard arc A1 (cyc_next[cur] .. dart entering y)
            d = a1[0]
            for d in a1:
                self.on_vertex[G.tail(d)] = 0
                self._unlink(d)
            self.on_vertex[G.tail(start2)] = 1  # y stays
            if include_f:
                # cycle y -> ... -> x -> z -> y via cur and chord (z,y) = d2
                self.on_vertex[G.tail(a1[0])] = 1  # z stays
                last2 = self.cyc_prev[cur]
                self._link(cur, d2)
                self._link(d2, start2)
                self.cursor = d2
            else:
                last2 = self.cyc_prev[cur]
                self._unlink(cur)
                self.on_vertex[G.tail(a1[0])] = 0  # z leaves (a1[0] tail is z)
                self._link(last2, d3 ^ 1)
                self._link(d3 ^ 1, start2)
                self.cursor = d3 ^ 1


class _Flood:
    """Face flood bounded by the current cycle and two chord edges."""

    def __init__(self, st: _ShrinkState, seed: int, blocked_edges: set[int]):
        self.st = st
        self.blocked = blocked_edges
        self.queue = deque([seed])
        self.seen = {seed}
        self.weight = 0.0
        self.count = 0

    def step(self) -> bool:
        """Expand one face; False when exhausted."""
        if not self.queue:
            return False
        st = self.st
        f = self.queue.popleft()
        self.weight += st.wf[f]
        self.count += 1
        for d in st.faces[f].darts:
            if (d >> 1) in self.blocked or st.on_dart[d] or st.on_dart[d ^ 1]:
                continue
            g = st.fod[d ^ 1]
            if g not in self.seen:
                self.seen.add(g)
                self.queue.append(g)
        return True


# -- nooses -------------------------------------------------------------------

def noose_separator(G: PlaneGraph, w: FaceWeighting, check: bool = True) -> Noose:
    """A noose whose vertex set balances surviving face weight 1/3 : 2/3.

    Triangulates (splitting each face's weight uniformly over the
    triangles tiling it), finds a balanced cycle there, and reads the
    cycle back as a noose of G: edges of G are followed, added chords are
    crossings of the original face that hosted them.
    """
    if G.n < 1:
        raise ValueError("graph must have at least one vertex")
    N = math.fsum(w.get(f.face_id, 0.0) for f in G.faces())
    if G.n <= 3:
        return _trivial_noose(G, tuple(range(G.n)))
    if not G.is_connected():
        comp_w: dict[int, float] = {}
        labels = G._component_labels()
        for f in G.faces():
            v0 = f.anchor_vertex if f.anchor_vertex >= 0 else G.dart_tail[f.darts[0]]
            c = int(labels[v0])
            comp_w[c] = comp_w.get(c, 0.0) + w.get(f.face_id, 0.0)
        heavy = max(comp_w.items(), key=lambda it: (it[1], -it[0]))
        if heavy[1] <= TWO_THIRDS * N * (1 + 1e-12):
            return _trivial_noose(G, (0,))
        comp = sorted(v for v in range(G.n) if labels[v] == heavy[0])
        H = induced_subgraph(G, comp)
        wH, face_back = _restrict_weights(G, w, comp, H)
        sub = noose_separator(H, wH, check=False)
        verts = tuple(comp[v] for v in sub.vertices)
        crossed = tuple(None if c is None else face_back[c] for c in sub.crossed_faces)
        noose = Noose(vertices=verts, crossed_faces=crossed)
    else:
        tri = triangulate(G)
        w2: dict[int, float] = {}
        for host, ids in tri.face_map.items():
            if not ids:
                continue
            share = w.get(host, 0.0) / len(ids)
            for nf in ids:
                w2[nf] = share
        cyc = balanced_cycle_separator(tri.graph, FaceWeighting(w2), check=False)
        crossed = []
        k = len(cyc.vertices)
        for i in range(k):
            u, v = cyc.vertices[i], cyc.vertices[(i + 1) % k]
            if G.has_edge(u, v):
                crossed.append(None)
            else:
                crossed.append(tri.chord_face[(u, v) if u < v else (v, u)])
        noose = Noose(vertices=cyc.vertices, crossed_faces=tuple(crossed))
    if check and N > 0:
        bad = max_component_face_weight(G, w, set(noose.vertices))
        if bad > TWO_THIRDS * N * (1 + 1e-9) + 1e-12:
            raise AssertionError(
                f"noose balance violated: {bad} > 2/3 * {N}")
    return noose


def _trivial_noose(G: PlaneGraph, verts: tuple[int, ...]) -> Noose:
    crossed: list[int | None] = []
    k = len(verts)
    for i in range(k):
        u, v = verts[i], verts[(i + 1) % k]
        if k > 1 and G.has_edge(u, v):
            crossed.append(None)
        else:
            fu = _incident_face_ids(G, u)
            fv = _incident_face_ids(G, v)
            common = sorted(fu & fv)
            crossed.append(common[0] if common else (sorted(fu)[0] if fu else None))
    return Noose(vertices=verts, crossed_faces=tuple(crossed))


def _incident_face_ids(G: PlaneGraph, v: int) -> set[int]:
    if G.vfirst[v] == -1:
        return {G.isolated_face_of()[v]}
    fod = G.face_of_dart()
    return {fod[d] for d in G.darts_of(v)}


def _restrict_weights(G: PlaneGraph, w: FaceWeighting, comp: list[int],
                      H: PlaneGraph):
    """Weights of G's faces transferred to the identical walks of H.

    comp is a full connected component, so every dart at its vertices
    survives and walks map one-to-one.
    """
    fodG = G.face_of_dart()
    dartG: dict[tuple[int, int], int] = {}
    cset = set(comp)
    for d in range(2 * G.m):
        t = G.dart_tail[d]
        if t in cset:
            dartG[(t, G.dart_tail[d ^ 1])] = d
    wh: dict[int, float] = {}
    back: dict[int, int] = {}
    for f in H.faces():
        if f.anchor_vertex >= 0:
            gi = G.isolated_face_of().get(comp[f.anchor_vertex])
        else:
            d0 = f.darts[0]
            gi = fodG[dartG[(comp[H.dart_tail[d0]], comp[H.dart_tail[d0 ^ 1]])]]
        back[f.face_id] = gi
        wh[f.face_id] = w.get(gi, 0.0)
    return FaceWeighting(wh), back


# -- vertex-balanced and q-separators ------------------------------------------

def vertex_balanced_separator(G: PlaneGraph) -> list[int]:
    """A set S with every component of G - S at most 2n/3 vertices.

    Cuts oversized components with face-weight balanced cycles on a
    triangulation, each vertex's unit weight split over its incident
    triangles; repeats until the vertex bound holds exactly (face balance
    only approximates vertex balance).  Size is measured, not promised.
    """
    n = G.n
    if n == 0:
        return []
    target = 2.0 * n / 3.0
    S: set[int] = set()
    while True:
        big = _oversized(G, S, target)
        if big is None:
            return sorted(S)
        if len(big) <= 3:
            S.add(big[0])
            continue
        if len(big) == n:
            for v in _cut_connected(G):
                S.add(v)
        else:
            H = induced_subgraph(G, big)
            for v in _cut_connected(H):
                S.add(big[v])


def _oversized(G: PlaneGraph, S: set[int], limit: float):
    adj = G.adjacency_sets()
    seen = [False] * G.n
    for v in S:
        seen[v] = True
    for v0 in range(G.n):
        if seen[v0]:
            continue
        comp = [v0]
        seen[v0] = True
        i = 0
        while i < len(comp):
            x = comp[i]
            i += 1
            for u in adj[x]:
                if not seen[u]:
                    seen[u] = True
                    comp.append(u)
        if len(comp) > limit:
            comp.sort()
            return comp
    return None


def _cut_connected(H: PlaneGraph) -> tuple[int, ...]:
    """Balanced-cycle cut of a connected graph with >= 4 vertices."""
    tri = triangulate(H, track_faces=False)
    T = tri.graph
    deg = [0] * T.n
    for t in T.dart_tail:
        deg[t] += 1
    inv = [1.0 / d for d in deg]
    wts: dict[int, float] = {}
    for f in T.faces():
        a, b, c = f.darts
        wts[f.face_id] = (inv[T.dart_tail[a]] + inv[T.dart_tail[b]]
                          + inv[T.dart_tail[c]])
    noose = balanced_cycle_separator(T, FaceWeighting(wts), check=False)
    return noose.vertices


def q_separator(G: PlaneGraph, q: float) -> SeparatorResult:
    """A q-separator via repeated 2/3-balanced cuts of oversized components.

    The trace records every cut with its recursion level: a component cut
    at level i (counting from the final components at level 0) always has
    more than (3/2)^(i-1) * q vertices.
    """
    if q <= 0:
        raise PreconditionError(f"q must be positive, got {q}")
    S: set[int] = set()
    trace: list[CutEvent] = []
    adj = G.adjacency_sets()

    def process(comp: list[int]) -> int:
        if len(comp) <= q:
            return 0
        # the level accounting needs every child at most 2/3 of the parent,
        # which vertex_balanced_separator enforces exactly
        H = induced_subgraph(G, comp) if len(comp) != G.n else G
        cut = [comp[v] for v in vertex_balanced_separator(H)]
        S.update(cut)
        cutset = set(cut)
        rest = [v for v in comp if v not in cutset]
        level = 1
        for child in _components_within(adj, rest):
            level = max(level, 1 + process(child))
        trace.append(CutEvent(len(comp), len(cut), level))
        return level

    for comp in G.components():
        process(comp)
    return SeparatorResult(vertices=tuple(sorted(S)), q=q, trace=trace)


def _components_within(adj, vertices: list[int]) -> list[list[int]]:
    vs = set(vertices)
    seen: set[int] = set()
    out = []
    for v0 in vertices:
        if v0 in seen:
            continue
        comp = [v0]
        seen.add(v0)
        i = 0
        while i < len(comp):
            x = comp[i]
            i += 1
            for u in adj[x]:
                if u in vs and u not in seen:
                    seen.add(u)
                    comp.append(u)
        comp.sort()
        out.append(comp)
    return out


def is_q_separator(G: PlaneGraph, q: float, S: set[int]) -> bool:
    label = _component_labels_minus(G, S)
    counts: dict[int, int] = {}
    for v in range(G.n):
        l = label[v]
        if l != -1:
            counts[l] = counts.get(l, 0) + 1
    return all(c <= q for c in counts.values())


def minimalize_q_separator(G: PlaneGraph, q: float, S) -> list[int]:
    """Inclusion-minimal subset of S that is still a q-separator.

    Vertices of S are offered back in increasing id order; v returns to
    the graph when the component it would join (itself plus all adjacent
    current components) stays within q.  Components only grow afterwards,
    so every kept vertex stays necessary: the result is minimal.
    """
    Sset = set(S)
    if not is_q_separator(G, q, Sset):
        raise PreconditionError("S is not a q-separator")
    n = G.n
    parent = list(range(n))
    size = [1] * n

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(a, b):
        ra, rb = find(a), find(b)
        if ra == rb:
            return
        if size[ra] < size[rb]:
            ra, rb = rb, ra
        parent[rb] = ra
        size[ra] += size[rb]

    in_sep = [False] * n
    for v in Sset:
        in_sep[v] = True
    adj = G.adjacency_sets()
    for a, b in G.edges():
        if not in_sep[a] and not in_sep[b]:
            union(a, b)
    for v in sorted(Sset):
        roots = {find(u) for u in adj[v] if not in_sep[u]}
        cand = 1 + sum(size[r] for r in roots)
        if cand <= q:
            in_sep[v] = False
            for r in roots:
                union(v, r)
    return [v for v in sorted(Sset) if in_sep[v]]


def low_tw_q_separator(G: PlaneGraph, q: float):
    """Minimalized q-separator with treewidth diagnostics for G[S]."""
    from .treewidth import gm_exact_small, tw_exact_small, tw_upper_bound

    raw = q_separator(G, q)
    S = minimalize_q_separator(G, q, raw.vertices)
    result = SeparatorResult(vertices=tuple(S), q=q, trace=raw.trace)
    GS = induced_subgraph(G, S)
    n = G.n
    tw_ub = tw_upper_bound(GS)[0] if GS.n else -1
    diag = {
        "size": len(S),
        "size_before_minimalize": len(raw.vertices),
        "size_bound": 12.0 * n / math.sqrt(q),
        "tw_ub": tw_ub,
        "tw_bound": 12.0 * math.sqrt(n / q) + 13.0,
        "gm_bound": 2.0 * math.sqrt(n / q) + 2.0,
    }
    if 0 < GS.n <= 15:
        diag["tw_exact"] = tw_exact_small(GS)
        diag["gm_exact"] = gm_exact_small(GS.adjacency_sets())
    return result, diag
