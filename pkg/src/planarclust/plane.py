"""Plane graphs represented by rotation systems.

Conventions, fixed once so fixtures are bit-stable:

- Each edge e owns two darts 2e and 2e+1; twin(d) = d ^ 1.  A dart leaves
  its tail vertex and points at its head, head(d) = tail(d ^ 1).
- The rotation of a vertex lists the darts leaving it in clockwise order.
- Faces are traced by the rule next(d) = rot_next[twin(d)], so each face
  is a closed dart walk and every dart lies on exactly one walk.
- An isolated vertex owns one face with an empty boundary walk (the region
  it is embedded in).
- Euler's relation is checked per connected component: v - e + f = 2,
  counting walk faces plus isolated-vertex faces.  For a connected graph
  this is the usual planarity test; for a disjoint union each component is
  validated on its own sphere, since a rotation system does not record how
  components nest in the plane.

Graphs are immutable after construction; all operations return new values.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence


class GraphStructureError(ValueError):
    """Raised when rotation data cannot form a simple plane graph."""


@dataclass(frozen=True)
class Face:
    """One traced face: a closed dart walk (empty for an isolated vertex)."""

    face_id: int
    darts: tuple[int, ...]
    anchor_vertex: int = -1  # owning vertex for empty walks, else -1

    def __len__(self) -> int:
        return len(self.darts)


class FaceWeighting:
    """Non-negative real weights on a set of face ids."""

    def __init__(self, weights: dict[int, float]):
        for f, x in weights.items():
            if not (x >= 0.0) or not math.isfinite(x):
                raise ValueError(f"face {f}: weight {x!r} must be finite and >= 0")
        self.weights = dict(weights)
        self._total = math.fsum(self.weights.values())

    def total(self) -> float:
        return self._total

    def __getitem__(self, face_id: int) -> float:
        return self.weights[face_id]

    def get(self, face_id: int, default: float = 0.0) -> float:
        return self.weights.get(face_id, default)

    def __contains__(self, face_id: int) -> bool:
        return face_id in self.weights

    def __len__(self) -> int:
        return len(self.weights)


def weight_sum(w: FaceWeighting, faces: Iterable[int]) -> float:
    """Sum of w over a subset of its domain; empty subsets sum to 0."""
    vals = []
    for f in faces:
        if f not in w:
            raise ValueError(f"face {f} outside weighting domain")
        vals.append(w[f])
    return math.fsum(vals)


class PlaneGraph:
    """A simple graph with a combinatorial embedding.

    Build with :meth:`from_neighbors`; the raw constructor is for internal
    use.  ``parent_map[i]`` gives the id a vertex had in the graph this one
    was induced from (identity for graphs built from scratch).
    """

    __slots__ = (
        "n", "m", "dart_tail", "rot_next", "rot_prev", "vfirst",
        "coords", "parent_map", "_faces", "_face_of_dart", "_iso_face_of",
        "_adj_sorted", "_labels",
    )

    def __init__(self, n, dart_tail, rot_next, rot_prev, vfirst,
                 coords=None, parent_map=None):
        self.n = n
        self.m = len(dart_tail) // 2
        self.dart_tail = dart_tail
        self.rot_next = rot_next
        self.rot_prev = rot_prev
        self.vfirst = vfirst
        self.coords = coords
        self.parent_map = parent_map
        self._faces = None
        self._face_of_dart = None
        self._iso_face_of = None
        self._adj_sorted = None
        self._labels = None

    # -- construction ------------------------------------------------------

    @classmethod
    def from_neighbors(cls, neighbors: Sequence[Sequence[int]],
                       coords: Optional[Sequence[tuple[float, float]]] = None,
                       parent_map: Optional[Sequence[int]] = None) -> "PlaneGraph":
        """Build from clockwise neighbour lists.

        ``neighbors[v]`` is the cyclic clockwise order of the neighbours of
        v.  Lists must be mutually consistent (u lists v exactly once iff v
        lists u exactly once) and describe a simple graph.
        """
        n = len(neighbors)
        deg = [len(nb) for nb in neighbors]
        for v, nb in enumerate(neighbors):
            seen = set()
            for u in nb:
                if not (0 <= u < n):
                    raise GraphStructureError(f"vertex {v}: neighbour {u} out of range")
                if u == v:
                    raise GraphStructureError(f"vertex {v}: self-loop")
                if u in seen:
                    raise GraphStructureError(f"vertex {v}: neighbour {u} listed twice")
                seen.add(u)
        # dart ids: scan vertices in order, rotation order; an edge gets its
        # dart pair (2e, 2e+1) when first seen
        edge_id: dict[tuple[int, int], int] = {}
        nedges = 0
        for v, nb in enumerate(neighbors):
            for u in nb:
                key = (v, u) if v < u else (u, v)
                if key not in edge_id:
                    edge_id[key] = nedges
                    nedges += 1
        dart_of: dict[tuple[int, int], int] = {}
        dart_tail = [0] * (2 * nedges)
        for (a, b), e in edge_id.items():
            dart_of[(a, b)] = 2 * e
            dart_of[(b, a)] = 2 * e + 1
            dart_tail[2 * e] = a
            dart_tail[2 * e + 1] = b
        rot_next = [0] * (2 * nedges)
        rot_prev = [0] * (2 * nedges)
        vfirst = [-1] * n
        nbset = [set(nb) for nb in neighbors]
        for v, nb in enumerate(neighbors):
            if not nb:
                continue
            ds = [dart_of[(v, u)] for u in nb]
            vfirst[v] = ds[0]
            k = len(ds)
            for i, d in enumerate(ds):
                rot_next[d] = ds[(i + 1) % k]
                rot_prev[d] = ds[(i - 1) % k]
        # mutual consistency
        for (a, b) in edge_id:
            if a not in nbset[b] or b not in nbset[a]:
                raise GraphStructureError(
                    f"edge {a}-{b}: rotation lists are not involutive")
        if sum(deg) != 2 * nedges:
            raise GraphStructureError("degree sum does not match edge count")
        co = tuple(tuple(map(float, c)) for c in coords) if coords is not None else None
        pm = tuple(parent_map) if parent_map is not None else None
        return cls(n, dart_tail, rot_next, rot_prev, vfirst, co, pm)

    # -- basic accessors ---------------------------------------------------

    def head(self, d: int) -> int:
        return self.dart_tail[d ^ 1]

    def tail(self, d: int) -> int:
        return self.dart_tail[d]

    def darts_of(self, v: int):
        """Darts leaving v in rotation order."""
        d0 = self.vfirst[v]
        if d0 == -1:
            return
        d = d0
        while True:
            yield d
            d = self.rot_next[d]
            if d == d0:
                break

    def degree(self, v: int) -> int:
        return sum(1 for _ in self.darts_of(v))

    def neighbors(self) -> list[list[int]]:
        """Clockwise neighbour lists (the inverse of from_neighbors)."""
        return [[self.head(d) for d in self.darts_of(v)] for v in range(self.n)]

    def adjacency_sets(self) -> list[set[int]]:
        if self._adj_sorted is None:
            adj = [set() for _ in range(self.n)]
            for d in range(0, 2 * self.m, 2):
                a, b = self.dart_tail[d], self.dart_tail[d ^ 1]
                adj[a].add(b)
                adj[b].add(a)
            self._adj_sorted = adj
        return self._adj_sorted

    def edges(self):
        for d in range(0, 2 * self.m, 2):
            yield (self.dart_tail[d], self.dart_tail[d ^ 1])

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adjacency_sets()[u]

    def __eq__(self, other):
        if not isinstance(other, PlaneGraph):
            return NotImplemented
        return (self.n == other.n and self.neighbors() == other.neighbors()
                and self.coords == other.coords)

    def __repr__(self):
        return f"PlaneGraph(n={self.n}, m={self.m})"

    # -- faces -------------------------------------------------------------

    def _trace(self):
        nd = 2 * self.m
        face_of = [-1] * nd
        faces: list[Face] = []
        for d0 in range(nd):
            if face_of[d0] != -1:
                continue
            fid = len(faces)
            walk = []
            d = d0
            while face_of[d] == -1:
                face_of[d] = fid
                walk.append(d)
                d = self.rot_next[d ^ 1]
            faces.append(Face(fid, tuple(walk)))
        iso = {}
        for v in range(self.n):
            if self.vfirst[v] == -1:
                fid = len(faces)
                faces.append(Face(fid, (), anchor_vertex=v))
                iso[v] = fid
        self._faces = faces
        self._face_of_dart = face_of
        self._iso_face_of = iso

    def faces(self) -> list[Face]:
        if self._faces is None:
            self._trace()
        return self._faces

    def face_of_dart(self) -> list[int]:
        if self._face_of_dart is None:
            self._trace()
        return self._face_of_dart

    def isolated_face_of(self) -> dict[int, int]:
        if self._iso_face_of is None:
            self._trace()
        return self._iso_face_of

    def face_vertices(self, face_id: int) -> list[int]:
        f = self.faces()[face_id]
        if f.anchor_vertex >= 0:
            return [f.anchor_vertex]
        return [self.dart_tail[d] for d in f.darts]

    def num_faces(self) -> int:
        return len(self.faces())

    # -- operations --------------------------------------------------------

    def components(self) -> list[list[int]]:
        """Connected components as sorted vertex lists, ordered by minimum."""
        if self.n == 0:
            return []
        labels = self._component_labels()
        ncomp = max(labels) + 1
        out: list[list[int]] = [[] for _ in range(ncomp)]
        for v, c in enumerate(labels):
            out[c].append(v)
        return out

    def _component_labels(self) -> list[int]:
        if self._labels is None:
            labels = [-1] * self.n
            tails, nxt, first = self.dart_tail, self.rot_next, self.vfirst
            cur = 0
            for v0 in range(self.n):
                if labels[v0] != -1:
                    continue
                labels[v0] = cur
                stack = [v0]
                while stack:
                    v = stack.pop()
                    d0 = first[v]
                    if d0 == -1:
                        continue
                    d = d0
                    while True:
                        u = tails[d ^ 1]
                        if labels[u] == -1:
                            labels[u] = cur
                            stack.append(u)
                        d = nxt[d]
                        if d == d0:
                            break
                cur += 1
            self._labels = labels
        return self._labels

    def is_connected(self) -> bool:
        if self.n <= 1:
            return True
        labels = self._component_labels()
        return max(labels) == 0


def trace_faces(G: PlaneGraph) -> list[Face]:
    """All faces of G as dart walks (plus empty walks for isolated vertices)."""
    return G.faces()


def incident_faces(G: PlaneGraph, v: int) -> set[int]:
    """Ids of the faces whose boundary walk visits v."""
    if not (0 <= v < G.n):
        raise ValueError(f"vertex {v} not in graph of order {G.n}")
    if G.vfirst[v] == -1:
        return {G.isolated_face_of()[v]}
    fod = G.face_of_dart()
    return {fod[d] for d in G.darts_of(v)}


def induced_subgraph(G: PlaneGraph, vertices: Iterable[int]) -> PlaneGraph:
    """G[S] with the inherited rotation system.

    Vertices are renumbered 0..|S|-1 in increasing order of their old ids;
    ``parent_map`` on the result maps back to ids in G.  Built directly
    from the dart arrays (the input is already a valid plane graph).
    """
    S = sorted(set(vertices))
    index = [-1] * G.n
    for i, v in enumerate(S):
        if not (0 <= v < G.n):
            raise ValueError(f"vertex {v} not in graph of order {G.n}")
        index[v] = i
    tails, nxt, first = G.dart_tail, G.rot_next, G.vfirst
    new_edge = {}
    dart_tail: list[int] = []
    rot_next: list[int] = []
    rot_prev: list[int] = []
    vfirst = [-1] * len(S)
    for i, v in enumerate(S):
        d0 = first[v]
        if d0 == -1:
            continue
        mine: list[int] = []
        d = d0
        while True:
            u = tails[d ^ 1]
            if index[u] != -1:
                e = d >> 1
                ne = new_edge.get(e)
                if ne is None:
                    ne = len(dart_tail)
                    new_edge[e] = ne
                    dart_tail.extend((i, index[u]))
                    rot_next.extend((0, 0))
                    rot_prev.extend((0, 0))
                    mine.append(ne)
                else:
                    mine.append(ne + 1 if dart_tail[ne] != i else ne)
            d = nxt[d]
            if d == d0:
                break
        if mine:
            vfirst[i] = mine[0]
            k = len(mine)
            for j, nd in enumerate(mine):
                rot_next[nd] = mine[(j + 1) % k]
                rot_prev[nd] = mine[(j - 1) % k]
    coords = tuple(G.coords[v] for v in S) if G.coords is not None else None
    pm = tuple(G.parent_map[v] for v in S) if G.parent_map is not None else tuple(S)
    return PlaneGraph(len(S), dart_tail, rot_next, rot_prev, vfirst, coords, pm)


def components(G: PlaneGraph) -> list[list[int]]:
    return G.components()


def validate(G: PlaneGraph) -> list[str]:
    """Structural checks; returns a list of violations (empty means ok).

    Checks simplicity, the twin involution, that each rotation is a single
    cycle over exactly the darts leaving its vertex, and Euler's relation
    v - e + f = 2 on every connected component.
    """
    out: list[str] = []
    nd = 2 * G.m
    seen_tail = [0] * G.n
    for d in range(nd):
        t, h = G.dart_tail[d], G.dart_tail[d ^ 1]
        if t == h:
            out.append(f"dart {d}: loop at vertex {t}")
    # rotation cycles partition darts by tail
    visited = [False] * nd
    for v in range(G.n):
        d0 = G.vfirst[v]
        if d0 == -1:
            continue
        d = d0
        while True:
            if visited[d]:
                out.append(f"dart {d} appears in more than one rotation")
                break
            visited[d] = True
            if G.dart_tail[d] != v:
                out.append(f"dart {d}: tail {G.dart_tail[d]} but listed at {v}")
            d = G.rot_next[d]
            if d == d0:
                break
    for d in range(nd):
        if not visited[d]:
            out.append(f"dart {d} missing from all rotations")
    if out:
        return out
    # parallel edges
    for v in range(G.n):
        heads = [G.head(d) for d in G.darts_of(v)]
        if len(heads) != len(set(heads)):
            out.append(f"vertex {v}: parallel edges in rotation")
    if out:
        return out
    # Euler per component
    labels = G._component_labels()
    ncomp = max(labels) + 1 if G.n else 0
    vcnt = [0] * ncomp
    ecnt = [0] * ncomp
    fcnt = [0] * ncomp
    for v in range(G.n):
        vcnt[labels[v]] += 1
    for a, b in G.edges():
        ecnt[labels[a]] += 1
    for f in G.faces():
        if f.anchor_vertex >= 0:
            fcnt[labels[f.anchor_vertex]] += 1
        else:
            fcnt[labels[G.dart_tail[f.darts[0]]]] += 1
    for c in range(ncomp):
        if vcnt[c] - ecnt[c] + fcnt[c] != 2:
            out.append(
                f"component {c}: Euler violation v={vcnt[c]} e={ecnt[c]} "
                f"f={fcnt[c]} (v-e+f must be 2)")
    return out
