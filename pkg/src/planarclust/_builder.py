"""Mutable construction helper for plane graphs.

Keeps the dart arrays of a PlaneGraph in plain lists so that edges and
vertices can be inserted in O(1), then freezes back into a PlaneGraph.
Only additive operations are provided; every insertion keeps the embedding
valid, so Euler's relation is preserved step by step.

Insertion rule (derived from the face-tracing convention
next(d) = rot_next[twin(d)]): to run a new edge through a face between a
walk occurrence of u entered by dart e_u and one of v entered by e_v,
place the dart u->v right after twin(e_u) in the rotation of u and v->u
right after twin(e_v) at v.  If u and v sat on the same walk it splits in
two; if on different walks (or components) the walks merge.
"""

from __future__ import annotations

from .plane import PlaneGraph


class Builder:
    def __init__(self, G: PlaneGraph | None = None, n: int = 0):
        if G is not None:
            self.n = G.n
            self.dart_tail = list(G.dart_tail)
            self.rot_next = list(G.rot_next)
            self.rot_prev = list(G.rot_prev)
            self.vfirst = list(G.vfirst)
            self.coords = [list(c) for c in G.coords] if G.coords is not None else None
            self.parent_map = list(G.parent_map) if G.parent_map is not None else None
        else:
            self.n = n
            self.dart_tail = []
            self.rot_next = []
            self.rot_prev = []
            self.vfirst = [-1] * n
            self.coords = None
            self.parent_map = None

    def head(self, d: int) -> int:
        return self.dart_tail[d ^ 1]

    def add_vertex(self, coord=None) -> int:
        v = self.n
        self.n += 1
        self.vfirst.append(-1)
        if self.coords is not None:
            self.coords.append(list(coord) if coord is not None else [0.0, 0.0])
        if self.parent_map is not None:
            self.parent_map.append(-1)
        return v

    def _new_dart_pair(self, u: int, v: int) -> int:
        d = len(self.dart_tail)
        self.dart_tail.extend((u, v))
        self.rot_next.extend((d, d + 1))
        self.rot_prev.extend((d, d + 1))
        return d

    def _insert_after(self, pos: int, d: int) -> None:
        """Insert dart d into the rotation of its tail right after dart pos."""
        nxt = self.rot_next[pos]
        self.rot_next[pos] = d
        self.rot_prev[d] = pos
        self.rot_next[d] = nxt
        self.rot_prev[nxt] = d

    def _insert_isolated(self, v: int, d: int) -> None:
        self.vfirst[v] = d
        self.rot_next[d] = d
        self.rot_prev[d] = d

    def add_edge(self, u: int, enter_u: int | None, v: int, enter_v: int | None) -> int:
        """Add edge u-v through a face; returns the dart u->v.

        ``enter_u`` is the walk dart whose head is u at the chosen
        occurrence (None when u is isolated), likewise ``enter_v``.
        """
        d = self._new_dart_pair(u, v)
        if enter_u is None:
            self._insert_isolated(u, d)
        else:
            self._insert_after(enter_u ^ 1, d)
        if enter_v is None:
            self._insert_isolated(v, d + 1)
        else:
            self._insert_after(enter_v ^ 1, d + 1)
        return d

    def face_walk(self, d0: int) -> list[int]:
        """Trace the face walk through dart d0 (current arrays)."""
        walk = [d0]
        d = self.rot_next[d0 ^ 1]
        while d != d0:
            walk.append(d)
            d = self.rot_next[d ^ 1]
        return walk

    def freeze(self) -> PlaneGraph:
        co = tuple(tuple(c) for c in self.coords) if self.coords is not None else None
        pm = tuple(self.parent_map) if self.parent_map is not None else None
        return PlaneGraph(self.n, list(self.dart_tail), list(self.rot_next),
                          list(self.rot_prev), list(self.vfirst), co, pm)
