"""Iterative noose peeling: cut weight-heavy, high-treewidth components of a
face-weighted plane graph until every remaining component has small width.

Components carry per-face bookkeeping: each face of a component is either
"original" (the identical walk is a face of the input graph and keeps its
weight) or a boundary face created by earlier cuts (weight zero).  When a
component C is cut along a noose, all removed material ends up inside one
face of each child, so a child gains at most one boundary face, while its
original weight drops to at most two thirds of C's.  Consequently a
component with b boundary faces holds at most (2/3)^b of the total weight,
which both terminates the loop and powers the reported class histogram.

The stop rule uses the heuristic width bound, which can only delay
stopping, never end it early, so the final guarantee max tw(component) < t
holds a fortiori.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .errors import PreconditionError
from .plane import FaceWeighting, PlaneGraph, induced_subgraph
from .separators import noose_separator
from .treewidth import tw_upper_bound

LOG32 = math.log(1.5)


def peel_threshold(N: float) -> float:
    """Smallest admissible width target for a total weight of N."""
    return 12.0 * math.sqrt(10.0 * max(math.log(max(N, 1.0)) / LOG32, 0.0) + 36.0) + 7.0


@dataclass
class PeelComponent:
    """Live component state: vertex ids into the input graph plus face flags."""

    graph: PlaneGraph
    gids: list[int]
    face_weight: dict[int, float]
    face_original: dict[int, bool]

    @property
    def comp_id(self) -> int:
        return self.gids[0]

    @property
    def interior_weight(self) -> float:
        return math.fsum(wt for f, wt in self.face_weight.items()
                         if self.face_original[f])

    @property
    def boundary_faces(self) -> int:
        return sum(1 for f, orig in self.face_original.items() if not orig)


@dataclass
class PeelReport:
    iterations: list[dict] = field(default_factory=list)
    class_histogram: dict[int, int] = field(default_factory=dict)
    separator_size: int = 0
    initial_max_tw_ub: int = -1
    final_max_tw_ub: int = -1
    paper_size_bound: float | None = None
    size_bound_in_force: bool = False
    threshold: float = 0.0

    def to_dict(self) -> dict:
        return {
            "iterations": self.iterations,
            "class_histogram": {str(k): v for k, v in sorted(self.class_histogram.items())},
            "separator_size": self.separator_size,
            "initial_max_tw_ub": self.initial_max_tw_ub,
            "final_max_tw_ub": self.final_max_tw_ub,
            "paper_size_bound": self.paper_size_bound,
            "size_bound_in_force": self.size_bound_in_force,
            "threshold": self.threshold,
        }


def peel_low_treewidth(G: PlaneGraph, w: FaceWeighting, N: float, W: float,
                       t: float, override: bool = False):
    """Remove a vertex set S so every component of G - S has width below t.

    Requires N >= W >= 1, total face weight at most N, and per-vertex face
    weight at least W.  ``override`` lets t drop below the admissible
    threshold; the reported size bound is then marked not-in-force.

    Returns (sorted S as vertex ids of G, PeelReport).
    """
    if not (W >= 1.0):
        raise PreconditionError(f"W >= 1 violated: W={W}")
    if not (N >= W):
        raise PreconditionError(f"N >= W violated: N={N}, W={W}")
    _check_per_vertex(G, w, W)
    thr = peel_threshold(N)
    in_force = t >= thr - 1e-9
    if not in_force and not override:
        raise PreconditionError(
            f"t >= 12*sqrt(10*log_1.5(N)+36)+7 violated: {t} < {thr} "
            "(pass override=True to run anyway)")

    report = PeelReport(threshold=thr, size_bound_in_force=in_force)
    if t > 7.0:
        report.paper_size_bound = (4778.0 * N / (W * (t - 7.0))
                                   + 20480.0 * N / (W * (t - 7.0) ** 2))

    live = _initial_components(G, w)
    # the weight cap is per component: a region bounded by several
    # components carries its weight to each, but branches never mix
    for comp in live:
        total = math.fsum(comp.face_weight.values())
        if total > N * (1 + 1e-9):
            raise PreconditionError(
                f"component weight exceeds N: {total} > {N} "
                f"(component of vertex {comp.comp_id})")
    S: list[int] = []
    first_pass = True
    while True:
        widths = [(c, tw_upper_bound(c.graph)[0]) for c in live]
        if first_pass:
            report.initial_max_tw_ub = max((ub for _, ub in widths), default=-1)
            first_pass = False
        cuttable = [(c, ub) for c, ub in widths if ub >= t]
        if not cuttable:
            break
        cuttable.sort(key=lambda it: (-it[0].interior_weight, it[0].comp_id))
        comp, ub = cuttable[0]
        live.remove(comp)
        n_c = comp.interior_weight
        x_c = comp.boundary_faces
        wts = FaceWeighting({f: (wt if comp.face_original[f] else 0.0)
                             for f, wt in comp.face_weight.items()})
        noose = noose_separator(comp.graph, wts)
        cut_local = sorted(set(noose.vertices))
        cut = [comp.gids[v] for v in cut_local]
        S.extend(cut)
        children = _split_component(comp, cut_local)
        rec = {
            "component_size": comp.graph.n,
            "component_id": comp.comp_id,
            "tw_ub": ub,
            "interior_weight": n_c,
            "boundary_faces": x_c,
            "noose_size": len(cut),
            "children": [],
            "class_index": _class_index(x_c, n_c, W, t),
            "hypothesis_holds": n_c / W >= 36.0 + 9.0 * x_c,
        }
        for child in children:
            n_child = child.interior_weight
            x_child = child.boundary_faces
            if n_child > (2.0 / 3.0) * n_c * (1 + 1e-9):
                raise AssertionError(
                    f"weight split violated: child {n_child} > 2/3 * {n_c}")
            if x_child > x_c + 1:
                raise AssertionError(
                    f"boundary growth violated: {x_child} > {x_c} + 1")
            if n_child > (2.0 / 3.0) ** x_child * N * (1 + 1e-9):
                raise AssertionError(
                    f"decay violated: {n_child} > (2/3)^{x_child} * {N}")
            rec["children"].append({
                "size": child.graph.n,
                "interior_weight": n_child,
                "boundary_faces": x_child,
                "class_index": _class_index(x_child, n_child, W, t),
            })
            live.append(child)
        ci = rec["class_index"]
        if ci is not None:
            report.class_histogram[ci] = report.class_histogram.get(ci, 0) + 1
        report.iterations.append(rec)

    report.separator_size = len(S)
    report.final_max_tw_ub = max(
        (tw_upper_bound(c.graph)[0] for c in live), default=-1)
    return sorted(S), report


def _check_per_vertex(G: PlaneGraph, w: FaceWeighting, W: float) -> None:
    fod = G.face_of_dart()
    iso = G.isolated_face_of()
    for v in range(G.n):
        if G.vfirst[v] == -1:
            fs = {iso[v]}
        else:
            fs = {fod[d] for d in G.darts_of(v)}
        got = math.fsum(w.get(f, 0.0) for f in fs)
        if got < W * (1 - 1e-9):
            raise PreconditionError(
                f"w(F(G,v)) >= W violated at vertex {v}: {got} < {W}")


def _class_index(x: int, n_c: float, W: float, t: float) -> int | None:
    if t <= 7.0:
        return None
    base = ((t - 7.0) / 12.0) ** 2
    val = x + n_c / W
    if val <= 0:
        return None
    return math.floor(math.log(val / base) / math.log(4.0 / 3.0))


def _initial_components(G: PlaneGraph, w: FaceWeighting) -> list[PeelComponent]:
    out = []
    for comp in G.components():
        H = induced_subgraph(G, comp)
        fw: dict[int, float] = {}
        orig: dict[int, bool] = {}
        gface = _face_correspondence_full(G, comp, H)
        for f in H.faces():
            gf = gface[f.face_id]
            fw[f.face_id] = w.get(gf, 0.0)
            orig[f.face_id] = True
        out.append(PeelComponent(graph=H, gids=comp, face_weight=fw,
                                 face_original=orig))
    return out


def _face_correspondence_full(G: PlaneGraph, comp: list[int], H: PlaneGraph):
    """Face map for a full connected component (walks map one-to-one)."""
    fodG = G.face_of_dart()
    dartG: dict[tuple[int, int], int] = {}
    cset = set(comp)
    for d in range(2 * G.m):
        if G.dart_tail[d] in cset:
            dartG[(G.dart_tail[d], G.dart_tail[d ^ 1])] = d
    out: dict[int, int] = {}
    for f in H.faces():
        if f.anchor_vertex >= 0:
            out[f.face_id] = G.isolated_face_of()[comp[f.anchor_vertex]]
        else:
            d0 = f.darts[0]
            key = (comp[H.dart_tail[d0]], comp[H.dart_tail[d0 ^ 1]])
            out[f.face_id] = fodG[dartG[key]]
    return out


def _split_component(comp: PeelComponent, cut_local: list[int]) -> list[PeelComponent]:
    """Children of comp minus the cut, with inherited face bookkeeping.

    A child face inherits (weight, original) from the identical walk of the
    parent when every dart of its walk maps into one parent face of the
    same length; anything else (merged regions around the cut, isolated
    leftovers) is a zero-weight boundary face.
    """
    H = comp.graph
    cut = set(cut_local)
    rest = [v for v in range(H.n) if v not in cut]
    adj = H.adjacency_sets()
    seen: set[int] = set()
    fodH = H.face_of_dart()
    dartH: dict[tuple[int, int], int] = {}
    for d in range(2 * H.m):
        dartH[(H.dart_tail[d], H.dart_tail[d ^ 1])] = d
    children = []
    for v0 in rest:
        if v0 in seen:
            continue
        part = [v0]
        seen.add(v0)
        i = 0
        while i < len(part):
            x = part[i]
            i += 1
            for u in adj[x]:
                if u not in cut and u not in seen:
                    seen.add(u)
                    part.append(u)
        part.sort()
        child = induced_subgraph(H, part)
        fw: dict[int, float] = {}
        orig: dict[int, bool] = {}
        for f in child.faces():
            inherited = None
            if f.anchor_vertex < 0:
                mapped = [dartH[(part[child.dart_tail[d]],
                                 part[child.dart_tail[d ^ 1]])] for d in f.darts]
                fh = fodH[mapped[0]]
                if (len(H.faces()[fh].darts) == len(mapped)
                        and all(fodH[d] == fh for d in mapped)):
                    inherited = fh
            if inherited is None:
                fw[f.face_id] = 0.0
                orig[f.face_id] = False
            else:
                fw[f.face_id] = comp.face_weight[inherited]
                orig[f.face_id] = comp.face_original[inherited]
        children.append(PeelComponent(
            graph=child, gids=[comp.gids[v] for v in part],
            face_weight=fw, face_original=orig))
    return children
