"""End-to-end clustered colourings of plane graphs.

``three_colour`` runs the three-stage pipeline: a minimal q-separator
(everything else red), a peel of its high-treewidth parts (yellow), and a
decomposition-based q-separator of the low-width remainder (more yellow),
with the rest blue.  Red and blue components are bounded by q by
construction; yellow is bounded by the number of yellow vertices.  The
report records every inequality the asymptotic analysis promises, since at
desk scale some of them only hold directionally.

Face weights for the peel stage: a face of the separator subgraph G[S] is
a region of the plane, found by merging faces of G across every edge with
a deleted endpoint (union-find).  Each region's weight is the number of
deleted vertices inside it.  A region may be bounded by walks of several
components of G[S]; its weight is visible on each such walk (components
are peeled independently, so nothing is double-counted within a branch),
while the distinct-region total equals exactly n - |S|.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field

from .errors import PreconditionError
from .peel import peel_low_treewidth, peel_threshold
from .plane import FaceWeighting, PlaneGraph, induced_subgraph
from .separators import minimalize_q_separator, q_separator
from .treewidth import td_q_separator, tw_upper_bound

COLOURS = ("red", "yellow", "blue")


@dataclass
class Colouring:
    assignment: list[str]
    clustering: int
    per_colour: dict[str, int] = field(default_factory=dict)


@dataclass
class PipelineParams:
    q: float
    t: float
    p: float
    override_t: bool = False

    @classmethod
    def defaults(cls, n: int) -> "PipelineParams":
        n = max(n, 1)
        q = 16.0 * n ** (4.0 / 9.0)
        t = max(40.0 * n ** (1.0 / 9.0), peel_threshold(float(n)) + 1.0)
        p = 8.0 * n ** (4.0 / 9.0)
        return cls(q=q, t=t, p=p)


@dataclass
class SeparatorFaceWeights:
    """Face weights of G[S] induced by the vertices of G - S.

    ``weighting`` is keyed by walk-face ids of G[S]; every walk bounding a
    region sees the region's full weight.  ``class_weight`` holds each
    region once (keyed by an arbitrary representative), so its total is
    exactly |V(G)| - |S|.
    """

    weighting: FaceWeighting
    face_class: dict[int, int]
    class_weight: dict[int, float]

    def total_distinct(self) -> float:
        return math.fsum(self.class_weight.values())


def face_weights_from_separator(G: PlaneGraph, S, G1: PlaneGraph | None = None
                                ) -> SeparatorFaceWeights:
    """Count vertices of G - S into the region of G[S] containing them.

    Works combinatorially: faces of G merge across any edge incident to a
    deleted vertex; all faces around a deleted vertex merge, so each
    component of G - S lands in exactly one region (the structural error
    of a component facing two regions cannot arise).
    """
    Svert = sorted(set(S))
    for v in Svert:
        if not (0 <= v < G.n):
            raise ValueError(f"vertex {v} not in graph of order {G.n}")
    if G1 is None:
        G1 = induced_subgraph(G, Svert)
    in_S = [False] * G.n
    for v in Svert:
        in_S[v] = True
    nf = G.num_faces()
    parent = list(range(nf))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    fod = G.face_of_dart()
    for d in range(0, 2 * G.m, 2):
        a, b = G.dart_tail[d], G.dart_tail[d ^ 1]
        if not in_S[a] or not in_S[b]:
            ra, rb = find(fod[d]), find(fod[d ^ 1])
            if ra != rb:
                parent[rb] = ra
    iso = G.isolated_face_of()
    class_weight: dict[int, float] = {}
    for v in range(G.n):
        if in_S[v]:
            continue
        if G.vfirst[v] == -1:
            r = find(iso[v])
        else:
            r = find(fod[G.vfirst[v]])
        class_weight[r] = class_weight.get(r, 0.0) + 1.0

    # G1 vertex i is Svert[i]; map each G1 face back to its region in G
    dartG: dict[tuple[int, int], int] = {}
    for d in range(2 * G.m):
        if in_S[G.dart_tail[d]] and in_S[G.dart_tail[d ^ 1]]:
            dartG[(G.dart_tail[d], G.dart_tail[d ^ 1])] = d
    face_class: dict[int, int] = {}
    weights: dict[int, float] = {}
    iso1 = G1.isolated_face_of()
    for f in G1.faces():
        if f.anchor_vertex >= 0:
            v = Svert[f.anchor_vertex]
            r = find(fod[G.vfirst[v]]) if G.vfirst[v] != -1 else find(iso[v])
        else:
            d0 = f.darts[0]
            key = (Svert[G1.dart_tail[d0]], Svert[G1.dart_tail[d0 ^ 1]])
            r = find(fod[dartG[key]])
        face_class[f.face_id] = r
        weights[f.face_id] = class_weight.get(r, 0.0)
    return SeparatorFaceWeights(
        weighting=FaceWeighting(weights),
        face_class=face_class,
        class_weight=class_weight,
    )


def verify_clustering(G: PlaneGraph, colouring) -> dict[str, int]:
    """Exact per-colour maximum component size by a fresh traversal."""
    assignment = colouring.assignment if isinstance(colouring, Colouring) else colouring
    if len(assignment) != G.n:
        raise ValueError(f"colouring covers {len(assignment)} of {G.n} vertices")
    for v, c in enumerate(assignment):
        if c not in COLOURS:
            raise ValueError(f"vertex {v} has no valid colour: {c!r}")
    adj = G.adjacency_sets()
    seen = [False] * G.n
    out: dict[str, int] = {}
    for v0 in range(G.n):
        if seen[v0]:
            continue
        col = assignment[v0]
        size = 0
        stack = [v0]
        seen[v0] = True
        while stack:
            x = stack.pop()
            size += 1
            for u in adj[x]:
                if not seen[u] and assignment[u] == col:
                    seen[u] = True
                    stack.append(u)
        out[col] = max(out.get(col, 0), size)
    return out


def _ratio(value: float, scale: float) -> float:
    return value / scale if scale > 0 else 0.0


def three_colour(G: PlaneGraph, params: PipelineParams | None = None):
    """3-colouring with red/blue components at most q and yellow bounded by
    the number of yellow vertices; see the module docstring."""
    n = G.n
    params = params or PipelineParams.defaults(n)
    if n == 0:
        return Colouring([], 0, {}), {"algo": "main", "n": 0, "stages": {}}
    if not G.is_connected():
        return _three_colour_disconnected(G, params)
    report: dict = {"algo": "main", "n": n, "q": params.q, "t": params.t,
                    "p": params.p, "flags": {}, "stages": {}, "timings_ms": {}}
    t0 = time.perf_counter()
    q = params.q
    r0 = q_separator(G, q)
    report["timings_ms"]["s0"] = 1000 * (time.perf_counter() - t0)
    s0_bound = 3.0 * n ** (7.0 / 9.0)
    report["stages"]["s0"] = {"size": len(r0.vertices), "bound": s0_bound,
                              "c_impl": r0.c_impl,
                              "events": len(r0.trace)}
    report["flags"]["s0_within_bound"] = len(r0.vertices) <= s0_bound + 1e-9

    t0 = time.perf_counter()
    S = minimalize_q_separator(G, q, r0.vertices)
    report["timings_ms"]["minimalize"] = 1000 * (time.perf_counter() - t0)
    report["stages"]["s_minimal"] = {"size": len(S)}

    assignment = ["red"] * n
    if not S:
        col = _finish(G, assignment, report, params)
        return col

    t0 = time.perf_counter()
    G1 = induced_subgraph(G, S)
    fw = face_weights_from_separator(G, S, G1)
    report["timings_ms"]["face_weights"] = 1000 * (time.perf_counter() - t0)
    pv_min = _per_vertex_min(G1, fw.weighting)
    report["stages"]["face_weights"] = {
        "distinct_total": fw.total_distinct(),
        "expected_total": float(n - len(S)),
        "per_vertex_min": pv_min,
    }
    report["flags"]["per_vertex_weight_ok"] = pv_min >= q - 1.0 - 1e-9
    report["flags"]["weight_total_ok"] = (
        abs(fw.total_distinct() - (n - len(S))) <= 1e-6)

    W = q - 1.0
    t0 = time.perf_counter()
    s1_local, peel_report = peel_low_treewidth(
        G1, fw.weighting, N=float(n), W=W, t=params.t,
        override=params.override_t)
    report["timings_ms"]["peel"] = 1000 * (time.perf_counter() - t0)
    s1 = [S[v] for v in s1_local]
    s1_bound = 8.0 * n ** (4.0 / 9.0)
    report["stages"]["peel"] = peel_report.to_dict()
    report["stages"]["s1"] = {"size": len(s1), "bound": s1_bound}
    report["flags"]["s1_within_bound"] = len(s1) <= s1_bound + 1e-9
    report["flags"]["t_threshold_ok"] = peel_report.size_bound_in_force

    t0 = time.perf_counter()
    rest1 = [v for v in range(G1.n) if v not in set(s1_local)]
    G2 = induced_subgraph(G1, rest1)
    g2_to_g = [S[v] for v in rest1]
    k2, T2 = tw_upper_bound(G2)
    p_eff = params.p
    precond_ok = G2.n * (k2 + 1) <= p_eff * q + 1e-9
    if not precond_ok:
        p_eff = G2.n * (k2 + 1) / q
    if p_eff < k2 + 1:
        p_eff = float(k2 + 1)
    s2_local = td_q_separator(G2, T2, q, p_eff, strict=False) if G2.n else []
    report["timings_ms"]["s2"] = 1000 * (time.perf_counter() - t0)
    s2 = [g2_to_g[v] for v in s2_local]
    report["stages"]["s2"] = {"size": len(s2), "g2_size": G2.n, "k2": k2,
                              "p_effective": p_eff}
    report["flags"]["treewidthsep_precondition_ok"] = precond_ok
    report["flags"]["p_raised"] = p_eff > params.p
    report["flags"]["s2_within_p"] = len(s2) <= p_eff + 1e-9

    for v in s1:
        assignment[v] = "yellow"
    for v in s2:
        assignment[v] = "yellow"
    for v in S:
        if assignment[v] == "red":
            assignment[v] = "blue"
    yellow_total = len(s1) + len(s2)
    ybound = 16.0 * n ** (4.0 / 9.0)
    report["stages"]["yellow"] = {"total": yellow_total, "bound": ybound}
    report["flags"]["yellow_within_bound"] = yellow_total <= ybound + 1e-9
    return _finish(G, assignment, report, params, yellow_cap=yellow_total)


def _per_vertex_min(G1: PlaneGraph, w: FaceWeighting) -> float:
    fod = G1.face_of_dart()
    iso = G1.isolated_face_of()
    best = math.inf
    for v in range(G1.n):
        if G1.vfirst[v] == -1:
            fs = {iso[v]}
        else:
            fs = {fod[d] for d in G1.darts_of(v)}
        best = min(best, math.fsum(w.get(f, 0.0) for f in fs))
    return best if best is not math.inf else 0.0


def _finish(G, assignment, report, params, yellow_cap=None):
    maxima = verify_clustering(G, assignment)
    q = params.q
    for colour in ("red", "blue"):
        got = maxima.get(colour, 0)
        if got > q:
            raise AssertionError(f"{colour} component of {got} exceeds q={q}")
    if yellow_cap is not None and maxima.get("yellow", 0) > yellow_cap:
        raise AssertionError("yellow component exceeds the yellow vertex count")
    clustering = max(maxima.values(), default=0)
    n = G.n
    report["clustering"] = {
        "per_colour": maxima,
        "max": clustering,
        "ratio_n49": _ratio(clustering, n ** (4.0 / 9.0)),
    }
    return Colouring(assignment, clustering, maxima), report


def _three_colour_disconnected(G: PlaneGraph, params: PipelineParams):
    """Colour every component on its own; bounds hold with the global q."""
    n = G.n
    assignment = [""] * n
    subreports = []
    for comp in G.components():
        H = induced_subgraph(G, comp)
        col, rep = three_colour(H, params)
        for i, v in enumerate(comp):
            assignment[v] = col.assignment[i]
        subreports.append(rep)
    report = {"algo": "main", "n": n, "q": params.q, "t": params.t,
              "p": params.p, "components": subreports, "flags": {}}
    agg_flags: dict[str, bool] = {}
    for rep in subreports:
        for k, v in rep.get("flags", {}).items():
            agg_flags[k] = agg_flags.get(k, True) and bool(v)
    report["flags"] = agg_flags
    return _finish(G, assignment, report, params)


def two_colour(G: PlaneGraph):
    """Blue separator, red remainder: clustering at most max(q, |S|) with
    q = n^(2/3).  Graphs of at most three vertices stay red (separating
    them cannot improve the bound)."""
    n = G.n
    if n == 0:
        return Colouring([], 0, {}), {"algo": "two", "n": 0}
    q = float(n) ** (2.0 / 3.0)
    t0 = time.perf_counter()
    S = q_separator(G, q).vertices if n > max(q, 3.0) else ()
    assignment = ["red"] * n
    for v in S:
        assignment[v] = "blue"
    maxima = verify_clustering(G, assignment)
    clustering = max(maxima.values(), default=0)
    if S and maxima.get("red", 0) > q:
        raise AssertionError("red component exceeds q")
    report = {
        "algo": "two", "n": n, "q": q, "separator_size": len(S),
        "clustering": {"per_colour": maxima, "max": clustering,
                       "ratio_n23": _ratio(clustering, q)},
        "timings_ms": {"total": 1000 * (time.perf_counter() - t0)},
    }
    return Colouring(assignment, clustering, maxima), report


def lmst_three_colour(G: PlaneGraph):
    """Two-level baseline: separator of G, then separator of the separator
    subgraph, clustering on the order of sqrt(n)."""
    n = G.n
    if n == 0:
        return Colouring([], 0, {}), {"algo": "lmst3", "n": 0}
    q = math.sqrt(float(n))
    t0 = time.perf_counter()
    S = list(q_separator(G, q).vertices) if n > max(q, 3.0) else []
    GS = induced_subgraph(G, S)
    S1_local = q_separator(GS, q).vertices if GS.n else ()
    S1 = {S[v] for v in S1_local}
    assignment = ["red"] * n
    for v in S:
        assignment[v] = "yellow" if v in S1 else "blue"
    maxima = verify_clustering(G, assignment)
    clustering = max(maxima.values(), default=0)
    if S and (maxima.get("red", 0) > q or maxima.get("blue", 0) > q):
        raise AssertionError("component bound exceeded")
    report = {
        "algo": "lmst3", "n": n, "q": q,
        "separator_sizes": {"s": len(S), "s1": len(S1)},
        "clustering": {"per_colour": maxima, "max": clustering,
                       "ratio_n12": _ratio(clustering, q)},
        "timings_ms": {"total": 1000 * (time.perf_counter() - t0)},
    }
    return Colouring(assignment, clustering, maxima), report
