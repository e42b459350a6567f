"""Tree decompositions and treewidth tools.

Heuristic width comes from a greedy elimination order (min-fill on small
graphs, min-degree beyond 2000 vertices, ties broken by lowest vertex id);
the decomposition is reconstructed from the order, so the reported width is
always an upper bound on the true treewidth.  Exact treewidth for graphs of
up to 15 vertices uses dynamic programming over vertex subsets, and the
grid-minor oracle does an exhaustive branch-set search (k <= 3 suffices for
15 vertices, since a 4x4 grid minor needs 16).
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass

from .errors import PreconditionError
from .plane import PlaneGraph


@dataclass
class TreeDecomposition:
    bags: list[frozenset[int]]
    edges: list[tuple[int, int]]

    @property
    def width(self) -> int:
        return max((len(b) for b in self.bags), default=0) - 1

    def node_count(self) -> int:
        return len(self.bags)


class TdSizeError(RuntimeError):
    """The extraction loop produced a separator larger than the promised p."""

    def __init__(self, message: str, separator: list[int]):
        super().__init__(message)
        self.separator = separator


def _adjacency(G) -> list[set[int]]:
    """Accept a PlaneGraph or an adjacency mapping/list of sets."""
    if isinstance(G, PlaneGraph):
        return [set(s) for s in G.adjacency_sets()]
    if isinstance(G, dict):
        n = (max(G) + 1) if G else 0
        adj = [set() for _ in range(n)]
        for v, ns in G.items():
            for u in ns:
                adj[v].add(u)
                adj[u].add(v)
        return adj
    return [set(s) for s in G]


def validate_td(G, T: TreeDecomposition) -> list[str]:
    """Check both decomposition axioms plus tree-ness; [] means ok."""
    adj = _adjacency(G)
    n = len(adj)
    out: list[str] = []
    b = len(T.bags)
    for i, bag in enumerate(T.bags):
        for v in bag:
            if not (0 <= v < n):
                out.append(f"bag {i}: vertex {v} outside graph")
    tadj: list[list[int]] = [[] for _ in range(b)]
    for i, j in T.edges:
        if not (0 <= i < b and 0 <= j < b):
            out.append(f"tree edge ({i},{j}) out of range")
            return out
        tadj[i].append(j)
        tadj[j].append(i)
    if b > 0:
        if len(T.edges) != b - 1:
            out.append(f"{len(T.edges)} tree edges for {b} bags (tree needs {b - 1})")
        seen = [False] * b
        stack = [0]
        seen[0] = True
        cnt = 1
        while stack:
            x = stack.pop()
            for y in tadj[x]:
                if not seen[y]:
                    seen[y] = True
                    cnt += 1
                    stack.append(y)
        if cnt != b:
            out.append("decomposition tree is disconnected")
    if out:
        return out
    for v in range(n):
        for u in adj[v]:
            if u < v:
                continue
            if not any(v in bag and u in bag for bag in T.bags):
                out.append(f"edge {v}-{u} uncovered")
    for v in range(n):
        nodes = [i for i, bag in enumerate(T.bags) if v in bag]
        if not nodes:
            out.append(f"vertex {v} in no bag")
            continue
        node_set = set(nodes)
        seen_v = {nodes[0]}
        stack = [nodes[0]]
        while stack:
            x = stack.pop()
            for y in tadj[x]:
                if y in node_set and y not in seen_v:
                    seen_v.add(y)
                    stack.append(y)
        if len(seen_v) != len(nodes):
            out.append(f"vertex {v}: bags do not induce a subtree")
    return out


# -- heuristic upper bound --------------------------------------------------

_MIN_FILL_LIMIT = 2000


def _fill_count(adj, v) -> int:
    ns = adj[v]
    cnt = 0
    for u in ns:
        cnt += len(ns) - 1 - len(ns & adj[u])
    return cnt // 2


def _elimination_order(adj: list[set[int]]) -> tuple[list[int], int]:
    """Greedy elimination order and the width it realizes.

    Mutates ``adj`` (fill edges are added as vertices go).
    """
    n = len(adj)
    alive = [True] * n
    remaining = n
    use_fill = n <= _MIN_FILL_LIMIT

    def score(v):
        if use_fill:
            return (_fill_count(adj, v), len(adj[v]), v)
        return (len(adj[v]), v)

    key = {v: score(v) for v in range(n)}
    heap = list(key.values())
    heapq.heapify(heap)
    order: list[int] = []
    width = 0
    while remaining:
        while True:
            e = heapq.heappop(heap)
            v = e[-1]
            if alive[v] and key[v] == e:
                break
        ns = set(adj[v])
        order.append(v)
        width = max(width, len(ns))
        for a in ns:
            missing = ns - adj[a]
            missing.discard(a)
            for c in missing:
                adj[a].add(c)
                adj[c].add(a)
        for u in ns:
            adj[u].discard(v)
        adj[v] = set()
        alive[v] = False
        remaining -= 1
        dirty = set(ns)
        if use_fill:
            for u in ns:
                dirty |= adj[u]
        for u in dirty:
            if alive[u]:
                key[u] = score(u)
                heapq.heappush(heap, key[u])
    return order, width


def decomposition_from_order(adj: list[set[int]], order: list[int]) -> TreeDecomposition:
    """Clique-tree decomposition induced by an elimination order.

    Bag i is the eliminated vertex plus its neighbourhood at elimination
    time; its tree parent is the bag of the earliest-eliminated such
    neighbour.  Bags with no later neighbour are chained so the result is a
    single tree even for disconnected graphs.
    """
    work = [set(s) for s in adj]
    pos = {v: i for i, v in enumerate(order)}
    bags: list[frozenset[int]] = []
    elim_nbrs: list[set[int]] = []
    for v in order:
        ns = set(work[v])
        elim_nbrs.append(ns)
        bags.append(frozenset(ns | {v}))
        for a in ns:
            missing = ns - work[a]
            missing.discard(a)
            for c in missing:
                work[a].add(c)
                work[c].add(a)
        for u in ns:
            work[u].discard(v)
        work[v] = set()
    edges = []
    for i, ns in enumerate(elim_nbrs):
        if ns:
            j = pos[min(ns, key=lambda u: pos[u])]
            edges.append((i, j))
        elif i + 1 < len(order):
            edges.append((i, i + 1))
    if not bags:
        bags = [frozenset()]
    return TreeDecomposition(bags=bags, edges=edges)


def tw_upper_bound(G) -> tuple[int, TreeDecomposition]:
    """Heuristic treewidth upper bound with its witness decomposition."""
    base = _adjacency(G)
    n = len(base)
    if n == 0:
        return -1, TreeDecomposition(bags=[frozenset()], edges=[])
    order, width = _elimination_order([set(s) for s in base])
    T = decomposition_from_order(base, order)
    return max(width, T.width), T


# -- exact treewidth (small graphs) ------------------------------------------

def tw_exact_small(G, limit: int = 15) -> int:
    """Exact treewidth by subset dynamic programming; |V| <= limit.

    f(S) is the best width of an elimination order starting with the
    vertices of S; eliminating v after S costs the number of vertices
    outside S+v reachable from v through S.
    """
    adj = _adjacency(G)
    n = len(adj)
    if n > limit:
        raise ValueError(f"graph has {n} > {limit} vertices")
    if n == 0:
        return -1
    amask = [0] * n
    for v in range(n):
        for u in adj[v]:
            amask[v] |= 1 << u
    full = (1 << n) - 1
    INF = n + 1
    f = [INF] * (full + 1)
    f[0] = -1

    def q_value(X: int, v: int) -> int:
        inside = X | (1 << v)
        comp = 1 << v
        frontier = comp
        reach = amask[v]
        while frontier:
            nxt = 0
            fr = frontier
            while fr:
                b = fr & -fr
                fr ^= b
                nxt |= amask[b.bit_length() - 1]
            reach |= nxt
            nxt &= inside & ~comp
            comp |= nxt
            frontier = nxt
        return bin(reach & ~inside).count("1")

    for S in range(1, full + 1):
        best = INF
        T = S
        while T:
            b = T & -T
            T ^= b
            prev = f[S ^ b]
            if prev >= best:
                continue
            val = q_value(S ^ b, b.bit_length() - 1)
            cand = prev if prev > val else val
            if cand < best:
                best = cand
        f[S] = best
    return f[full]


# -- grid minors (small graphs) ----------------------------------------------

_GRID3 = {
    0: (1, 3), 1: (0, 2, 4), 2: (1, 5),
    3: (0, 4, 6), 4: (1, 3, 5, 7), 5: (2, 4, 8),
    6: (3, 7), 7: (4, 6, 8), 8: (5, 7),
}
_CELL_ORDER = (4, 1, 3, 5, 7, 0, 2, 6, 8)


def _blocks(adj: list[set[int]]) -> list[list[tuple[int, int]]]:
    """Biconnected components as edge lists (recursive Tarjan; small n)."""
    n = len(adj)
    disc = [-1] * n
    low = [0] * n
    timer = [0]
    estack: list[tuple[int, int]] = []
    out: list[list[tuple[int, int]]] = []

    def dfs(v: int, parent: int):
        disc[v] = low[v] = timer[0]
        timer[0] += 1
        for u in sorted(adj[v]):
            if u == parent:
                parent = -2  # skip the tree edge back once
                continue
            if disc[u] == -1:
                estack.append((v, u))
                dfs(u, v)
                low[v] = min(low[v], low[u])
                if low[u] >= disc[v]:
                    comp = []
                    while True:
                        e = estack.pop()
                        comp.append(e)
                        if e == (v, u):
                            break
                    out.append(comp)
            elif disc[u] < disc[v]:
                estack.append((v, u))
                low[v] = min(low[v], disc[u])

    for r in range(n):
        if disc[r] == -1 and adj[r]:
            dfs(r, -1)
    return out


def _has_big_cycle(adj: list[set[int]]) -> bool:
    """True iff some cycle has length >= 4 (equivalently a 2x2 grid minor).

    Every cycle is a triangle exactly when every biconnected block spans at
    most three vertices.
    """
    for comp in _blocks(adj):
        if len({v for e in comp for v in e}) >= 4:
            return True
    return False


def _connected_mask(amask: list[int], mask: int) -> bool:
    if mask == 0:
        return False
    comp = mask & -mask
    frontier = comp
    while frontier:
        nxt = 0
        fr = frontier
        while fr:
            b = fr & -fr
            fr ^= b
            nxt |= amask[b.bit_length() - 1]
        nxt &= mask & ~comp
        comp |= nxt
        frontier = nxt
    return comp == mask


def _subsets_of(mask: int, max_size: int):
    """Non-empty subsets of mask with at most max_size bits, smallest first."""
    members = []
    m = mask
    while m:
        b = m & -m
        m ^= b
        members.append(b)
    k = len(members)
    out: list[int] = []

    def rec(i: int, cur: int, size: int):
        if size:
            out.append(cur)
        if size == max_size:
            return
        for j in range(i, k):
            rec(j + 1, cur | members[j], size + 1)

    rec(0, 0, 0)
    out.sort(key=lambda s: bin(s).count("1"))
    return out


def grid_minor_exact_small(G, k: int) -> bool:
    """True iff the k x k grid is a minor of G (|V| <= 15, k <= 3)."""
    adj = _adjacency(G)
    n = len(adj)
    if n > 15:
        raise ValueError(f"graph has {n} > 15 vertices")
    if not (1 <= k <= 3):
        raise ValueError("k must be between 1 and 3")
    if k == 1:
        return n >= 1
    if k == 2:
        return _has_big_cycle(adj)
    if n < 9 or sum(len(s) for s in adj) // 2 < 12:
        return False
    if tw_exact_small(adj) < 3:
        return False
    amask = [0] * n
    for v in range(n):
        for u in adj[v]:
            amask[v] |= 1 << u

    def neighbourhood(mask: int) -> int:
        reach = 0
        m = mask
        while m:
            bit = m & -m
            m ^= bit
            reach |= amask[bit.bit_length() - 1]
        return reach

    placed: dict[int, int] = {}

    def search(idx: int, avail: int) -> bool:
        if idx == 9:
            return True
        cell = _CELL_ORDER[idx]
        need = [placed[c] for c in _GRID3[cell] if c in placed]
        cells_left = 9 - idx - 1
        budget = bin(avail).count("1") - cells_left
        if budget < 1:
            return False
        for sub in _subsets_of(avail, budget):
            if not _connected_mask(amask, sub):
                continue
            nb = neighbourhood(sub)
            if any(not (nb & other) for other in need):
                continue
            placed[cell] = sub
            if search(idx + 1, avail & ~sub):
                return True
            del placed[cell]
        return False

    return search(0, (1 << n) - 1)


def gm_exact_small(G) -> int:
    """Largest k with a k x k grid minor; exact for graphs of <= 15 vertices."""
    adj = _adjacency(G)
    if len(adj) == 0:
        return 0
    best = 1
    for k in (2, 3):
        if grid_minor_exact_small(adj, k):
            best = k
        else:
            break
    return best


# -- q-separators from a decomposition ---------------------------------------

def td_q_separator(G, T: TreeDecomposition, q: float, p: float,
                   strict: bool = True) -> list[int]:
    """A q-separator of size <= p extracted from a width-k decomposition.

    Requires n(k+1) <= p*q and p >= k+1.  While some component of G - S has
    more than q vertices, the decomposition is restricted to that component
    and a centroid bag (every weight part at most half of the component) is
    moved into S, so each round adds at most k+1 vertices.  The size
    promise is asserted at the end; when it fails and ``strict`` is set, a
    :class:`TdSizeError` carrying the (still valid) separator is raised.
    """
    adj = _adjacency(G)
    n = len(adj)
    k = T.width
    if n * (k + 1) > p * q + 1e-9:
        raise PreconditionError(
            f"n(k+1) <= pq violated: {n}*({k}+1) = {n * (k + 1)} > {p * q}")
    if p < k + 1:
        raise PreconditionError(f"p >= k+1 violated: {p} < {k + 1}")
    if n <= q:
        return []
    b = len(T.bags)
    tadj: list[list[int]] = [[] for _ in range(b)]
    for i, j in T.edges:
        tadj[i].append(j)
        tadj[j].append(i)
    order, parent = _preorder_with_parents(tadj)
    S: set[int] = set()
    while True:
        comp = _oversized_component(adj, S, q)
        if comp is None:
            break
        bag_x = _centroid_bag(T, tadj, order, parent, comp)
        if not bag_x:
            raise AssertionError("empty centroid bag for a connected component")
        S.update(bag_x)
    out = sorted(S)
    if len(out) > p:
        msg = f"|S| <= p violated: {len(out)} > {p}"
        if strict:
            raise TdSizeError(msg, out)
    return out


def _oversized_component(adj, S, q):
    n = len(adj)
    seen = [False] * n
    for v in S:
        seen[v] = True
    for v0 in range(n):
        if seen[v0]:
            continue
        comp = [v0]
        seen[v0] = True
        i = 0
        while i < len(comp):
            v = comp[i]
            i += 1
            for u in adj[v]:
                if not seen[u]:
                    seen[u] = True
                    comp.append(u)
        if len(comp) > q:
            return set(comp)
    return None


def _preorder_with_parents(tadj):
    b = len(tadj)
    parent = [-1] * b
    order = []
    seen = [False] * b
    for root in range(b):
        if seen[root]:
            continue
        seen[root] = True
        stack = [root]
        while stack:
            x = stack.pop()
            order.append(x)
            for y in sorted(tadj[x], reverse=True):
                if not seen[y]:
                    seen[y] = True
                    parent[y] = x
                    stack.append(y)
    return order, parent


def _centroid_bag(T, tadj, order, parent, comp: set[int]) -> set[int]:
    """Bag (restricted to comp) splitting comp's weight into halves.

    Each component vertex is charged to the root-most restricted bag
    containing it; a node minimizing the maximum weight among the parts of
    the tree around it is a centroid, so all parts weigh at most half.
    """
    b = len(T.bags)
    rbags = [T.bags[i] & comp for i in range(b)]
    assigned = [0] * b
    placed: set[int] = set()
    for x in order:
        fresh = rbags[x] - placed
        if fresh:
            assigned[x] = len(fresh)
            placed |= fresh
    total = len(placed)
    sub = assigned[:]
    for x in reversed(order):
        if parent[x] != -1:
            sub[parent[x]] += sub[x]
    best_key = None
    best_bag: set[int] = set()
    for x in range(b):
        parts = [sub[y] for y in tadj[x] if parent[y] == x]
        if parent[x] != -1:
            parts.append(total - sub[x])
        worst = max(parts, default=0)
        if best_key is None or (worst, x) < best_key:
            best_key = (worst, x)
            best_bag = set(rbags[x])
    return best_bag


# -- weighted treewidth bound -------------------------------------------------

def tw_weight_bound(x: int, N: float, W: float) -> float:
    """The diagnostic bound 12*sqrt(x + N/W) + 7 for N >= W >= 1, x >= 0."""
    if x < 0:
        raise ValueError(f"x must be >= 0, got {x}")
    if not (W >= 1.0):
        raise ValueError(f"W >= 1 required, got {W}")
    if not (N >= W):
        raise ValueError(f"N >= W required, got N={N}, W={W}")
    return 12.0 * math.sqrt(x + N / W) + 7.0
