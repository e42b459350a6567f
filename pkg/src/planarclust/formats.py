"""Flat-file formats: .plan graphs, colourings, .td tree decompositions.

.plan::

    planar <n> <m>
    <v>: <u1> <u2> ... <uk>     (one line per vertex; clockwise rotation)
    coords                      (optional section)
    <v> <x> <y>                 (one line per vertex)

Colouring files have one ``<v> <red|yellow|blue>`` line per vertex.

.td uses the common text form: header ``s td <#bags> <max bag size> <n>``,
bag lines ``b <id> <v1> ...`` and one ``<i> <j>`` line per tree edge, all
1-based.
"""

from __future__ import annotations

from .plane import GraphStructureError, PlaneGraph, validate
from .treewidth import TreeDecomposition

COLOURS = ("red", "yellow", "blue")


class FormatError(ValueError):
    """Raised on malformed input files."""


def write_plan(G: PlaneGraph) -> str:
    lines = [f"planar {G.n} {G.m}"]
    for v, nb in enumerate(G.neighbors()):
        lines.append(f"{v}: " + " ".join(map(str, nb)) if nb else f"{v}:")
    if G.coords is not None:
        lines.append("coords")
        for v, (x, y) in enumerate(G.coords):
            lines.append(f"{v} {x!r} {y!r}")
    return "\n".join(lines) + "\n"


def parse_plan(text: str, check: bool = True) -> PlaneGraph:
    """Parse a .plan file; rejects non-involutive or non-planar rotations."""
    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise FormatError("empty .plan file")
    head = lines[0].split()
    if len(head) != 3 or head[0] != "planar":
        raise FormatError(f"bad header {lines[0]!r}; expected 'planar <n> <m>'")
    try:
        n, m = int(head[1]), int(head[2])
    except ValueError:
        raise FormatError(f"bad header counts in {lines[0]!r}") from None
    if n < 0 or m < 0 or len(lines) < 1 + n:
        raise FormatError("truncated .plan file")
    nbrs: list[list[int] | None] = [None] * n
    for ln in lines[1:1 + n]:
        v_part, _, rest = ln.partition(":")
        try:
            v = int(v_part)
        except ValueError:
            raise FormatError(f"bad rotation line {ln!r}") from None
        if not (0 <= v < n):
            raise FormatError(f"vertex {v} out of range in {ln!r}")
        if nbrs[v] is not None:
            raise FormatError(f"vertex {v} listed twice")
        try:
            nbrs[v] = [int(t) for t in rest.split()]
        except ValueError:
            raise FormatError(f"bad neighbour in {ln!r}") from None
    coords = None
    pos = 1 + n
    if pos < len(lines):
        if lines[pos] != "coords":
            raise FormatError(f"unexpected line {lines[pos]!r}")
        if len(lines) != pos + 1 + n:
            raise FormatError("coords section must have one line per vertex")
        coords = [None] * n
        for ln in lines[pos + 1:]:
            parts = ln.split()
            if len(parts) != 3:
                raise FormatError(f"bad coords line {ln!r}")
            try:
                v, x, y = int(parts[0]), float(parts[1]), float(parts[2])
            except ValueError:
                raise FormatError(f"bad coords line {ln!r}") from None
            if not (0 <= v < n) or coords[v] is not None:
                raise FormatError(f"bad coords vertex in {ln!r}")
            coords[v] = (x, y)
    if sum(len(nb) for nb in nbrs) != 2 * m:
        raise FormatError(f"degree sum does not match m={m}")
    try:
        G = PlaneGraph.from_neighbors(nbrs, coords=coords)
    except GraphStructureError as exc:
        raise FormatError(str(exc)) from None
    if check:
        bad = validate(G)
        if bad:
            raise FormatError("; ".join(bad))
    return G


def write_colouring(assignment: list[str]) -> str:
    return "".join(f"{v} {c}\n" for v, c in enumerate(assignment))


def parse_colouring(text: str, n: int) -> list[str]:
    out: list[str | None] = [None] * n
    for ln in text.splitlines():
        ln = ln.strip()
        if not ln:
            continue
        parts = ln.split()
        if len(parts) != 2 or parts[1] not in COLOURS:
            raise FormatError(f"bad colouring line {ln!r}")
        try:
            v = int(parts[0])
        except ValueError:
            raise FormatError(f"bad colouring line {ln!r}") from None
        if not (0 <= v < n) or out[v] is not None:
            raise FormatError(f"bad or repeated vertex in {ln!r}")
        out[v] = parts[1]
    missing = [v for v, c in enumerate(out) if c is None]
    if missing:
        raise FormatError(f"uncoloured vertices: {missing[:10]}")
    return out  # type: ignore[return-value]


def write_td(T: TreeDecomposition, n: int) -> str:
    width_plus = max((len(b) for b in T.bags), default=0)
    lines = [f"s td {len(T.bags)} {width_plus} {n}"]
    for i, bag in enumerate(T.bags):
        lines.append(f"b {i + 1} " + " ".join(str(v + 1) for v in sorted(bag)))
    for i, j in T.edges:
        lines.append(f"{i + 1} {j + 1}")
    return "\n".join(lines) + "\n"


def parse_td(text: str) -> tuple[TreeDecomposition, int]:
    bags = None
    edges = []
    n = 0
    for ln in text.splitlines():
        ln = ln.strip()
        if not ln or ln.startswith("c"):
            continue
        parts = ln.split()
        if parts[0] == "s":
            if len(parts) != 5 or parts[1] != "td":
                raise FormatError(f"bad td header {ln!r}")
            bags = [frozenset()] * int(parts[2])
            n = int(parts[4])
        elif parts[0] == "b":
            if bags is None:
                raise FormatError("bag line before header")
            bags[int(parts[1]) - 1] = frozenset(int(t) - 1 for t in parts[2:])
        else:
            edges.append((int(parts[0]) - 1, int(parts[1]) - 1))
    if bags is None:
        raise FormatError("missing td header")
    return TreeDecomposition(bags=list(bags), edges=edges), n
