"""SVG drawings of embedded graphs and matplotlib figures for bench runs.

Drawings need stored coordinates; graphs without them are rejected rather
than laid out.  Figures are written next to the bench CSV.
"""

from __future__ import annotations

import math

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

_FILL = {"red": "#d62728", "yellow": "#e6b800", "blue": "#1f77b4", None: "#888888"}


def render_svg(G, assignment=None, width: int = 800) -> str:
    """SVG text for a plane graph, vertices filled by colour."""
    if G.coords is None:
        raise ValueError("graph has no coordinates; cannot draw")
    xs = [c[0] for c in G.coords] or [0.0]
    ys = [c[1] for c in G.coords] or [0.0]
    x0, x1 = min(xs), max(xs)
    y0, y1 = min(ys), max(ys)
    span = max(x1 - x0, y1 - y0, 1e-9)
    pad = 0.05 * span
    scale = width / (span + 2 * pad)
    height = int(math.ceil((y1 - y0 + 2 * pad) * scale)) or width

    def px(x):
        return (x - x0 + pad) * scale

    def py(y):
        return (y - y0 + pad) * scale

    r = max(2.0, min(8.0, 120.0 / math.sqrt(max(G.n, 1))))
    out = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" '
           f'height="{height}" viewBox="0 0 {width} {height}">']
    for a, b in G.edges():
        out.append(
            f'<line x1="{px(G.coords[a][0]):.2f}" y1="{py(G.coords[a][1]):.2f}" '
            f'x2="{px(G.coords[b][0]):.2f}" y2="{py(G.coords[b][1]):.2f}" '
            'stroke="#555555" stroke-width="1"/>')
    for v in range(G.n):
        colour = _FILL[assignment[v]] if assignment is not None else _FILL[None]
        out.append(
            f'<circle cx="{px(G.coords[v][0]):.2f}" cy="{py(G.coords[v][1]):.2f}" '
            f'r="{r:.2f}" fill="{colour}" stroke="#222222" stroke-width="0.5"/>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


_RATIO_KEY = {"main": ("ratio_n49", "clustering / n^(4/9)"),
              "lmst3": ("ratio_n12", "clustering / n^(1/2)"),
              "two": ("ratio_n23", "clustering / n^(2/3)")}


def bench_figures(rows: list[dict], stem: str) -> list[str]:
    """Render the bench summary plots; returns the written paths.

    rows carry: family, n, seed, algo, clustering, ratio.
    """
    paths = []
    algos = sorted({r["algo"] for r in rows})
    ns = sorted({r["n"] for r in rows})

    fig, ax = plt.subplots(figsize=(7, 4.5))
    for algo in algos:
        xs, ys = [], []
        for n in ns:
            vals = [r["ratio"] for r in rows if r["algo"] == algo and r["n"] == n]
            if vals:
                xs.append(n)
                ys.append(sum(vals) / len(vals))
        label = f"{algo}: {_RATIO_KEY.get(algo, ('', 'ratio'))[1]}"
        ax.plot(xs, ys, marker="o", label=label)
    ax.set_xscale("log")
    ax.set_xlabel("n")
    ax.set_ylabel("normalized clustering")
    ax.set_title("clustering ratios by size")
    ax.legend()
    ax.grid(True, alpha=0.3)
    p = f"{stem}_ratios.png"
    fig.savefig(p, dpi=110, metadata={"Software": None})
    plt.close(fig)
    paths.append(p)

    fig, ax = plt.subplots(figsize=(7, 4.5))
    for algo in algos:
        xs, ys = [], []
        for n in ns:
            vals = [r["clustering"] for r in rows if r["algo"] == algo and r["n"] == n]
            if vals:
                xs.append(n)
                ys.append(sum(vals) / len(vals))
        ax.plot(xs, ys, marker="o", label=algo)
    if ns:
        import numpy as np

        guide = np.array(ns, dtype=float)
        ax.plot(guide, guide ** (4.0 / 9.0), "--", color="gray", label="n^(4/9)")
        ax.plot(guide, guide ** 0.5, ":", color="gray", label="n^(1/2)")
    ax.set_xscale("log")
    ax.set_yscale("log")
    ax.set_xlabel("n")
    ax.set_ylabel("clustering")
    ax.set_title("clustering growth")
    ax.legend()
    ax.grid(True, alpha=0.3)
    p = f"{stem}_clustering.png"
    fig.savefig(p, dpi=110, metadata={"Software": None})
    plt.close(fig)
    paths.append(p)
    return paths
