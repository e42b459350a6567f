import json
import subprocess
import sys

import pytest

from planarclust.cli import main
from planarclust.formats import parse_plan


def run(*argv):
    return main(list(argv))


def test_gen_and_verify(tmp_path):
    plan = tmp_path / "g.plan"
    assert run("gen", "grid", "--k", "4", "--out", str(plan)) == 0
    assert run("verify", "--graph", str(plan)) == 0
    G = parse_plan(plan.read_text())
    assert G.n == 16 and G.m == 24


def test_gen_round_trip_bytes(tmp_path):
    a, b = tmp_path / "a.plan", tmp_path / "b.plan"
    run("gen", "tri", "--n", "80", "--seed", "9", "--out", str(a))
    run("gen", "tri", "--n", "80", "--seed", "9", "--out", str(b))
    assert a.read_bytes() == b.read_bytes()
    # parse and re-emit reproduces the file exactly
    from planarclust.formats import write_plan

    assert write_plan(parse_plan(a.read_text())) == a.read_text()


def test_colour_verify_end_to_end(tmp_path):
    plan = tmp_path / "g.plan"
    out = tmp_path / "c.txt"
    report = tmp_path / "r.json"
    run("gen", "grid", "--k", "6", "--out", str(plan))
    assert run("colour", "--algo", "main", "--in", str(plan), "--out",
               str(out), "--report", str(report)) == 0
    bound = 16.0 * 36 ** (4.0 / 9.0)
    assert run("verify", "--graph", str(plan), "--colouring", str(out),
               "--max-component", str(bound)) == 0
    rep = json.loads(report.read_text())
    assert rep["algo"] == "main" and rep["n"] == 36
    # a bound of zero must fail verification
    assert run("verify", "--graph", str(plan), "--colouring", str(out),
               "--max-component", "0") == 1


def test_colour_all_algos(tmp_path):
    plan = tmp_path / "g.plan"
    run("gen", "tri", "--n", "150", "--seed", "2", "--out", str(plan))
    for algo in ("main", "lmst3", "two"):
        out = tmp_path / f"{algo}.txt"
        assert run("colour", "--algo", algo, "--in", str(plan),
                   "--out", str(out)) == 0
        bound = {"main": 16 * 150 ** (4 / 9), "lmst3": 150 ** 0.5 * 13,
                 "two": 150 ** (2 / 3) * 13}[algo]
        assert run("verify", "--graph", str(plan), "--colouring", str(out),
                   "--max-component", str(bound)) == 0


def test_colour_deterministic(tmp_path):
    plan = tmp_path / "g.plan"
    run("gen", "tri", "--n", "200", "--seed", "5", "--out", str(plan))
    outs = []
    for name in ("c1.txt", "c2.txt"):
        out = tmp_path / name
        run("colour", "--algo", "main", "--in", str(plan), "--out", str(out))
        outs.append(out.read_bytes())
    assert outs[0] == outs[1]


def test_malformed_plan_is_usage_error(tmp_path):
    plan = tmp_path / "bad.plan"
    plan.write_text("planar 2 1\n0: 1\n1:\n")
    out = tmp_path / "c.txt"
    assert run("colour", "--in", str(plan), "--out", str(out)) == 2


def test_missing_file_is_usage_error(tmp_path):
    assert run("colour", "--in", str(tmp_path / "nope.plan"),
               "--out", str(tmp_path / "c.txt")) == 2


def test_separate(tmp_path):
    plan = tmp_path / "g.plan"
    out = tmp_path / "s.txt"
    run("gen", "grid", "--k", "5", "--out", str(plan))
    assert run("separate", "--q", "5", "--in", str(plan), "--out", str(out),
               "--minimal") == 0
    S = [int(x) for x in out.read_text().split()]
    G = parse_plan(plan.read_text())
    from planarclust.separators import is_q_separator

    assert is_q_separator(G, 5.0, set(S))


def test_svg(tmp_path):
    plan = tmp_path / "g.plan"
    svg = tmp_path / "d.svg"
    col = tmp_path / "c.txt"
    run("gen", "grid", "--k", "4", "--out", str(plan))
    run("colour", "--in", str(plan), "--out", str(col))
    assert run("svg", "--graph", str(plan), "--colouring", str(col),
               "--out", str(svg)) == 0
    text = svg.read_text()
    assert text.count("<circle") == 16
    assert text.count("<line") == 24


def test_svg_requires_coords(tmp_path):
    plan = tmp_path / "g.plan"
    plan.write_text("planar 3 3\n0: 1 2\n1: 2 0\n2: 0 1\n")
    assert run("svg", "--graph", str(plan), "--out",
               str(tmp_path / "d.svg")) == 2


def test_bench_csv_and_figures(tmp_path):
    csv_path = tmp_path / "bench.csv"
    assert run("bench", "--family", "tri", "--sizes", "40,80", "--seeds",
               "1,2", "--csv", str(csv_path)) == 0
    lines = csv_path.read_text().splitlines()
    assert lines[0].startswith("family,n,seed,algo,clustering")
    assert len(lines) == 1 + 2 * 2 * 3
    assert (tmp_path / "bench_ratios.png").exists()
    assert (tmp_path / "bench_clustering.png").exists()


def test_bench_deterministic_modulo_runtime(tmp_path):
    rows = []
    for name in ("b1.csv", "b2.csv"):
        p = tmp_path / name
        run("bench", "--family", "grid", "--sizes", "5", "--seeds", "1",
            "--csv", str(p), "--no-figures")
        lines = p.read_text().splitlines()
        head = lines[0].split(",")
        ix = head.index("runtime_ms")
        rows.append([",".join(c for j, c in enumerate(ln.split(",")) if j != ix)
                     for ln in lines])
    assert rows[0] == rows[1]


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "planarclust.cli", "--help"],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert "gen" in proc.stdout and "bench" in proc.stdout
