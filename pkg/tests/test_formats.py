import pytest

from planarclust.formats import (FormatError, parse_colouring, parse_plan,
                                 parse_td, write_colouring, write_plan,
                                 write_td)
from planarclust.generators import gen_grid, gen_random_triangulation
from planarclust.treewidth import tw_upper_bound, validate_td

from conftest import K3


def test_plan_round_trip():
    for G in (K3, gen_grid(4), gen_random_triangulation(40, 3)):
        text = write_plan(G)
        H = parse_plan(text)
        assert H == G
        assert write_plan(H) == text


def test_plan_round_trip_without_coords():
    from planarclust.plane import PlaneGraph

    G = PlaneGraph.from_neighbors([[1], [0], []])
    H = parse_plan(write_plan(G))
    assert H == G and H.coords is None


def test_plan_rejects_non_involutive():
    text = "planar 2 1\n0: 1\n1:\n"
    with pytest.raises(FormatError):
        parse_plan(text)


def test_plan_rejects_bad_header():
    with pytest.raises(FormatError):
        parse_plan("plan 3 3\n")
    with pytest.raises(FormatError):
        parse_plan("planar 3\n0:\n1:\n2:\n")


def test_plan_rejects_wrong_edge_count():
    with pytest.raises(FormatError):
        parse_plan("planar 2 5\n0: 1\n1: 0\n")


def test_plan_rejects_nonplanar_rotation():
    # K5 with an arbitrary rotation fails the Euler check
    lines = ["planar 5 10"]
    for v in range(5):
        lines.append(f"{v}: " + " ".join(str((v + i) % 5) for i in range(1, 5)))
    with pytest.raises(FormatError):
        parse_plan("\n".join(lines) + "\n")


def test_colouring_round_trip():
    a = ["red", "blue", "yellow", "red"]
    text = write_colouring(a)
    assert parse_colouring(text, 4) == a


def test_colouring_rejects_gaps_and_bad_colours():
    with pytest.raises(FormatError):
        parse_colouring("0 red\n", 2)
    with pytest.raises(FormatError):
        parse_colouring("0 green\n1 red\n", 2)
    with pytest.raises(FormatError):
        parse_colouring("0 red\n0 blue\n", 2)


def test_td_round_trip():
    g = gen_grid(3)
    width, T = tw_upper_bound(g)
    text = write_td(T, g.n)
    T2, n = parse_td(text)
    assert n == g.n
    assert validate_td(g, T2) == []
    assert T2.width == T.width
    assert text.splitlines()[0] == f"s td {len(T.bags)} {T.width + 1} {g.n}"
