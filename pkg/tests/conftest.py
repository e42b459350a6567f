import pytest

from planarclust.generators import gen_fan_apex, gen_grid, gen_random_triangulation
from planarclust.plane import PlaneGraph, induced_subgraph


def path_graph(n: int) -> PlaneGraph:
    nbrs = [[] for _ in range(n)]
    for i in range(n - 1):
        nbrs[i].append(i + 1)
        nbrs[i + 1].insert(0, i)
    return PlaneGraph.from_neighbors(nbrs)


def cycle_graph(n: int) -> PlaneGraph:
    return PlaneGraph.from_neighbors(
        [[(i + 1) % n, (i - 1) % n] for i in range(n)])


def star_graph(r: int) -> PlaneGraph:
    return PlaneGraph.from_neighbors(
        [list(range(1, r + 1))] + [[0] for _ in range(r)])


K3 = PlaneGraph.from_neighbors([[1, 2], [2, 0], [0, 1]])
K4 = PlaneGraph.from_neighbors([[1, 3, 2], [2, 3, 0], [0, 3, 1], [0, 1, 2]])


@pytest.fixture(scope="session")
def small_corpus():
    """Valid plane graphs with at most 15 vertices; at least 200 of them."""
    import random

    graphs = []
    for k in (1, 2, 3):
        graphs.append(("grid", k, gen_grid(k)))
    for n in range(1, 11):
        graphs.append(("path", n, path_graph(n)))
    for n in range(3, 11):
        graphs.append(("cycle", n, cycle_graph(n)))
    for r in range(1, 9):
        graphs.append(("star", r, star_graph(r)))
    graphs.append(("K3", 3, K3))
    graphs.append(("K4", 4, K4))
    graphs.append(("fan", 2, gen_fan_apex(2)))
    for n in range(4, 13):
        for seed in range(8):
            graphs.append((f"tri{n}", seed, gen_random_triangulation(n, seed)))
    rng = random.Random(99)
    for i in range(100):
        n = rng.randint(5, 13)
        G = gen_random_triangulation(n, 500 + i)
        keep = sorted(rng.sample(range(n), rng.randint(2, n - 1)))
        graphs.append((f"sub{n}", i, induced_subgraph(G, keep)))
    assert len(graphs) >= 200
    return graphs
