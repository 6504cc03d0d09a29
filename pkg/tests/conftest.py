"""Shared fixtures: small named graphs and a seeded random-graph factory."""

import random

import pytest

import hybir as H


def random_connected_graph(n, extra_edges=0, weighted=False, seed=0):
    """Random spanning tree plus ``extra_edges`` extra edges; always connected."""
    rng = random.Random(seed)
    nodes = list(range(n))
    rng.shuffle(nodes)
    edges = []
    for i in range(1, n):
        u = nodes[rng.randrange(i)]
        v = nodes[i]
        w = rng.randint(1, 10) if weighted else 1
        edges.append((u, v, w))
    added = 0
    while added < extra_edges:
        u, v = rng.randrange(n), rng.randrange(n)
        if u == v:
            continue
        w = rng.randint(1, 10) if weighted else 1
        edges.append((u, v, w))
        added += 1
    return H.from_edges(n, edges)


def path_graph(n):
    return H.from_edges(n, [(i, i + 1, 1) for i in range(n - 1)])


def grid_graph(rows, cols):
    def vid(r, c):
        return r * cols + c

    edges = []
    for r in range(rows):
        for c in range(cols):
            if c + 1 < cols:
                edges.append((vid(r, c), vid(r, c + 1), 1))
            if r + 1 < rows:
                edges.append((vid(r, c), vid(r + 1, c), 1))
    return H.from_edges(rows * cols, edges)


@pytest.fixture
def p4():
    return path_graph(4)


@pytest.fixture
def diamond():
    # 0-1, 0-2, 1-3, 2-3: two shortest 0..3 paths.
    return H.from_edges(4, [(0, 1, 1), (0, 2, 1), (1, 3, 1), (2, 3, 1)])


@pytest.fixture
def c6():
    return H.from_edges(6, [(i, (i + 1) % 6, 1) for i in range(6)])


@pytest.fixture
def k4():
    return H.from_edges(4, [(i, j, 1) for i in range(4) for j in range(i + 1, 4)])


@pytest.fixture
def star5():
    # K_{1,4}, center 0.
    return H.from_edges(5, [(0, i, 1) for i in range(1, 5)])


@pytest.fixture
def w5():
    # Weighted 5-vertex with a tie at vertex 1 (direct w=2 vs via 2, 1+1).
    return H.from_edges(5, [(0, 1, 2), (0, 2, 1), (1, 2, 1), (1, 3, 3),
                            (2, 3, 4), (3, 4, 1)])


def half_split(g):
    """Explicit partition: lower vertex ids on worker 0, upper on worker 1."""
    import numpy as np

    n = g.num_vertices
    assignment = np.zeros(n, dtype=np.int8)
    assignment[n // 2:] = 1
    return H.Partition(assignment, 0.5)


def hybrid_setup(g, ratio=0.5, seed=0, partition=None):
    p = partition if partition is not None else H.greedy_bipartition(g, ratio, seed=seed)
    bs = H.identify_borders(g, p)
    bmx = H.compute_border_matrices(g, p, bs)
    return p, bs, bmx
