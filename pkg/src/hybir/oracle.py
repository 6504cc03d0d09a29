"""Ground-truth betweenness implementations used only for validation.

Two independent routes: a sequential Brandes (forward SSSP + backward
dependency accumulation, predecessor lists) and an exhaustive shortest-path
enumerator for tiny graphs.  Both are deliberately simple and single-threaded.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError
from .graph import Graph

BRUTE_FORCE_MAX_N = 12


@dataclass
class OracleResult:
    dist: dict            # source -> list of distances (None = unreachable)
    sigma: dict           # source -> list of exact path counts (python ints)
    delta: dict           # source -> list of dependencies (float)
    bc: np.ndarray


def brandes_single_source(g: Graph, s: int):
    """One forward+backward pass; returns (dist, sigma, delta).

    Weighted graphs are handled by settling vertices in ascending distance
    order; descending settle order drives the backward accumulation.
    """
    n = g.num_vertices
    dist = [None] * n
    sigma = [0] * n
    preds = [[] for _ in range(n)]
    dist[s] = 0
    sigma[s] = 1

    settled_order = []
    done = [False] * n
    heap = [(0, s)]
    while heap:
        d, v = heapq.heappop(heap)
        if done[v] or d != dist[v]:
            continue
        done[v] = True
        settled_order.append(v)
        for k in g.arcs_of(v):
            w = int(g.arc_dst[k])
            nd = d + int(g.arc_weight[k])
            if dist[w] is None or nd < dist[w]:
                dist[w] = nd
                sigma[w] = sigma[v]
                preds[w] = [v]
                heapq.heappush(heap, (nd, w))
            elif nd == dist[w]:
                sigma[w] += sigma[v]
                preds[w].append(v)

    delta = [0.0] * n
    for u in reversed(settled_order):
        for v in preds[u]:
            delta[v] += (sigma[v] / sigma[u]) * (1.0 + delta[u])
    return dist, sigma, delta


def brandes_bc(g: Graph, sources=None) -> OracleResult:
    n = g.num_vertices
    if sources is None:
        sources = range(n)
    bc = np.zeros(n)
    dists, sigmas, deltas = {}, {}, {}
    for s in sources:
        dist, sigma, delta = brandes_single_source(g, s)
        dists[s], sigmas[s], deltas[s] = dist, sigma, delta
        for v in range(n):
            if v != s:
                bc[v] += delta[v]
    return OracleResult(dists, sigmas, deltas, bc)


def _pairwise_distances(g: Graph):
    """Floyd-Warshall; a route independent of any SSSP code above."""
    n = g.num_vertices
    inf = float("inf")
    d = [[inf] * n for _ in range(n)]
    for v in range(n):
        d[v][v] = 0
    for k in range(g.num_arcs):
        u, v, w = int(g.arc_src[k]), int(g.arc_dst[k]), int(g.arc_weight[k])
        if w < d[u][v]:
            d[u][v] = w
    for k in range(n):
        dk = d[k]
        for i in range(n):
            dik = d[i][k]
            if dik == inf:
                continue
            di = d[i]
            for j in range(n):
                if dik + dk[j] < di[j]:
                    di[j] = dik + dk[j]
    return d


def _enumerate_shortest_paths(g: Graph, s: int, t: int, pair_dist):
    """Yield every shortest s-t path as a vertex tuple (DFS with pruning)."""
    target = pair_dist[s][t]
    if target == float("inf"):
        return
    path = [s]
    on_path = [False] * g.num_vertices
    on_path[s] = True

    def rec(v, length):
        if v == t:
            if length == target:
                yield tuple(path)
            return
        for k in g.arcs_of(v):
            w = int(g.arc_dst[k])
            if on_path[w]:
                continue
            nl = length + int(g.arc_weight[k])
            if nl + pair_dist[w][t] > target:
                continue
            path.append(w)
            on_path[w] = True
            yield from rec(w, nl)
            path.pop()
            on_path[w] = False

    yield from rec(s, 0)


def brute_force_bc(g: Graph) -> np.ndarray:
    """Direct evaluation of the pair-dependency sum by path enumeration."""
    n = g.num_vertices
    if n > BRUTE_FORCE_MAX_N:
        raise DomainError(f"brute force refuses n={n} > {BRUTE_FORCE_MAX_N}")
    pair_dist = _pairwise_distances(g)
    bc = np.zeros(n)
    for s in range(n):
        for t in range(n):
            if s == t:
                continue
            through = [0] * n
            total = 0
            for p in _enumerate_shortest_paths(g, s, t, pair_dist):
                total += 1
                for v in p[1:-1]:
                    through[v] += 1
            if total:
                for v in range(n):
                    if through[v]:
                        bc[v] += through[v] / total
    return bc


def brute_force_source_counts(g: Graph, s: int):
    """Exhaustive (dist, sigma) from one source; sigma by path enumeration."""
    n = g.num_vertices
    if n > BRUTE_FORCE_MAX_N:
        raise DomainError(f"brute force refuses n={n} > {BRUTE_FORCE_MAX_N}")
    pair_dist = _pairwise_distances(g)
    dist = [None] * n
    sigma = [0] * n
    for t in range(n):
        if t == s:
            dist[t] = 0
            sigma[t] = 1
            continue
        if pair_dist[s][t] == float("inf"):
            continue
        dist[t] = int(pair_dist[s][t])
        sigma[t] = sum(1 for _ in _enumerate_shortest_paths(g, s, t, pair_dist))
    return dist, sigma


def brute_force_source_dependency_sums(g: Graph, s: int) -> float:
    """Sum over v of delta_s(v) computed straight from pair dependencies."""
    n = g.num_vertices
    pair_dist = _pairwise_distances(g)
    total = 0.0
    for t in range(n):
        if t == s or pair_dist[s][t] == float("inf"):
            continue
        through = [0] * n
        count = 0
        for p in _enumerate_shortest_paths(g, s, t, pair_dist):
            count += 1
            for v in p[1:-1]:
                through[v] += 1
        if count:
            total += sum(c / count for c in through)
    return total
