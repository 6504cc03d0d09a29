"""Shared frontier SSSP core with per-arc sigma bookkeeping.

The same routine serves the initial per-partition traversal, the border
matrix rows, and the final relaxation pass: callers hand in a set of active
vertices carrying already-fixed distances and sigma bases.  The invariant
maintained throughout is

    sigma[v] == base[v] + sum of edge_sigma over tight in-arcs of v

so a distance improvement can subtract the stale contributions exactly
(non-zero edge_sigma marks the arcs of the shortest-path DAG).
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass

from .errors import ContractViolation

U64_MAX = 2**64 - 1


def sat_add(a: int, b: int) -> int:
    c = a + b
    return c if c <= U64_MAX else U64_MAX


def sat_mul(a: int, b: int) -> int:
    c = a * b
    return c if c <= U64_MAX else U64_MAX


@dataclass
class RelaxResult:
    dist: list        # per-vertex distance, inf sentinel where unreached
    sigma: list       # per-vertex path count (saturated at 2**64-1)
    edge_sigma: list  # per-arc recorded contribution, full arc array
    overflow: bool    # any sigma hit the saturation cap


def initial_relax(g, mask, actives, edge_sigma=None) -> RelaxResult:
    """Multi-source SSSP restricted to the vertices where ``mask`` is true.

    ``actives`` is a list of (vertex, dist, sigma_base) seeds.  Arcs leaving
    the mask are ignored; their edge_sigma entries are left at zero.
    """
    offsets, dst, wt, rev = g.adjacency
    n = g.num_vertices
    inf = g.inf_distance

    if mask is not None:
        for v, _, _ in actives:
            if not mask[v]:
                raise ContractViolation(f"active vertex {v} outside worker partition")

    dist = [inf] * n
    sigma = [0] * n
    if edge_sigma is None:
        edge_sigma = [0] * g.num_arcs
    overflow = False

    heap = []
    for v, d, sg in actives:
        if d >= inf or sg == 0:
            continue
        if d < dist[v]:
            dist[v] = d
            sigma[v] = sg
        elif d == dist[v]:
            sigma[v] = sat_add(sigma[v], sg)
        heapq.heappush(heap, (d, v))

    done = [False] * n
    while heap:
        d, v = heapq.heappop(heap)
        if done[v] or d != dist[v]:
            continue
        done[v] = True
        sv = sigma[v]
        for k in range(offsets[v], offsets[v + 1]):
            w = dst[k]
            if mask is not None and not mask[w]:
                continue
            nd = d + wt[k]
            dw = dist[w]
            if nd < dw:
                # Stale in-arc contributions no longer match the new distance.
                for j in range(offsets[w], offsets[w + 1]):
                    edge_sigma[rev[j]] = 0
                dist[w] = nd
                sigma[w] = sv
                edge_sigma[k] = sv
                heapq.heappush(heap, (nd, w))
            elif nd == dw:
                sigma[w] = sat_add(sigma[w] - edge_sigma[k], sv)
                if sigma[w] == U64_MAX:
                    overflow = True
                edge_sigma[k] = sv
            else:
                edge_sigma[k] = 0

    return RelaxResult(dist, sigma, edge_sigma, overflow)


def build_levels(dist, members, inf) -> dict:
    """Bucket vertices by exact distance value (sparse keys for weights)."""
    levels: dict[int, list] = {}
    for v in members:
        d = dist[v]
        if d < inf:
            levels.setdefault(d, []).append(v)
    return levels
