"""Level-synchronous two-partition baseline.

Both workers expand exactly one distance level per superstep and exchange
their updated border values at every superstep boundary, in both directions,
whether or not anything changed.  Communication therefore scales with the
number of levels (roughly the source eccentricity) instead of the refinement
iteration count.
"""

from __future__ import annotations

import heapq

import numpy as np

from .errors import InputError
from .forward import SourceState, _finalize_cut_edge_sigma, merge_states
from .ledger import BYTES_PER_ELEM
from .relax import build_levels, sat_add


def bsp_forward(g, p, s, ledger=None):
    """Synchronized forward phase; returns (states, forward-report dict)."""
    n = g.num_vertices
    if not 0 <= s < n:
        raise InputError(f"source {s} out of range [0, {n})")
    offsets, dst, wt, rev = g.adjacency
    inf = g.inf_distance
    assignment = p.assignment

    dist = [inf] * n
    sigma = [0] * n
    edge_sigma = [0] * g.num_arcs
    dist[s] = 0
    sigma[s] = 1

    heap = [(0, s)]
    done = [False] * n
    supersteps = 0

    def apply_relax(v, k, w):
        nd = dist[v] + wt[k]
        dw = dist[w]
        if nd < dw:
            for j in range(offsets[w], offsets[w + 1]):
                edge_sigma[rev[j]] = 0
            dist[w] = nd
            sigma[w] = sigma[v]
            edge_sigma[k] = sigma[v]
            heapq.heappush(heap, (nd, w))
        elif nd == dw:
            sigma[w] = sat_add(sigma[w] - edge_sigma[k], sigma[v])
            edge_sigma[k] = sigma[v]
        else:
            edge_sigma[k] = 0

    while heap:
        level = heap[0][0]
        frontier = []
        while heap and heap[0][0] == level:
            d, v = heapq.heappop(heap)
            if not done[v] and d == dist[v]:
                done[v] = True
                frontier.append(v)
        if not frontier:
            continue
        # Intra-partition relaxations apply immediately; cross ones wait for
        # the superstep boundary.
        deferred = []
        for v in frontier:
            for k in range(offsets[v], offsets[v + 1]):
                w = dst[k]
                if assignment[v] == assignment[w]:
                    apply_relax(v, k, w)
                else:
                    deferred.append((v, k, w))
        payload = [0, 0]
        for v, k, w in deferred:
            payload[assignment[w]] += 1
            apply_relax(v, k, w)
        while heap and (done[heap[0][1]] or heap[0][0] != dist[heap[0][1]]):
            heapq.heappop(heap)
        if heap:  # exchange happens between supersteps, not after the last
            supersteps += 1
            if ledger is not None:
                ledger.log(s, "forward", f"superstep@{level}", "0->1", payload[1])
                ledger.log(s, "forward", f"superstep@{level}", "1->0", payload[0])

    states = []
    for side in (0, 1):
        members = p.members(side)
        levels = build_levels(dist, members, inf)
        states.append(
            SourceState(side, list(dist), list(sigma), list(edge_sigma), levels)
        )
    _finalize_cut_edge_sigma(g, p, states)
    report = {
        "source": s,
        "supersteps": supersteps,
        "comm_events": 2 * supersteps,
        "max_level": [states[0].max_level, states[1].max_level],
    }
    return (states[0], states[1]), report


def bsp_backward(g, p, bs, states, s, ledger=None):
    """Synchronized backward phase; both workers step the same global levels."""
    offsets, dst, _, _ = g.adjacency
    dist, sigma, edge_sigma = merge_states(g, p, states)
    delta = np.zeros(g.num_vertices)
    border_counts = bs.counts()

    global_levels = sorted(
        set(states[0].levels) | set(states[1].levels), reverse=True
    )
    supersteps = 0
    comm_bytes = 0
    for i, level in enumerate(global_levels):
        for side in (0, 1):
            for v in states[side].levels.get(level, ()):
                acc = 0.0
                sv = sigma[v]
                for k in range(offsets[v], offsets[v + 1]):
                    if edge_sigma[k]:
                        u = dst[k]
                        acc += (sv / sigma[u]) * (1.0 + delta[u])
                delta[v] += acc
        if i + 1 < len(global_levels):
            supersteps += 1
            comm_bytes += sum(border_counts) * BYTES_PER_ELEM
            if ledger is not None:
                ledger.log(s, "backward", f"superstep@{level}", "0->1",
                           border_counts[0])
                ledger.log(s, "backward", f"superstep@{level}", "1->0",
                           border_counts[1])

    report = {
        "sync_events": 2 * supersteps,
        "comm_bytes": comm_bytes,
        "levels": [len(states[0].levels), len(states[1].levels)],
    }
    return delta, report
