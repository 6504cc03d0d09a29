"""Per-source forward phase: initial traversal, border refinement, relaxation.

The border refinement alternates cross-partition cut-edge updates with
intra-partition closures through the precomputed border matrices until the
source side's border distances stop changing; only the cut-edge steps cross
the worker boundary and count as communication events.

Path counts are composed over the refined distances by decomposing every
shortest path at its last cut edge: a border node's sigma is its intra-source
count (when still optimal) plus, for each border c on its own side reached
tightly through a cut, the arrival count at c times the intra-partition count
from c onward.  Multiplying across the border-matrix hop and crediting each
(cut edge, target) pair exactly once keeps the counts exact under ties.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import InputError
from .graph import Graph
from .border_matrix import BorderMatrices
from .partition import BorderSet, Partition
from .relax import build_levels, initial_relax, sat_add, sat_mul


@dataclass
class SourceState:
    worker: int
    dist: list            # full-length; meaningful on this worker's partition
    sigma: list
    edge_sigma: list      # arcs whose src lies in this worker's partition
    levels: dict          # dist value -> vertices of this partition
    delta: np.ndarray = None
    overflow: bool = False

    @property
    def max_level(self) -> int:
        return max(self.levels) if self.levels else 0


@dataclass
class BorderFrontier:
    dist: tuple           # per side: int64 array over canonical border order
    sigma: tuple          # per side: list of exact path counts
    arrival_sigma: tuple  # per side: counts of paths whose last arc is a cut


@dataclass
class ForwardReport:
    source: int
    iterations: int
    comm_events: int
    max_level: tuple

    def as_dict(self) -> dict:
        return {
            "source": self.source,
            "iterations": self.iterations,
            "comm_events": self.comm_events,
            "max_level": list(self.max_level),
        }


def _cut_index_arrays(bs: BorderSet, into_side: int):
    """Cut arcs pointing into ``into_side``, as border-index arrays."""
    src_idx, dst_idx, wts = [], [], []
    for u, v, w in bs.cut_arcs:
        if v in bs.index[into_side]:
            src_idx.append(bs.index[1 - into_side][u])
            dst_idx.append(bs.index[into_side][v])
            wts.append(w)
    return (
        np.array(src_idx, dtype=np.int64),
        np.array(dst_idx, dtype=np.int64),
        np.array(wts, dtype=np.int64),
    )


def _cut_relax(d_from, d_to, cuts, inf):
    """Step 2/4: one pass of cut-edge relaxations into ``d_to`` (in place)."""
    src_idx, dst_idx, wts = cuts
    if len(src_idx) == 0:
        return
    cand = np.minimum(d_from[src_idx] + wts, inf)
    np.minimum.at(d_to, dst_idx, cand)


def _matrix_relax(d, bm, inf):
    """Step 3/5: one Jacobi pass of border-matrix closure (in place)."""
    if len(d) == 0:
        return
    cand = np.minimum(d[:, None] + bm, inf).min(axis=0)
    np.minimum(d, cand, out=d)


def refine_border_distances(
    bmx: BorderMatrices, bs: BorderSet, bf: BorderFrontier, source_side: int
):
    """Iterate steps 2-5 until the source side stabilizes, then a final step 2.

    Returns (frontier, iterations, step_tags) where step_tags lists the
    executed cross-worker transfers in order ('step2'/'step4'/'step2-final').
    """
    inf = bmx.inf
    other = 1 - source_side
    d = [bf.dist[0].copy(), bf.dist[1].copy()]
    seed_dist = d[source_side].copy()
    seed_sigma = list(bf.sigma[source_side])

    tags = []
    iterations = 0
    if bs.cut_arcs and np.any(d[source_side] < inf):
        cuts_into_other = _cut_index_arrays(bs, other)
        cuts_into_src = _cut_index_arrays(bs, source_side)
        max_iter = max(bs.counts()) + 2
        while True:
            before = d[source_side].copy()
            _cut_relax(d[source_side], d[other], cuts_into_other, inf)
            tags.append("step2")
            _matrix_relax(d[other], bmx.bm[other], inf)
            _cut_relax(d[other], d[source_side], cuts_into_src, inf)
            tags.append("step4")
            _matrix_relax(d[source_side], bmx.bm[source_side], inf)
            iterations += 1
            if np.array_equal(before, d[source_side]):
                break
            if iterations > max_iter:
                raise AssertionError(
                    "border refinement exceeded the border-count bound"
                )
        _cut_relax(d[source_side], d[other], cuts_into_other, inf)
        tags.append("step2-final")

    sigma, arrival = _compose_border_sigma(
        bmx, bs, d, source_side, seed_dist, seed_sigma
    )
    frontier = BorderFrontier((d[0], d[1]), (sigma[0], sigma[1]),
                              (arrival[0], arrival[1]))
    return frontier, iterations, tags


def _compose_border_sigma(bmx, bs, d, source_side, seed_dist, seed_sigma):
    """Exact border path counts over converged distances, in ascending order.

    arrival[side][j]: shortest paths whose final arc is a cut into border j.
    sigma[side][j]:   all shortest paths from the source to border j.
    Cut weights are >= 1, so every dependency points at a strictly smaller
    distance and one ascending sweep settles everything.
    """
    inf = bmx.inf
    sigma = [[0] * len(bs.borders[0]), [0] * len(bs.borders[1])]
    arrival = [[0] * len(bs.borders[0]), [0] * len(bs.borders[1])]

    cuts_in: dict[tuple[int, int], list] = {}
    for u, v, w in bs.cut_arcs:
        side = 0 if v in bs.index[0] else 1
        key = (side, bs.index[side][v])
        cuts_in.setdefault(key, []).append((bs.index[1 - side][u], w))

    order = sorted(
        (int(d[side][j]), side, j)
        for side in (0, 1)
        for j in range(len(bs.borders[side]))
        if d[side][j] < inf
    )
    for dj, side, j in order:
        ca = 0
        for i, w in cuts_in.get((side, j), ()):
            if int(d[1 - side][i]) + w == dj:
                ca = sat_add(ca, sigma[1 - side][i])
        arrival[side][j] = ca

        sf = 0
        if side == source_side and int(seed_dist[j]) == dj:
            sf = seed_sigma[j]
        bm = bmx.bm[side]
        sm = bmx.sm[side]
        for c in range(len(bs.borders[side])):
            if arrival[side][c] and int(d[side][c]) + int(bm[c][j]) == dj:
                sf = sat_add(sf, sat_mul(arrival[side][c], sm[c][j]))
        sigma[side][j] = sf
    return sigma, arrival


def forward_phase(
    g: Graph,
    p: Partition,
    bs: BorderSet,
    bmx: BorderMatrices,
    s: int,
    ledger=None,
    step1=None,
):
    """Full forward phase for one source; returns (states, report, frontier)."""
    n = g.num_vertices
    if not 0 <= s < n:
        raise InputError(f"source {s} out of range [0, {n})")
    inf = g.inf_distance
    sp = int(p.assignment[s])
    masks = (p.mask(0), p.mask(1))
    members = (p.members(0), p.members(1))

    if step1 is None:
        step1 = initial_relax(g, masks[sp], [(s, 0, 1)])

    # Seed the frontier from the initial traversal; the other side starts cold.
    b_src = bs.borders[sp]
    b_oth = bs.borders[1 - sp]
    seed = [None, None]
    seed[sp] = np.array([step1.dist[v] for v in b_src], dtype=np.int64)
    seed[1 - sp] = np.full(len(b_oth), inf, dtype=np.int64)
    sig_seed = [None, None]
    sig_seed[sp] = [step1.sigma[v] for v in b_src]
    sig_seed[1 - sp] = [0] * len(b_oth)
    bf = BorderFrontier((seed[0], seed[1]), (sig_seed[0], sig_seed[1]), None)

    bf, iterations, tags = refine_border_distances(bmx, bs, bf, sp)
    if ledger is not None:
        payload = {
            "step2": len(bs.borders[sp]),
            "step4": len(bs.borders[1 - sp]),
            "step2-final": len(bs.borders[sp]),
        }
        for tag in tags:
            direction = f"{sp}->{1 - sp}" if tag != "step4" else f"{1 - sp}->{sp}"
            ledger.log(s, "forward", tag, direction, payload[tag])

    # Step 6: both sides relax from their full border sets concurrently.
    states = []
    for side in (0, 1):
        actives = []
        if side == sp:
            actives.append((s, 0, 1))
        for j, v in enumerate(bs.borders[side]):
            dj = int(bf.dist[side][j])
            if dj < inf and bf.arrival_sigma[side][j] > 0:
                actives.append((v, dj, bf.arrival_sigma[side][j]))
        res = initial_relax(g, masks[side], actives)
        levels = build_levels(res.dist, members[side], inf)
        states.append(
            SourceState(side, res.dist, res.sigma, res.edge_sigma, levels,
                        overflow=res.overflow)
        )

    _finalize_cut_edge_sigma(g, p, states)

    report = ForwardReport(
        source=s,
        iterations=iterations,
        comm_events=len(tags),
        max_level=(states[0].max_level, states[1].max_level),
    )
    return (states[0], states[1]), report, bf


def _finalize_cut_edge_sigma(g: Graph, p: Partition, states) -> None:
    """Mark tight cut arcs in the owning (source-endpoint) worker's arrays."""
    inf = g.inf_distance
    for k in range(g.num_arcs):
        u, v = int(g.arc_src[k]), int(g.arc_dst[k])
        su, sv = int(p.assignment[u]), int(p.assignment[v])
        if su == sv:
            continue
        du = states[su].dist[u]
        dv = states[sv].dist[v]
        if du < inf and dv < inf and du + int(g.arc_weight[k]) == dv:
            states[su].edge_sigma[k] = states[su].sigma[u]
        else:
            states[su].edge_sigma[k] = 0


def merge_states(g: Graph, p: Partition, states):
    """Combined per-vertex / per-arc views over both workers."""
    n = g.num_vertices
    dist = [states[int(p.assignment[v])].dist[v] for v in range(n)]
    sigma = [states[int(p.assignment[v])].sigma[v] for v in range(n)]
    edge_sigma = [
        states[int(p.assignment[int(g.arc_src[k])])].edge_sigma[k]
        for k in range(g.num_arcs)
    ]
    return dist, sigma, edge_sigma
