"""Two-way vertex partitioning, border identification, and ratio calibration.

Partition 0 models the CPU-like worker, partition 1 the GPU-like worker.
The built-in partitioner is a seeded BFS region grower standing in for an
external tool; partition files in the one-id-per-line format can be imported
instead.
"""

from __future__ import annotations

import random
import time
import warnings
from dataclasses import dataclass, field

import numpy as np

from .errors import FormatError, InputError
from .graph import Graph
from .relax import initial_relax

RATIO_MIN, RATIO_MAX = 0.1, 0.9


@dataclass
class Partition:
    assignment: np.ndarray   # int8 per-vertex worker id in {0, 1}
    ratio: float             # target fraction of vertices on worker 0

    @property
    def sizes(self) -> tuple[int, int]:
        n1 = int(self.assignment.sum())
        return len(self.assignment) - n1, n1

    @property
    def degenerate(self) -> bool:
        return 0 in self.sizes

    def members(self, side: int):
        return np.flatnonzero(self.assignment == side)

    def mask(self, side: int):
        return (self.assignment == side).tolist()


@dataclass
class BorderSet:
    borders: tuple[list, list]          # sorted border vertex ids per side
    index: tuple[dict, dict]            # vertex -> position in its side's list
    cut_arcs: list                      # directed (u, v, w), both directions

    @property
    def borders_0(self):
        return self.borders[0]

    @property
    def borders_1(self):
        return self.borders[1]

    def counts(self) -> tuple[int, int]:
        return len(self.borders[0]), len(self.borders[1])


def _cut_weight(g: Graph, assignment) -> int:
    cross = assignment[g.arc_src] != assignment[g.arc_dst]
    return int(g.arc_weight[cross].sum()) // 2


def greedy_bipartition(g: Graph, ratio: float, seed: int = 0, restarts: int = 8) -> Partition:
    """Seeded BFS region growing; best of ``restarts`` seeds by cut weight."""
    n = g.num_vertices
    if n < 2:
        raise InputError(f"cannot bipartition a graph with n={n} < 2")
    if not 0.0 < ratio < 1.0:
        raise InputError(f"ratio must be in (0, 1), got {ratio}")
    target = min(max(int(round(ratio * n)), 1), n - 1)

    offsets, dst, _, _ = g.adjacency
    rng = random.Random(seed)
    best_assignment = None
    best_cut = None
    for _ in range(restarts):
        start = rng.randrange(n)
        assignment = np.ones(n, dtype=np.int8)
        grown = 0
        queue = [start]
        head = 0
        seen = [False] * n
        seen[start] = True
        while grown < target:
            if head >= len(queue):
                # Disconnected remainder: restart growth from a fresh vertex.
                nxt = next(v for v in range(n) if not seen[v])
                seen[nxt] = True
                queue.append(nxt)
            v = queue[head]
            head += 1
            assignment[v] = 0
            grown += 1
            for k in range(offsets[v], offsets[v + 1]):
                w = dst[k]
                if not seen[w]:
                    seen[w] = True
                    queue.append(w)
        cut = _cut_weight(g, assignment)
        if best_cut is None or cut < best_cut:
            best_cut = cut
            best_assignment = assignment
    return Partition(best_assignment, ratio)


def import_partition(path, g: Graph) -> Partition:
    """Read a METIS-style output file: line i holds the partition of vertex i."""
    ids = []
    with open(path) as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line:
                continue
            try:
                pid = int(line)
            except ValueError:
                raise FormatError(f"line {lineno}: not an integer: {line!r}") from None
            if pid not in (0, 1):
                raise FormatError(f"line {lineno}: partition id {pid} outside {{0,1}}")
            ids.append(pid)
    if len(ids) != g.num_vertices:
        raise FormatError(
            f"partition file has {len(ids)} lines, graph has {g.num_vertices} vertices"
        )
    assignment = np.array(ids, dtype=np.int8)
    n0 = int((assignment == 0).sum())
    p = Partition(assignment, n0 / len(ids) if ids else 0.5)
    if p.degenerate:
        warnings.warn("imported partition leaves one side empty", stacklevel=2)
    return p


def identify_borders(g: Graph, p: Partition) -> BorderSet:
    assignment = p.assignment
    border_sets: tuple[set, set] = (set(), set())
    cut_arcs = []
    for k in range(g.num_arcs):
        u, v = int(g.arc_src[k]), int(g.arc_dst[k])
        if assignment[u] != assignment[v]:
            border_sets[assignment[u]].add(u)
            cut_arcs.append((u, v, int(g.arc_weight[k])))
    borders = (sorted(border_sets[0]), sorted(border_sets[1]))
    index = (
        {v: i for i, v in enumerate(borders[0])},
        {v: i for i, v in enumerate(borders[1])},
    )
    cut_arcs.sort()
    return BorderSet(borders, index, cut_arcs)


def calibrate_ratio(
    g: Graph,
    sources,
    seed: int = 0,
    worker_slowdown: tuple[float, float] = (1.0, 1.0),
    timer=time.perf_counter,
) -> float:
    """Split ratio from reciprocal per-worker SSSP runtimes on a 50-50 split.

    ``worker_slowdown`` is a test hook scaling each worker's measured time.
    """
    sources = list(sources)
    if not sources:
        raise InputError("calibration needs at least one source")
    p = greedy_bipartition(g, 0.5, seed=seed)
    masks = (p.mask(0), p.mask(1))
    members = (p.members(0), p.members(1))
    totals = [0.0, 0.0]
    for side in (0, 1):
        if len(members[side]) == 0:
            continue
        for s in sources:
            # Project the source onto this worker's half.
            v = s if p.assignment[s] == side else int(members[side][s % len(members[side])])
            t0 = timer()
            initial_relax(g, masks[side], [(v, 0, 1)])
            totals[side] += (timer() - t0) * worker_slowdown[side]
    t0, t1 = totals[0] / len(sources), totals[1] / len(sources)
    if t0 <= 0.0 or t1 <= 0.0:
        warnings.warn("timer resolution too coarse for calibration; using 0.5",
                      stacklevel=2)
        return 0.5
    ratio = (1.0 / t0) / (1.0 / t0 + 1.0 / t1)
    return min(max(ratio, RATIO_MIN), RATIO_MAX)
