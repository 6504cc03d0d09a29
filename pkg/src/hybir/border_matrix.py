"""One-time preprocessing: per-partition border distance and path-count matrices.

For each side independently, an SSSP restricted to that side's vertices runs
from every border node; row i of the distance matrix holds the intra-partition
distances from border i to the other borders, and the sigma matrix holds the
matching path counts.  The two sides never read each other's data, so the
computations are order-independent and can be amortized over many sources.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass

import numpy as np

from .graph import Graph
from .partition import BorderSet, Partition
from .relax import U64_MAX, initial_relax

CACHE_VERSION = 1


@dataclass
class BorderMatrices:
    bm: tuple[np.ndarray, np.ndarray]   # int64 distance matrices, inf sentinel
    sm: tuple[list, list]               # nested lists of exact path counts
    inf: int
    overflow: bool = False

    @property
    def bm_0(self):
        return self.bm[0]

    @property
    def bm_1(self):
        return self.bm[1]

    @property
    def sm_0(self):
        return self.sm[0]

    @property
    def sm_1(self):
        return self.sm[1]


def compute_border_matrices(g: Graph, p: Partition, bs: BorderSet) -> BorderMatrices:
    inf = g.inf_distance
    bms = []
    sms = []
    overflow = False
    for side in (0, 1):
        borders = bs.borders[side]
        b = len(borders)
        mask = p.mask(side)
        bm = np.full((b, b), inf, dtype=np.int64)
        sm = [[0] * b for _ in range(b)]
        for i, src in enumerate(borders):
            res = initial_relax(g, mask, [(src, 0, 1)])
            overflow = overflow or res.overflow
            for j, dst in enumerate(borders):
                bm[i][j] = res.dist[dst]
                sm[i][j] = res.sigma[dst]
        bms.append(bm)
        sms.append(sm)
    return BorderMatrices((bms[0], bms[1]), (sms[0], sms[1]), inf, overflow)


def estimate_memory(n: int, m: int, b: int) -> dict:
    """Element counts for the single-device layout vs one device of the hybrid.

    Single device: CSR-COO arc arrays (3m + n) plus per-vertex distance,
    sigma, delta and per-edge sigma.  Hybrid: half of those plus four border
    arrays and the border matrix.
    """
    if min(n, m, b) < 0:
        raise ValueError("n, m, b must be nonnegative")
    return {
        "unpartitioned_elems": 4 * (m + n),
        "hybrid_elems_per_device": 2 * (m + n) + 4 * b + b * b,
    }


def _cache_key(g: Graph, p: Partition) -> str:
    h = hashlib.sha256()
    h.update(g.content_hash().encode())
    h.update(np.ascontiguousarray(p.assignment, dtype=np.int8).tobytes())
    return h.hexdigest()


def save_border_matrices(path, bmx: BorderMatrices, g: Graph, p: Partition) -> None:
    """Binary cache keyed by (graph, partition); sigma is clamped to uint64."""
    sm_arrays = [
        np.array([[min(x, U64_MAX) for x in row] for row in side], dtype=np.uint64)
        if side else np.zeros((0, 0), dtype=np.uint64)
        for side in bmx.sm
    ]
    np.savez(
        path,
        version=np.int64(CACHE_VERSION),
        key=np.frombuffer(bytes.fromhex(_cache_key(g, p)), dtype=np.uint8),
        inf=np.int64(bmx.inf),
        overflow=np.int64(bmx.overflow),
        bm0=bmx.bm[0], bm1=bmx.bm[1],
        sm0=sm_arrays[0], sm1=sm_arrays[1],
    )


def load_border_matrices(path, g: Graph, p: Partition):
    """Return cached matrices, or None when the key does not match."""
    try:
        data = np.load(path)
    except (OSError, ValueError):
        return None
    if int(data["version"]) != CACHE_VERSION:
        return None
    if bytes(data["key"]).hex() != _cache_key(g, p):
        return None
    sm = tuple(
        [[int(x) for x in row] for row in data[name]] for name in ("sm0", "sm1")
    )
    return BorderMatrices(
        (data["bm0"], data["bm1"]), sm, int(data["inf"]), bool(int(data["overflow"]))
    )
