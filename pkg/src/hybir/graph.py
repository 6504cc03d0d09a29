"""Undirected weighted graph stored in a hybrid CSR-COO layout.

Every undirected edge is kept as two directed arcs.  Arcs are sorted by
(src, dst) so that ``offsets`` indexes per-vertex adjacency slices, while
``arc_src``/``arc_dst`` double as a COO view.  Weights are positive integers;
unweighted inputs get weight 1 everywhere so SSSP generalizes BFS.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from .errors import DomainError, FormatError, ParseError


@dataclass
class Graph:
    num_vertices: int
    num_edges: int
    offsets: np.ndarray    # int64, length n+1
    arc_src: np.ndarray    # int64, length 2m
    arc_dst: np.ndarray    # int64, length 2m
    arc_weight: np.ndarray  # int64, length 2m
    rev_arc: np.ndarray    # arc index of (v,u) for each arc (u,v)

    @property
    def num_arcs(self) -> int:
        return 2 * self.num_edges

    @cached_property
    def inf_distance(self) -> int:
        # Sentinel strictly above any achievable distance; arithmetic on it
        # is clamped back to the sentinel by callers.
        return int(self.arc_weight.sum()) // 2 + 1

    @cached_property
    def adjacency(self):
        """Plain-list copies of the CSR arrays for hot Python loops."""
        return (
            self.offsets.tolist(),
            self.arc_dst.tolist(),
            self.arc_weight.tolist(),
            self.rev_arc.tolist(),
        )

    def degree(self, v: int) -> int:
        return int(self.offsets[v + 1] - self.offsets[v])

    def arcs_of(self, v: int) -> range:
        return range(int(self.offsets[v]), int(self.offsets[v + 1]))

    def content_hash(self) -> str:
        h = hashlib.sha256()
        h.update(np.int64(self.num_vertices).tobytes())
        for arr in (self.offsets, self.arc_src, self.arc_dst, self.arc_weight):
            h.update(np.ascontiguousarray(arr, dtype=np.int64).tobytes())
        return h.hexdigest()


def from_edges(num_vertices: int, edges) -> Graph:
    """Build a normalized Graph from (u, v, w) triples.

    Self loops are dropped, parallel edges collapse keeping the minimum
    weight, and every edge is symmetrized.
    """
    best: dict[tuple[int, int], int] = {}
    for u, v, w in edges:
        if not (0 <= u < num_vertices and 0 <= v < num_vertices):
            raise FormatError(f"vertex out of range: ({u}, {v}), n={num_vertices}")
        if w < 0:
            raise DomainError(f"negative weight {w} on edge ({u}, {v})")
        if w == 0:
            raise DomainError(
                f"zero weight on edge ({u}, {v}); distance levels must be strict"
            )
        if u == v:
            continue
        key = (u, v) if u < v else (v, u)
        prev = best.get(key)
        if prev is None or w < prev:
            best[key] = int(w)

    m = len(best)
    src = np.empty(2 * m, dtype=np.int64)
    dst = np.empty(2 * m, dtype=np.int64)
    wt = np.empty(2 * m, dtype=np.int64)
    i = 0
    for (u, v), w in best.items():
        src[i], dst[i], wt[i] = u, v, w
        src[i + 1], dst[i + 1], wt[i + 1] = v, u, w
        i += 2

    order = np.lexsort((dst, src))
    src, dst, wt = src[order], dst[order], wt[order]
    offsets = np.zeros(num_vertices + 1, dtype=np.int64)
    np.add.at(offsets, src + 1, 1)
    offsets = np.cumsum(offsets)

    # Reverse-arc lookup: arcs are unique after dedup, so the sorted position
    # of (dst, src) identifies the opposite arc.
    rev = np.empty(2 * m, dtype=np.int64)
    keys = src * num_vertices + dst
    rev_keys = dst * num_vertices + src
    rev = np.searchsorted(keys, rev_keys)

    return Graph(num_vertices, m, offsets, src, dst, wt, rev)


def load_edge_list(path, weighted: bool = False) -> Graph:
    """Read a `u v [w]` text file; `#` and `%` lines are comments."""
    edges = []
    max_id = -1
    with open(path) as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line or line.startswith(("#", "%")):
                continue
            parts = line.split()
            if len(parts) not in (2, 3):
                raise ParseError(f"expected 'u v [w]', got {line!r}", lineno)
            try:
                u, v = int(parts[0]), int(parts[1])
                w = int(parts[2]) if (weighted and len(parts) == 3) else 1
            except ValueError:
                raise ParseError(f"non-integer field in {line!r}", lineno) from None
            if u < 0 or v < 0:
                raise ParseError(f"negative vertex id in {line!r}", lineno)
            if w < 0:
                raise DomainError(f"line {lineno}: negative weight {w}")
            edges.append((u, v, w))
            max_id = max(max_id, u, v)
    return from_edges(max_id + 1, edges)


def load_dimacs_gr(path) -> Graph:
    """Read a DIMACS `.gr` file (`p sp n m` header, `a u v w` arcs, 1-based)."""
    n = None
    declared_arcs = None
    edges = []
    with open(path) as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line or line.startswith("c"):
                continue
            parts = line.split()
            if parts[0] == "p":
                if len(parts) != 4 or parts[1] != "sp":
                    raise ParseError(f"bad problem line {line!r}", lineno)
                n, declared_arcs = int(parts[2]), int(parts[3])
            elif parts[0] == "a":
                if n is None:
                    raise ParseError("arc line before problem line", lineno)
                if len(parts) != 4:
                    raise ParseError(f"bad arc line {line!r}", lineno)
                u, v, w = int(parts[1]), int(parts[2]), int(parts[3])
                if not (1 <= u <= n and 1 <= v <= n):
                    raise FormatError(
                        f"line {lineno}: vertex out of range in {line!r} (n={n})"
                    )
                edges.append((u - 1, v - 1, w))
            else:
                raise ParseError(f"unknown line type {parts[0]!r}", lineno)
    if n is None:
        raise FormatError("missing problem line")
    if declared_arcs != len(edges):
        raise FormatError(
            f"header declares {declared_arcs} arcs, file has {len(edges)}"
        )
    return from_edges(n, edges)


def write_edge_list(g: Graph, path, weighted: bool = True) -> None:
    with open(path, "w") as fh:
        for k in range(g.num_arcs):
            u, v = int(g.arc_src[k]), int(g.arc_dst[k])
            if u < v:
                if weighted:
                    fh.write(f"{u} {v} {int(g.arc_weight[k])}\n")
                else:
                    fh.write(f"{u} {v}\n")


def graph_stats(g: Graph) -> dict:
    n, m = g.num_vertices, g.num_edges
    if n == 0:
        return {"n": 0, "m": 0, "avg_degree": 0.0, "max_degree": 0}
    degrees = np.diff(g.offsets)
    return {
        "n": n,
        "m": m,
        "avg_degree": 2.0 * m / n,
        "max_degree": int(degrees.max()) if len(degrees) else 0,
    }


def as_graph(X) -> Graph:
    """Coerce estimator input to a Graph: Graph, edge array, or file path."""
    if isinstance(X, Graph):
        return X
    if isinstance(X, (str, bytes)) or hasattr(X, "__fspath__"):
        return load_edge_list(X)
    arr = np.asarray(X)
    if arr.ndim != 2 or arr.shape[1] not in (2, 3):
        raise FormatError(
            "expected a Graph, a path, or an (n_edges, 2|3) array of edges"
        )
    n = int(arr[:, :2].max()) + 1 if len(arr) else 0
    if arr.shape[1] == 2:
        edges = [(int(u), int(v), 1) for u, v in arr]
    else:
        edges = [(int(u), int(v), int(w)) for u, v, w in arr]
    return from_edges(n, edges)
