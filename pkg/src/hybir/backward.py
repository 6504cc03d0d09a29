"""Asynchronous two-worker dependency accumulation over descending levels.

Each worker walks its own partition's distance levels from the maximum down.
A worker must pause only when one of its vertices at the current level has a
shortest-path-DAG child in the other partition: it then needs that child's
(sigma, delta), which the producer publishes once it has finished the child's
level.  Waits always point from a lower level to a strictly higher one, so
the wait relation can never cycle; the deadlock detector enforces that.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InputError
from .graph import Graph
from .ledger import BYTES_PER_ELEM
from .forward import merge_states
from .partition import BorderSet, Partition

STRATEGIES = ("vertex-pull", "edge-push")


def validate_strategy(name: str) -> str:
    if name not in STRATEGIES:
        raise InputError(f"unknown backward strategy {name!r}; pick from {STRATEGIES}")
    return name


@dataclass
class BackwardReport:
    sync_events: int
    comm_bytes: int
    levels: tuple

    def as_dict(self) -> dict:
        return {
            "sync_events": self.sync_events,
            "comm_bytes": self.comm_bytes,
            "levels": list(self.levels),
        }


def _cross_dependencies(g, p, states, dist):
    """deps[worker][consumer level] -> {producer level: set of border children}."""
    deps = ({}, {})
    for k in range(g.num_arcs):
        u, v = int(g.arc_src[k]), int(g.arc_dst[k])
        su, sv = int(p.assignment[u]), int(p.assignment[v])
        if su == sv or states[su].edge_sigma[k] == 0:
            continue
        by_level = deps[su].setdefault(dist[u], {})
        by_level.setdefault(dist[v], set()).add(v)
    return deps


def backward_phase(
    g: Graph,
    p: Partition,
    bs: BorderSet,
    states,
    s: int,
    strategies=("vertex-pull", "edge-push"),
    ledger=None,
):
    """Accumulate delta on both workers; returns (delta, BackwardReport)."""
    for name in strategies:
        validate_strategy(name)
    offsets, dst, _, rev = g.adjacency
    dist, sigma, edge_sigma = merge_states(g, p, states)
    delta = np.zeros(g.num_vertices)
    assignment = p.assignment

    # Level 0 (the source itself) is processed too so delta[s] matches the
    # sequential recursion; accumulation into BC excludes the source anyway.
    level_lists = (
        sorted(states[0].levels, reverse=True),
        sorted(states[1].levels, reverse=True),
    )
    deps = _cross_dependencies(g, p, states, dist)
    idx = [0, 0]
    passed = [set(), set()]  # levels fully processed per worker
    sync_events = 0
    comm_bytes = 0

    def other_completed(w, level):
        o = 1 - w
        remaining = level_lists[o][idx[o]:]
        return level not in remaining

    def process_level(w, level):
        vertices = states[w].levels[level]
        if strategies[w] == "vertex-pull":
            for v in vertices:
                acc = 0.0
                sv = sigma[v]
                for k in range(offsets[v], offsets[v + 1]):
                    if edge_sigma[k]:
                        u = dst[k]
                        acc += (sv / sigma[u]) * (1.0 + delta[u])
                delta[v] += acc
        else:  # edge-push
            # Cross children first (their values were just pulled), then push
            # each vertex's now-final delta into its intra predecessors.
            for v in vertices:
                sv = sigma[v]
                for k in range(offsets[v], offsets[v + 1]):
                    u = dst[k]
                    if edge_sigma[k] and assignment[u] != w:
                        delta[v] += (sv / sigma[u]) * (1.0 + delta[u])
            for v in vertices:
                dv = delta[v]
                sv = sigma[v]
                for k in range(offsets[v], offsets[v + 1]):
                    u = dst[k]
                    if edge_sigma[rev[k]] and assignment[u] == w:
                        delta[u] += (sigma[u] / sv) * (1.0 + dv)

    while idx[0] < len(level_lists[0]) or idx[1] < len(level_lists[1]):
        progressed = False
        for w in (0, 1):
            if idx[w] >= len(level_lists[w]):
                continue
            level = level_lists[w][idx[w]]
            needed = deps[w].get(level, {})
            if not all(other_completed(w, pl) for pl in needed):
                continue
            for pl in sorted(needed, reverse=True):
                sync_events += 1
                comm_bytes += len(needed[pl]) * BYTES_PER_ELEM
                if ledger is not None:
                    ledger.log(s, "backward", f"pull@{pl}",
                               f"{1 - w}->{w}", len(needed[pl]))
            process_level(w, level)
            passed[w].add(level)
            idx[w] += 1
            progressed = True
        if not progressed:
            raise RuntimeError(
                "backward-phase deadlock: both workers waiting; "
                f"cursors at {[level_lists[w][idx[w]] for w in (0, 1)]}"
            )

    report = BackwardReport(
        sync_events=sync_events,
        comm_bytes=comm_bytes,
        levels=(len(level_lists[0]), len(level_lists[1])),
    )
    return delta, report


def accumulate_bc(bc: np.ndarray, delta: np.ndarray, s: int) -> np.ndarray:
    """bc[v] += delta[v] for every v except the source."""
    bc += delta
    bc[s] -= delta[s]
    return bc
