"""Orchestration: preprocessing, per-source pipeline, and mode comparison.

The two workers are realized as deterministic cooperative execution contexts
driven by this module; every cross-worker value passes through the
ledger-instrumented channel, so a fixed seed reproduces the communication
log exactly.  Wall-clock only feeds the informational MTEPS figure.
"""

from __future__ import annotations

import os
import random
import time
from dataclasses import dataclass, field

import numpy as np

from . import bsp
from .backward import backward_phase, validate_strategy
from .border_matrix import compute_border_matrices
from .errors import InputError
from .forward import forward_phase
from .graph import Graph, graph_stats
from .ledger import CommLedger
from .partition import (
    Partition,
    calibrate_ratio,
    greedy_bipartition,
    identify_borders,
    import_partition,
)
from .relax import initial_relax

MODES = ("hybir", "bsp-baseline")


@dataclass
class RunConfig:
    num_sources: int | None = None     # None with sources=None means all vertices
    sources: list | None = None
    seed: int = 0
    ratio: float | str = 0.5           # fraction, or 'auto' to calibrate
    mode: str = "hybir"
    backward_strategies: tuple = ("vertex-pull", "edge-push")
    partition_file: str | None = None
    calibration_sources: int = 10
    max_threads: int | None = None     # honored as metadata; runs are simulated

    def __post_init__(self):
        if self.mode not in MODES:
            raise InputError(f"unknown mode {self.mode!r}; pick from {MODES}")
        for name in self.backward_strategies:
            validate_strategy(name)
        if self.num_sources is not None and self.num_sources < 1:
            raise InputError("num_sources must be >= 1")
        if self.max_threads is None and os.environ.get("HYBIR_THREADS"):
            self.max_threads = int(os.environ["HYBIR_THREADS"])


@dataclass
class RunResult:
    bc: np.ndarray
    per_source: list
    ledger: CommLedger
    mteps: float
    elapsed: float
    partition: Partition
    borders: object
    config: RunConfig
    pipeline_overlaps: int = 0


def select_sources(g: Graph, cfg: RunConfig) -> list:
    n = g.num_vertices
    if cfg.sources is not None:
        for s in cfg.sources:
            if not 0 <= s < n:
                raise InputError(f"listed source {s} out of range [0, {n})")
        return list(cfg.sources)
    if cfg.num_sources is None:
        return list(range(n))
    rng = random.Random(cfg.seed)
    k = min(cfg.num_sources, n)
    return sorted(rng.sample(range(n), k))


def prepare(g: Graph, cfg: RunConfig):
    """Partition, borders, and (for hybir mode) border matrices."""
    if cfg.partition_file is not None:
        p = import_partition(cfg.partition_file, g)
    else:
        if cfg.ratio == "auto":
            rng = random.Random(cfg.seed)
            k = min(cfg.calibration_sources, g.num_vertices)
            cal_sources = rng.sample(range(g.num_vertices), k)
            ratio = calibrate_ratio(g, cal_sources, seed=cfg.seed)
        else:
            ratio = float(cfg.ratio)
        p = greedy_bipartition(g, ratio, seed=cfg.seed)
    bs = identify_borders(g, p)
    bmx = compute_border_matrices(g, p, bs) if cfg.mode == "hybir" else None
    return p, bs, bmx


def run_hybir_source(g, p, bs, bmx, s, cfg, ledger, step1=None):
    states, fwd, _ = forward_phase(g, p, bs, bmx, s, ledger=ledger, step1=step1)
    delta, bwd = backward_phase(
        g, p, bs, states, s, strategies=cfg.backward_strategies, ledger=ledger
    )
    return delta, {"source": s, "forward": fwd.as_dict(), "backward": bwd.as_dict()}


def run_bsp_baseline_source(g, p, bs, s, ledger=None):
    """One source under the level-synchronous baseline (border matrices unused)."""
    states, fwd = bsp.bsp_forward(g, p, s, ledger=ledger)
    delta, bwd = bsp.bsp_backward(g, p, bs, states, s, ledger=ledger)
    return states, delta, {"source": s, "forward": fwd, "backward": bwd}


def run_bc(g: Graph, cfg: RunConfig, _pipeline: bool = False) -> RunResult:
    if g.num_vertices == 0:
        raise InputError("empty graph")
    t_start = time.perf_counter()
    sources = select_sources(g, cfg)
    p, bs, bmx = prepare(g, cfg)
    ledger = CommLedger()
    bc = np.zeros(g.num_vertices)
    per_source = []
    overlaps = 0

    step1_cache: dict[int, object] = {}
    for i, s in enumerate(sources):
        if cfg.mode == "hybir":
            step1 = step1_cache.pop(s, None)
            if _pipeline and i + 1 < len(sources):
                # While the source's worker runs the initial traversal, the
                # other worker can already run it for the next source.
                nxt = sources[i + 1]
                if p.assignment[nxt] != p.assignment[s] and nxt not in step1_cache:
                    step1_cache[nxt] = initial_relax(
                        g, p.mask(int(p.assignment[nxt])), [(nxt, 0, 1)]
                    )
                    overlaps += 1
            delta, rep = run_hybir_source(g, p, bs, bmx, s, cfg, ledger, step1)
        else:
            _, delta, rep = run_bsp_baseline_source(g, p, bs, s, ledger)
        bc += delta
        bc[s] -= delta[s]
        per_source.append(rep)

    elapsed = time.perf_counter() - t_start
    mteps = (g.num_edges * len(sources) / elapsed / 1e6) if elapsed > 0 else 0.0
    return RunResult(bc, per_source, ledger, mteps, elapsed, p, bs, cfg, overlaps)


def pipeline_sources(g: Graph, cfg: RunConfig) -> RunResult:
    """Multi-source run with look-ahead initial traversals; results match
    the serial run exactly."""
    if cfg.mode != "hybir":
        raise InputError("pipelining applies to hybir mode only")
    return run_bc(g, cfg, _pipeline=True)


def build_report(g: Graph, result: RunResult, top_k: int = 10) -> dict:
    """JSON-ready report document with a stable field order."""
    bc = result.bc
    order = np.argsort(-bc, kind="stable")[:top_k]
    n0, n1 = result.partition.sizes
    b0, b1 = result.borders.counts()
    return {
        "schema_version": 1,
        "graph_stats": graph_stats(g),
        "partition_stats": {
            "sizes": [n0, n1],
            "ratio": result.partition.ratio,
            "borders": [b0, b1],
            "cut_arcs": len(result.borders.cut_arcs),
        },
        "mode": result.config.mode,
        "seed": result.config.seed,
        "per_source": result.per_source,
        "comm_totals": result.ledger.totals(),
        "bc_top_k": [
            {"vertex": int(v), "bc": float(bc[v])} for v in order
        ],
        "mteps": result.mteps,
        "pipeline_overlaps": result.pipeline_overlaps,
        "max_threads": result.config.max_threads,
    }
