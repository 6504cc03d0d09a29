"""Command-line front end: compute, compare, estimate-mem."""

from __future__ import annotations

import argparse
import csv
import json
import sys
import time

import numpy as np

from .border_matrix import estimate_memory
from .engine import RunConfig, build_report, run_bc, select_sources
from .errors import HybirError, InputError
from .graph import load_dimacs_gr, load_edge_list
from .oracle import brandes_bc

COMPARE_TOLERANCE = 1e-9


def _load_graph(path, fmt):
    if fmt == "dimacs":
        return load_dimacs_gr(path)
    return load_edge_list(path, weighted=True)


def _add_graph_flags(sp):
    sp.add_argument("--graph", required=True, help="input graph file")
    sp.add_argument("--format", choices=("edgelist", "dimacs"), default="edgelist")
    sp.add_argument("--sources", type=int, default=None,
                    help="number of random sources (default: all vertices)")
    sp.add_argument("--seed", type=int, default=0)


def cmd_compute(args) -> int:
    g = _load_graph(args.graph, args.format)
    ratio = "auto" if args.ratio == "auto" else float(args.ratio)
    cfg = RunConfig(
        num_sources=args.sources,
        seed=args.seed,
        ratio=ratio,
        mode="hybir" if args.mode == "hybir" else "bsp-baseline",
        partition_file=args.partition_file,
    )
    result = run_bc(g, cfg)
    report = build_report(g, result)
    report["timestamp"] = time.strftime("%Y-%m-%dT%H:%M:%S")
    if args.out:
        with open(args.out, "w") as fh:
            json.dump(report, fh, indent=2)
            fh.write("\n")
    if args.csv:
        _write_csv(args.csv, result)
    totals = result.ledger.totals()
    print(
        f"mode={cfg.mode} sources={len(result.per_source)} "
        f"mteps={result.mteps:.3f} comm_events={totals['events']} "
        f"comm_elems={totals['payload_elems']}"
    )
    return 0


def _write_csv(path, result) -> None:
    """Plot-ready per-source communication table."""
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(
            ["source", "forward_events", "backward_events", "payload_elems"]
        )
        for rep in result.per_source:
            s = rep["source"]
            writer.writerow([
                s,
                result.ledger.count("forward", source=s),
                result.ledger.count("backward", source=s),
                result.ledger.volume(source=s),
            ])


def cmd_compare(args) -> int:
    g = _load_graph(args.graph, args.format)
    if g.num_vertices == 0:
        raise InputError("empty graph")
    base = RunConfig(num_sources=args.sources, seed=args.seed)
    sources = select_sources(g, base)
    oracle = brandes_bc(g, sources)

    worst = 0.0
    for mode in ("hybir", "bsp-baseline"):
        cfg = RunConfig(sources=sources, seed=args.seed, mode=mode)
        result = run_bc(g, cfg)
        err = float(np.max(np.abs(result.bc - oracle.bc))) if g.num_vertices else 0.0
        worst = max(worst, err)
        fwd = result.ledger.count("forward")
        bwd = result.ledger.count("backward")
        iters = [
            rep["forward"].get("iterations", rep["forward"].get("supersteps"))
            for rep in result.per_source
        ]
        print(
            f"{mode}: forward_events={fwd} backward_events={bwd} "
            f"iterations={iters} max_bc_error={err:.3e}"
        )
    if worst > COMPARE_TOLERANCE:
        print(f"FAIL: BC error {worst:.3e} exceeds {COMPARE_TOLERANCE}")
        return 1
    return 0


def cmd_estimate_mem(args) -> int:
    est = estimate_memory(args.n, args.m, args.b)
    for name, elems in (
        ("unpartitioned", est["unpartitioned_elems"]),
        ("hybrid_per_device", est["hybrid_elems_per_device"]),
    ):
        size = elems * args.elem_bytes
        print(f"{name}: {elems} elems, {size} bytes ({size / 1e9:.2f} GB)")
    return 0


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="hybir")
    sub = parser.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("compute", help="run BC and write a JSON report")
    _add_graph_flags(sp)
    sp.add_argument("--mode", choices=("hybir", "bsp"), default="hybir")
    sp.add_argument("--ratio", default="0.5", help="fraction in (0,1) or 'auto'")
    sp.add_argument("--partition-file", default=None)
    sp.add_argument("--out", default=None, help="report JSON path")
    sp.add_argument("--csv", default=None, help="also emit a per-source CSV table")
    sp.set_defaults(func=cmd_compute)

    sp = sub.add_parser("compare", help="both modes plus the oracle on one source set")
    _add_graph_flags(sp)
    sp.set_defaults(func=cmd_compare)

    sp = sub.add_parser("estimate-mem", help="memory footprint of both layouts")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--m", type=int, required=True)
    sp.add_argument("--b", type=int, required=True)
    sp.add_argument("--elem-bytes", type=int, default=4)
    sp.set_defaults(func=cmd_estimate_mem)
    return parser


def main(argv=None) -> int:
    args = make_parser().parse_args(argv)
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (HybirError, AssertionError) as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
