import itertools

import numpy as np
import pytest

import hybir as H
from hybir.backward import STRATEGIES, accumulate_bc, validate_strategy
from hybir.errors import InputError
from hybir.forward import forward_phase, merge_states
from hybir.ledger import CommLedger
from hybir.oracle import brandes_single_source

from conftest import half_split, hybrid_setup, random_connected_graph


def run_backward(g, s, partition=None, strategies=("vertex-pull", "edge-push"),
                 ledger=None):
    p, bs, bmx = hybrid_setup(g, partition=partition)
    states, _, _ = forward_phase(g, p, bs, bmx, s)
    delta, report = H.backward_phase(g, p, bs, states, s,
                                     strategies=strategies, ledger=ledger)
    return delta, report, (p, bs, states)


def test_backward_path(p4):
    delta, _, _ = run_backward(p4, 0, partition=half_split(p4))
    assert delta.tolist() == [3.0, 2.0, 1.0, 0.0]


def test_backward_diamond(diamond):
    delta, _, _ = run_backward(diamond, 0, partition=half_split(diamond))
    assert np.allclose(delta, [3.0, 0.5, 0.5, 0.0], atol=1e-12)


def test_backward_star_leaf_source(star5):
    delta, _, _ = run_backward(star5, 1)
    assert delta[0] == pytest.approx(3.0)


def test_backward_matches_oracle(c6, w5):
    for g in (c6, w5):
        for s in range(g.num_vertices):
            delta, _, _ = run_backward(g, s)
            _, _, odelta = brandes_single_source(g, s)
            assert np.allclose(delta, odelta, rtol=1e-9, atol=1e-12)


def test_strategy_combinations_agree(diamond):
    results = []
    for combo in itertools.product(STRATEGIES, repeat=2):
        delta, _, _ = run_backward(diamond, 0, partition=half_split(diamond),
                                   strategies=combo)
        results.append(delta)
    for delta in results[1:]:
        assert np.allclose(results[0], delta, atol=1e-12)


def test_strategy_equivalence_large_random():
    g = random_connected_graph(200, 150, weighted=True, seed=17)
    a, _, _ = run_backward(g, 5, strategies=("vertex-pull", "vertex-pull"))
    b, _, _ = run_backward(g, 5, strategies=("edge-push", "edge-push"))
    assert np.allclose(a, b, rtol=1e-9, atol=1e-12)


def test_sync_events_bounded_by_dag_cut_arcs(c6):
    for seed in range(5):
        g = random_connected_graph(40, 25, seed=seed)
        for s in (0, 7):
            _, report, (p, bs, states) = run_backward(g, s)
            dag_cut = sum(
                1
                for k in range(g.num_arcs)
                if p.assignment[g.arc_src[k]] != p.assignment[g.arc_dst[k]]
                and states[int(p.assignment[int(g.arc_src[k])])].edge_sigma[k]
            )
            assert report.sync_events <= dag_cut


def test_backward_ledger(diamond):
    ledger = CommLedger()
    _, report, _ = run_backward(diamond, 0, partition=half_split(diamond),
                                ledger=ledger)
    assert ledger.count("backward") == report.sync_events
    assert all(e.phase == "backward" for e in ledger.events)
    assert report.comm_bytes == 16 * ledger.volume("backward")


def test_no_sync_without_cut_dag():
    g = H.from_edges(6, [(0, 1, 1), (1, 2, 1), (3, 4, 1), (4, 5, 1)])
    p = H.Partition(np.array([0, 0, 0, 1, 1, 1], dtype=np.int8), 0.5)
    bs = H.identify_borders(g, p)
    bmx = H.compute_border_matrices(g, p, bs)
    states, _, _ = forward_phase(g, p, bs, bmx, 0)
    _, report = H.backward_phase(g, p, bs, states, 0)
    assert report.sync_events == 0


def test_validate_strategy():
    assert validate_strategy("vertex-pull") == "vertex-pull"
    with pytest.raises(InputError):
        validate_strategy("teleport")


def test_accumulate_bc_excludes_source():
    bc = np.zeros(3)
    accumulate_bc(bc, np.array([5.0, 1.0, 2.0]), 0)
    assert bc.tolist() == [0.0, 1.0, 2.0]
