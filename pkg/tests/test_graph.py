import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import hybir as H
from hybir.errors import DomainError, FormatError, ParseError

from conftest import random_connected_graph


def test_from_edges_csr_shape(p4):
    assert p4.num_vertices == 4
    assert p4.num_edges == 3
    assert p4.num_arcs == 6
    assert p4.offsets.tolist() == [0, 1, 3, 5, 6]
    assert p4.arc_src.tolist() == [0, 1, 1, 2, 2, 3]
    assert p4.arc_dst.tolist() == [1, 0, 2, 1, 3, 2]


def test_rev_arc_is_involution(diamond):
    rev = diamond.rev_arc
    for k in range(diamond.num_arcs):
        assert rev[rev[k]] == k
        assert diamond.arc_src[rev[k]] == diamond.arc_dst[k]
        assert diamond.arc_dst[rev[k]] == diamond.arc_src[k]


def test_normalization_drops_self_loops_and_dedups():
    g = H.from_edges(3, [(0, 1, 5), (1, 0, 2), (1, 1, 1), (1, 2, 3)])
    assert g.num_edges == 2
    # Parallel edges keep the minimum weight.
    k = next(k for k in range(g.num_arcs)
             if g.arc_src[k] == 0 and g.arc_dst[k] == 1)
    assert g.arc_weight[k] == 2


def test_zero_weight_rejected():
    with pytest.raises(DomainError):
        H.from_edges(2, [(0, 1, 0)])


def test_negative_weight_rejected():
    with pytest.raises(DomainError):
        H.from_edges(2, [(0, 1, -3)])


def test_vertex_out_of_range_rejected():
    with pytest.raises(FormatError):
        H.from_edges(2, [(0, 2, 1)])


def test_inf_distance_exceeds_any_path(w5):
    # Sum of edge weights plus one can never be an actual distance.
    assert w5.inf_distance == 2 + 1 + 1 + 3 + 4 + 1 + 1


def test_load_edge_list(tmp_path):
    f = tmp_path / "g.txt"
    f.write_text("# comment\n% also comment\n0 1 4\n1 2 2\n\n")
    g = H.load_edge_list(f, weighted=True)
    assert g.num_vertices == 3
    assert g.num_edges == 2
    assert sorted(g.arc_weight.tolist()) == [2, 2, 4, 4]


def test_load_edge_list_unweighted_ignores_missing_column(tmp_path):
    f = tmp_path / "g.txt"
    f.write_text("0 1\n1 2\n")
    g = H.load_edge_list(f)
    assert set(g.arc_weight.tolist()) == {1}


def test_load_edge_list_bad_line(tmp_path):
    f = tmp_path / "g.txt"
    f.write_text("0 1\noops\n")
    with pytest.raises(ParseError) as exc:
        H.load_edge_list(f)
    assert exc.value.line_number == 2


def test_load_dimacs(tmp_path):
    f = tmp_path / "g.gr"
    f.write_text("c demo\np sp 3 4\na 1 2 7\na 2 1 7\na 2 3 1\na 3 2 1\n")
    g = H.load_dimacs_gr(f)
    assert g.num_vertices == 3
    assert g.num_edges == 2


def test_load_dimacs_arc_count_mismatch(tmp_path):
    f = tmp_path / "g.gr"
    f.write_text("p sp 3 4\na 1 2 7\n")
    with pytest.raises(FormatError):
        H.load_dimacs_gr(f)


def test_load_dimacs_vertex_range(tmp_path):
    f = tmp_path / "g.gr"
    f.write_text("p sp 2 1\na 1 5 7\n")
    with pytest.raises(FormatError):
        H.load_dimacs_gr(f)


def test_edge_list_round_trip(tmp_path, w5):
    f = tmp_path / "rt.txt"
    H.write_edge_list(w5, f)
    g = H.load_edge_list(f, weighted=True)
    assert g.content_hash() == w5.content_hash()


def test_graph_stats(p4):
    stats = H.graph_stats(p4)
    assert stats == {"n": 4, "m": 3, "avg_degree": 1.5, "max_degree": 2}


def test_as_graph_coercions(p4, tmp_path):
    assert H.as_graph(p4) is p4
    arr = np.array([[0, 1], [1, 2]])
    assert H.as_graph(arr).num_edges == 2
    f = tmp_path / "g.txt"
    f.write_text("0 1\n")
    assert H.as_graph(str(f)).num_edges == 1
    with pytest.raises(FormatError):
        H.as_graph(np.zeros((2, 4)))


@given(seed=st.integers(0, 1000), n=st.integers(2, 30), extra=st.integers(0, 30))
@settings(max_examples=40, deadline=None)
def test_csr_invariants_random(seed, n, extra):
    g = random_connected_graph(n, extra, weighted=seed % 2 == 0, seed=seed)
    assert g.offsets[0] == 0
    assert g.offsets[-1] == g.num_arcs
    # Arcs sorted by (src, dst); symmetric weights via rev_arc.
    keys = list(zip(g.arc_src.tolist(), g.arc_dst.tolist()))
    assert keys == sorted(keys)
    for k in range(g.num_arcs):
        assert g.arc_weight[k] == g.arc_weight[g.rev_arc[k]]
