import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import hybir as H
from hybir.border_matrix import estimate_memory

from conftest import half_split, random_connected_graph


def test_path_matrices(p4):
    p = half_split(p4)
    bs = H.identify_borders(p4, p)
    bmx = H.compute_border_matrices(p4, p, bs)
    # One border per side; distance to itself is 0 with one (empty) path.
    assert bmx.bm_0.tolist() == [[0]]
    assert bmx.bm_1.tolist() == [[0]]
    assert bmx.sm_0 == [[1]]
    assert bmx.sm_1 == [[1]]


def test_diamond_matrices(diamond):
    p = half_split(diamond)
    bs = H.identify_borders(diamond, p)
    bmx = H.compute_border_matrices(diamond, p, bs)
    # Side 0 holds {0, 1} joined by an edge; side 1 holds {2, 3}.
    assert bmx.bm_0.tolist() == [[0, 1], [1, 0]]
    assert bmx.bm_1.tolist() == [[0, 1], [1, 0]]
    assert bmx.sm_0 == [[1, 1], [1, 1]]


def test_c6_matrices_disconnected_side(c6):
    # Split {0, 1, 2} | {3, 4, 5}: inside each side the borders connect
    # through the side's own path only.
    p = half_split(c6)
    bs = H.identify_borders(c6, p)
    bmx = H.compute_border_matrices(c6, p, bs)
    assert bs.borders == ([0, 2], [3, 5])
    assert bmx.bm_0.tolist() == [[0, 2], [2, 0]]
    assert bmx.bm_1.tolist() == [[0, 2], [2, 0]]


def test_matrices_restricted_to_partition():
    # 0-1-2 and 0-3-2: with {0, 2} on side 0 and the relays on side 1, the
    # intra-side distance between 0 and 2 must be unreachable (inf).
    g = H.from_edges(4, [(0, 1, 1), (1, 2, 1), (0, 3, 1), (3, 2, 1)])
    p = H.Partition(np.array([0, 1, 0, 1], dtype=np.int8), 0.5)
    bs = H.identify_borders(g, p)
    bmx = H.compute_border_matrices(g, p, bs)
    assert bmx.bm_0[0][1] == bmx.inf
    assert bmx.sm_0[0][1] == 0


@given(seed=st.integers(0, 300), n=st.integers(4, 25), extra=st.integers(0, 20))
@settings(max_examples=30, deadline=None)
def test_matrix_properties_random(seed, n, extra):
    g = random_connected_graph(n, extra, weighted=seed % 2 == 1, seed=seed)
    p = H.greedy_bipartition(g, 0.5, seed=seed)
    bs = H.identify_borders(g, p)
    bmx = H.compute_border_matrices(g, p, bs)
    for side in (0, 1):
        bm = bmx.bm[side]
        sm = bmx.sm[side]
        b = len(bs.borders[side])
        assert bm.shape == (b, b)
        # Symmetry, zero diagonal, triangle inequality (saturating at inf).
        assert np.array_equal(bm, bm.T)
        assert all(bm[i][i] == 0 and sm[i][i] == 1 for i in range(b))
        for i in range(b):
            for j in range(b):
                for k in range(b):
                    if bm[i][k] < bmx.inf and bm[k][j] < bmx.inf:
                        assert bm[i][j] <= bm[i][k] + bm[k][j]
                assert (sm[i][j] > 0) == (bm[i][j] < bmx.inf)


def test_estimate_memory_case_study():
    est = estimate_memory(n=27093600, m=514179537, b=40)
    assert est["unpartitioned_elems"] == 2165092548
    assert est["hybrid_elems_per_device"] == 1082548034


def test_estimate_memory_small():
    est = estimate_memory(n=4, m=3, b=1)
    assert est["unpartitioned_elems"] == 28
    assert est["hybrid_elems_per_device"] == 19


def test_estimate_memory_validates():
    with pytest.raises(ValueError):
        estimate_memory(-1, 3, 1)


def test_cache_round_trip(tmp_path, diamond):
    p = half_split(diamond)
    bs = H.identify_borders(diamond, p)
    bmx = H.compute_border_matrices(diamond, p, bs)
    path = tmp_path / "bm.npz"
    H.save_border_matrices(path, bmx, diamond, p)
    loaded = H.load_border_matrices(path, diamond, p)
    assert loaded is not None
    assert np.array_equal(loaded.bm_0, bmx.bm_0)
    assert loaded.sm_1 == bmx.sm_1
    assert loaded.inf == bmx.inf


def test_cache_key_mismatch(tmp_path, diamond, c6):
    p = half_split(diamond)
    bs = H.identify_borders(diamond, p)
    bmx = H.compute_border_matrices(diamond, p, bs)
    path = tmp_path / "bm.npz"
    H.save_border_matrices(path, bmx, diamond, p)
    # Different graph -> cache miss, not a wrong answer.
    assert H.load_border_matrices(path, c6, half_split(c6)) is None
    assert H.load_border_matrices(tmp_path / "missing.npz", diamond, p) is None
